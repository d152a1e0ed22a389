#include "corrint/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace corrint {

ModeComparison compare_modes(const IndicatorSeries& base, const IndicatorSeries& ctrl) {
  if (base.times.size() != ctrl.times.size()) {
    const std::size_t idx = std::min(base.times.size(), ctrl.times.size());
    throw Error(ErrorKind::Validation,
                "time axes diverge at index " + std::to_string(idx) + ": series have " +
                    std::to_string(base.times.size()) + " and " + std::to_string(ctrl.times.size()) +
                    " evaluation points");
  }
  for (std::size_t idx = 0; idx < base.times.size(); ++idx) {
    if (base.times[idx] != ctrl.times[idx]) {
      throw Error(ErrorKind::Validation,
                  "time axes diverge at index " + std::to_string(idx) + ": t = " +
                      std::to_string(base.times[idx]) + " vs t = " + std::to_string(ctrl.times[idx]));
    }
  }
  if (base.n != 0 && ctrl.n != 0 && base.n != ctrl.n) {
    throw Error(ErrorKind::Validation, "series disagree on parameter count: n = " +
                                           std::to_string(base.n) + " vs n = " + std::to_string(ctrl.n));
  }

  ModeComparison cmp;
  cmp.base = base;
  cmp.ctrl = ctrl;
  cmp.delta.resize(base.times.size());
  for (std::size_t idx = 0; idx < base.times.size(); ++idx) {
    cmp.delta[idx] = ctrl.v_agg[idx] - base.v_agg[idx];
  }
  for (const double v : base.v_agg) cmp.base_total += v;
  for (const double v : ctrl.v_agg) cmp.ctrl_total += v;
  for (const double v : cmp.delta) cmp.delta_total += v;
  return cmp;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "svg") return ReportFormat::Svg;
  throw Error(ErrorKind::Parse, "unknown report format \"" + name + "\" (expected csv, json or svg)");
}

namespace {

std::string fixed4(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// Round-half-away-from-even artifacts aside, a value printed at 4 dp parses
// back to within 5e-5; that is the contract render/paper tolerances build on.
double round4(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return std::strtod(buf, nullptr);
}

std::string render_csv(const ModeComparison& cmp) {
  std::string out = "t,v_basic,v_strat,delta\n";
  for (std::size_t idx = 0; idx < cmp.base.times.size(); ++idx) {
    out += std::to_string(cmp.base.times[idx]);
    out += ',';
    out += fixed4(cmp.base.v_agg[idx]);
    out += ',';
    out += fixed4(cmp.ctrl.v_agg[idx]);
    out += ',';
    out += fixed4(cmp.delta[idx]);
    out += '\n';
  }
  return out;
}

std::string render_json(const ModeComparison& cmp) {
  nlohmann::json doc;
  doc["mode_basic"] = cmp.base.mode_label;
  doc["mode_strat"] = cmp.ctrl.mode_label;
  auto rows = nlohmann::json::array();
  for (std::size_t idx = 0; idx < cmp.base.times.size(); ++idx) {
    rows.push_back({{"t", cmp.base.times[idx]},
                    {"v_basic", round4(cmp.base.v_agg[idx])},
                    {"v_strat", round4(cmp.ctrl.v_agg[idx])},
                    {"delta", round4(cmp.delta[idx])}});
  }
  doc["rows"] = std::move(rows);
  doc["totals"] = {{"v_basic", round4(cmp.base_total)},
                   {"v_strat", round4(cmp.ctrl_total)},
                   {"delta", round4(cmp.delta_total)}};
  return doc.dump(2) + "\n";
}

std::string fixed2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct LinearScale {
  double lo, hi, out_lo, out_hi;

  double map(double v) const { return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo); }
};

// Hand-emitted chart: fixed 960×480 viewBox, 5% padded linear scales, the two
// regimes as polylines. Everything below is arithmetic on the input, so the
// bytes are identical for identical comparisons.
std::string render_svg(const ModeComparison& cmp) {
  constexpr double width = 960.0;
  constexpr double height = 480.0;
  constexpr double margin_left = 64.0;
  constexpr double margin_right = 24.0;
  constexpr double margin_top = 24.0;
  constexpr double margin_bottom = 48.0;

  double t_lo = static_cast<double>(cmp.base.times.front());
  double t_hi = static_cast<double>(cmp.base.times.back());
  double v_lo = cmp.base.v_agg[0];
  double v_hi = v_lo;
  for (const double v : cmp.base.v_agg) {
    v_lo = std::min(v_lo, v);
    v_hi = std::max(v_hi, v);
  }
  for (const double v : cmp.ctrl.v_agg) {
    v_lo = std::min(v_lo, v);
    v_hi = std::max(v_hi, v);
  }
  const double t_pad = (t_hi > t_lo) ? 0.05 * (t_hi - t_lo) : 1.0;
  const double v_pad = (v_hi > v_lo) ? 0.05 * (v_hi - v_lo) : 1.0;
  const LinearScale x{t_lo - t_pad, t_hi + t_pad, margin_left, width - margin_right};
  const LinearScale y{v_lo - v_pad, v_hi + v_pad, height - margin_bottom, margin_top};

  auto polyline = [&](const std::vector<double>& values) {
    std::string pts;
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      if (idx) pts += ' ';
      pts += fixed2(x.map(static_cast<double>(cmp.base.times[idx])));
      pts += ',';
      pts += fixed2(y.map(values[idx]));
    }
    return pts;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 960 480\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"480\" fill=\"white\"/>\n";

  // frame + horizontal grid with value labels
  svg += "<rect x=\"" + fixed2(margin_left) + "\" y=\"" + fixed2(margin_top) + "\" width=\"" +
         fixed2(width - margin_left - margin_right) + "\" height=\"" +
         fixed2(height - margin_top - margin_bottom) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  constexpr int grid_lines = 5;
  for (int gi = 0; gi <= grid_lines; ++gi) {
    const double fv = y.lo + (y.hi - y.lo) * gi / grid_lines;
    const double py = y.map(fv);
    if (gi > 0 && gi < grid_lines) {
      svg += "<line x1=\"" + fixed2(margin_left) + "\" y1=\"" + fixed2(py) + "\" x2=\"" +
             fixed2(width - margin_right) + "\" y2=\"" + fixed2(py) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    }
    svg += "<text x=\"" + fixed2(margin_left - 8.0) + "\" y=\"" + fixed2(py + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + fixed2(fv) +
           "</text>\n";
  }
  // x labels: first and last evaluation time
  svg += "<text x=\"" + fixed2(x.map(t_lo)) + "\" y=\"" + fixed2(height - margin_bottom + 20.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">t=" +
         std::to_string(cmp.base.times.front()) + "</text>\n";
  svg += "<text x=\"" + fixed2(x.map(t_hi)) + "\" y=\"" + fixed2(height - margin_bottom + 20.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">t=" +
         std::to_string(cmp.base.times.back()) + "</text>\n";

  svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"" +
         polyline(cmp.base.v_agg) + "\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"" +
         polyline(cmp.ctrl.v_agg) + "\"/>\n";

  // legend
  svg += "<rect x=\"80\" y=\"32\" width=\"12\" height=\"3\" fill=\"#1f77b4\"/>\n";
  svg += "<text x=\"98\" y=\"37\" font-family=\"sans-serif\" font-size=\"12\">" +
         cmp.base.mode_label + "</text>\n";
  svg += "<rect x=\"80\" y=\"48\" width=\"12\" height=\"3\" fill=\"#d62728\"/>\n";
  svg += "<text x=\"98\" y=\"53\" font-family=\"sans-serif\" font-size=\"12\">" +
         cmp.ctrl.mode_label + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::string render_report(const ModeComparison& cmp, ReportFormat format) {
  if (cmp.base.times.empty()) {
    throw Error(ErrorKind::Domain, "cannot render an empty comparison");
  }
  switch (format) {
    case ReportFormat::Csv: return render_csv(cmp);
    case ReportFormat::Json: return render_json(cmp);
    case ReportFormat::Svg: return render_svg(cmp);
  }
  throw Error(ErrorKind::Domain, "unknown report format");
}

}  // namespace corrint
