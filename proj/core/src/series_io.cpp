#include "corrint/series_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "corrint/panel_io.hpp"

namespace corrint {

namespace {

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string_view> split_fields(const std::string& line) {
  std::vector<std::string_view> fields;
  std::string_view rest(line);
  while (true) {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) {
      fields.push_back(rest);
      break;
    }
    fields.push_back(rest.substr(0, comma));
    rest.remove_prefix(comma + 1);
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line_no, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::Validation, "line " + std::to_string(line_no) + ": bad " + what +
                                           " value \"" + std::string(field) + "\"");
  }
  return v;
}

}  // namespace

void write_series_csv(const IndicatorSeries& s, std::ostream& out, std::span<const ParamMeta> params) {
  const bool with_g = !params.empty();
  if (with_g && (s.g.empty() || params.size() != s.n)) {
    throw Error(ErrorKind::Domain, "per-parameter output needs g vectors and matching metadata");
  }
  out << "t,v";
  if (with_g) {
    for (const auto& meta : params) out << ",g_" << meta.id;
  }
  out << '\n';
  for (std::size_t idx = 0; idx < s.times.size(); ++idx) {
    out << s.times[idx] << ',' << format_double(s.v_agg[idx]);
    if (with_g) {
      for (const double gv : s.g[idx]) out << ',' << format_double(gv);
    }
    out << '\n';
  }
}

IndicatorSeries read_series_csv(std::istream& in, std::string mode_label) {
  std::string line;
  if (!read_line(in, line)) {
    throw Error(ErrorKind::Parse, "line 1: empty input, expected header \"t,v[,g_...]\"");
  }
  const auto header = split_fields(line);
  if (header.size() < 2 || header[0] != "t" || header[1] != "v") {
    throw Error(ErrorKind::Parse, "line 1: series header must start with \"t,v\"");
  }
  const std::size_t g_cols = header.size() - 2;
  for (std::size_t c = 2; c < header.size(); ++c) {
    if (header[c].substr(0, 2) != "g_") {
      throw Error(ErrorKind::Parse, "line 1: per-parameter columns must be named g_<id>");
    }
  }

  IndicatorSeries s;
  s.mode_label = std::move(mode_label);
  s.n = g_cols;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " fields, got " +
                                        std::to_string(fields.size()));
    }
    std::size_t t = 0;
    auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), t);
    if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size()) {
      throw Error(ErrorKind::Validation,
                  "line " + std::to_string(line_no) + ": bad t value \"" + std::string(fields[0]) + "\"");
    }
    if (!s.times.empty() && t <= s.times.back()) {
      throw Error(ErrorKind::Validation,
                  "line " + std::to_string(line_no) + ": evaluation times must be strictly increasing");
    }
    s.times.push_back(t);
    s.v_agg.push_back(parse_number(fields[1], line_no, "v"));
    if (g_cols > 0) {
      std::vector<double> gt;
      gt.reserve(g_cols);
      for (std::size_t c = 0; c < g_cols; ++c) {
        gt.push_back(parse_number(fields[2 + c], line_no, "g"));
      }
      s.g.push_back(std::move(gt));
    }
  }
  if (s.times.empty()) {
    throw Error(ErrorKind::Validation, "series has no data rows");
  }
  return s;
}

void write_series_json(const IndicatorSeries& s, std::ostream& out, bool with_g) {
  nlohmann::json doc;
  doc["mode_label"] = s.mode_label;
  doc["times"] = s.times;
  doc["v"] = s.v_agg;
  if (with_g) {
    if (s.g.empty()) {
      throw Error(ErrorKind::Domain, "series carries no per-parameter vectors");
    }
    doc["g"] = s.g;
  }
  out << doc.dump(2) << '\n';
}

IndicatorSeries read_series_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("series: ") + e.what());
  }
  IndicatorSeries s;
  try {
    s.mode_label = doc.at("mode_label").get<std::string>();
    s.times = doc.at("times").get<std::vector<std::size_t>>();
    s.v_agg = doc.at("v").get<std::vector<double>>();
    if (doc.contains("g")) {
      s.g = doc.at("g").get<std::vector<std::vector<double>>>();
      s.n = s.g.empty() ? 0 : s.g[0].size();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("series: ") + e.what());
  }
  if (s.times.size() != s.v_agg.size() || (!s.g.empty() && s.g.size() != s.times.size())) {
    throw Error(ErrorKind::Validation, "series arrays disagree in length");
  }
  if (s.times.empty()) {
    throw Error(ErrorKind::Validation, "series has no evaluation points");
  }
  return s;
}

}  // namespace corrint
