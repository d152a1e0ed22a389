#include "corrint/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <unordered_set>

namespace corrint {

namespace {

bool parse_integer(const std::string& s, long long& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

int compare_periods(const std::string& a, const std::string& b) {
  long long ia = 0;
  long long ib = 0;
  if (parse_integer(a, ia) && parse_integer(b, ib)) {
    return ia < ib ? -1 : (ia > ib ? 1 : 0);
  }
  return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
}

std::size_t Panel::column_of(const std::string& param_id) const {
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].id == param_id) return i;
  }
  return npos;
}

WindowMatrix window_slice(const Panel& p, std::size_t t, const WindowSpec& w) {
  const std::size_t k = w.k;
  const std::size_t n = p.param_count();
  const std::size_t periods = p.period_count();
  if (k < 2) {
    throw Error(ErrorKind::Domain, "window length k must be at least 2, got " + std::to_string(k));
  }
  if (t < k) {
    throw Error(ErrorKind::Domain,
                "evaluation time " + std::to_string(t) + " is before the first full window; minimum valid t is " +
                    std::to_string(k));
  }
  if (t > periods) {
    throw Error(ErrorKind::Domain,
                "evaluation time " + std::to_string(t) + " lies past the panel end (T = " +
                    std::to_string(periods) + ")");
  }

  WindowMatrix out;
  out.k = k;
  out.n = n;
  out.at_time = t;
  out.rows.resize(k * n);
  for (std::size_t l = 0; l < k; ++l) {
    const auto src = p.row(t - 1 - l);
    std::copy(src.begin(), src.end(), out.rows.begin() + static_cast<std::ptrdiff_t>(l * n));
  }
  return out;
}

bool ValidationReport::ok() const {
  for (const auto& f : findings) {
    if (f.severity == Severity::Error) return false;
  }
  return true;
}

ValidationReport validate_panel(const Panel& p) {
  ValidationReport report;
  auto add = [&report](Severity sev, std::string location, std::string message) {
    report.findings.push_back({sev, std::move(location), std::move(message)});
  };

  const std::size_t T = p.period_count();
  const std::size_t n = p.param_count();
  if (T == 0) add(Severity::Error, "panel", "panel has no periods (T must be >= 1)");
  if (n == 0) add(Severity::Error, "panel", "panel has no parameters (n must be >= 1)");
  if (p.values.size() != T * n) {
    add(Severity::Error, "panel",
        "value storage holds " + std::to_string(p.values.size()) + " cells, expected T*n = " +
            std::to_string(T * n));
    return report;  // cell-level checks would index out of bounds
  }

  for (std::size_t t = 0; t + 1 < T; ++t) {
    if (compare_periods(p.periods[t], p.periods[t + 1]) >= 0) {
      add(Severity::Error, "period \"" + p.periods[t + 1] + "\"",
          "periods must be strictly increasing (previous \"" + p.periods[t] + "\")");
    }
  }

  std::unordered_set<std::string_view> seen_ids;
  seen_ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.params[i].id.empty()) {
      add(Severity::Error, "column " + std::to_string(i + 1), "param id must be nonempty");
    }
    if (!seen_ids.insert(p.params[i].id).second) {
      add(Severity::Error, "column \"" + p.params[i].id + "\"", "duplicate param id");
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    bool constant = T > 0;
    for (std::size_t t = 0; t < T; ++t) {
      const double v = p.value(t, i);
      if (!std::isfinite(v)) {
        add(Severity::Error,
            "column \"" + p.params[i].id + "\", period \"" + p.periods[t] + "\"",
            "value is not finite");
        constant = false;
      } else if (v != p.value(0, i)) {
        constant = false;
      }
    }
    if (constant && T > 1) {
      add(Severity::Warning, "column \"" + p.params[i].id + "\"",
          "constant column: zero variance possible in any window");
    }
  }

  return report;
}

}  // namespace corrint
