#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "corrint/error.hpp"

namespace corrint {

enum class ParamKind { Expense, Income };

/// Per-column metadata of a panel parameter.
struct ParamMeta {
  std::string id;
  std::string process_id;  ///< business-process grouping; defaults to id
  ParamKind kind = ParamKind::Expense;
};

/// Ordering of period labels. Labels that both parse as integers compare
/// numerically; everything else compares as a plain byte string, which sorts
/// ISO "YYYY-MM" labels chronologically. Returns <0, 0 or >0.
int compare_periods(const std::string& a, const std::string& b);

/// The digital copy of the enterprise: a T×n matrix of monetary flows
/// (thousand currency units) with one row per period and one column per
/// parameter. Plain data; see validate_panel() for the invariant checks and
/// load_panel() for the ingestion path that enforces them.
struct Panel {
  std::vector<std::string> periods;  ///< T labels, strictly increasing
  std::vector<ParamMeta> params;     ///< n entries, unique ids
  std::vector<double> values;        ///< row-major T×n

  std::size_t period_count() const { return periods.size(); }
  std::size_t param_count() const { return params.size(); }

  double value(std::size_t t, std::size_t i) const {
    return values[t * params.size() + i];
  }
  double& value(std::size_t t, std::size_t i) {
    return values[t * params.size() + i];
  }
  std::span<const double> row(std::size_t t) const {
    return {values.data() + t * params.size(), params.size()};
  }

  /// Index of the column with the given param id, or npos.
  std::size_t column_of(const std::string& param_id) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Sliding-window length in periods. The 1/(k-1) normalization requires k >= 2.
struct WindowSpec {
  std::size_t k = 6;
};

/// The k most recent rows before evaluation time t, newest first:
/// row l holds x(t-1-l) for l = 0..k-1. Owns its storage; never aliases the
/// source panel.
struct WindowMatrix {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t at_time = 0;
  std::vector<double> rows;  ///< row-major k×n

  double at(std::size_t l, std::size_t j) const { return rows[l * n + j]; }
};

/// Copies rows t-1, t-2, ..., t-k of the panel. Valid for k <= t <= T; t == T
/// is the evaluation point just past the panel end, using the last k rows.
/// Throws Error(Domain) for t out of range or k < 2.
WindowMatrix window_slice(const Panel& p, std::size_t t, const WindowSpec& w);

enum class Severity { Warning, Error };

struct Finding {
  Severity severity;
  std::string location;  ///< e.g. column id, period label, or both
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  /// True when no error-severity finding is present (warnings allowed).
  bool ok() const;
};

/// Checks every Panel invariant: T >= 1, n >= 1, value storage of size T*n,
/// all values finite, periods strictly increasing, param ids unique and
/// nonempty. Constant columns yield a warning (zero variance in every
/// window). Findings are data, not failures.
ValidationReport validate_panel(const Panel& p);

}  // namespace corrint
