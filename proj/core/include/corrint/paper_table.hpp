#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corrint/compare.hpp"

namespace corrint {

/// One row of the published two-regime comparison table: period number, the
/// indicator in the basic mode, the indicator under strategic planning, and
/// the printed difference.
struct PaperTableRow {
  int t;
  double v_basic;
  double v_strat;
  double delta;
};

/// The 57-row table shipped with the library, transcribed at four decimal
/// places.
std::span<const PaperTableRow> paper_table();

/// Published grand totals the table is checked against.
inline constexpr double kPaperBasicTotal = 5069.93;
inline constexpr double kPaperStratTotal = 5089.90;
inline constexpr double kPaperDeltaTotal = 19.96;

/// Rounding slack: per-row differences carry two 4-dp roundings; totals
/// accumulate 57 of them on top of the published 2-dp figures.
inline constexpr double kPaperRowTolerance = 2e-4;
inline constexpr double kPaperTotalTolerance = 0.05;

struct PaperCheck {
  std::string name;
  double computed;
  double expected;
  double tolerance;
  bool pass;
};

struct PaperTableReport {
  std::vector<PaperCheck> row_checks;    ///< one per table row
  std::vector<PaperCheck> total_checks;  ///< column sums and the totals delta
  bool all_pass = false;
};

/// Verifies the table's internal arithmetic: per row
/// |(v_strat - v_basic) - delta| <= 2e-4, and each column sum against the
/// published totals within 0.05. The delta total is checked both as the
/// printed-column sum and as the difference of the two column sums.
PaperTableReport verify_paper_table(std::span<const PaperTableRow> fixture = paper_table());

/// The fixture as a pair of aggregate-only indicator series
/// (labels "basic_mode" / "strat_plan", times 1..57).
std::pair<IndicatorSeries, IndicatorSeries> paper_fixture_series();

}  // namespace corrint
