#pragma once

#include <string>
#include <vector>

#include "corrint/indicator.hpp"

namespace corrint {

/// Paired indicator series for two operating regimes and their per-time
/// difference dv(t) = ctrl.v_agg(t) - base.v_agg(t).
struct ModeComparison {
  IndicatorSeries base;
  IndicatorSeries ctrl;
  std::vector<double> delta;
  double base_total = 0.0;   ///< sum of base.v_agg
  double ctrl_total = 0.0;   ///< sum of ctrl.v_agg
  double delta_total = 0.0;  ///< sum of delta
};

/// Pairs two series over the control-mode delta. The time axes must match
/// exactly; the error names the first divergent index.
ModeComparison compare_modes(const IndicatorSeries& base, const IndicatorSeries& ctrl);

enum class ReportFormat { Csv, Json, Svg };

ReportFormat parse_report_format(const std::string& name);

/// Renders the comparison: csv with columns t,v_basic,v_strat,delta at four
/// decimal places; json with the same rows plus a totals object; svg as a
/// two-polyline chart (960×480 viewBox, linear scales padded 5%). Byte output
/// is deterministic for identical input.
std::string render_report(const ModeComparison& cmp, ReportFormat format);

}  // namespace corrint
