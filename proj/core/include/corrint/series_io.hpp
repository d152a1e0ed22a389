#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "corrint/indicator.hpp"
#include "corrint/panel.hpp"

namespace corrint {

/// Indicator series CSV: header `t,v`, one row per evaluation time, values in
/// round-trip decimal formatting. When params are given the per-parameter
/// columns `g_<id>` follow v.
void write_series_csv(const IndicatorSeries& s, std::ostream& out,
                      std::span<const ParamMeta> params = {});

/// Reads `t,v[,g_...]` back into a series (g columns optional).
IndicatorSeries read_series_csv(std::istream& in, std::string mode_label);

/// JSON form: {"mode_label", "times", "v", optional "g"}.
void write_series_json(const IndicatorSeries& s, std::ostream& out, bool with_g);
IndicatorSeries read_series_json(std::istream& in);

}  // namespace corrint
