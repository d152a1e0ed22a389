#pragma once

#include <iosfwd>
#include <string>

#include "corrint/panel.hpp"

namespace corrint {

/// Parses the wide panel CSV: header `period,<id1>,<id2>,...`, one row per
/// period, decimal point '.', separator ',', LF or CRLF. Cell-level problems
/// (non-numeric, missing, non-finite) raise Error(Validation) naming the row
/// and column; structural problems raise Error(Parse) with the line number.
/// The returned panel always satisfies every Panel invariant.
Panel load_panel(std::istream& in);
Panel load_panel_file(const std::string& path);

/// Applies the sidecar metadata CSV `param_id,process_id,kind` to an already
/// loaded panel. Unlisted params keep the defaults (process_id = id, kind =
/// expense); unknown param ids raise Error(Validation).
void apply_param_meta(Panel& p, std::istream& in);
void apply_param_meta_file(Panel& p, const std::string& path);

/// Writes the wide CSV back out with round-trip decimal formatting, so that
/// load_panel(save_panel(p)) reproduces every value bit for bit.
void save_panel(const Panel& p, std::ostream& out);

/// Shortest decimal string that parses back to exactly the same binary64.
std::string format_double(double v);

}  // namespace corrint
