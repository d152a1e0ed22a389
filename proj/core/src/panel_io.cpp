#include "corrint/panel_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace corrint {

namespace {

// Reads one CSV record; strips a trailing CR so LF and CRLF both work.
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

bool parse_value(std::string_view field, double& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

[[noreturn]] void fail_cell(std::size_t line_no, std::size_t data_row, const std::string& column,
                            std::string_view field, const char* what) {
  throw Error(ErrorKind::Validation,
              "line " + std::to_string(line_no) + ": " + what + " \"" + std::string(field) +
                  "\" (row " + std::to_string(data_row) + ", column \"" + column + "\")");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Panel load_panel(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) {
    throw Error(ErrorKind::Parse, "line 1: empty input, expected header starting with \"period\"");
  }
  const auto header = split_fields(line);
  if (header.empty() || header[0] != "period") {
    throw Error(ErrorKind::Parse, "line 1: first header column must be \"period\", got \"" +
                                      std::string(header.empty() ? "" : header[0]) + "\"");
  }
  if (header.size() < 2) {
    throw Error(ErrorKind::Parse, "line 1: header lists no parameter columns");
  }

  Panel p;
  p.params.reserve(header.size() - 1);
  std::unordered_map<std::string_view, std::size_t> id_index;
  for (std::size_t c = 1; c < header.size(); ++c) {
    std::string id(header[c]);
    if (id.empty()) {
      throw Error(ErrorKind::Validation,
                  "line 1: empty param id in header column " + std::to_string(c + 1));
    }
    if (!id_index.emplace(header[c], c).second) {
      throw Error(ErrorKind::Validation, "line 1: duplicate param id \"" + id + "\" in header");
    }
    p.params.push_back({id, id, ParamKind::Expense});
  }
  const std::size_t n = p.params.size();

  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;  // trailing newline
    const auto fields = split_fields(line);
    const std::size_t data_row = p.periods.size() + 1;
    if (fields.size() != n + 1) {
      if (fields.size() < n + 1) {
        fail_cell(line_no, data_row, p.params[fields.size() - 1].id, "", "missing cell");
      }
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(n + 1) + " fields, got " +
                                        std::to_string(fields.size()));
    }
    std::string period(fields[0]);
    if (period.empty()) {
      fail_cell(line_no, data_row, "period", fields[0], "missing cell");
    }
    if (!p.periods.empty() && compare_periods(p.periods.back(), period) >= 0) {
      fail_cell(line_no, data_row, "period", fields[0], "non-increasing period");
    }
    for (std::size_t c = 0; c < n; ++c) {
      double v = 0.0;
      if (!parse_value(fields[c + 1], v)) {
        fail_cell(line_no, data_row, p.params[c].id, fields[c + 1],
                  fields[c + 1].empty() ? "missing cell" : "non-numeric cell");
      }
      p.values.push_back(v);
    }
    p.periods.push_back(std::move(period));
  }

  if (p.periods.empty()) {
    throw Error(ErrorKind::Validation, "panel has no data rows (T must be >= 1)");
  }

  // The parse loop already rejects everything cell-level; this is the
  // contract that no invalid Panel ever escapes ingestion.
  const auto report = validate_panel(p);
  for (const auto& f : report.findings) {
    if (f.severity == Severity::Error) {
      throw Error(ErrorKind::Validation, f.location + ": " + f.message);
    }
  }
  return p;
}

Panel load_panel_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open panel file: " + path);
  return load_panel(in);
}

void apply_param_meta(Panel& p, std::istream& in) {
  std::string line;
  if (!read_line(in, line)) {
    throw Error(ErrorKind::Parse, "line 1: empty metadata input");
  }
  const auto header = split_fields(line);
  if (header.size() != 3 || header[0] != "param_id" || header[1] != "process_id" ||
      header[2] != "kind") {
    throw Error(ErrorKind::Parse, "line 1: metadata header must be \"param_id,process_id,kind\"");
  }
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(line_no) + ": expected 3 fields, got " +
                      std::to_string(fields.size()));
    }
    const std::size_t col = p.column_of(std::string(fields[0]));
    if (col == Panel::npos) {
      throw Error(ErrorKind::Validation, "line " + std::to_string(line_no) +
                                             ": unknown param id \"" + std::string(fields[0]) + "\"");
    }
    if (!fields[1].empty()) p.params[col].process_id = std::string(fields[1]);
    if (fields[2] == "expense") {
      p.params[col].kind = ParamKind::Expense;
    } else if (fields[2] == "income") {
      p.params[col].kind = ParamKind::Income;
    } else if (!fields[2].empty()) {
      throw Error(ErrorKind::Validation,
                  "line " + std::to_string(line_no) + ": kind must be \"expense\" or \"income\", got \"" +
                      std::string(fields[2]) + "\"");
    }
  }
}

void apply_param_meta_file(Panel& p, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open metadata file: " + path);
  apply_param_meta(p, in);
}

void save_panel(const Panel& p, std::ostream& out) {
  out << "period";
  for (const auto& meta : p.params) out << ',' << meta.id;
  out << '\n';
  const std::size_t n = p.param_count();
  for (std::size_t t = 0; t < p.period_count(); ++t) {
    out << p.periods[t];
    for (std::size_t i = 0; i < n; ++i) out << ',' << format_double(p.value(t, i));
    out << '\n';
  }
}

}  // namespace corrint
