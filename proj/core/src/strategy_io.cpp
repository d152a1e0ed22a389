#include "corrint/strategy_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace corrint {

namespace {

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::size_t intern(std::vector<std::string>& labels,
                   std::unordered_map<std::string, std::size_t>& index, const std::string& label) {
  auto [it, inserted] = index.emplace(label, labels.size());
  if (inserted) labels.push_back(label);
  return it->second;
}

}  // namespace

StrategyModel load_strategy_model(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) {
    throw Error(ErrorKind::Parse, "line 1: empty input, expected header \"strategy,process,cost[,assigned]\"");
  }
  auto header = split_fields(line);
  const bool has_assigned = header.size() == 4 && header[3] == "assigned";
  if (!(header.size() == 3 || has_assigned) || header[0] != "strategy" || header[1] != "process" ||
      header[2] != "cost") {
    throw Error(ErrorKind::Parse, "line 1: header must be \"strategy,process,cost\" or "
                                  "\"strategy,process,cost,assigned\"");
  }

  StrategyModel mdl;
  std::unordered_map<std::string, std::size_t> strategy_index;
  std::unordered_map<std::string, std::size_t> process_index;
  struct Triple {
    std::size_t i, j;
    double cost;
    std::uint8_t assigned;
    std::size_t line_no;
  };
  std::vector<Triple> triples;

  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " fields, got " +
                                        std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorKind::Validation,
                  "line " + std::to_string(line_no) + ": strategy and process labels must be nonempty");
    }
    Triple t;
    t.i = intern(mdl.strategies, strategy_index, fields[0]);
    t.j = intern(mdl.processes, process_index, fields[1]);
    t.line_no = line_no;
    const char* first = fields[2].data();
    const char* last = first + fields[2].size();
    auto [ptr, ec] = std::from_chars(first, last, t.cost);
    if (ec != std::errc{} || ptr != last || !std::isfinite(t.cost) || t.cost < 0.0) {
      throw Error(ErrorKind::Validation, "line " + std::to_string(line_no) +
                                             ": cost must be a nonnegative number, got \"" +
                                             fields[2] + "\"");
    }
    t.assigned = 0;
    if (has_assigned) {
      if (fields[3] == "1") {
        t.assigned = 1;
      } else if (fields[3] != "0") {
        throw Error(ErrorKind::Validation, "line " + std::to_string(line_no) +
                                               ": assigned must be 0 or 1, got \"" + fields[3] + "\"");
      }
    }
    triples.push_back(t);
  }

  const std::size_t m = mdl.strategies.size();
  const std::size_t p = mdl.processes.size();
  if (m == 0 || p == 0) {
    throw Error(ErrorKind::Validation, "strategy model file has no data rows");
  }

  mdl.costs.assign(m * p, 0.0);
  mdl.assign.assign(m * p, 0);
  std::vector<std::uint8_t> present(m * p, 0);
  for (const auto& t : triples) {
    const std::size_t idx = t.i * p + t.j;
    if (present[idx]) {
      throw Error(ErrorKind::Validation, "line " + std::to_string(t.line_no) + ": duplicate pair (\"" +
                                             mdl.strategies[t.i] + "\", \"" + mdl.processes[t.j] + "\")");
    }
    present[idx] = 1;
    mdl.costs[idx] = t.cost;
    mdl.assign[idx] = t.assigned;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (!present[i * p + j]) {
        throw Error(ErrorKind::Validation, "incomplete cost matrix: missing pair (\"" +
                                               mdl.strategies[i] + "\", \"" + mdl.processes[j] + "\")");
      }
    }
  }
  return mdl;
}

StrategyModel load_strategy_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open strategy model file: " + path);
  return load_strategy_model(in);
}

void save_strategy_model(const StrategyModel& mdl, std::ostream& out) {
  out << "strategy,process,cost,assigned\n";
  const std::size_t p = mdl.process_count();
  for (std::size_t i = 0; i < mdl.strategy_count(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), mdl.costs[i * p + j]);
      out << mdl.strategies[i] << ',' << mdl.processes[j] << ',' << std::string_view(buf, ptr - buf)
          << ',' << (mdl.assign[i * p + j] ? '1' : '0') << '\n';
    }
  }
}

StrategyConfig load_strategy_config(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("strategy config: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::Parse, "strategy config must be a JSON object");
  }
  StrategyConfig cfg;
  if (doc.contains("rule")) {
    cfg.rule = parse_coverage_rule(doc.at("rule").get<std::string>());
  }
  if (doc.contains("budget") && !doc.at("budget").is_null()) {
    cfg.budget = doc.at("budget").get<double>();
    if (!std::isfinite(*cfg.budget) || *cfg.budget < 0.0) {
      throw Error(ErrorKind::Validation, "strategy config: budget must be finite and nonnegative");
    }
  }
  if (doc.contains("base_cost")) {
    cfg.base_cost = doc.at("base_cost").get<double>();
    if (!std::isfinite(cfg.base_cost) || cfg.base_cost < 0.0) {
      throw Error(ErrorKind::Validation, "strategy config: base_cost must be finite and nonnegative");
    }
  }
  return cfg;
}

StrategyConfig load_strategy_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open strategy config file: " + path);
  return load_strategy_config(in);
}

}  // namespace corrint
