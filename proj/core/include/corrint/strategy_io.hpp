#pragma once

#include <iosfwd>
#include <string>

#include "corrint/strategy.hpp"

namespace corrint {

/// Options accompanying a strategy model file: {"budget": number,
/// "rule": string, "base_cost": number}, all optional.
struct StrategyConfig {
  CoverageRule rule = CoverageRule::EachProcessExactlyOne;
  std::optional<double> budget;
  double base_cost = 0.0;
};

/// Reads the triple-format CSV `strategy,process,cost[,assigned]`. Strategy
/// and process label order follows first appearance; every (strategy,
/// process) pair must appear exactly once so the cost matrix is complete.
StrategyModel load_strategy_model(std::istream& in);
StrategyModel load_strategy_model_file(const std::string& path);

/// Writes the same triple format back, including the assigned column.
void save_strategy_model(const StrategyModel& mdl, std::ostream& out);

StrategyConfig load_strategy_config(std::istream& in);
StrategyConfig load_strategy_config_file(const std::string& path);

}  // namespace corrint
