#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrint/error.hpp"

namespace corrint {

/// Multiplicity of the strategy-to-process linkage enforced by the optimizer.
enum class CoverageRule {
  EachProcessExactlyOne,
  EachProcessAtLeastOne,
  Free,
};

/// Binary assignment of m strategies to p business processes with per-pair
/// application costs (thousand currency units) and an optional resource
/// ceiling.
struct StrategyModel {
  std::vector<std::string> strategies;  ///< m labels
  std::vector<std::string> processes;   ///< p labels
  std::vector<std::uint8_t> assign;     ///< row-major m×p, entries 0/1
  std::vector<double> costs;            ///< row-major m×p, >= 0
  std::optional<double> budget;         ///< resource ceiling C, >= 0

  std::size_t strategy_count() const { return strategies.size(); }
  std::size_t process_count() const { return processes.size(); }

  bool assigned(std::size_t i, std::size_t j) const {
    return assign[i * processes.size() + j] != 0;
  }
  double cost(std::size_t i, std::size_t j) const {
    return costs[i * processes.size() + j];
  }
};

/// Throws Error(Validation) unless dimensions agree, assign is 0/1, costs are
/// finite and >= 0, and the budget (when present) is >= 0.
void validate_model(const StrategyModel& mdl);

/// Total cost V of the plan: the sum of costs over all assigned pairs.
double evaluate_plan(const StrategyModel& mdl);

struct BudgetReport {
  bool feasible;     ///< base_cost + plan cost <= budget
  double plan_cost;  ///< V of the assignment
  double total_cost; ///< base_cost + plan_cost
  double slack;      ///< budget - total_cost (negative when infeasible)
};

/// Checks the resource constraint C(X) <= C for the enterprise base cost plus
/// the plan overhead. Requires mdl.budget to be set.
BudgetReport check_budget(const StrategyModel& mdl, double base_cost);

/// Outcome of an assignment search. When the budget excludes every plan that
/// satisfies the rule, feasible is false and the model still carries the
/// unconstrained minimizer so callers can see how far off the budget is.
struct AssignmentResult {
  bool feasible = true;
  StrategyModel model;             ///< chosen assignment (labels/costs copied)
  double objective = 0.0;          ///< V of the chosen plan
  double unconstrained_min = 0.0;  ///< best objective ignoring the budget
};

/// Minimizes plan cost under the coverage rule. Exactly-one and at-least-one
/// reduce to a per-process argmin over strategies (costs are nonnegative);
/// ties break to the lowest strategy index. The free rule has the degenerate
/// minimum of selecting nothing. The assign field of `base` is ignored.
AssignmentResult optimize_assignment(const StrategyModel& base, CoverageRule rule,
                                     std::optional<double> budget);

/// Exhaustive oracle: enumerates every assignment satisfying the rule in
/// canonical order and keeps the first cost-minimal one, which matches the
/// optimizer's tie-break. Throws Error(Capacity) when the enumeration would
/// exceed 10^6 candidates.
AssignmentResult brute_force_assignment(const StrategyModel& base, CoverageRule rule,
                                        std::optional<double> budget);

CoverageRule parse_coverage_rule(const std::string& name);
std::string coverage_rule_name(CoverageRule rule);

}  // namespace corrint
