#include "corrint/strategy.hpp"

#include <cmath>
#include <limits>

namespace corrint {

void validate_model(const StrategyModel& mdl) {
  const std::size_t m = mdl.strategy_count();
  const std::size_t p = mdl.process_count();
  if (m == 0 || p == 0) {
    throw Error(ErrorKind::Validation, "strategy model needs at least one strategy and one process");
  }
  if (mdl.costs.size() != m * p) {
    throw Error(ErrorKind::Validation, "cost matrix holds " + std::to_string(mdl.costs.size()) +
                                           " entries, expected m*p = " + std::to_string(m * p));
  }
  if (mdl.assign.size() != m * p) {
    throw Error(ErrorKind::Validation, "assignment matrix holds " + std::to_string(mdl.assign.size()) +
                                           " entries, expected m*p = " + std::to_string(m * p));
  }
  for (const auto a : mdl.assign) {
    if (a > 1) throw Error(ErrorKind::Validation, "assignment entries must be 0 or 1");
  }
  for (const double c : mdl.costs) {
    if (!std::isfinite(c) || c < 0.0) {
      throw Error(ErrorKind::Validation, "costs must be finite and nonnegative");
    }
  }
  if (mdl.budget && (!std::isfinite(*mdl.budget) || *mdl.budget < 0.0)) {
    throw Error(ErrorKind::Validation, "budget must be finite and nonnegative");
  }
}

double evaluate_plan(const StrategyModel& mdl) {
  validate_model(mdl);
  // Process-major order, matching the exhaustive search's per-process cost
  // sums, so a returned plan re-evaluates to the reported objective bit for
  // bit.
  const std::size_t m = mdl.strategy_count();
  const std::size_t p = mdl.process_count();
  double v = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (mdl.assign[i * p + j]) v += mdl.costs[i * p + j];
    }
  }
  return v;
}

BudgetReport check_budget(const StrategyModel& mdl, double base_cost) {
  if (!mdl.budget) {
    throw Error(ErrorKind::Domain, "strategy model carries no budget to check against");
  }
  if (!(base_cost >= 0.0)) {
    throw Error(ErrorKind::Domain, "base cost must be nonnegative");
  }
  BudgetReport report;
  report.plan_cost = evaluate_plan(mdl);
  report.total_cost = base_cost + report.plan_cost;
  report.slack = *mdl.budget - report.total_cost;
  report.feasible = report.total_cost <= *mdl.budget;
  return report;
}

namespace {

AssignmentResult finish(const StrategyModel& base, std::vector<std::uint8_t> best,
                        std::optional<double> budget) {
  AssignmentResult res;
  res.model = base;
  res.model.assign = std::move(best);
  res.model.budget = budget;
  res.unconstrained_min = evaluate_plan(res.model);
  res.objective = res.unconstrained_min;
  res.feasible = !budget || res.unconstrained_min <= *budget;
  return res;
}

}  // namespace

AssignmentResult optimize_assignment(const StrategyModel& base, CoverageRule rule,
                                     std::optional<double> budget) {
  StrategyModel probe = base;
  probe.assign.assign(base.strategy_count() * base.process_count(), 0);
  probe.budget.reset();
  validate_model(probe);
  if (budget && (!std::isfinite(*budget) || *budget < 0.0)) {
    throw Error(ErrorKind::Validation, "budget must be finite and nonnegative");
  }

  const std::size_t m = base.strategy_count();
  const std::size_t p = base.process_count();
  std::vector<std::uint8_t> best(m * p, 0);

  // The free rule's literal minimum is the empty plan. Both coverage rules
  // reduce to a per-process argmin: costs are nonnegative, so one strategy
  // per process is optimal even when more are allowed.
  if (rule != CoverageRule::Free) {
    for (std::size_t j = 0; j < p; ++j) {
      std::size_t pick = 0;
      for (std::size_t i = 1; i < m; ++i) {
        if (base.costs[i * p + j] < base.costs[pick * p + j]) pick = i;
      }
      best[pick * p + j] = 1;
    }
  }
  return finish(base, std::move(best), budget);
}

AssignmentResult brute_force_assignment(const StrategyModel& base, CoverageRule rule,
                                        std::optional<double> budget) {
  StrategyModel probe = base;
  probe.assign.assign(base.strategy_count() * base.process_count(), 0);
  probe.budget.reset();
  validate_model(probe);
  if (budget && (!std::isfinite(*budget) || *budget < 0.0)) {
    throw Error(ErrorKind::Validation, "budget must be finite and nonnegative");
  }

  const std::size_t m = base.strategy_count();
  const std::size_t p = base.process_count();

  if (m > 20) {
    throw Error(ErrorKind::Capacity, "instance too large for exhaustive enumeration (m > 20)");
  }

  // Candidate strategy sets per process, in canonical order: single
  // strategies by index, subsets by ascending bitmask. First-found minima
  // under this order reproduce the optimizer's lowest-index tie-break.
  std::vector<std::uint64_t> options;
  switch (rule) {
    case CoverageRule::EachProcessExactlyOne:
      for (std::size_t i = 0; i < m; ++i) options.push_back(std::uint64_t{1} << i);
      break;
    case CoverageRule::EachProcessAtLeastOne:
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) options.push_back(mask);
      break;
    case CoverageRule::Free:
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) options.push_back(mask);
      break;
  }

  double combos = 1.0;
  for (std::size_t j = 0; j < p; ++j) combos *= static_cast<double>(options.size());
  if (combos > 1e6) {
    throw Error(ErrorKind::Capacity,
                "instance too large for exhaustive enumeration (" + std::to_string(combos) +
                    " candidate assignments, limit 1e6)");
  }

  // Column costs per option, precomputed; terms added in strategy order.
  std::vector<double> option_cost(options.size() * p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t o = 0; o < options.size(); ++o) {
      double c = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (options[o] >> i & 1) c += base.costs[i * p + j];
      }
      option_cost[o * p + j] = c;
    }
  }

  std::vector<std::size_t> choice(p, 0);
  std::vector<std::size_t> best_choice;
  double best_cost = std::numeric_limits<double>::infinity();
  while (true) {
    double cost = 0.0;
    for (std::size_t j = 0; j < p; ++j) cost += option_cost[choice[j] * p + j];
    if (cost < best_cost) {
      best_cost = cost;
      best_choice = choice;
    }
    // Odometer with the last process fastest: lexicographic enumeration.
    std::size_t j = p;
    while (j > 0) {
      --j;
      if (++choice[j] < options.size()) break;
      choice[j] = 0;
      if (j == 0) {
        std::vector<std::uint8_t> best(m * p, 0);
        for (std::size_t jj = 0; jj < p; ++jj) {
          const std::uint64_t mask = options[best_choice[jj]];
          for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1) best[i * p + jj] = 1;
          }
        }
        return finish(base, std::move(best), budget);
      }
    }
  }
}

CoverageRule parse_coverage_rule(const std::string& name) {
  if (name == "each_process_exactly_one") return CoverageRule::EachProcessExactlyOne;
  if (name == "each_process_at_least_one") return CoverageRule::EachProcessAtLeastOne;
  if (name == "free") return CoverageRule::Free;
  throw Error(ErrorKind::Parse, "unknown coverage rule \"" + name +
                                    "\" (expected each_process_exactly_one, "
                                    "each_process_at_least_one or free)");
}

std::string coverage_rule_name(CoverageRule rule) {
  switch (rule) {
    case CoverageRule::EachProcessExactlyOne: return "each_process_exactly_one";
    case CoverageRule::EachProcessAtLeastOne: return "each_process_at_least_one";
    case CoverageRule::Free: return "free";
  }
  return "each_process_exactly_one";
}

}  // namespace corrint
