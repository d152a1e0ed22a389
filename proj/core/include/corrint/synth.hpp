#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corrint/panel.hpp"
#include "corrint/strategy.hpp"

namespace corrint {

/// How the n×f loading matrix is specified.
struct LoadingSpec {
  enum class Type {
    RankOne,  ///< one factor, every column loads 1
    Blocks,   ///< block b loads 1 on factor b; independent across blocks
    Matrix,   ///< explicit n×f values
  };
  Type type = Type::RankOne;
  std::vector<std::size_t> block_sizes;     ///< Blocks: must sum to n
  std::vector<std::vector<double>> values;  ///< Matrix: n rows of f loadings
};

/// Loading perturbation switched on from a given period (1-based), emulating
/// a control intervention: loadings become scale*L + shift.
struct RegimeSwitch {
  std::size_t start_period = 1;
  double scale = 1.0;
  double shift = 0.0;
};

/// Seeded factor-model surrogate for the unpublished enterprise data:
/// values[t] = L*f(t) + sigma*eps(t) with standard normal factor and noise
/// draws. One generator stream per column plus one for the factors, so
/// generation parallelizes without changing output.
struct SynthSpec {
  std::size_t n = 1;
  std::size_t periods = 12;
  LoadingSpec loadings;
  std::vector<double> noise_sigma;  ///< scalar broadcast or one entry per column
  std::optional<RegimeSwitch> regime_switch;
  std::uint64_t seed = 0;
};

SynthSpec load_synth_spec(std::istream& in);
SynthSpec load_synth_spec_file(const std::string& path);

/// Deterministic generation: identical spec (seed included) gives a
/// bit-identical panel. The result always passes validate_panel cleanly
/// apart from possible constant-column warnings.
Panel generate_panel(const SynthSpec& spec);

/// Returns a copy of the panel where every expense column of each assigned
/// process gains `effect` per assignment for all periods >= start_period
/// (1-based). The base panel is untouched. Throws Error(Validation) when a
/// model process id has no matching process_id in the panel.
Panel apply_strategy_overlay(const Panel& p, const StrategyModel& mdl,
                             double effect, std::size_t start_period);

}  // namespace corrint
