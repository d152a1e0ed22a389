#include "corrint/synth.hpp"

#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "corrint/rng.hpp"

namespace corrint {

namespace {

// Loading matrix resolved to explicit n×f values.
struct ResolvedLoadings {
  std::size_t factors = 0;
  std::vector<double> values;  // row-major n×f

  double at(std::size_t j, std::size_t q) const { return values[j * factors + q]; }
};

ResolvedLoadings resolve_loadings(const SynthSpec& spec) {
  ResolvedLoadings out;
  switch (spec.loadings.type) {
    case LoadingSpec::Type::RankOne:
      out.factors = 1;
      out.values.assign(spec.n, 1.0);
      break;
    case LoadingSpec::Type::Blocks: {
      std::size_t total = 0;
      for (const auto size : spec.loadings.block_sizes) total += size;
      if (total != spec.n || spec.loadings.block_sizes.empty()) {
        throw Error(ErrorKind::Validation, "block sizes must be nonempty and sum to n = " +
                                               std::to_string(spec.n));
      }
      out.factors = spec.loadings.block_sizes.size();
      out.values.assign(spec.n * out.factors, 0.0);
      std::size_t col = 0;
      for (std::size_t blk = 0; blk < out.factors; ++blk) {
        for (std::size_t idx = 0; idx < spec.loadings.block_sizes[blk]; ++idx, ++col) {
          out.values[col * out.factors + blk] = 1.0;
        }
      }
      break;
    }
    case LoadingSpec::Type::Matrix: {
      if (spec.loadings.values.size() != spec.n) {
        throw Error(ErrorKind::Validation, "loading matrix must have n = " + std::to_string(spec.n) +
                                               " rows, got " +
                                               std::to_string(spec.loadings.values.size()));
      }
      out.factors = spec.loadings.values.empty() ? 0 : spec.loadings.values[0].size();
      if (out.factors == 0) {
        throw Error(ErrorKind::Validation, "loading matrix must have at least one factor column");
      }
      out.values.reserve(spec.n * out.factors);
      for (const auto& row : spec.loadings.values) {
        if (row.size() != out.factors) {
          throw Error(ErrorKind::Validation, "loading matrix rows must all have the same length");
        }
        for (const double v : row) {
          if (!std::isfinite(v)) {
            throw Error(ErrorKind::Validation, "loadings must be finite");
          }
          out.values.push_back(v);
        }
      }
      break;
    }
  }
  return out;
}

std::vector<double> resolve_sigma(const SynthSpec& spec) {
  std::vector<double> sigma(spec.n, 0.0);
  if (spec.noise_sigma.size() == 1) {
    sigma.assign(spec.n, spec.noise_sigma[0]);
  } else if (spec.noise_sigma.size() == spec.n) {
    sigma = spec.noise_sigma;
  } else if (!spec.noise_sigma.empty()) {
    throw Error(ErrorKind::Validation,
                "noise_sigma must be a scalar or carry one entry per column, got " +
                    std::to_string(spec.noise_sigma.size()) + " entries for n = " +
                    std::to_string(spec.n));
  }
  for (const double s : sigma) {
    if (!std::isfinite(s) || s < 0.0) {
      throw Error(ErrorKind::Validation, "noise_sigma entries must be finite and nonnegative");
    }
  }
  return sigma;
}

}  // namespace

Panel generate_panel(const SynthSpec& spec) {
  if (spec.n < 1 || spec.periods < 1) {
    throw Error(ErrorKind::Validation, "synth spec needs n >= 1 and periods >= 1");
  }
  const auto loadings = resolve_loadings(spec);
  const auto sigma = resolve_sigma(spec);
  std::size_t switch_start = spec.periods;  // 0-based index of the first perturbed period
  double lscale = 1.0;
  double lshift = 0.0;
  if (spec.regime_switch) {
    if (spec.regime_switch->start_period < 1) {
      throw Error(ErrorKind::Validation, "regime_switch.start_period is 1-based and must be >= 1");
    }
    if (!std::isfinite(spec.regime_switch->scale) || !std::isfinite(spec.regime_switch->shift)) {
      throw Error(ErrorKind::Validation, "regime_switch scale/shift must be finite");
    }
    switch_start = spec.regime_switch->start_period - 1;
    lscale = spec.regime_switch->scale;
    lshift = spec.regime_switch->shift;
  }

  const std::size_t T = spec.periods;
  const std::size_t n = spec.n;
  const std::size_t f = loadings.factors;

  // Stream 0 drives the shared factors; stream j+1 drives column j's noise.
  // Factor draws are row-major (time, then factor index).
  std::vector<double> factors(T * f);
  Xoshiro256pp factor_rng(spec.seed, 0);
  for (auto& v : factors) v = factor_rng.next_normal();

  Panel p;
  p.periods.reserve(T);
  for (std::size_t t = 0; t < T; ++t) p.periods.push_back(std::to_string(t + 1));
  p.params.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::string id = "p" + std::to_string(j + 1);
    p.params.push_back({id, id, ParamKind::Expense});
  }
  p.values.assign(T * n, 0.0);

  for (std::size_t j = 0; j < n; ++j) {
    Xoshiro256pp noise_rng(spec.seed, j + 1);
    const bool noisy = sigma[j] > 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      const bool switched = t >= switch_start;
      double v = 0.0;
      for (std::size_t q = 0; q < f; ++q) {
        const double lam = loadings.at(j, q);
        v += (switched ? lscale * lam + lshift : lam) * factors[t * f + q];
      }
      if (noisy) v += sigma[j] * noise_rng.next_normal();
      p.values[t * n + j] = v;
    }
  }
  return p;
}

Panel apply_strategy_overlay(const Panel& p, const StrategyModel& mdl, double effect,
                             std::size_t start_period) {
  validate_model(mdl);
  if (!std::isfinite(effect)) {
    throw Error(ErrorKind::Validation, "overlay effect must be finite");
  }
  if (start_period < 1) {
    throw Error(ErrorKind::Domain, "start_period is 1-based and must be >= 1");
  }

  std::unordered_set<std::string> panel_processes;
  for (const auto& meta : p.params) panel_processes.insert(meta.process_id);
  for (const auto& proc : mdl.processes) {
    if (!panel_processes.count(proc)) {
      throw Error(ErrorKind::Validation, "unknown process id \"" + proc + "\": no panel column carries it");
    }
  }

  // One effect per assignment: a process governed by two strategies gains 2x.
  std::unordered_map<std::string, std::size_t> assigned_count;
  const std::size_t pc = mdl.process_count();
  for (std::size_t j = 0; j < pc; ++j) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < mdl.strategy_count(); ++i) {
      if (mdl.assigned(i, j)) ++count;
    }
    if (count > 0) assigned_count[mdl.processes[j]] = count;
  }

  Panel out = p;
  const std::size_t n = p.param_count();
  for (std::size_t col = 0; col < n; ++col) {
    const auto& meta = p.params[col];
    if (meta.kind != ParamKind::Expense) continue;
    const auto it = assigned_count.find(meta.process_id);
    if (it == assigned_count.end()) continue;
    const double add = effect * static_cast<double>(it->second);
    for (std::size_t t = start_period - 1; t < p.period_count(); ++t) {
      out.value(t, col) += add;
    }
  }
  return out;
}

SynthSpec load_synth_spec(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("synth spec: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "synth spec must be a JSON object");

  SynthSpec spec;
  try {
    spec.n = doc.at("n").get<std::size_t>();
    spec.periods = doc.at("periods").get<std::size_t>();
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("noise_sigma")) {
      const auto& ns = doc.at("noise_sigma");
      if (ns.is_number()) {
        spec.noise_sigma = {ns.get<double>()};
      } else {
        spec.noise_sigma = ns.get<std::vector<double>>();
      }
    }
    if (doc.contains("loadings")) {
      const auto& ld = doc.at("loadings");
      const std::string type = ld.at("type").get<std::string>();
      if (type == "rank_one") {
        spec.loadings.type = LoadingSpec::Type::RankOne;
      } else if (type == "blocks") {
        spec.loadings.type = LoadingSpec::Type::Blocks;
        spec.loadings.block_sizes = ld.at("sizes").get<std::vector<std::size_t>>();
      } else if (type == "matrix") {
        spec.loadings.type = LoadingSpec::Type::Matrix;
        spec.loadings.values = ld.at("values").get<std::vector<std::vector<double>>>();
      } else {
        throw Error(ErrorKind::Parse,
                    "loadings.type must be rank_one, blocks or matrix, got \"" + type + "\"");
      }
    }
    if (doc.contains("regime_switch") && !doc.at("regime_switch").is_null()) {
      const auto& rs = doc.at("regime_switch");
      RegimeSwitch sw;
      sw.start_period = rs.at("start_period").get<std::size_t>();
      if (rs.contains("scale")) sw.scale = rs.at("scale").get<double>();
      if (rs.contains("shift")) sw.shift = rs.at("shift").get<double>();
      spec.regime_switch = sw;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("synth spec: ") + e.what());
  }
  return spec;
}

SynthSpec load_synth_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open synth spec file: " + path);
  return load_synth_spec(in);
}

}  // namespace corrint
