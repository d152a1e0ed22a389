#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "corrint/compare.hpp"
#include "corrint/corrwin.hpp"
#include "corrint/indicator.hpp"
#include "corrint/panel_io.hpp"
#include "corrint/rng.hpp"
#include "corrint/synth.hpp"

using namespace corrint;

namespace {

SynthSpec rank_one_spec(std::size_t n, std::size_t T, std::uint64_t seed) {
  SynthSpec spec;
  spec.n = n;
  spec.periods = T;
  spec.seed = seed;
  spec.loadings.type = LoadingSpec::Type::RankOne;
  return spec;
}

}  // namespace

TEST_CASE("portable_log agrees with the libm log") {
  Xoshiro256pp rng(5);
  for (int trial = 0; trial < 10000; ++trial) {
    const double x = rng.next_unit() * 1e6 + 1e-12;
    const double got = portable_log(x);
    const double want = std::log(x);
    REQUIRE(std::abs(got - want) <= 1e-14 * std::max(1.0, std::abs(want)));
  }
  CHECK(portable_log(1.0) == 0.0);
}

TEST_CASE("normal_icdf hits known quantiles") {
  CHECK(normal_icdf(0.5) == 0.0);
  CHECK(std::abs(normal_icdf(0.975) - 1.959963984540054) <= 1e-7);
  CHECK(std::abs(normal_icdf(0.025) + 1.959963984540054) <= 1e-7);
  CHECK(std::abs(normal_icdf(0.84134474606854293) - 1.0) <= 1e-7);
  CHECK(std::abs(normal_icdf(0.0013498980316300933) + 3.0) <= 1e-6);
  // symmetry across central and tail branches (1-p itself rounds, so the
  // comparison cannot be bitwise)
  for (const double p : {0.3, 0.1, 0.02, 0.001}) {
    REQUIRE(std::abs(normal_icdf(p) + normal_icdf(1.0 - p)) <= 1e-9);
  }
}

TEST_CASE("generator streams are deterministic and distinct") {
  Xoshiro256pp a(42, 0);
  Xoshiro256pp b(42, 0);
  Xoshiro256pp c(42, 1);
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next();
    REQUIRE(va == b.next());
    any_diff = any_diff || (va != c.next());
  }
  CHECK(any_diff);
}

TEST_CASE("sampled normals have the right moments") {
  Xoshiro256pp rng(7, 3);
  const int N = 100000;
  double sum = 0.0;
  double sumsq = 0.0;
  for (int i = 0; i < N; ++i) {
    const double x = rng.next_normal();
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / N;
  const double var = sumsq / N - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("same seed gives a bit-identical panel") {
  const auto spec = rank_one_spec(4, 20, 99);
  const auto p1 = generate_panel(spec);
  const auto p2 = generate_panel(spec);
  REQUIRE(p1.values == p2.values);
  CHECK(p1.periods == p2.periods);

  std::ostringstream s1, s2;
  save_panel(p1, s1);
  save_panel(p2, s2);
  CHECK(s1.str() == s2.str());

  auto other = spec;
  other.seed = 100;
  CHECK(generate_panel(other).values != p1.values);
}

TEST_CASE("rank-one panel with no noise is perfectly coupled") {
  const auto p = generate_panel(rank_one_spec(5, 12, 3));
  EngineConfig cfg;
  cfg.threads = 1;
  const auto s = indicator_series(p, WindowSpec{6}, cfg, "synthetic");
  for (const auto& gt : s.g) {
    for (const double v : gt) REQUIRE(v == doctest::Approx(5.0).epsilon(1e-9));
  }
}

TEST_CASE("generated panels validate cleanly") {
  SynthSpec spec = rank_one_spec(6, 15, 11);
  spec.noise_sigma = {0.5};
  spec.loadings.type = LoadingSpec::Type::Blocks;
  spec.loadings.block_sizes = {2, 4};
  spec.regime_switch = RegimeSwitch{7, 1.5, 0.25};
  const auto p = generate_panel(spec);
  const auto report = validate_panel(p);
  for (const auto& f : report.findings) CHECK(f.severity != Severity::Error);

  SynthSpec matrix_spec = rank_one_spec(2, 10, 5);
  matrix_spec.loadings.type = LoadingSpec::Type::Matrix;
  matrix_spec.loadings.values = {{1.0, 0.5}, {0.0, 2.0}};
  matrix_spec.noise_sigma = {0.1, 0.2};
  CHECK(validate_panel(generate_panel(matrix_spec)).ok());
}

TEST_CASE("synth spec validation") {
  SynthSpec bad = rank_one_spec(4, 10, 1);
  bad.loadings.type = LoadingSpec::Type::Blocks;
  bad.loadings.block_sizes = {2, 1};  // sums to 3, not 4
  CHECK_THROWS_AS(generate_panel(bad), Error);

  SynthSpec sigma = rank_one_spec(4, 10, 1);
  sigma.noise_sigma = {0.1, 0.2};  // neither scalar nor n entries
  CHECK_THROWS_AS(generate_panel(sigma), Error);

  SynthSpec negative = rank_one_spec(4, 10, 1);
  negative.noise_sigma = {-1.0};
  CHECK_THROWS_AS(generate_panel(negative), Error);
}

TEST_CASE("cross-block coupling matches the independent-window constant") {
  // Two independent blocks: |r| of two unrelated length-6 Gaussian windows
  // has mean 3/8 (density 0.75*(1 - r^2) under independence). Non-overlapping
  // windows give independent samples.
  SynthSpec spec = rank_one_spec(2, 60000, 2024);
  spec.loadings.type = LoadingSpec::Type::Blocks;
  spec.loadings.block_sizes = {1, 1};
  const auto p = generate_panel(spec);

  const std::size_t k = 6;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t t = k; t <= p.period_count(); t += k) {
    const auto z = standardize(window_slice(p, t, WindowSpec{k}));
    acc += std::abs(correlation_entry(z, 0, 1));
    ++count;
  }
  REQUIRE(count == 10000);
  const double mean_abs_r = acc / static_cast<double>(count);
  CHECK(std::abs(mean_abs_r - 0.375) <= 0.01);

  // within-block coupling is perfect
  SynthSpec within = spec;
  within.loadings.block_sizes = {2};
  const auto pw = generate_panel(within);
  const auto zw = standardize(window_slice(pw, k, WindowSpec{k}));
  CHECK(std::abs(correlation_entry(zw, 0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regime switch leaves earlier periods untouched") {
  SynthSpec base = rank_one_spec(3, 20, 77);
  SynthSpec switched = base;
  switched.regime_switch = RegimeSwitch{9, 2.0, 1.0};
  const auto p0 = generate_panel(base);
  const auto p1 = generate_panel(switched);
  for (std::size_t t = 0; t < 8; ++t) {  // periods 1..8 precede the switch
    for (std::size_t j = 0; j < 3; ++j) REQUIRE(p1.value(t, j) == p0.value(t, j));
  }
  bool changed = false;
  for (std::size_t t = 8; t < 20; ++t) {
    for (std::size_t j = 0; j < 3; ++j) changed = changed || p1.value(t, j) != p0.value(t, j);
  }
  CHECK(changed);
}

TEST_CASE("synth spec JSON loads every field") {
  std::istringstream in(R"({
    "n": 4, "periods": 12, "seed": 9,
    "noise_sigma": [0.1, 0.2, 0.3, 0.4],
    "loadings": {"type": "blocks", "sizes": [2, 2]},
    "regime_switch": {"start_period": 7, "scale": 1.5, "shift": 0.5}
  })");
  const auto spec = load_synth_spec(in);
  CHECK(spec.n == 4);
  CHECK(spec.periods == 12);
  CHECK(spec.seed == 9);
  CHECK(spec.noise_sigma.size() == 4);
  CHECK(spec.loadings.type == LoadingSpec::Type::Blocks);
  REQUIRE(spec.regime_switch.has_value());
  CHECK(spec.regime_switch->start_period == 7);
  CHECK(spec.regime_switch->scale == 1.5);
  CHECK(spec.regime_switch->shift == 0.5);

  std::istringstream bad(R"({"n": 2})");
  CHECK_THROWS_AS(load_synth_spec(bad), Error);
  std::istringstream badtype(R"({"n": 2, "periods": 5, "loadings": {"type": "magic"}})");
  CHECK_THROWS_AS(load_synth_spec(badtype), Error);
}

namespace {

StrategyModel overlay_model() {
  StrategyModel mdl;
  mdl.strategies = {"product", "resource"};
  mdl.processes = {"harvest", "transport"};
  mdl.costs = {1, 2, 3, 4};
  mdl.assign = {1, 0, 0, 0};  // product -> harvest
  return mdl;
}

Panel overlay_panel() {
  Panel p;
  for (int t = 0; t < 10; ++t) p.periods.push_back(std::to_string(t + 1));
  p.params = {{"exp_h", "harvest", ParamKind::Expense},
              {"inc_h", "harvest", ParamKind::Income},
              {"exp_t", "transport", ParamKind::Expense}};
  for (int t = 0; t < 10; ++t) {
    p.values.push_back(10.0 + t);
    p.values.push_back(20.0 + 2 * t);
    p.values.push_back(5.0 + 0.5 * t);
  }
  return p;
}

}  // namespace

TEST_CASE("overlay with zero effect is the identity") {
  const auto p = overlay_panel();
  const auto q = apply_strategy_overlay(p, overlay_model(), 0.0, 7);
  CHECK(q.values == p.values);
}

TEST_CASE("overlay adds the effect to expense columns from the start period") {
  const auto p = overlay_panel();
  const auto q = apply_strategy_overlay(p, overlay_model(), 2.5, 7);
  for (std::size_t t = 0; t < 10; ++t) {
    const double expected = t >= 6 ? p.value(t, 0) + 2.5 : p.value(t, 0);
    REQUIRE(q.value(t, 0) == expected);
    REQUIRE(q.value(t, 1) == p.value(t, 1));  // income column untouched
    REQUIRE(q.value(t, 2) == p.value(t, 2));  // unassigned process untouched
  }
  // base panel unchanged
  CHECK(p.value(6, 0) == 16.0);
}

TEST_CASE("overlay stacks one effect per assignment") {
  auto mdl = overlay_model();
  mdl.assign = {1, 0, 1, 0};  // both strategies govern harvest
  const auto p = overlay_panel();
  const auto q = apply_strategy_overlay(p, mdl, 1.5, 1);
  for (std::size_t t = 0; t < 10; ++t) REQUIRE(q.value(t, 0) == p.value(t, 0) + 3.0);
}

TEST_CASE("overlay rejects unknown process ids") {
  auto mdl = overlay_model();
  mdl.processes[1] = "shipping";
  try {
    apply_strategy_overlay(overlay_panel(), mdl, 1.0, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("shipping") != std::string::npos);
  }
}

TEST_CASE("windows ending before the overlay start see no delta") {
  SynthSpec spec = rank_one_spec(3, 16, 123);
  spec.noise_sigma = {0.3};
  auto p = generate_panel(spec);
  // group all columns into one process
  for (auto& meta : p.params) meta.process_id = "all";

  StrategyModel mdl;
  mdl.strategies = {"s"};
  mdl.processes = {"all"};
  mdl.costs = {1.0};
  mdl.assign = {1};

  const std::size_t start = 9;  // 1-based; 0-based switch index 8
  const auto q = apply_strategy_overlay(p, mdl, 50.0, start);

  EngineConfig cfg;
  cfg.threads = 1;
  const auto sb = indicator_series(p, WindowSpec{6}, cfg, "basic_mode");
  const auto sc = indicator_series(q, WindowSpec{6}, cfg, "strat_plan");
  const auto cmp = compare_modes(sb, sc);
  bool saw_late_change = false;
  for (std::size_t idx = 0; idx < cmp.delta.size(); ++idx) {
    if (cmp.base.times[idx] <= start - 1) {
      REQUIRE(cmp.delta[idx] == 0.0);  // window rows all precede the switch
    } else {
      saw_late_change = saw_late_change || cmp.delta[idx] != 0.0;
    }
  }
  CHECK(saw_late_change);
}
