#pragma once

#include <random>
#include <string>
#include <vector>

#include "corrint/corrwin.hpp"
#include "corrint/indicator.hpp"
#include "corrint/panel.hpp"

namespace testutil {

inline corrint::Panel make_panel(std::size_t T, std::size_t n, std::vector<double> values) {
  corrint::Panel p;
  for (std::size_t t = 0; t < T; ++t) p.periods.push_back(std::to_string(t + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "c" + std::to_string(i + 1);
    p.params.push_back({id, id, corrint::ParamKind::Expense});
  }
  p.values = std::move(values);
  return p;
}

inline corrint::Panel random_panel(std::mt19937_64& rng, std::size_t T, std::size_t n,
                                   double lo = 0.0, double hi = 100.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> values(T * n);
  for (auto& v : values) v = dist(rng);
  return make_panel(T, n, std::move(values));
}

// Window whose column j holds the given values in window-row order (row 0 =
// newest). Convenient for transcribing hand examples.
inline corrint::WindowMatrix window_from_columns(const std::vector<std::vector<double>>& cols) {
  corrint::WindowMatrix w;
  w.n = cols.size();
  w.k = cols.empty() ? 0 : cols[0].size();
  w.at_time = w.k;
  w.rows.assign(w.k * w.n, 0.0);
  for (std::size_t j = 0; j < w.n; ++j) {
    for (std::size_t l = 0; l < w.k; ++l) w.rows[l * w.n + j] = cols[j][l];
  }
  return w;
}

// Naive oracle for the blocked engine: materialize the correlation matrix and
// take row sums of absolute values.
inline std::vector<double> naive_row_abs_sums(const corrint::StandardizedWindow& z) {
  const auto cm = corrint::correlation_matrix(z, z.n);
  std::vector<double> out(z.n, 0.0);
  for (std::size_t i = 0; i < z.n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < z.n; ++j) acc += std::abs(cm.at(i, j));
    out[i] = acc;
  }
  return out;
}

}  // namespace testutil
