#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "corrint/panel.hpp"

namespace corrint {

/// A window column whose variance falls below this absolute threshold is
/// treated as dead: inputs are monetary amounts, so true zero variance is the
/// only realistic trigger.
inline constexpr double kDeadVarianceThreshold = 1e-24;

/// Default cap on materializing an explicit n×n correlation matrix.
inline constexpr std::size_t kDefaultMaterializationLimit = 4096;

/// Window data standardized per column: z = (x - mean) / s with
/// s^2 = sum((x - mean)^2) / (k - 1). Live columns satisfy mean(z) ~ 0 and
/// sum(z^2) = k - 1; dead columns are all-zero and flagged.
struct StandardizedWindow {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t at_time = 0;
  std::vector<double> z;          ///< column-major: z[j*k + l], l = window row
  std::vector<std::uint8_t> dead; ///< per column, 1 = zero variance

  double at(std::size_t l, std::size_t j) const { return z[j * k + l]; }
  bool is_dead(std::size_t j) const { return dead[j] != 0; }
  const double* column(std::size_t j) const { return z.data() + j * k; }
};

StandardizedWindow standardize(const WindowMatrix& w);

/// Pearson correlation of columns i and j of a standardized window, clamped
/// to [-1, 1]. Diagonal is 1 by convention (dead columns included); any pair
/// involving a dead column is 0 off the diagonal. Throws Error(Domain) on an
/// out-of-range index.
double correlation_entry(const StandardizedWindow& z, std::size_t i, std::size_t j);

/// Explicit correlation matrix. Symmetric by construction (each pair computed
/// once and mirrored), unit diagonal, |r| <= 1 after clamping.
struct CorrelationWindow {
  std::size_t n = 0;
  std::size_t at_time = 0;
  std::vector<double> r;          ///< row-major n×n
  std::vector<std::uint8_t> dead;

  double at(std::size_t i, std::size_t j) const { return r[i * n + j]; }
};

/// Materializes the full matrix; agrees with correlation_entry on every pair.
/// Only for small n — throws Error(Capacity) above the limit, pointing the
/// caller at the blocked indicator engine which never forms the matrix.
CorrelationWindow correlation_matrix(const StandardizedWindow& z,
                                     std::size_t materialization_limit = kDefaultMaterializationLimit);

}  // namespace corrint
