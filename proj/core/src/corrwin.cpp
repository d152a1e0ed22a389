#include "corrint/corrwin.hpp"

#include <cmath>

#include "window_stats.hpp"

namespace corrint {

StandardizedWindow standardize(const WindowMatrix& w) {
  if (w.k < 2) {
    throw Error(ErrorKind::Domain, "standardization requires k >= 2, got " + std::to_string(w.k));
  }
  StandardizedWindow out;
  out.k = w.k;
  out.n = w.n;
  out.at_time = w.at_time;
  out.z.assign(w.k * w.n, 0.0);
  out.dead.assign(w.n, 0);

  for (std::size_t j = 0; j < w.n; ++j) {
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::size_t l = 0; l < w.k; ++l) {
      const double x = w.at(l, j);
      sum += x;
      sumsq += x * x;
    }
    const auto stats = detail::column_stats(sum, sumsq, w.k);
    if (stats.s2 < kDeadVarianceThreshold) {
      out.dead[j] = 1;  // z stays all-zero
      continue;
    }
    const double s = std::sqrt(stats.s2);
    double* zj = out.z.data() + j * w.k;
    for (std::size_t l = 0; l < w.k; ++l) {
      zj[l] = (w.at(l, j) - stats.mean) / s;
    }
  }
  return out;
}

double correlation_entry(const StandardizedWindow& z, std::size_t i, std::size_t j) {
  if (i >= z.n || j >= z.n) {
    throw Error(ErrorKind::Domain, "column index out of range: (" + std::to_string(i) + ", " +
                                       std::to_string(j) + ") with n = " + std::to_string(z.n));
  }
  if (i == j) return 1.0;
  if (z.is_dead(i) || z.is_dead(j)) return 0.0;
  const double* zi = z.column(i);
  const double* zj = z.column(j);
  double dot = 0.0;
  for (std::size_t l = 0; l < z.k; ++l) dot += zi[l] * zj[l];
  double r = dot / static_cast<double>(z.k - 1);
  if (r > 1.0) r = 1.0;
  if (r < -1.0) r = -1.0;
  return r;
}

CorrelationWindow correlation_matrix(const StandardizedWindow& z, std::size_t materialization_limit) {
  if (z.n > materialization_limit) {
    throw Error(ErrorKind::Capacity,
                "n = " + std::to_string(z.n) + " exceeds the materialization limit of " +
                    std::to_string(materialization_limit) +
                    "; use the blocked indicator engine instead of forming the matrix");
  }
  CorrelationWindow out;
  out.n = z.n;
  out.at_time = z.at_time;
  out.dead = z.dead;
  out.r.assign(z.n * z.n, 0.0);
  for (std::size_t i = 0; i < z.n; ++i) {
    out.r[i * z.n + i] = 1.0;
    for (std::size_t j = i + 1; j < z.n; ++j) {
      const double rij = correlation_entry(z, i, j);
      out.r[i * z.n + j] = rij;
      out.r[j * z.n + i] = rij;
    }
  }
  return out;
}

}  // namespace corrint
