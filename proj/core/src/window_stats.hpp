#pragma once

#include <cmath>
#include <cstddef>

namespace corrint::detail {

// Column statistics from running sums. Both the batch standardization and the
// sliding engine derive mean/variance through this one helper so the two
// paths agree bit for bit whenever the sums themselves are equal.
struct ColumnStats {
  double mean;
  double s2;  // sum((x - mean)^2) / (k - 1), clamped at 0
};

inline ColumnStats column_stats(double sum, double sumsq, std::size_t k) {
  const double mean = sum / static_cast<double>(k);
  double s2 = (sumsq - sum * mean) / static_cast<double>(k - 1);
  if (s2 < 0.0) s2 = 0.0;  // cancellation guard
  return {mean, s2};
}

}  // namespace corrint::detail
