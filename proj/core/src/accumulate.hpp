#pragma once

#include <cmath>

namespace corrint::detail {

struct PlainSum {
  double sum = 0.0;

  void add(double v) { sum += v; }
  double value() const { return sum; }
};

// Neumaier variant of Kahan summation; strict sequential order, so it stays
// deterministic wherever PlainSum is.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace corrint::detail
