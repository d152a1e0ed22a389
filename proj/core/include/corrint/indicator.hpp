#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "corrint/corrwin.hpp"
#include "corrint/panel.hpp"

namespace corrint {

enum class Aggregate { Sum, Mean };

/// Tuning and reduction choices for the indicator engine.
struct EngineConfig {
  std::size_t block = 256;    ///< tile edge length in columns
  std::size_t threads = 0;    ///< worker count; 0 = available parallelism
  Aggregate aggregate = Aggregate::Sum;
  std::size_t materialization_limit = kDefaultMaterializationLimit;
  bool trailing_point = true; ///< include the evaluation at t = T
};

std::size_t resolved_threads(const EngineConfig& cfg);

/// Integral indicators over all valid evaluation times of a panel:
/// g[t][i] = sum_j |r_ij(t)| for the window ending just before t, and the
/// per-time aggregate V(t). Series loaded from files may carry v_agg only
/// (g empty).
struct IndicatorSeries {
  std::string mode_label;
  std::size_t n = 0;
  std::vector<std::size_t> times;      ///< ascending evaluation indices, k..T
  std::vector<std::vector<double>> g;  ///< one n-vector per time, or empty
  std::vector<double> v_agg;           ///< one value per time
};

/// Row sums of the absolute correlation matrix, computed from k-length dot
/// products in ascending j-block order without ever materializing the n×n
/// matrix. Each entry lies in [1, n]; dead columns give exactly 1. Results
/// are bit-identical across thread counts.
std::vector<double> row_abs_sums(const StandardizedWindow& z, const EngineConfig& cfg);

/// One g-vector per valid evaluation time t = k..T (T itself is the trailing
/// point just past the panel end; drop it via cfg.trailing_point).
/// Throws Error(Domain) when the panel is shorter than the window.
IndicatorSeries indicator_series(const Panel& p, const WindowSpec& w,
                                 const EngineConfig& cfg, std::string mode_label);

/// Whole-system state: the double sum of g over all times and parameters.
/// For aggregate-only series this reduces to the sum of v_agg.
/// Throws Error(Domain) on an empty series.
double total_indicator(const IndicatorSeries& s);

/// Streaming path for the sliding window: keeps the current k rows in a ring
/// buffer with per-column running sums and sums of squares (add newest, drop
/// oldest). Every k-th slide the sums are refreshed from the buffer, so a
/// fully turned-over window reproduces the from-scratch computation exactly;
/// between refreshes the drift stays within 1e-9 per indicator entry.
/// Single-owner state: not safe for concurrent mutation.
class SlidingIndicator {
 public:
  /// Seeds the state from a full window (usually window_slice at t = k).
  SlidingIndicator(const WindowMatrix& initial, EngineConfig cfg);

  /// Slides the window forward one period: drops x(t-k), adopts next_row as
  /// the new x(t-1), and returns the indicator vector at the new time.
  /// Throws Error(Domain) if next_row has the wrong size or non-finite values.
  std::vector<double> push_row(std::span<const double> next_row);

  std::size_t at_time() const { return at_time_; }
  std::size_t column_count() const { return n_; }
  std::size_t window_length() const { return k_; }

  /// Standardized view of the current window (same contract as standardize()).
  StandardizedWindow standardized() const;

 private:
  void refresh_sums();

  EngineConfig cfg_;
  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::size_t at_time_ = 0;
  std::size_t head_ = 0;            ///< ring slot of the newest row x(t-1)
  std::size_t slides_since_refresh_ = 0;
  std::vector<double> ring_;        ///< column-major n×k ring buffer
  std::vector<double> sum_;         ///< per-column running sum
  std::vector<double> sumsq_;       ///< per-column running sum of squares
};

}  // namespace corrint
