#include "corrint/indicator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "accumulate.hpp"
#include "window_stats.hpp"

namespace corrint {

namespace {

using detail::CompensatedSum;
using detail::PlainSum;

// Rows above this width get a compensated accumulator; below it, plain
// binary64 addition already holds rounding well under the 1e-10 contract.
constexpr std::size_t kCompensationThreshold = 100000;

// Tiled sweep over rows [i_begin, i_end). For every row the |r_ij| terms are
// accumulated in ascending j order, one term per column, so the result does
// not depend on the tile shape or on which thread ran the row.
template <typename Acc>
void rows_worker(const StandardizedWindow& z, std::size_t block, std::size_t i_begin,
                 std::size_t i_end, double* out) {
  const std::size_t n = z.n;
  const std::size_t k = z.k;
  const double inv_km1 = 1.0 / static_cast<double>(k - 1);

  std::vector<Acc> accs(std::min(block, i_end - i_begin));
  for (std::size_t ib = i_begin; ib < i_end; ib += block) {
    const std::size_t ie = std::min(ib + block, i_end);
    accs.assign(ie - ib, Acc{});
    for (std::size_t jb = 0; jb < n; jb += block) {
      const std::size_t je = std::min(jb + block, n);
      for (std::size_t i = ib; i < ie; ++i) {
        if (z.dead[i]) continue;
        const double* zi = z.column(i);
        Acc& acc = accs[i - ib];
        for (std::size_t j = jb; j < je; ++j) {
          if (j == i) {
            acc.add(1.0);
            continue;
          }
          if (z.dead[j]) continue;  // |0| term, leaves the sum unchanged
          const double* zj = z.column(j);
          double dot = 0.0;
          for (std::size_t l = 0; l < k; ++l) dot += zi[l] * zj[l];
          double r = dot * inv_km1;
          if (r > 1.0) r = 1.0;
          if (r < -1.0) r = -1.0;
          acc.add(std::abs(r));
        }
      }
    }
    for (std::size_t i = ib; i < ie; ++i) {
      out[i] = z.dead[i] ? 1.0 : accs[i - ib].value();
    }
  }
}

void run_rows(const StandardizedWindow& z, const EngineConfig& cfg, std::size_t i_begin,
              std::size_t i_end, double* out) {
  const std::size_t block = std::max<std::size_t>(1, cfg.block);
  if (z.n > kCompensationThreshold) {
    rows_worker<CompensatedSum>(z, block, i_begin, i_end, out);
  } else {
    rows_worker<PlainSum>(z, block, i_begin, i_end, out);
  }
}

}  // namespace

std::size_t resolved_threads(const EngineConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::vector<double> row_abs_sums(const StandardizedWindow& z, const EngineConfig& cfg) {
  const std::size_t n = z.n;
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;

  std::size_t workers = std::min(resolved_threads(cfg), n);
  // Below ~2^21 pair dots the spawn overhead dominates; stay serial.
  if (workers > 1 && n * n < (std::size_t{1} << 21)) workers = 1;

  if (workers <= 1) {
    run_rows(z, cfg, 0, n, out.data());
    return out;
  }

  // Contiguous row ranges; every row is written by exactly one worker and its
  // value does not depend on the partition.
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t i_begin = w * chunk;
    const std::size_t i_end = std::min(i_begin + chunk, n);
    if (i_begin >= i_end) break;
    pool.emplace_back([&z, &cfg, i_begin, i_end, &out] { run_rows(z, cfg, i_begin, i_end, out.data()); });
  }
  for (auto& t : pool) t.join();
  return out;
}

namespace {

double aggregate_g(const std::vector<double>& g, Aggregate mode) {
  double sum = 0.0;
  for (const double v : g) sum += v;
  return mode == Aggregate::Sum ? sum : sum / static_cast<double>(g.size());
}

}  // namespace

IndicatorSeries indicator_series(const Panel& p, const WindowSpec& w, const EngineConfig& cfg,
                                 std::string mode_label) {
  const std::size_t T = p.period_count();
  const std::size_t t_last = cfg.trailing_point ? T : (T > 0 ? T - 1 : 0);
  if (w.k < 2) {
    throw Error(ErrorKind::Domain, "window length k must be at least 2, got " + std::to_string(w.k));
  }
  if (t_last < w.k) {
    throw Error(ErrorKind::Domain, "panel shorter than window: T = " + std::to_string(T) +
                                       ", k = " + std::to_string(w.k));
  }

  IndicatorSeries s;
  s.mode_label = std::move(mode_label);
  s.n = p.param_count();
  for (std::size_t t = w.k; t <= t_last; ++t) {
    const auto window = window_slice(p, t, w);
    const auto z = standardize(window);
    auto g = row_abs_sums(z, cfg);
    s.times.push_back(t);
    s.v_agg.push_back(aggregate_g(g, cfg.aggregate));
    s.g.push_back(std::move(g));
  }
  return s;
}

double total_indicator(const IndicatorSeries& s) {
  if (s.times.empty()) {
    throw Error(ErrorKind::Domain, "indicator series is empty");
  }
  double total = 0.0;
  if (!s.g.empty()) {
    for (const auto& gt : s.g) {
      double row = 0.0;
      for (const double v : gt) row += v;
      total += row;
    }
  } else {
    for (const double v : s.v_agg) total += v;
  }
  return total;
}

SlidingIndicator::SlidingIndicator(const WindowMatrix& initial, EngineConfig cfg)
    : cfg_(cfg), k_(initial.k), n_(initial.n), at_time_(initial.at_time) {
  if (k_ < 2) {
    throw Error(ErrorKind::Domain, "window length k must be at least 2, got " + std::to_string(k_));
  }
  ring_.assign(n_ * k_, 0.0);
  sum_.assign(n_, 0.0);
  sumsq_.assign(n_, 0.0);
  head_ = 0;
  // Ring slot (head_ + l) % k holds window row l; with head_ = 0 the layout
  // matches the window matrix directly.
  for (std::size_t j = 0; j < n_; ++j) {
    double* col = ring_.data() + j * k_;
    for (std::size_t l = 0; l < k_; ++l) col[l] = initial.at(l, j);
  }
  refresh_sums();
}

void SlidingIndicator::refresh_sums() {
  // Same per-column order as standardize(): window row 0 (newest) to k-1.
  for (std::size_t j = 0; j < n_; ++j) {
    const double* col = ring_.data() + j * k_;
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::size_t l = 0; l < k_; ++l) {
      const double x = col[(head_ + l) % k_];
      sum += x;
      sumsq += x * x;
    }
    sum_[j] = sum;
    sumsq_[j] = sumsq;
  }
  slides_since_refresh_ = 0;
}

std::vector<double> SlidingIndicator::push_row(std::span<const double> next_row) {
  if (next_row.size() != n_) {
    throw Error(ErrorKind::Domain, "row has " + std::to_string(next_row.size()) +
                                       " values, expected " + std::to_string(n_));
  }
  for (std::size_t j = 0; j < n_; ++j) {
    if (!std::isfinite(next_row[j])) {
      throw Error(ErrorKind::Domain, "non-finite value in pushed row at column " + std::to_string(j));
    }
  }

  // The oldest row lives one slot behind head_; the new row overwrites it.
  head_ = (head_ + k_ - 1) % k_;
  for (std::size_t j = 0; j < n_; ++j) {
    double* slot = ring_.data() + j * k_ + head_;
    const double dropped = *slot;
    const double added = next_row[j];
    sum_[j] += added - dropped;
    sumsq_[j] += added * added - dropped * dropped;
    *slot = added;
  }
  ++at_time_;
  if (++slides_since_refresh_ >= k_) refresh_sums();

  const auto z = standardized();
  return row_abs_sums(z, cfg_);
}

StandardizedWindow SlidingIndicator::standardized() const {
  StandardizedWindow out;
  out.k = k_;
  out.n = n_;
  out.at_time = at_time_;
  out.z.assign(k_ * n_, 0.0);
  out.dead.assign(n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    const auto stats = detail::column_stats(sum_[j], sumsq_[j], k_);
    if (stats.s2 < kDeadVarianceThreshold) {
      out.dead[j] = 1;
      continue;
    }
    const double s = std::sqrt(stats.s2);
    const double* col = ring_.data() + j * k_;
    double* zj = out.z.data() + j * k_;
    for (std::size_t l = 0; l < k_; ++l) {
      zj[l] = (col[(head_ + l) % k_] - stats.mean) / s;
    }
  }
  return out;
}

}  // namespace corrint
