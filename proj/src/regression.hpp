// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

// Regression-theorem engine shared by the G2 and G1 grids.
//
// Row i starts from a conditional operator seeded at t_i and is propagated
// with the cached step maps until the drive support ends (step index
// first_free). From there the free map multiplies the read-out component by
// a constant factor q per step, so the rest of the row is
// value(j0) * q^(j - j0) and every integral over it is a geometric sum.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "pulsetls/error.hpp"
#include "pulsetls/lindblad.hpp"
#include "pulsetls/parallel.hpp"
#include "pulsetls/state.hpp"

namespace pulsetls::detail {

// About 1 GiB of doubles.
inline constexpr std::size_t kMaxStoredEntries = std::size_t{1} << 27;

struct OutputLayout {
  std::size_t t1_stride = 1;
  std::size_t tau_stride = 1;
  std::size_t t1_rows = 0;  // grid rows eligible for storage: i < t1_rows
};

template <typename T>
struct RegressionOutput {
  std::vector<std::size_t> row_index;  // grid index of each stored row
  std::vector<std::size_t> col_index;  // tau index of each stored column
  std::vector<T> stored;               // row-major
  std::vector<T> row_integral;         // trapezoid over tau, per grid row
  std::vector<T> col_integral;         // trapezoid over t1, per tau index
  std::vector<T> second_time;          // sum_j w_j value(k - j, j), per k
  T total{};                           // trapezoid over t1 of row_integral
};

inline double trapezoid_weight(std::size_t k, std::size_t n, double dt) {
  return (k == 0 || k + 1 == n) ? 0.5 * dt : dt;
}

// Seed(i) -> std::optional<Vec4>; nullopt marks an identically zero row.
// Readout(v) -> T reads the component that the free map scales by q.
// With want_second_time, rows at or after first_free must seed nullopt.
template <typename T, typename Seed, typename Readout>
RegressionOutput<T> regress(const Propagator& propagator, const TimeGrid& grid,
                            std::size_t n_tau, T q, const Seed& seed,
                            const Readout& readout, const OutputLayout& layout,
                            bool want_second_time, int threads) {
  const std::size_t n = grid.size();
  const double dt = grid.dt;
  const std::size_t k_off = propagator.first_free();
  const std::size_t n_explicit = std::min(n, k_off);

  RegressionOutput<T> out;
  for (std::size_t i = 0; i < std::min(n, layout.t1_rows);
       i += layout.t1_stride) {
    out.row_index.push_back(i);
  }
  for (std::size_t j = 0; j < n_tau; j += layout.tau_stride) {
    out.col_index.push_back(j);
  }
  const std::size_t n_cols = out.col_index.size();
  if (n_cols > 0 && out.row_index.size() > kMaxStoredEntries / n_cols) {
    throw InvalidArgument(
        "stored correlation matrix too large; raise t1_stride or tau_stride");
  }
  out.stored.assign(out.row_index.size() * n_cols, T{});
  out.row_integral.assign(n, T{});
  out.col_integral.assign(n_tau, T{});
  if (want_second_time) out.second_time.assign(n, T{});

  // Stored-row slot for grid row i, or npos.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  auto slot_of = [&](std::size_t i) {
    if (i >= std::min(n, layout.t1_rows) || i % layout.t1_stride != 0) {
      return npos;
    }
    return i / layout.t1_stride;
  };

  // Value at the first tail index j0 = max(k_off - i, 0), if j0 < n_tau.
  std::vector<T> tail_start(n, T{});
  std::vector<char> has_tail(n, 0);

  // Explicit part: rows i < k_off, delays j < k_off - i. Blocks of rows are
  // reduced in a fixed order so the sums do not depend on threads.
  constexpr std::size_t kRowsPerBlock = 64;
  const std::size_t blocks = (n_explicit + kRowsPerBlock - 1) / kRowsPerBlock;
  const std::size_t explicit_span = std::min(n_tau, k_off);
  std::vector<std::vector<T>> col_partial(blocks);
  std::vector<std::vector<T>> second_partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    auto& cols = col_partial[b];
    auto& second = second_partial[b];
    cols.assign(explicit_span, T{});
    if (want_second_time) second.assign(n_explicit, T{});
    const std::size_t end = std::min(n_explicit, (b + 1) * kRowsPerBlock);
    for (std::size_t i = b * kRowsPerBlock; i < end; ++i) {
      const std::optional<Vec4> start = seed(i);
      if (!start) continue;
      Vec4 v = *start;
      const double wi = trapezoid_weight(i, n, dt);
      const std::size_t slot = slot_of(i);
      T row_sum{};
      std::size_t j = 0;
      for (; j < n_tau && i + j < k_off; ++j) {
        const T value = readout(v);
        const double wj = trapezoid_weight(j, n_tau, dt);
        row_sum += wj * value;
        cols[j] += wi * value;
        if (want_second_time && i + j < n) second[i + j] += wj * value;
        if (slot != npos && j % layout.tau_stride == 0) {
          out.stored[slot * n_cols + j / layout.tau_stride] = value;
        }
        v = propagator.step(i + j, v);
      }
      out.row_integral[i] = row_sum;
      if (j < n_tau) {
        tail_start[i] = readout(v);
        has_tail[i] = 1;
      }
    }
  });
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t j = 0; j < explicit_span; ++j) {
      out.col_integral[j] += col_partial[b][j];
    }
    if (want_second_time) {
      for (std::size_t k = 0; k < n_explicit; ++k) {
        out.second_time[k] += second_partial[b][k];
      }
    }
  }

  // Rows after the support are pure tails starting at j0 = 0.
  for (std::size_t i = n_explicit; i < n; ++i) {
    const std::optional<Vec4> start = seed(i);
    if (!start) continue;
    tail_start[i] = readout(*start);
    has_tail[i] = 1;
  }

  // Geometric tails. power[m] = q^m, prefix[m] = sum_{l <= m} q^l.
  std::vector<T> power(n_tau), prefix(n_tau);
  {
    T p = T{1};
    T s{};
    for (std::size_t m = 0; m < n_tau; ++m) {
      power[m] = p;
      s += p;
      prefix[m] = s;
      p *= q;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_tail[i]) continue;
    const std::size_t j0 = i < k_off ? k_off - i : 0;
    const std::size_t last = n_tau - 1 - j0;  // m index of the last column
    T weight_sum = prefix[last] - 0.5 * power[last];
    if (j0 == 0) weight_sum -= 0.5 * power[0];
    out.row_integral[i] += dt * weight_sum * tail_start[i];
    const std::size_t slot = slot_of(i);
    if (slot != npos) {
      for (std::size_t c = 0; c < n_cols; ++c) {
        const std::size_t j = out.col_index[c];
        if (j >= j0) out.stored[slot * n_cols + c] = tail_start[i] * power[j - j0];
      }
    }
  }
  // Column integrals of the tails: rows entering their tail at delay j are
  // i = k_off - j (or every i >= k_off at j = 0).
  {
    T running{};
    for (std::size_t i = k_off; i < n; ++i) {
      if (has_tail[i]) running += trapezoid_weight(i, n, dt) * tail_start[i];
    }
    for (std::size_t j = 0; j < n_tau; ++j) {
      if (j > 0) running *= q;
      if (j > 0 && j <= k_off) {
        const std::size_t i = k_off - j;
        if (i < n && has_tail[i]) {
          running += trapezoid_weight(i, n, dt) * tail_start[i];
        }
      }
      out.col_integral[j] += running;
    }
  }
  // Second-time density from the tails of rows i < k_off; at time index
  // k >= k_off each such row sits at delay k - i >= 1 with factor
  // q^(k - k_off).
  if (want_second_time && k_off < n) {
    std::vector<T> cumulative(n_explicit + 1, T{});
    for (std::size_t i = 0; i < n_explicit; ++i) {
      cumulative[i + 1] = cumulative[i] + (has_tail[i] ? tail_start[i] : T{});
    }
    T factor = T{1};
    for (std::size_t k = k_off; k < n; ++k) {
      const std::size_t lo = (k + 1 >= n_tau) ? k + 1 - n_tau : 0;
      if (lo < n_explicit) {
        T sum = cumulative[n_explicit] - cumulative[lo];
        if (k + 1 >= n_tau && has_tail[lo]) sum -= 0.5 * tail_start[lo];
        out.second_time[k] += dt * factor * sum;
      }
      factor *= q;
    }
  }

  T total{};
  for (std::size_t i = 0; i < n; ++i) {
    total += trapezoid_weight(i, n, dt) * out.row_integral[i];
  }
  out.total = total;
  return out;
}

}  // namespace pulsetls::detail
