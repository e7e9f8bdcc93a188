#pragma once

// Test-only reference implementations, deliberately independent of the
// library's solvers: OLS via long-double normal equations with Gaussian
// elimination, and exhaustive segmentation search for the break model.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracles {

// Solves (X'X) b = X'y in long double via Gaussian elimination with
// partial pivoting.
inline std::vector<double> normal_equations_ols(const std::vector<double>& y,
                                                const std::vector<std::vector<double>>& cols) {
  const std::size_t n = y.size();
  const std::size_t k = cols.size();
  std::vector<std::vector<long double>> a(k, std::vector<long double>(k + 1, 0.0L));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      long double s = 0.0L;
      for (std::size_t t = 0; t < n; ++t) {
        s += static_cast<long double>(cols[i][t]) * static_cast<long double>(cols[j][t]);
      }
      a[i][j] = s;
    }
    long double s = 0.0L;
    for (std::size_t t = 0; t < n; ++t) {
      s += static_cast<long double>(cols[i][t]) * static_cast<long double>(y[t]);
    }
    a[i][k] = s;
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::fabs(static_cast<double>(a[r][col])) >
          std::fabs(static_cast<double>(a[pivot][col]))) {
        pivot = r;
      }
    }
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0L) throw std::runtime_error("oracle: singular normal equations");
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> beta(k);
  for (std::size_t i = 0; i < k; ++i) beta[i] = static_cast<double>(a[i][k] / a[i][i]);
  return beta;
}

inline double segment_ssr(const std::vector<double>& y, std::size_t begin, std::size_t end) {
  double mean = 0.0;
  for (std::size_t t = begin; t <= end; ++t) mean += y[t];
  mean /= static_cast<double>(end - begin + 1);
  double ssr = 0.0;
  for (std::size_t t = begin; t <= end; ++t) ssr += (y[t] - mean) * (y[t] - mean);
  return ssr;
}

struct BruteForceBreaks {
  double ssr = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> break_starts;  // first index of each later segment
};

// Enumerates every admissible placement of exactly m breaks with minimum
// segment length h.
inline void enumerate_breaks(const std::vector<double>& y, std::size_t h, std::size_t m,
                             std::size_t next_from, std::vector<std::size_t>& current,
                             BruteForceBreaks& best) {
  const std::size_t n = y.size();
  if (current.size() == m) {
    double ssr = 0.0;
    std::size_t begin = 0;
    for (std::size_t b : current) {
      ssr += segment_ssr(y, begin, b - 1);
      begin = b;
    }
    ssr += segment_ssr(y, begin, n - 1);
    if (ssr < best.ssr) {
      best.ssr = ssr;
      best.break_starts = current;
    }
    return;
  }
  for (std::size_t b = next_from; b + h * (m - current.size()) <= n; ++b) {
    current.push_back(b);
    enumerate_breaks(y, h, m, b + h, current, best);
    current.pop_back();
  }
}

inline BruteForceBreaks brute_force_breaks(const std::vector<double>& y, std::size_t h,
                                           std::size_t m) {
  BruteForceBreaks best;
  if (m == 0) {
    best.ssr = segment_ssr(y, 0, y.size() - 1);
    return best;
  }
  std::vector<std::size_t> current;
  enumerate_breaks(y, h, m, h, current, best);
  return best;
}

}  // namespace oracles
