// Brute-force reference computations used only by the tests. Nothing here
// calls into the library beyond reading graph adjacency.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "egocr/graph.hpp"

namespace oracle {

struct DenseStats {
  std::vector<long double> r;
  long double r_bar = 0;
  long double b = 0;
  long double q = 0;
};

// R = diag(D)^-1 A C formed densely; b from its defining double sum, with
// isolated units contributing nothing to either term.
inline DenseStats dense_stats(const egocr::Graph& g, std::span<const std::uint32_t> cluster_of) {
  const std::size_t n = g.size();
  std::vector<std::vector<long double>> R(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && g.has_edge(static_cast<egocr::UnitId>(i), static_cast<egocr::UnitId>(j))) {
        R[i][cluster_of[j]] += 1.0L;
      }
    }
    const auto d = static_cast<long double>(g.degree(static_cast<egocr::UnitId>(i)));
    if (d > 0) {
      for (auto& x : R[i]) x /= d;
    }
  }
  DenseStats s;
  s.r.assign(n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.degree(static_cast<egocr::UnitId>(i)) > 0) s.r[i] = 1.0L - R[i][cluster_of[i]];
    s.r_bar += s.r[i];
  }
  s.r_bar /= static_cast<long double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) s.q += R[i][k] * R[i][k];
    if (g.degree(static_cast<egocr::UnitId>(i)) == 0) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != cluster_of[i]) s.b += R[i][k] * R[i][k];
    }
    s.b += (s.r[i] - s.r_bar) * (s.r[i] - s.r_bar);
  }
  s.b /= static_cast<long double>(n);
  s.q /= static_cast<long double>(n);
  return s;
}

struct Coefficients {
  long double alpha = 0, beta = 0, gamma = 0;
};

// Normal equations X'X c = X'y with X = [1, t, rho], solved by Gaussian
// elimination with partial pivoting in long double.
inline Coefficients normal_equations(std::span<const std::uint8_t> t, std::span<const double> rho,
                                     std::span<const double> y) {
  long double m[3][4] = {};
  for (std::size_t i = 0; i < y.size(); ++i) {
    const long double x[3] = {1.0L, static_cast<long double>(t[i]), static_cast<long double>(rho[i])};
    for (int a = 0; a < 3; ++a) {
      for (int c = 0; c < 3; ++c) m[a][c] += x[a] * x[c];
      m[a][3] += x[a] * static_cast<long double>(y[i]);
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    }
    for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[piv][c]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const long double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

// Maclaurin series of erf; accurate to ~1e-16 for |x| <= 4 in long double.
inline long double erf_series(long double x) {
  long double term = x;
  long double sum = x;
  for (int k = 1; k < 200; ++k) {
    term *= -x * x / k;
    const long double add = term / (2 * k + 1);
    sum += add;
    if (std::fabs(add) < 1e-22L) break;
  }
  return sum * 2.0L / std::sqrt(3.141592653589793238462643383279502884L);
}

inline long double normal_cdf(long double x) {
  return 0.5L * (1.0L + erf_series(x / std::sqrt(2.0L)));
}

// Inverse by bisection on the series CDF; p must lie in roughly [1e-4, 1 - 1e-4].
inline long double normal_quantile(long double p) {
  long double lo = -5.0L;
  long double hi = 5.0L;
  for (int it = 0; it < 200; ++it) {
    const long double mid = 0.5L * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

struct DenseDiagnostics {
  std::uint64_t sum_N = 0, sum_N2 = 0, sum_N3 = 0, sum_L3 = 0;
  std::size_t max_N = 0;
  std::vector<std::vector<std::uint8_t>> lambda;
};

// Lambda_ij = 1 when the closed neighbourhoods of i and j meet a common cluster.
inline DenseDiagnostics dense_dependency(const egocr::Graph& g, std::span<const std::uint32_t> cluster_of) {
  const std::size_t n = g.size();
  std::vector<std::set<std::uint32_t>> K(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || g.has_edge(static_cast<egocr::UnitId>(i), static_cast<egocr::UnitId>(j))) {
        K[i].insert(cluster_of[j]);
      }
    }
  }
  DenseDiagnostics d;
  d.lambda.assign(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (auto k : K[i]) {
        if (K[j].count(k)) {
          d.lambda[i][j] = 1;
          break;
        }
      }
    }
  }
  std::vector<std::vector<std::uint64_t>> L2(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (d.lambda[i][k])
        for (std::size_t j = 0; j < n; ++j) L2[i][j] += d.lambda[k][j];
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) row += d.lambda[i][j];
    d.sum_N += row;
    d.sum_N2 += row * row;
    d.sum_N3 += row * row * row;
    d.max_N = std::max<std::size_t>(d.max_N, row);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) d.sum_L3 += L2[i][k] * d.lambda[k][j];
  }
  return d;
}

}  // namespace oracle
