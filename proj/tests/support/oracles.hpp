#pragma once

// Test-only reference computations. Nothing here calls the library's
// eigensolver, star detector or loop-removal code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "starloop/graph.hpp"
#include "starloop/matrix.hpp"

namespace starloop::oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense dense(const SymmetricMatrix& m) {
  Dense d(m.order(), std::vector<double>(m.order()));
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) d[i][j] = m(i, j);
  return d;
}

/// Householder reduction of a symmetric matrix to tridiagonal (diag, offdiag).
inline void tridiagonalize(Dense a, std::vector<double>& diag, std::vector<double>& off) {
  const std::size_t n = a.size();
  diag.assign(n, 0.0);
  off.assign(n > 0 ? n - 1 : 0, 0.0);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a[i][k] * a[i][k];
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a[k + 1][k] > 0) alpha = -alpha;
    std::vector<double> v(n, 0.0);
    v[k + 1] = a[k + 1][k] - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a[i][k];
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    if (vnorm2 == 0.0) continue;
    // A <- H A H with H = I - 2 v v^T / (v^T v)
    std::vector<double> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p[i] += a[i][j] * v[j];
    for (double& x : p) x *= 2.0 / vnorm2;
    double vp = 0.0;
    for (std::size_t i = 0; i < n; ++i) vp += v[i] * p[i];
    const double kcoef = vp / vnorm2;
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = p[i] - kcoef * v[i];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= v[i] * w[j] + w[i] * v[j];
  }
  for (std::size_t i = 0; i < n; ++i) diag[i] = a[i][i];
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = a[i + 1][i];
}

/// Number of eigenvalues below x, from the signs of the characteristic
/// polynomials of the leading principal submatrices of T - xI (Sturm sequence,
/// in ratio form).
inline std::size_t count_below(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double e2 = i > 0 ? off[i - 1] * off[i - 1] : 0.0;
    q = (diag[i] - x) - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

/// Roots of the characteristic polynomial, ascending, by bisection.
inline std::vector<double> charpoly_roots(const SymmetricMatrix& m) {
  std::vector<double> diag, off;
  tridiagonalize(dense(m), diag, off);
  const std::size_t n = diag.size();
  double bound = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::abs(diag[i]);
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    bound = std::max(bound, r);
  }
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    double lo = -bound - 1.0, hi = bound + 1.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (count_below(diag, off, mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    roots[k] = 0.5 * (lo + hi);
  }
  return roots;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(Dense a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// det(M - x I).
inline double charpoly(const SymmetricMatrix& m, double x) {
  auto d = dense(m);
  for (std::size_t i = 0; i < d.size(); ++i) d[i][i] -= x;
  return determinant(d);
}

/// Brute-force twin test straight from the adjacency matrix definition.
inline bool brute_force_twins(const WeightedGraph& g, VertexId u, VertexId v, double wtol) {
  if (std::abs(g.weight(u, u) - g.weight(v, v)) > wtol) return false;
  for (VertexId x = 0; x < g.order(); ++x) {
    if (x == u || x == v) continue;
    if (std::abs(g.weight(u, x) - g.weight(v, x)) > wtol) return false;
  }
  return true;
}

}  // namespace starloop::oracle
