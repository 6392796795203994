#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "caywalk/numeric.hpp"

namespace caywalk {

// Dense complex eigenvalue solver: Householder reduction to upper Hessenberg
// form, then explicitly shifted QR iteration with Givens rotations and
// deflation. Eigenvalues only; no Schur vectors are accumulated. Sized for
// the walk operators this library builds (up to a few thousand rows).

struct EigenResult {
  std::vector<Complex> values;
  bool converged = true;
  double residual = 0.0; // largest subdiagonal left behind on failure
  int iterations = 0;
};

namespace detail {

inline void hessenberg_reduce(std::vector<Complex>& a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm += std::norm(at(i, k));
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;

    // reflector v maps the column below the subdiagonal onto alpha*e1
    const Complex x0 = at(k + 1, k);
    const Complex phase = (std::abs(x0) == 0.0) ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * norm;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = at(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;

    // A <- P A with P = I - 2 v v^* / (v^* v), on rows k+1..n-1
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * at(i, j);
      dot *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) at(i, j) -= dot * v[i];
    }
    // A <- A P, on all rows
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += at(i, j) * v[j];
      dot *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) at(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  Complex s;
};

// G = [[c, s], [-conj(s), c]] with c real, chosen so G (f, g)^T has zero
// second component.
inline Givens make_givens(const Complex& f, const Complex& g) {
  const double fa = std::abs(f), ga = std::abs(g);
  if (ga == 0.0) return {1.0, Complex{0.0}};
  if (fa == 0.0) return {0.0, Complex{1.0}};
  const double r = std::hypot(fa, ga);
  return {fa / r, (f / fa) * std::conj(g) / r};
}

} // namespace detail

inline EigenResult complex_eigenvalues(std::vector<Complex> a, std::size_t n) {
  EigenResult result;
  result.values.assign(n, Complex{0.0});
  if (n == 0) return result;

  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
  detail::hessenberg_reduce(a, n);

  double scale = 0.0;
  for (const Complex& x : a) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;
  const double eps = std::numeric_limits<double>::epsilon();
  auto negligible = [&](std::size_t i) {
    const double bound = eps * (std::abs(at(i - 1, i - 1)) + std::abs(at(i, i)));
    return std::abs(at(i, i - 1)) <= std::max(bound, eps * scale * 1e-2);
  };

  const int max_total = 80 * static_cast<int>(n) + 200;
  int total_iter = 0;
  int stall = 0;
  std::size_t hi = n - 1;
  while (true) {
    while (hi > 0 && negligible(hi)) {
      at(hi, hi - 1) = 0.0;
      --hi;
      stall = 0;
    }
    if (hi == 0) break;

    std::size_t lo = hi;
    while (lo > 0 && !negligible(lo)) --lo;

    if (++total_iter > max_total) {
      result.converged = false;
      for (std::size_t i = lo + 1; i <= hi; ++i)
        result.residual = std::max(result.residual, std::abs(at(i, i - 1)));
      break;
    }
    ++stall;

    // Wilkinson shift from the trailing 2x2, exceptional shift on stalls
    Complex mu;
    if (stall % 12 == 0) {
      mu = at(hi, hi) + 0.75 * std::abs(at(hi, hi - 1));
    } else {
      const Complex p = at(hi - 1, hi - 1), q = at(hi - 1, hi);
      const Complex r = at(hi, hi - 1), t = at(hi, hi);
      const Complex tr = p + t;
      const Complex disc = std::sqrt(tr * tr - 4.0 * (p * t - q * r));
      const Complex l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
      mu = (std::abs(l1 - t) < std::abs(l2 - t)) ? l1 : l2;
    }

    // explicit QR step on the active block [lo..hi]
    for (std::size_t i = lo; i <= hi; ++i) at(i, i) -= mu;
    std::vector<detail::Givens> rot(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      const auto g = detail::make_givens(at(i, i), at(i + 1, i));
      rot[i - lo] = g;
      for (std::size_t j = i; j <= hi; ++j) {
        const Complex x = at(i, j), y = at(i + 1, j);
        at(i, j) = g.c * x + g.s * y;
        at(i + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (std::size_t i = lo; i < hi; ++i) {
      const auto g = rot[i - lo];
      for (std::size_t j = lo; j <= hi; ++j) {
        const Complex x = at(j, i), y = at(j, i + 1);
        at(j, i) = g.c * x + std::conj(g.s) * y;
        at(j, i + 1) = -g.s * x + g.c * y;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) at(i, i) += mu;
  }
  result.iterations = total_iter;

  for (std::size_t i = 0; i < n; ++i) result.values[i] = at(i, i);
  return result;
}

// Transitive clustering of eigenvalues: two values join a cluster when they
// lie within tol of each other.
struct EigenCluster {
  Complex center;
  std::vector<int> members;
  int multiplicity() const { return static_cast<int>(members.size()); }
};

struct ClusterReport {
  double min_pairwise = 0.0; // smallest |lambda_i - lambda_j| over i != j
  std::vector<EigenCluster> clusters;
  int max_multiplicity = 0;
};

inline ClusterReport cluster_eigenvalues(const std::vector<Complex>& values, double tol = 1e-8) {
  const int n = static_cast<int>(values.size());
  ClusterReport report;
  if (n < 2) {
    if (n == 1) report.clusters.push_back({values[0], {0}});
    report.max_multiplicity = n;
    return report;
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  double min_pair = std::abs(values[0] - values[1]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dist = std::abs(values[i] - values[j]);
      min_pair = std::min(min_pair, dist);
      if (dist <= tol) parent[find(i)] = find(j);
    }
  report.min_pairwise = min_pair;

  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  for (auto& g : groups) {
    if (g.empty()) continue;
    EigenCluster c;
    c.members = std::move(g);
    Complex sum = 0.0;
    for (int i : c.members) sum += values[i];
    c.center = sum / static_cast<double>(c.members.size());
    report.max_multiplicity = std::max(report.max_multiplicity, c.multiplicity());
    report.clusters.push_back(std::move(c));
  }
  std::sort(report.clusters.begin(), report.clusters.end(),
            [](const EigenCluster& a, const EigenCluster& b) {
              return a.multiplicity() > b.multiplicity();
            });
  return report;
}

} // namespace caywalk
