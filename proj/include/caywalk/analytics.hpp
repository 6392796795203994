#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "caywalk/caps.hpp"
#include "caywalk/cayley.hpp"
#include "caywalk/chartable.hpp"
#include "caywalk/engine.hpp"
#include "caywalk/qr_eigen.hpp"

#include "json.hpp"

namespace caywalk {

// Total variation in the unnormalized L1 form sum_g |P[g] - Q[g]|, range
// [0, 2]. (The conventional 1/2 factor is deliberately absent; every
// threshold in this library is calibrated to the L1 form.)
inline double tv_distance(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p.probs[i] - q.probs[i]);
  return sum;
}

inline Distribution uniform_distribution(std::size_t n) {
  Distribution d;
  d.probs.assign(n, 1.0 / static_cast<double>(n));
  return d;
}

// Cesaro mean (1/T) sum_{t=0}^{T-1} P_t from the given initial state.
inline Distribution time_averaged(WalkState state, const CoinOperator& coin, long long T,
                                  const std::optional<ChiralityPermutation>& pi = std::nullopt) {
  if (T < 1) throw std::invalid_argument("time_averaged: T must be >= 1");
  Distribution acc = position_distribution(state);
  for (long long t = 1; t < T; ++t) {
    step(state, coin, pi);
    const Distribution p = position_distribution(state);
    for (std::size_t g = 0; g < acc.size(); ++g) acc.probs[g] += p.probs[g];
  }
  for (double& v : acc.probs) v /= static_cast<double>(T);
  return acc;
}

namespace detail {

// One evolution pass: returns tv(P-bar_T, reference) for every T in
// [1, t_max]; index T-1 in the returned vector.
inline std::vector<double> prefix_mean_tv(WalkState state, const CoinOperator& coin,
                                          long long t_max, const Distribution& reference,
                                          const std::optional<ChiralityPermutation>& pi) {
  const std::size_t n = state.order();
  std::vector<double> tv(static_cast<std::size_t>(t_max));
  std::vector<double> sum(n, 0.0);
  for (long long t = 0; t < t_max; ++t) {
    if (t > 0) step(state, coin, pi);
    const Distribution p = position_distribution(state);
    double dist = 0.0;
    for (std::size_t g = 0; g < n; ++g) {
      sum[g] += p.probs[g];
      dist += std::abs(sum[g] / static_cast<double>(t + 1) - reference.probs[g]);
    }
    tv[static_cast<std::size_t>(t)] = dist;
  }
  return tv;
}

} // namespace detail

// Empirical stand-in for the limiting distribution: P-bar_{T_max}, with a
// Cauchy residual sup over sampled T >= T_max/2 of tv(P-bar_T, P-bar_{T_max})
// quantifying how settled the tail is. Sampled T are the doubling points
// T_max/2, 3*T_max/4 and T_max plus the off-parity point T_max/2 + 1, which
// defeats aliasing against even-period orbits. No closed form for the limit
// exists here, so a large residual flags (rather than fails) non-convergence.
struct EmpiricalLimit {
  Distribution limit;
  double residual = 0.0;
  bool converged = true;
  long long t_max = 0;
};

inline std::vector<long long> residual_sample_points(long long t_max) {
  std::vector<long long> points{t_max / 2, t_max / 2 + 1, 3 * t_max / 4, t_max};
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

inline EmpiricalLimit empirical_limit(const WalkState& start, const CoinOperator& coin,
                                      long long t_max, double tol,
                                      const std::optional<ChiralityPermutation>& pi = std::nullopt) {
  if (t_max < 2) throw std::invalid_argument("empirical_limit: t_max must be >= 2");
  EmpiricalLimit out;
  out.t_max = t_max;
  out.limit = time_averaged(start, coin, t_max, pi);
  const auto tv = detail::prefix_mean_tv(start, coin, t_max, out.limit, pi);
  for (long long T : residual_sample_points(t_max))
    out.residual = std::max(out.residual, tv[static_cast<std::size_t>(T - 1)]);
  out.converged = out.residual <= tol;
  return out;
}

struct ConvergenceReport {
  double epsilon = 0.0;
  long long t_max = 0;
  std::vector<long long> sampled_T;        // strictly increasing
  std::vector<double> tv_to_reference;     // parallel to sampled_T
  std::optional<long long> mixing_time;    // empty = not reached
  double cauchy_residual = 0.0;
  std::string reference;
};

// Earliest t with tv(P-bar_T, reference) <= eps for all T in [t, T_max],
// where the reference is P-bar_{T_max} itself. Because tv trivially hits 0
// at T = T_max, an answer in the top half of the range says nothing; such
// answers are reported as "not reached".
inline ConvergenceReport mixing_time(const WalkState& start, const CoinOperator& coin, double eps,
                                     long long t_max,
                                     const std::optional<ChiralityPermutation>& pi = std::nullopt) {
  if (eps <= 0) throw std::invalid_argument("mixing_time: eps must be > 0");
  if (t_max < 4) throw std::invalid_argument("mixing_time: t_max must be >= 4");
  ConvergenceReport report;
  report.epsilon = eps;
  report.t_max = t_max;
  report.reference = "time-average at T=" + std::to_string(t_max);

  const Distribution reference = time_averaged(start, coin, t_max, pi);
  const auto tv = detail::prefix_mean_tv(start, coin, t_max, reference, pi);

  // suffix maxima locate the first T after which tv stays under eps
  std::vector<double> suffix(tv.size());
  double running = 0.0;
  for (std::size_t i = tv.size(); i-- > 0;) {
    running = std::max(running, tv[i]);
    suffix[i] = running;
  }
  std::optional<long long> first;
  for (std::size_t i = 0; i < suffix.size(); ++i)
    if (suffix[i] <= eps) {
      first = static_cast<long long>(i + 1);
      break;
    }
  if (first && *first <= t_max / 2) report.mixing_time = first;

  for (long long T : residual_sample_points(t_max))
    report.cauchy_residual = std::max(report.cauchy_residual, tv[static_cast<std::size_t>(T - 1)]);

  const long long stride = std::max<long long>(1, t_max / 256);
  for (long long T = 1; T <= t_max; ++T)
    if (T == 1 || T == t_max || T % stride == 0 || (T & (T - 1)) == 0) {
      report.sampled_T.push_back(T);
      report.tv_to_reference.push_back(tv[static_cast<std::size_t>(T - 1)]);
    }
  return report;
}

inline void write_convergence_json(const ConvergenceReport& report, std::ostream& out) {
  nlohmann::json j;
  j["epsilon"] = report.epsilon;
  j["t_max"] = report.t_max;
  j["reference"] = report.reference;
  j["cauchy_residual"] = report.cauchy_residual;
  if (report.mixing_time)
    j["mixing_time"] = *report.mixing_time;
  else
    j["mixing_time"] = nullptr;
  j["samples"] = nlohmann::json::array();
  for (std::size_t i = 0; i < report.sampled_T.size(); ++i)
    j["samples"].push_back({{"T", report.sampled_T[i]}, {"tv", report.tv_to_reference[i]}});
  out << j.dump(2) << '\n';
}

// Per-conjugacy-class probability spread of a distribution over S_n.
struct ClassSpread {
  Partition label;
  double min = 0.0, max = 0.0, spread = 0.0;
};

struct ClassFunctionReport {
  bool is_class_function = false;
  int distinct_values = 0;
  double max_spread = 0.0;
  std::vector<ClassSpread> classes;
};

inline std::vector<int> class_index_by_rank(int n) {
  const auto parts = partitions(n);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < parts.size(); ++i) index[parts[i].parts] = static_cast<int>(i);
  std::size_t order = 1;
  for (int i = 2; i <= n; ++i) order *= static_cast<std::size_t>(i);
  std::vector<int> out(order);
  for (std::size_t r = 0; r < order; ++r) out[r] = index[cycle_type(unrank(n, r)).parts];
  return out;
}

inline ClassFunctionReport class_function_check(const Distribution& dist, int n,
                                                double tol = 1e-12) {
  const auto parts = partitions(n);
  const auto cls = class_index_by_rank(n);
  if (dist.size() != cls.size())
    throw std::invalid_argument("class_function_check: distribution size != n!");
  ClassFunctionReport report;
  report.classes.resize(parts.size());
  std::vector<bool> seen(parts.size(), false);
  for (std::size_t g = 0; g < dist.size(); ++g) {
    auto& c = report.classes[cls[g]];
    const double p = dist.probs[g];
    if (!seen[cls[g]]) {
      c.label = parts[cls[g]];
      c.min = c.max = p;
      seen[cls[g]] = true;
    } else {
      c.min = std::min(c.min, p);
      c.max = std::max(c.max, p);
    }
  }
  for (auto& c : report.classes) {
    c.spread = c.max - c.min;
    report.max_spread = std::max(report.max_spread, c.spread);
  }
  report.is_class_function = report.max_spread <= tol;

  std::vector<double> sorted = dist.probs;
  std::sort(sorted.begin(), sorted.end());
  int distinct = sorted.empty() ? 0 : 1;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] > tol) ++distinct;
  report.distinct_values = distinct;
  return report;
}

// Exact variant: verdict and distinct count computed in rational arithmetic.
inline ClassFunctionReport class_function_check(const RationalDistribution& dist, int n) {
  const auto parts = partitions(n);
  const auto cls = class_index_by_rank(n);
  if (dist.size() != cls.size())
    throw std::invalid_argument("class_function_check: distribution size != n!");
  ClassFunctionReport report;
  report.classes.resize(parts.size());
  std::vector<std::optional<std::pair<Rational, Rational>>> ranges(parts.size());
  for (std::size_t g = 0; g < dist.size(); ++g) {
    const Rational& p = dist.probs[g];
    auto& range = ranges[cls[g]];
    if (!range)
      range = std::make_pair(p, p);
    else {
      if (p < range->first) range->first = p;
      if (p > range->second) range->second = p;
    }
  }
  bool exact_class_function = true;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto& c = report.classes[i];
    c.label = parts[i];
    if (ranges[i]) {
      c.min = to_double(ranges[i]->first);
      c.max = to_double(ranges[i]->second);
      c.spread = to_double(Rational(ranges[i]->second - ranges[i]->first));
      if (ranges[i]->first != ranges[i]->second) exact_class_function = false;
      report.max_spread = std::max(report.max_spread, c.spread);
    }
  }
  report.is_class_function = exact_class_function;
  report.distinct_values =
      static_cast<int>(std::set<Rational>(dist.probs.begin(), dist.probs.end()).size());
  return report;
}

// Explicit dense walk operator U = Lambda_pi (C (x) I): block (s2, s1) holds
// C[s_mid, s1] P_{s_mid} with s2 = pi(s_mid) and P_s the permutation matrix
// of right-multiplication by s.
struct WalkMatrix {
  std::size_t dim = 0;
  std::vector<Complex> entries; // row-major
  Complex& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
};

inline WalkMatrix build_walk_matrix(const CayleyGraph& graph, const CoinOperator& coin,
                                    const std::optional<ChiralityPermutation>& pi = std::nullopt,
                                    const Caps& caps = {}) {
  const int d = graph.coin_dim();
  if (coin.d != d) throw std::invalid_argument("build_walk_matrix: coin dimension mismatch");
  if (pi) validate_chirality_permutation(*pi, d);
  const std::size_t n = graph.order;
  const std::size_t dim = static_cast<std::size_t>(d) * n;
  if (static_cast<long long>(dim) > caps.dense_dim)
    throw CapExceeded("build_walk_matrix: dimension " + std::to_string(dim) + " exceeds cap " +
                      std::to_string(caps.dense_dim));
  WalkMatrix u;
  u.dim = dim;
  u.entries.assign(dim * dim, Complex{0.0});
  for (std::size_t g = 0; g < n; ++g)
    for (int s_mid = 0; s_mid < d; ++s_mid) {
      const std::size_t row =
          static_cast<std::size_t>(pi ? (*pi)[s_mid] : s_mid) * n + graph.succ[s_mid][g];
      for (int s1 = 0; s1 < d; ++s1)
        u.at(row, static_cast<std::size_t>(s1) * n + g) += coin.at(s_mid, s1);
    }
  return u;
}

inline WalkState apply_walk_matrix(const WalkMatrix& u, const WalkState& state) {
  if (state.amps.size() != u.dim)
    throw std::invalid_argument("apply_walk_matrix: dimension mismatch");
  WalkState out = state;
  for (std::size_t i = 0; i < u.dim; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < u.dim; ++j) acc += u.at(i, j) * state.amps[j];
    out.amps[i] = acc;
  }
  return out;
}

inline double unitarity_defect(const WalkMatrix& u) {
  double defect = 0.0;
  for (std::size_t i = 0; i < u.dim; ++i)
    for (std::size_t j = 0; j < u.dim; ++j) {
      Complex dot = 0.0;
      for (std::size_t k = 0; k < u.dim; ++k) dot += std::conj(u.at(k, i)) * u.at(k, j);
      defect = std::max(defect, std::abs(dot - (i == j ? Complex{1.0} : Complex{0.0})));
    }
  return defect;
}

struct SpectrumReport {
  EigenResult eigen;
  ClusterReport clusters;
  double max_modulus_deviation = 0.0; // max | |lambda| - 1 |
};

inline SpectrumReport walk_spectrum(const WalkMatrix& u, double cluster_tol = 1e-8) {
  SpectrumReport report;
  report.eigen = complex_eigenvalues(u.entries, u.dim);
  if (!report.eigen.converged)
    throw std::runtime_error("walk_spectrum: QR iteration did not converge (residual " +
                             std::to_string(report.eigen.residual) + ")");
  report.clusters = cluster_eigenvalues(report.eigen.values, cluster_tol);
  for (const Complex& v : report.eigen.values)
    report.max_modulus_deviation =
        std::max(report.max_modulus_deviation, std::abs(std::abs(v) - 1.0));
  return report;
}

// CSV: one eigenvalue per row with its cluster id (clusters sorted by
// multiplicity, largest first).
inline void write_spectrum_csv(const SpectrumReport& report, std::ostream& out) {
  std::vector<int> cluster_of(report.eigen.values.size(), -1);
  for (std::size_t c = 0; c < report.clusters.clusters.size(); ++c)
    for (int member : report.clusters.clusters[c].members)
      cluster_of[static_cast<std::size_t>(member)] = static_cast<int>(c);
  out << "index,re,im,modulus,cluster\n";
  char buf[96];
  for (std::size_t i = 0; i < report.eigen.values.size(); ++i) {
    const Complex v = report.eigen.values[i];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%d", i, v.real(), v.imag(),
                  std::abs(v), cluster_of[i]);
    out << buf << '\n';
  }
}

} // namespace caywalk
