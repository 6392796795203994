#pragma once

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "caywalk/analytics.hpp"
#include "caywalk/cayley.hpp"
#include "caywalk/chartable.hpp"
#include "caywalk/coin.hpp"
#include "caywalk/engine.hpp"
#include "caywalk/pathsum.hpp"
#include "caywalk/walsh.hpp"

// One-shot verification suite: every cross-check the library rests on, each
// as a pass/fail line. Runs from both the `caywalk verify` subcommand and
// the acceptance test binary.

namespace caywalk::verify {

struct CheckResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Exact structural invariants of a character table; returns a failure
// reason, or nothing if the table is sound. Split out so tests can feed a
// deliberately corrupted table through the same code path.
inline std::optional<std::string> character_table_invariants(const CharacterTable& table) {
  const std::size_t k = table.labels.size();
  const Int group_order = factorial(table.n);

  Int sum_sq = 0;
  for (std::size_t l = 0; l < k; ++l) {
    if (table.dims[l] < 1) return "dimension < 1 at row " + std::to_string(l);
    if (table.dims[l] != hook_length_dimension(table.labels[l]))
      return "hook-length dimension mismatch at " + to_string(table.labels[l]);
    sum_sq += table.dims[l] * table.dims[l];
  }
  if (sum_sq != group_order) return "sum of squared dimensions != n!";

  for (std::size_t l1 = 0; l1 < k; ++l1)
    for (std::size_t l2 = l1; l2 < k; ++l2) {
      Int dot = 0;
      for (std::size_t m = 0; m < k; ++m)
        dot += table.class_sizes[m] * table.values[l1][m] * table.values[l2][m];
      if (dot != (l1 == l2 ? group_order : Int(0)))
        return "row orthogonality fails at (" + to_string(table.labels[l1]) + ", " +
               to_string(table.labels[l2]) + ")";
    }
  for (std::size_t m1 = 0; m1 < k; ++m1)
    for (std::size_t m2 = m1; m2 < k; ++m2) {
      Int dot = 0;
      for (std::size_t l = 0; l < k; ++l) dot += table.values[l][m1] * table.values[l][m2];
      if (dot != (m1 == m2 ? Int(group_order / table.class_sizes[m1]) : Int(0)))
        return "column orthogonality fails at (" + to_string(table.labels[m1]) + ", " +
               to_string(table.labels[m2]) + ")";
    }
  return std::nullopt;
}

namespace detail {

inline const CayleyGraph& graph_cache(int n, bool transpositions) {
  static std::map<std::pair<int, bool>, CayleyGraph> cache;
  auto it = cache.find({n, transpositions});
  if (it == cache.end())
    it = cache
             .emplace(std::make_pair(n, transpositions),
                      build_cayley(n, transpositions ? transposition_generators(n)
                                                     : gamma_generators(n)))
             .first;
  return it->second;
}

inline CheckResult check_s4_two_step_multiset() {
  CheckResult r{"s4-two-step-multiset",
                "two grover steps on S4 transpositions from |(12), e> give the "
                "known 6-value distribution"};
  const auto& graph = graph_cache(4, true);
  const auto state = evolve(basis_state<Rational>(graph, 0, 0), grover_coin(6), 2);
  if (norm_squared(state) != 1) {
    r.detail = "norm drifted in the exact backend";
    return r;
  }
  const auto dist = position_distribution(state);
  std::map<Rational, int> multiset;
  for (const auto& p : dist.probs) ++multiset[p];
  const std::map<Rational, int> expected{
      {Rational(4, 9), 1},  {Rational(0), 12},    {Rational(2, 27), 4},
      {Rational(1, 27), 4}, {Rational(5, 81), 1}, {Rational(2, 81), 2},
  };
  r.pass = (multiset == expected) && multiset.size() == 6;
  r.detail = r.pass ? "24 exact probabilities, 6 distinct values"
                    : "probability multiset differs from the reference";
  return r;
}

inline CheckResult check_gamma4_structure() {
  CheckResult r{"gamma4-structure", "Gamma_4 has 24 vertices and diameter 6"};
  const auto& graph = graph_cache(4, false);
  const int diam = diameter(graph);
  r.pass = graph.order == 24 && diam == 6;
  r.detail = "order " + std::to_string(graph.order) + ", diameter " + std::to_string(diam);
  return r;
}

inline CheckResult check_paths_uniform() {
  CheckResult r{"paths-uniform",
                "path-count amplitudes equal engine amplitudes from the uniform "
                "coin start (S3, S4 transpositions, t <= 6)"};
  long long comparisons = 0, mismatches = 0;
  for (int n : {3, 4}) {
    const auto& graph = graph_cache(n, true);
    const int d = graph.coin_dim();
    const auto coin = grover_coin(d);
    const auto params = grover_params(d);
    auto state = uniform_coin_state<Rational>(graph, 0);
    for (int t = 1; t <= 6; ++t) {
      step(state, coin);
      if (norm_squared(state) != 1) ++mismatches;
      for (int s = 0; s < d; ++s) {
        const auto table = path_count_table(graph, t, s);
        for (std::size_t g = 0; g < graph.order; ++g) {
          ++comparisons;
          if (amplitude_uniform_start(table, params, g) != state.at(s, g)) ++mismatches;
        }
      }
    }
  }
  r.pass = mismatches == 0;
  r.detail = std::to_string(comparisons) + " exact comparisons, " + std::to_string(mismatches) +
             " mismatches";
  return r;
}

inline CheckResult check_paths_basis() {
  CheckResult r{"paths-basis",
                "split path-count amplitudes equal engine amplitudes from every "
                "basis start (S3 transpositions, t <= 5)"};
  const auto& graph = graph_cache(3, true);
  const auto coin = grover_coin(3);
  const auto params = grover_params(3);
  long long comparisons = 0, mismatches = 0;
  for (int s_star = 0; s_star < 3; ++s_star)
    for (std::size_t g_star = 0; g_star < graph.order; ++g_star) {
      auto state = basis_state<Rational>(graph, s_star, g_star);
      for (int t = 1; t <= 5; ++t) {
        step(state, coin);
        if (norm_squared(state) != 1) ++mismatches;
        for (int s = 0; s < 3; ++s) {
          const auto split = path_count_table_split(graph, t, s, s_star);
          for (std::size_t g = 0; g < graph.order; ++g) {
            ++comparisons;
            if (amplitude_basis_start(split, params, graph, g_star, g) != state.at(s, g))
              ++mismatches;
          }
        }
      }
    }
  r.pass = mismatches == 0;
  r.detail = std::to_string(comparisons) + " exact comparisons over " +
             std::to_string(3 * graph.order) + " starts, " + std::to_string(mismatches) +
             " mismatches";
  return r;
}

inline CheckResult check_paths_charsum() {
  CheckResult r{"paths-charsum",
                "character-sum amplitudes equal path-count amplitudes "
                "(S3 transpositions, t <= 5; validates the character table "
                "through the delta collapse)"};
  const auto& graph = graph_cache(3, true);
  const auto chars = character_table(3);
  const auto params = grover_params(3);
  long long comparisons = 0, mismatches = 0;
  for (int t = 1; t <= 5; ++t)
    for (int s = 0; s < 3; ++s) {
      const auto table = path_count_table(graph, t, s);
      for (std::size_t g = 0; g < graph.order; ++g) {
        ++comparisons;
        if (amplitude_character_sum(graph, chars, params, t, s, g) !=
            amplitude_uniform_start(table, params, g))
          ++mismatches;
      }
    }
  r.pass = mismatches == 0;
  r.detail = std::to_string(comparisons) + " exact comparisons, " + std::to_string(mismatches) +
             " mismatches";
  return r;
}

inline CheckResult check_character_table() {
  CheckResult r{"character-table",
                "exact orthogonality, dimension and hook-length invariants for "
                "all degrees n <= 8"};
  for (int n = 1; n <= 8; ++n)
    if (const auto why = character_table_invariants(character_table(n))) {
      r.detail = "n = " + std::to_string(n) + ": " + *why;
      return r;
    }
  r.pass = true;
  r.detail = "22 partitions at n = 8; all identities hold in integer arithmetic";
  return r;
}

inline CheckResult check_class_function() {
  CheckResult r{"class-function",
                "uniform-coin-start distributions are exactly constant on "
                "conjugacy classes, and conjugation transports path counts "
                "(S3, S4 transpositions)"};
  for (int n : {3, 4}) {
    const auto& graph = graph_cache(n, true);
    const auto coin = grover_coin(graph.coin_dim());
    auto state = uniform_coin_state<Rational>(graph, 0);
    for (int t = 1; t <= 6; ++t) {
      step(state, coin);
      const auto report = class_function_check(position_distribution(state), n);
      if (!report.is_class_function) {
        r.detail = "spread " + std::to_string(report.max_spread) + " at n = " +
                   std::to_string(n) + ", t = " + std::to_string(t);
        return r;
      }
    }
    // transport bijection, exhaustively over tau, terminals and t <= 4
    for (std::size_t tau = 0; tau < graph.order; ++tau)
      for (int s = 0; s < graph.coin_dim(); ++s)
        for (int t = 1; t <= 4; ++t) {
          const auto report = conjugation_transport(graph, unrank(n, tau), t, s);
          if (!report.ok) {
            r.detail = "transport failed at n = " + std::to_string(n) + ", tau rank " +
                       std::to_string(tau) + ": " + report.detail;
            return r;
          }
        }
  }
  r.pass = true;
  r.detail = "zero spread on every class; transport bijection verified for every tau";
  return r;
}

inline CheckResult check_hadamard_closed_form() {
  CheckResult r{"hadamard-closed-form",
                "walsh-sign closed form equals the scaled-integer engine on "
                "Gamma_4 and Gamma_5 for t <= 12"};
  long long comparisons = 0, mismatches = 0;
  for (int n : {4, 5}) {
    const auto& graph = graph_cache(n, false);
    auto state = basis_state<Int>(graph, 0, 0);
    for (int t = 1; t <= 12; ++t) {
      step(state, hadamard_coin());
      const auto table = hadamard_amplitude_table(graph, t);
      Int sum_sq = 0;
      for (int s = 0; s < 2; ++s)
        for (std::size_t g = 0; g < graph.order; ++g) {
          ++comparisons;
          const Int& m = table.at(s, g, graph.order);
          if (m != state.at(s, g)) ++mismatches;
          sum_sq += m * m;
        }
      if (sum_sq != int_pow(2, t)) ++mismatches; // normalization sum m^2 = 2^t
    }
  }
  r.pass = mismatches == 0;
  r.detail = std::to_string(comparisons) + " integer comparisons, " +
             std::to_string(mismatches) + " mismatches";
  return r;
}

inline CheckResult check_spectrum() {
  CheckResult r{"spectrum",
                "U(Gamma_4, hadamard) has the two-block permutation form, a "
                "unit-modulus spectrum and a degenerate eigenvalue"};
  const auto& graph = graph_cache(4, false);
  const auto coin = hadamard_coin();
  const auto u = build_walk_matrix(graph, coin);

  const double h = std::sqrt(0.5);
  for (int s = 0; s < 2; ++s)
    for (int j = 0; j < 2; ++j)
      if (std::abs(coin.at(s, j) - Complex{(s == 1 && j == 1) ? -h : h}) > 1e-15) {
        r.detail = "coin entries are not +-1/sqrt(2)";
        return r;
      }
  // block (s2, s1) must be C[s2][s1] * P_{s2}, assembled here from succ
  const std::size_t n = graph.order;
  for (int s2 = 0; s2 < 2; ++s2)
    for (int s1 = 0; s1 < 2; ++s1)
      for (std::size_t g2 = 0; g2 < n; ++g2)
        for (std::size_t g1 = 0; g1 < n; ++g1) {
          const Complex expected = (graph.succ[s2][g1] == g2) ? coin.at(s2, s1) : Complex{0.0};
          if (u.at(s2 * n + g2, s1 * n + g1) != expected) {
            r.detail = "walk operator deviates from the block permutation form";
            return r;
          }
        }

  const auto spec = walk_spectrum(u, 1e-8);
  std::ostringstream detail;
  detail << "48x48 block form exact; max | |lambda|-1 | = " << spec.max_modulus_deviation
         << "; largest eigenvalue cluster has multiplicity " << spec.clusters.max_multiplicity
         << "; min pairwise gap = " << spec.clusters.min_pairwise;
  r.detail = detail.str();
  r.pass = spec.max_modulus_deviation <= 1e-8 && spec.clusters.max_multiplicity >= 2;
  return r;
}

inline CheckResult check_convergence(const std::string& data_dir) {
  CheckResult r{"convergence",
                "time-averaged hadamard walk on Gamma_4 settles: residual at "
                "least halves per doubling on average up to T = 4096, and "
                "M_eps(0.05) is finite"};
  const auto& graph = graph_cache(4, false);
  const auto start = basis_state<Complex>(graph, 0, 0);
  const auto coin = hadamard_coin();

  std::vector<double> residuals;
  for (long long t_max : {512, 1024, 2048, 4096})
    residuals.push_back(empirical_limit(start, coin, t_max, 1.0).residual);
  bool monotone = true;
  for (std::size_t i = 1; i < residuals.size(); ++i)
    if (residuals[i] >= residuals[i - 1]) monotone = false;
  const bool cumulative_halving = residuals.back() <= residuals.front() / 8.0;

  const auto report = mixing_time(start, coin, 0.05, 4096);

  const auto avg = time_averaged(start, coin, 4096);
  const double nonuniformity = tv_distance(avg, uniform_distribution(graph.order));
  std::ofstream csv(data_dir + "/gamma4_hadamard_timeavg.csv");
  if (!csv) {
    r.detail = "cannot write " + data_dir + "/gamma4_hadamard_timeavg.csv";
    return r;
  }
  write_distribution_csv(graph, avg, csv);

  std::ostringstream detail;
  detail << "residuals at T=512..4096: ";
  for (double v : residuals) detail << v << ' ';
  detail << "(overall factor " << residuals.front() / residuals.back() << "); M_eps = "
         << (report.mixing_time ? std::to_string(*report.mixing_time) : "not reached")
         << "; tv(avg, uniform) = " << nonuniformity
         << "; time average written to gamma4_hadamard_timeavg.csv";
  r.detail = detail.str();
  r.pass = monotone && cumulative_halving && report.mixing_time.has_value() &&
           nonuniformity > 0.1;
  return r;
}

inline CheckResult check_unitarity() {
  CheckResult r{"unitarity", "norms stay at 1 across every backend and coin"};
  double drift = 0.0;
  auto track = [&](WalkState state, const CoinOperator& coin, int steps) {
    for (int t = 0; t < steps; ++t) {
      step(state, coin);
      drift = std::max(drift, std::abs(norm_squared(state) - 1.0));
    }
  };
  track(basis_state<Complex>(graph_cache(4, false), 0, 0), hadamard_coin(), 100);
  track(basis_state<Complex>(graph_cache(4, false), 0, 0), ix_coin(), 100);
  track(uniform_coin_state<Complex>(graph_cache(4, true), 0), grover_coin(6), 50);
  track(basis_state<Complex>(graph_cache(3, true), 1, 2), grover_coin(3), 50);

  bool exact_ok = true;
  {
    auto state = uniform_coin_state<Rational>(graph_cache(4, true), 0);
    for (int t = 0; t < 6; ++t) {
      step(state, grover_coin(6));
      if (norm_squared(state) != 1) exact_ok = false;
    }
    auto scaled = basis_state<Int>(graph_cache(4, false), 0, 0);
    for (int t = 0; t < 12; ++t) {
      step(scaled, hadamard_coin());
      if (norm_squared(scaled) != 1) exact_ok = false;
    }
  }
  std::ostringstream detail;
  detail << "max float drift " << drift << " over 300 steps; exact backends "
         << (exact_ok ? "hold norm 1 exactly" : "DRIFTED");
  r.detail = detail.str();
  r.pass = drift <= 1e-12 && exact_ok;
  return r;
}

} // namespace detail

inline std::vector<CheckResult> run_checks(const std::string& only = "",
                                           const std::string& data_dir = ".") {
  using Factory = std::function<CheckResult()>;
  const std::vector<std::pair<std::string, Factory>> checks = {
      {"s4-two-step-multiset", detail::check_s4_two_step_multiset},
      {"gamma4-structure", detail::check_gamma4_structure},
      {"paths-uniform", detail::check_paths_uniform},
      {"paths-basis", detail::check_paths_basis},
      {"paths-charsum", detail::check_paths_charsum},
      {"character-table", detail::check_character_table},
      {"class-function", detail::check_class_function},
      {"hadamard-closed-form", detail::check_hadamard_closed_form},
      {"spectrum", detail::check_spectrum},
      {"convergence", [&] { return detail::check_convergence(data_dir); }},
      {"unitarity", detail::check_unitarity},
  };
  std::vector<CheckResult> results;
  for (const auto& [id, factory] : checks) {
    if (!only.empty() && id.find(only) == std::string::npos) continue;
    const auto begin = std::chrono::steady_clock::now();
    CheckResult result = factory();
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    results.push_back(std::move(result));
  }
  return results;
}

inline bool report(const std::vector<CheckResult>& results, std::ostream& out) {
  bool all_pass = !results.empty();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " (";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
    out << buf << ")\n       " << r.name << "\n       " << r.detail << "\n";
  }
  out << (all_pass ? "all checks passed" : "CHECKS FAILED") << " (" << results.size()
      << " run)\n";
  return all_pass;
}

} // namespace caywalk::verify
