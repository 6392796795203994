#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "caywalk/caps.hpp"
#include "caywalk/cayley.hpp"
#include "caywalk/chartable.hpp"
#include "caywalk/coin.hpp"
#include "caywalk/engine.hpp"
#include "caywalk/numeric.hpp"

#include "json.hpp"

namespace caywalk {

// Generating sequences: length-t words w_1..w_t over the generator indices
// with w_t fixed, graded by the switch count k = #{i : w_i != w_{i+1}}.
// Their group products drive the path-sum amplitude formulas, evaluated
// here by depth-first generation with the product accumulated through the
// succ tables (no permutation multiplication in the inner loop).

inline long long sequence_space_size(int d, int t) {
  long long size = 1;
  for (int i = 1; i < t; ++i) {
    if (size > (1LL << 62) / d) return (1LL << 62);
    size *= d;
  }
  return size;
}

inline void check_enumeration_cap(int d, int t, const Caps& caps) {
  if (t < 1) throw std::invalid_argument("sequence enumeration: t must be >= 1");
  if (sequence_space_size(d, t) > caps.enum_limit)
    throw CapExceeded("sequence enumeration: d^(t-1) exceeds cap " +
                      std::to_string(caps.enum_limit) + "; raise CAYWALK_CAPS enum=");
}

// visit(word, k): every word over [0,d) of length t ending in `terminal`,
// exactly once. The all-equal word is the unique k = 0 member.
template <typename Visit>
void enumerate_sequences(int t, int terminal, int d, Visit&& visit, const Caps& caps = {}) {
  if (terminal < 0 || terminal >= d)
    throw std::invalid_argument("enumerate_sequences: terminal out of range");
  check_enumeration_cap(d, t, caps);
  std::vector<int> word(t);
  word[t - 1] = terminal;
  auto rec = [&](auto&& self, int i, int switches) -> void {
    if (i == t - 1) {
      const int k = switches + (t >= 2 && word[t - 2] != terminal ? 1 : 0);
      visit(word, k);
      return;
    }
    for (int w = 0; w < d; ++w) {
      word[i] = w;
      self(self, i + 1, switches + (i > 0 && word[i - 1] != w ? 1 : 0));
    }
  };
  rec(rec, 0, 0);
}

// Same traversal, with the left-to-right group product carried as a rank.
// visit(word, k, product_rank).
template <typename Visit>
void for_each_sequence_product(const CayleyGraph& graph, int t, int terminal, Visit&& visit,
                               const Caps& caps = {}) {
  const int d = graph.coin_dim();
  if (terminal < 0 || terminal >= d)
    throw std::invalid_argument("sequence enumeration: terminal out of range");
  check_enumeration_cap(d, t, caps);
  std::vector<int> word(t);
  word[t - 1] = terminal;
  auto rec = [&](auto&& self, int i, int switches, std::size_t rank_so_far) -> void {
    if (i == t - 1) {
      const int k = switches + (t >= 2 && word[t - 2] != terminal ? 1 : 0);
      visit(word, k, graph.succ[terminal][rank_so_far]);
      return;
    }
    for (int w = 0; w < d; ++w) {
      word[i] = w;
      self(self, i + 1, switches + (i > 0 && word[i - 1] != w ? 1 : 0),
           graph.succ[w][rank_so_far]);
    }
  };
  rec(rec, 0, 0, 0);
}

// counts[g][k] = number of length-t words ending in `terminal` with switch
// count k whose product is g. The split variant additionally grades by
// whether the first symbol equals split_start (plus) or not (minus).
struct PathCountTable {
  int t = 0;
  int terminal = 0;
  std::optional<int> split_start;
  std::vector<long long> all;   // [g * t + k]
  std::vector<long long> plus;  // populated only for the split variant
  std::vector<long long> minus;

  long long count(std::size_t g, int k) const { return all[g * static_cast<std::size_t>(t) + k]; }
  long long count_plus(std::size_t g, int k) const {
    return plus[g * static_cast<std::size_t>(t) + k];
  }
  long long count_minus(std::size_t g, int k) const {
    return minus[g * static_cast<std::size_t>(t) + k];
  }
};

inline PathCountTable path_count_table(const CayleyGraph& graph, int t, int terminal,
                                       const Caps& caps = {}) {
  PathCountTable table;
  table.t = t;
  table.terminal = terminal;
  table.all.assign(graph.order * static_cast<std::size_t>(t), 0);
  for_each_sequence_product(
      graph, t, terminal,
      [&](const std::vector<int>&, int k, std::size_t g) {
        ++table.all[g * static_cast<std::size_t>(t) + k];
      },
      caps);
  return table;
}

inline PathCountTable path_count_table_split(const CayleyGraph& graph, int t, int terminal,
                                             int split_start, const Caps& caps = {}) {
  if (split_start < 0 || split_start >= graph.coin_dim())
    throw std::invalid_argument("path_count_table_split: start chirality out of range");
  PathCountTable table;
  table.t = t;
  table.terminal = terminal;
  table.split_start = split_start;
  const std::size_t cells = graph.order * static_cast<std::size_t>(t);
  table.all.assign(cells, 0);
  table.plus.assign(cells, 0);
  table.minus.assign(cells, 0);
  for_each_sequence_product(
      graph, t, terminal,
      [&](const std::vector<int>& word, int k, std::size_t g) {
        const std::size_t cell = g * static_cast<std::size_t>(t) + k;
        ++table.all[cell];
        if (word[0] == split_start)
          ++table.plus[cell];
        else
          ++table.minus[cell];
      },
      caps);
  return table;
}

// Grover coin entries as exact rationals.
struct CoinParams {
  Rational a;
  Rational b;
};

inline CoinParams grover_params(int d) {
  if (d < 2) throw std::invalid_argument("grover_params: d must be >= 2");
  return {Rational(2, d) - 1, Rational(2, d)};
}

inline CoinParams coin_params(const CoinOperator& coin) {
  if (coin.kind != CoinKind::grover)
    throw std::invalid_argument("path amplitudes require the two-value Grover coin");
  return grover_params(coin.d);
}

// Amplitude from the uniform chirality start at e, as the exact rational r
// with amplitude r / sqrt(d):  r = sum_k a^(t-k-1) b^k #_{k,t,s}(g).
inline Rational amplitude_uniform_start(const PathCountTable& table, const CoinParams& coin,
                                        std::size_t g) {
  Rational r = 0;
  for (int k = 0; k < table.t; ++k) {
    const long long c = table.count(g, k);
    if (c == 0) continue;
    r += rational_pow(coin.a, static_cast<unsigned>(table.t - k - 1)) *
         rational_pow(coin.b, static_cast<unsigned>(k)) * c;
  }
  return r;
}

inline Rational amplitude_uniform_start(const CayleyGraph& graph, const CoinParams& coin, int t,
                                        int terminal, std::size_t g, const Caps& caps = {}) {
  return amplitude_uniform_start(path_count_table(graph, t, terminal, caps), coin, g);
}

// Amplitude from the basis start |s_*, g_*>, exact:
//   sum_k a^(t-k-1) b^k ( a #+_{k}(g_*^{-1} g) + b #-_{k}(g_*^{-1} g) ).
inline Rational amplitude_basis_start(const PathCountTable& split, const CoinParams& coin,
                                      const CayleyGraph& graph, std::size_t g_star,
                                      std::size_t g) {
  if (!split.split_start)
    throw std::invalid_argument("amplitude_basis_start: table lacks the split grading");
  const Permutation rel =
      compose(inverse(unrank(graph.n, g_star)), unrank(graph.n, g));
  const std::size_t h = rank(rel);
  Rational r = 0;
  for (int k = 0; k < split.t; ++k) {
    const long long cp = split.count_plus(h, k);
    const long long cm = split.count_minus(h, k);
    if (cp == 0 && cm == 0) continue;
    r += rational_pow(coin.a, static_cast<unsigned>(split.t - k - 1)) *
         rational_pow(coin.b, static_cast<unsigned>(k)) * (coin.a * cp + coin.b * cm);
  }
  return r;
}

inline Rational amplitude_basis_start(const CayleyGraph& graph, const CoinParams& coin, int t,
                                      int terminal, std::size_t g, int s_star, std::size_t g_star,
                                      const Caps& caps = {}) {
  return amplitude_basis_start(path_count_table_split(graph, t, terminal, s_star, caps), coin,
                               graph, g_star, g);
}

// The character-sum route to the same amplitude: for every sequence product
// r, add sum_rho d_rho chi_rho(g^{-1} r), weight by a^(t-k-1) b^k and divide
// by d^(1/2) N. Returns the rational with amplitude r / sqrt(d). Must agree
// with amplitude_uniform_start exactly; the agreement exercises both the
// character table and the delta collapse sum_rho d_rho chi_rho = N [g = e].
inline Rational amplitude_character_sum(const CayleyGraph& graph, const CharacterTable& chars,
                                        const CoinParams& coin, int t, int terminal,
                                        std::size_t g, const Caps& caps = {}) {
  if (chars.n != graph.n)
    throw std::invalid_argument("amplitude_character_sum: character table degree mismatch");
  const std::size_t n_classes = chars.labels.size();

  // w(class) = sum_rho d_rho chi_rho(class)
  std::vector<Int> class_weight(n_classes, 0);
  for (std::size_t c = 0; c < n_classes; ++c)
    for (std::size_t l = 0; l < n_classes; ++l)
      class_weight[c] += chars.dims[l] * chars.values[l][c];

  // class index of g^{-1} r for every product rank r
  std::vector<int> class_of(graph.order);
  const Permutation g_inv = inverse(unrank(graph.n, g));
  for (std::size_t r = 0; r < graph.order; ++r)
    class_of[r] = chars.class_index(cycle_type(compose(g_inv, unrank(graph.n, r))));

  // tally sequence products per (k, class), then fold in the coin weights
  std::vector<long long> tally(static_cast<std::size_t>(t) * n_classes, 0);
  for_each_sequence_product(
      graph, t, terminal,
      [&](const std::vector<int>&, int k, std::size_t r) {
        ++tally[static_cast<std::size_t>(k) * n_classes + class_of[r]];
      },
      caps);

  Rational total = 0;
  for (int k = 0; k < t; ++k) {
    Int inner = 0;
    for (std::size_t c = 0; c < n_classes; ++c) {
      const long long count = tally[static_cast<std::size_t>(k) * n_classes + c];
      if (count) inner += class_weight[c] * count;
    }
    if (inner != 0)
      total += rational_pow(coin.a, static_cast<unsigned>(t - k - 1)) *
               rational_pow(coin.b, static_cast<unsigned>(k)) * Rational(inner);
  }
  return total / Rational(factorial(graph.n));
}

// Conjugation transport: for conjugate-invariant S, r -> tau^{-1} r tau is a
// switch-count-preserving bijection between sequence sets, which forces
// #_{k,t,s}(tau g tau^{-1}) = #_{k,t,tau^{-1} s tau}(g) for every g.
struct TransportReport {
  bool ok = false;
  int mapped_terminal = -1;       // index of tau^{-1} s tau
  long long sequences_checked = 0;
  std::string detail;
};

inline TransportReport conjugation_transport(const CayleyGraph& graph, const Permutation& tau,
                                             int t, int terminal, const Caps& caps = {}) {
  if (!is_conjugate_invariant(graph.n, graph.gens))
    throw std::invalid_argument("conjugation_transport: generating set is not "
                                "conjugate invariant");
  const int d = graph.coin_dim();

  // conjugation permutes the generator indices
  std::vector<int> sym_map(d, -1);
  for (int s = 0; s < d; ++s) {
    const Permutation image = conjugate(graph.gens.gens[s], tau);
    for (int s2 = 0; s2 < d; ++s2)
      if (graph.gens.gens[s2] == image) {
        sym_map[s] = s2;
        break;
      }
    if (sym_map[s] < 0) {
      TransportReport fail;
      fail.detail = "conjugate of generator " + std::to_string(s) + " is not a generator";
      return fail;
    }
  }

  TransportReport report;
  report.mapped_terminal = sym_map[terminal];

  // per-word check: the symbol-mapped word keeps k and its product is the
  // conjugated product
  bool products_match = true;
  long long checked = 0;
  std::vector<std::size_t> conj_rank(graph.order);
  for (std::size_t r = 0; r < graph.order; ++r)
    conj_rank[r] = rank(conjugate(unrank(graph.n, r), tau));

  std::vector<long long> mapped_counts(graph.order * static_cast<std::size_t>(t), 0);
  for_each_sequence_product(
      graph, t, terminal,
      [&](const std::vector<int>& word, int k, std::size_t r) {
        ++checked;
        std::size_t mapped_product = 0;
        int mapped_switches = 0;
        for (std::size_t i = 0; i < word.size(); ++i) {
          const int w = sym_map[word[i]];
          mapped_product = graph.succ[w][mapped_product];
          if (i > 0 && sym_map[word[i - 1]] != w) ++mapped_switches;
        }
        if (mapped_switches != k || mapped_product != conj_rank[r]) products_match = false;
        ++mapped_counts[conj_rank[r] * static_cast<std::size_t>(t) + k];
      },
      caps);
  report.sequences_checked = checked;

  // bijection + count transport: rebuilding the mapped terminal's table must
  // reproduce the conjugated counts exactly
  const PathCountTable direct = path_count_table(graph, t, report.mapped_terminal, caps);
  const bool counts_match = (mapped_counts == direct.all);

  report.ok = products_match && counts_match;
  if (!products_match) report.detail = "symbol-mapped word product mismatch";
  if (!counts_match) report.detail += std::string(report.detail.empty() ? "" : "; ") +
                                      "count tables disagree after transport";
  return report;
}

// Distribution symmetry between two start chiralities over a conjugate-
// invariant generating set: find a vertex relabelling pi with
// P_t[g | s',e] = P_t[pi(g) | s,e]. The candidate pi(g) = tau^{-1} g tau for
// tau with tau^{-1} s' tau = s is tried first; if no candidate tau works an
// exhaustive search over conjugation maps reports any that does.
struct ChiralitySymmetryReport {
  bool candidate_verified = false;
  bool found = false;
  std::optional<std::size_t> witness_tau; // rank of a working tau
};

inline ChiralitySymmetryReport start_chirality_symmetry(const CayleyGraph& graph,
                                                        const CoinOperator& coin, int s_star,
                                                        int s_star_prime, int t) {
  if (!is_conjugate_invariant(graph.n, graph.gens))
    throw std::invalid_argument("start_chirality_symmetry: generating set is not "
                                "conjugate invariant");
  const auto base = position_distribution(
      evolve(basis_state<Rational>(graph, s_star, 0), coin, t));
  const auto primed = position_distribution(
      evolve(basis_state<Rational>(graph, s_star_prime, 0), coin, t));

  auto works = [&](const Permutation& tau) {
    for (std::size_t g = 0; g < graph.order; ++g)
      if (primed.probs[g] != base.probs[rank(conjugate(unrank(graph.n, g), tau))]) return false;
    return true;
  };

  ChiralitySymmetryReport report;
  const Permutation s_perm = graph.gens.gens[s_star];
  const Permutation sp_perm = graph.gens.gens[s_star_prime];
  for (std::size_t r = 0; r < graph.order; ++r) {
    const Permutation tau = unrank(graph.n, r);
    if (conjugate(sp_perm, tau) != s_perm) continue;
    if (works(tau)) {
      report.candidate_verified = true;
      report.found = true;
      report.witness_tau = r;
      return report;
    }
  }
  for (std::size_t r = 0; r < graph.order; ++r) {
    const Permutation tau = unrank(graph.n, r);
    if (works(tau)) {
      report.found = true;
      report.witness_tau = r;
      return report;
    }
  }
  return report;
}

// JSON schema: {t, s, entries: [{g, perm, counts: [...]}, ...]}; zero rows
// are omitted. Split tables add plus/minus arrays per entry.
inline void write_path_counts_json(const CayleyGraph& graph, const PathCountTable& table,
                                   std::ostream& out) {
  nlohmann::json j;
  j["t"] = table.t;
  j["s"] = table.terminal;
  j["terminal_label"] = graph.gens.labels[table.terminal];
  if (table.split_start) j["start_chirality"] = *table.split_start;
  j["entries"] = nlohmann::json::array();
  for (std::size_t g = 0; g < graph.order; ++g) {
    bool nonzero = false;
    for (int k = 0; k < table.t; ++k)
      if (table.count(g, k)) nonzero = true;
    if (!nonzero) continue;
    nlohmann::json entry;
    entry["g"] = g;
    entry["perm"] = cycle_string(unrank(graph.n, g));
    std::vector<long long> counts(table.t);
    for (int k = 0; k < table.t; ++k) counts[k] = table.count(g, k);
    entry["counts"] = counts;
    if (table.split_start) {
      std::vector<long long> plus(table.t), minus(table.t);
      for (int k = 0; k < table.t; ++k) {
        plus[k] = table.count_plus(g, k);
        minus[k] = table.count_minus(g, k);
      }
      entry["plus"] = plus;
      entry["minus"] = minus;
    }
    j["entries"].push_back(std::move(entry));
  }
  out << j.dump(2) << '\n';
}

} // namespace caywalk
