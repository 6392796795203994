#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "caywalk/caps.hpp"
#include "caywalk/cayley.hpp"
#include "caywalk/numeric.hpp"

namespace caywalk {

// Sign sequence of length 2^n built by the halving recurrence
//   W_1 = [1, 1],   W_n = [ W_{n-1}  first-half(W_{n-1})  -second-half(W_{n-1}) ].
// It encodes the sign every generator word contributes to a Hadamard-walk
// amplitude.
struct WalshSeq {
  int level = 0;
  std::vector<std::int8_t> signs;
};

inline WalshSeq walsh_seq(int n, const Caps& caps = {}) {
  if (n < 1) throw std::invalid_argument("walsh_seq: n must be >= 1");
  if (n > caps.walsh_level)
    throw CapExceeded("walsh_seq: level " + std::to_string(n) + " exceeds cap " +
                      std::to_string(caps.walsh_level));
  WalshSeq w;
  w.level = n;
  w.signs = {1, 1};
  for (int lvl = 2; lvl <= n; ++lvl) {
    const std::size_t half = w.signs.size();
    std::vector<std::int8_t> next;
    next.reserve(half * 2);
    next.insert(next.end(), w.signs.begin(), w.signs.end());
    next.insert(next.end(), w.signs.begin(), w.signs.begin() + half / 2);
    for (std::size_t i = half / 2; i < half; ++i) next.push_back(-w.signs[i]);
    w.signs = std::move(next);
  }
  return w;
}

inline void write_walsh_signs(const WalshSeq& w, std::ostream& out) {
  for (std::int8_t s : w.signs) out << static_cast<int>(s) << '\n';
}

// Closed-form Hadamard-walk amplitudes on a two-generator Cayley graph,
// starting from |0, e>: the amplitude at (s, g) after t steps is m/sqrt(2^t)
// where m sums W_t(k) over the t-bit words k with parity s whose product
// equals g. Bit convention: the most significant bit of k is the first
// applied generator, so the low bit is the final chirality.
struct HadamardAmplitudeTable {
  int t = 0;
  std::vector<Int> m; // [s * order + g], s in {0, 1}

  const Int& at(int s, std::size_t g, std::size_t order) const {
    return m[static_cast<std::size_t>(s) * order + g];
  }
};

inline HadamardAmplitudeTable hadamard_amplitude_table(const CayleyGraph& graph, int t,
                                                       const Caps& caps = {}) {
  if (graph.coin_dim() != 2)
    throw std::invalid_argument("hadamard closed form needs exactly two generators");
  if (t < 1) throw std::invalid_argument("hadamard closed form: t must be >= 1");
  if (t > caps.walsh_steps)
    throw CapExceeded("hadamard closed form: t exceeds cap " +
                      std::to_string(caps.walsh_steps));

  const WalshSeq w = walsh_seq(t, caps);
  HadamardAmplitudeTable table;
  table.t = t;
  table.m.assign(2 * graph.order, Int(0));

  // DFS over bit prefixes, product carried through the succ tables
  auto rec = [&](auto&& self, int depth, std::size_t k, std::size_t g) -> void {
    if (depth == t) {
      table.m[(k & 1u) * graph.order + g] += w.signs[k];
      return;
    }
    self(self, depth + 1, k << 1, graph.succ[0][g]);
    self(self, depth + 1, (k << 1) | 1u, graph.succ[1][g]);
  };
  rec(rec, 0, 0, 0);
  return table;
}

inline Int hadamard_amplitude(const CayleyGraph& graph, int t, int s, std::size_t g,
                              const Caps& caps = {}) {
  if (s < 0 || s > 1) throw std::invalid_argument("hadamard_amplitude: s must be 0 or 1");
  if (g >= graph.order) throw std::invalid_argument("hadamard_amplitude: vertex out of range");
  return hadamard_amplitude_table(graph, t, caps).at(s, g, graph.order);
}

// CSV of the integer numerators; amplitude = m / sqrt(2^t).
inline void write_hadamard_amplitudes_csv(const CayleyGraph& graph,
                                          const HadamardAmplitudeTable& table,
                                          std::ostream& out) {
  out << "# amplitude = m / sqrt(2^t), t = " << table.t << '\n';
  out << "rank,perm,m_chirality0,m_chirality1\n";
  for (std::size_t g = 0; g < graph.order; ++g)
    out << g << ',' << one_line_string(unrank(graph.n, g)) << ',' << table.at(0, g, graph.order)
        << ',' << table.at(1, g, graph.order) << '\n';
}

} // namespace caywalk
