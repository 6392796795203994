#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "caywalk/cayley.hpp"
#include "caywalk/coin.hpp"
#include "caywalk/numeric.hpp"

namespace caywalk {

// State vector |psi> over (chirality s, group element g), stored dense as
// amps[s*N + g]. The physical amplitude is amps / sqrt(radicand):
//
//   float backend       Amp = Complex,  radicand stays 1
//   rational backend    Amp = Rational, radicand 1 (basis start) or d (uniform)
//   scaled-int backend  Amp = Int,      radicand doubles per Hadamard step
//
// so exact backends never leave exact arithmetic.
template <typename Amp>
struct BasicWalkState {
  const CayleyGraph* graph = nullptr;
  std::vector<Amp> amps;
  Int radicand = 1;

  int coin_dim() const { return graph->coin_dim(); }
  std::size_t order() const { return graph->order; }
  Amp& at(int s, std::size_t g) { return amps[static_cast<std::size_t>(s) * order() + g]; }
  const Amp& at(int s, std::size_t g) const {
    return amps[static_cast<std::size_t>(s) * order() + g];
  }
};

using WalkState = BasicWalkState<Complex>;
using RationalWalkState = BasicWalkState<Rational>;
using ScaledIntWalkState = BasicWalkState<Int>;

template <typename Amp>
BasicWalkState<Amp> basis_state(const CayleyGraph& graph, int s, std::size_t g) {
  if (s < 0 || s >= graph.coin_dim()) throw std::invalid_argument("basis_state: chirality out of range");
  if (g >= graph.order) throw std::invalid_argument("basis_state: vertex out of range");
  BasicWalkState<Amp> state;
  state.graph = &graph;
  state.amps.assign(static_cast<std::size_t>(graph.coin_dim()) * graph.order, Amp{});
  state.at(s, g) = Amp{1};
  return state;
}

// (1/sqrt(d)) sum_s |s, g>. Exact backends store unit coefficients and push
// the 1/sqrt(d) into the radicand.
template <typename Amp>
BasicWalkState<Amp> uniform_coin_state(const CayleyGraph& graph, std::size_t g) {
  if (g >= graph.order) throw std::invalid_argument("uniform_coin_state: vertex out of range");
  BasicWalkState<Amp> state;
  state.graph = &graph;
  const int d = graph.coin_dim();
  state.amps.assign(static_cast<std::size_t>(d) * graph.order, Amp{});
  if constexpr (std::is_same_v<Amp, Complex>) {
    const double c = 1.0 / std::sqrt(static_cast<double>(d));
    for (int s = 0; s < d; ++s) state.at(s, g) = Complex{c};
  } else {
    for (int s = 0; s < d; ++s) state.at(s, g) = Amp{1};
    state.radicand = d;
  }
  return state;
}

using ChiralityPermutation = std::vector<int>;

inline void validate_chirality_permutation(const ChiralityPermutation& pi, int d) {
  if (static_cast<int>(pi.size()) != d)
    throw std::invalid_argument("chirality permutation: wrong size");
  std::vector<char> seen(d, 0);
  for (int v : pi) {
    if (v < 0 || v >= d || seen[v])
      throw std::invalid_argument("chirality permutation: not a bijection");
    seen[v] = 1;
  }
}

// Coin acts on the chirality index only; position untouched.
inline void apply_coin(WalkState& state, const CoinOperator& coin) {
  const int d = state.coin_dim();
  if (coin.d != d) throw std::invalid_argument("apply_coin: dimension mismatch");
  const std::size_t n = state.order();
  std::vector<Complex> column(d);
  for (std::size_t g = 0; g < n; ++g) {
    for (int s = 0; s < d; ++s) column[s] = state.at(s, g);
    for (int s = 0; s < d; ++s) {
      Complex acc = 0.0;
      for (int s2 = 0; s2 < d; ++s2) acc += coin.at(s, s2) * column[s2];
      state.at(s, g) = acc;
    }
  }
}

inline void apply_coin(RationalWalkState& state, const CoinOperator& coin) {
  const int d = state.coin_dim();
  if (coin.d != d) throw std::invalid_argument("apply_coin: dimension mismatch");
  if (!coin.exact)
    throw std::invalid_argument("apply_coin: coin has no exact rational form; "
                                "use the float backend");
  const std::size_t n = state.order();
  std::vector<Rational> column(d);
  for (std::size_t g = 0; g < n; ++g) {
    for (int s = 0; s < d; ++s) column[s] = state.at(s, g);
    for (int s = 0; s < d; ++s) {
      Rational acc = 0;
      for (int s2 = 0; s2 < d; ++s2) acc += coin.exact_at(s, s2) * column[s2];
      state.at(s, g) = acc;
    }
  }
}

// Scaled-integer backend: amplitudes are integers over sqrt(radicand).
// Only the Hadamard coin keeps that form, via sqrt(2)*H = [[1,1],[1,-1]].
inline void apply_coin(ScaledIntWalkState& state, const CoinOperator& coin) {
  if (state.coin_dim() != 2 || coin.d != 2 || coin.kind != CoinKind::hadamard)
    throw std::invalid_argument("apply_coin: scaled-integer backend supports the "
                                "Hadamard coin on two generators only");
  const std::size_t n = state.order();
  for (std::size_t g = 0; g < n; ++g) {
    const Int a = state.at(0, g);
    const Int b = state.at(1, g);
    state.at(0, g) = a + b;
    state.at(1, g) = a - b;
  }
  state.radicand *= 2;
}

// Shift: amplitude at (s, g) moves to (pi(s), g*s). pi absent = plain shift.
template <typename Amp>
void apply_shift(BasicWalkState<Amp>& state,
                 const std::optional<ChiralityPermutation>& pi = std::nullopt) {
  const int d = state.coin_dim();
  if (pi) validate_chirality_permutation(*pi, d);
  const std::size_t n = state.order();
  std::vector<Amp> next(state.amps.size(), Amp{});
  for (int s = 0; s < d; ++s) {
    const int s2 = pi ? (*pi)[s] : s;
    const auto& succ = state.graph->succ[s];
    for (std::size_t g = 0; g < n; ++g)
      next[static_cast<std::size_t>(s2) * n + succ[g]] = state.at(s, g);
  }
  state.amps = std::move(next);
}

template <typename Amp>
void apply_shift_inverse(BasicWalkState<Amp>& state,
                         const std::optional<ChiralityPermutation>& pi = std::nullopt) {
  const int d = state.coin_dim();
  if (pi) validate_chirality_permutation(*pi, d);
  const std::size_t n = state.order();
  std::vector<Amp> next(state.amps.size(), Amp{});
  for (int s = 0; s < d; ++s) {
    const int s2 = pi ? (*pi)[s] : s;
    const auto& pred = state.graph->pred[s];
    for (std::size_t g = 0; g < n; ++g)
      next[static_cast<std::size_t>(s) * n + pred[g]] =
          state.amps[static_cast<std::size_t>(s2) * n + g];
  }
  state.amps = std::move(next);
}

// One step of U = Lambda (C (x) I).
template <typename Amp>
void step(BasicWalkState<Amp>& state, const CoinOperator& coin,
          const std::optional<ChiralityPermutation>& pi = std::nullopt) {
  apply_coin(state, coin);
  apply_shift(state, pi);
}

inline void apply_coin_adjoint(WalkState& state, const CoinOperator& coin) {
  const int d = state.coin_dim();
  if (coin.d != d) throw std::invalid_argument("apply_coin_adjoint: dimension mismatch");
  const std::size_t n = state.order();
  std::vector<Complex> column(d);
  for (std::size_t g = 0; g < n; ++g) {
    for (int s = 0; s < d; ++s) column[s] = state.at(s, g);
    for (int s = 0; s < d; ++s) {
      Complex acc = 0.0;
      for (int s2 = 0; s2 < d; ++s2) acc += std::conj(coin.at(s2, s)) * column[s2];
      state.at(s, g) = acc;
    }
  }
}

inline void step_adjoint(WalkState& state, const CoinOperator& coin,
                         const std::optional<ChiralityPermutation>& pi = std::nullopt) {
  apply_shift_inverse(state, pi);
  apply_coin_adjoint(state, coin);
}

template <typename Amp>
BasicWalkState<Amp> evolve(BasicWalkState<Amp> state, const CoinOperator& coin, long long t,
                           const std::optional<ChiralityPermutation>& pi = std::nullopt) {
  if (t < 0) throw std::invalid_argument("evolve: t must be >= 0");
  for (long long i = 0; i < t; ++i) step(state, coin, pi);
  return state;
}

inline double norm_squared(const WalkState& state) {
  double sum = 0.0;
  for (const Complex& a : state.amps) sum += std::norm(a);
  return sum;
}

template <typename Amp>
Rational norm_squared(const BasicWalkState<Amp>& state) {
  Amp sum{};
  for (const Amp& a : state.amps) sum += a * a;
  return Rational(sum) / Rational(state.radicand);
}

struct Distribution {
  std::vector<double> probs;
  std::size_t size() const { return probs.size(); }
};

struct RationalDistribution {
  std::vector<Rational> probs;
  std::size_t size() const { return probs.size(); }
};

inline Distribution to_double(const RationalDistribution& dist) {
  Distribution out;
  out.probs.reserve(dist.probs.size());
  for (const auto& p : dist.probs) out.probs.push_back(to_double(p));
  return out;
}

// P[g] = sum_s |amps(s, g)|^2.
inline Distribution position_distribution(const WalkState& state) {
  Distribution dist;
  dist.probs.assign(state.order(), 0.0);
  for (int s = 0; s < state.coin_dim(); ++s)
    for (std::size_t g = 0; g < state.order(); ++g) dist.probs[g] += std::norm(state.at(s, g));
  return dist;
}

template <typename Amp>
RationalDistribution position_distribution(const BasicWalkState<Amp>& state) {
  RationalDistribution dist;
  dist.probs.assign(state.order(), Rational(0));
  const Rational scale = Rational(1) / Rational(state.radicand);
  for (int s = 0; s < state.coin_dim(); ++s)
    for (std::size_t g = 0; g < state.order(); ++g)
      dist.probs[g] += Rational(state.at(s, g) * state.at(s, g)) * scale;
  return dist;
}

// CSV columns: rank, one-line permutation, probability; exact backends add
// the probability as a rational string.
inline void write_distribution_csv(const CayleyGraph& graph, const Distribution& dist,
                                   std::ostream& out,
                                   const RationalDistribution* exact = nullptr) {
  out << "rank,perm,probability";
  if (exact) out << ",probability_exact";
  out << '\n';
  char buf[32];
  for (std::size_t g = 0; g < dist.size(); ++g) {
    std::snprintf(buf, sizeof buf, "%.17g", dist.probs[g]);
    out << g << ',' << one_line_string(unrank(graph.n, g)) << ',' << buf;
    if (exact) out << ',' << exact->probs[g];
    out << '\n';
  }
}

} // namespace caywalk
