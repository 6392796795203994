#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "caywalk/engine.hpp"

using namespace caywalk;

namespace {
const CayleyGraph& gamma4() {
  static const CayleyGraph g = build_cayley(4, gamma_generators(4));
  return g;
}
const CayleyGraph& s4_transpositions() {
  static const CayleyGraph g = build_cayley(4, transposition_generators(4));
  return g;
}
const CayleyGraph& s3_transpositions() {
  static const CayleyGraph g = build_cayley(3, transposition_generators(3));
  return g;
}
} // namespace

TEST_CASE("basis state") {
  const auto state = basis_state<Complex>(gamma4(), 0, 0);
  CHECK(norm_squared(state) == 1.0);
  int support = 0;
  for (const auto& a : state.amps)
    if (std::abs(a) > 0) ++support;
  CHECK(support == 1);

  const auto p0 = position_distribution(state);
  CHECK(p0.probs[0] == 1.0);

  CHECK_THROWS_AS(basis_state<Complex>(gamma4(), 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(basis_state<Complex>(gamma4(), 0, 24), std::invalid_argument);
}

TEST_CASE("uniform coin state") {
  const auto exact = uniform_coin_state<Rational>(gamma4(), 0);
  CHECK(exact.radicand == 2);
  CHECK(exact.at(0, 0) == 1);
  CHECK(exact.at(1, 0) == 1);
  CHECK(norm_squared(exact) == 1);

  const auto f = uniform_coin_state<Complex>(gamma4(), 0);
  CHECK(f.at(0, 0).real() == Catch::Approx(1.0 / std::sqrt(2.0)));

  // the Grover coin fixes the uniform chirality state: a + (d-1) b = 1
  auto fixed = uniform_coin_state<Rational>(s4_transpositions(), 0);
  const auto before = fixed.amps;
  apply_coin(fixed, grover_coin(6));
  CHECK(fixed.amps == before);
}

TEST_CASE("grover coin action on a chirality basis vector") {
  auto state = basis_state<Rational>(s3_transpositions(), 0, 0);
  apply_coin(state, grover_coin(3));
  CHECK(state.at(0, 0) == Rational(-1, 3));
  CHECK(state.at(1, 0) == Rational(2, 3));
  CHECK(state.at(2, 0) == Rational(2, 3));
  CHECK(norm_squared(state) == 1);
}

TEST_CASE("identity coin leaves the state unchanged") {
  auto state = basis_state<Complex>(gamma4(), 1, 5);
  const auto before = state.amps;
  apply_coin(state, custom_coin({Complex{1}, Complex{0}, Complex{0}, Complex{1}}, 2));
  CHECK(state.amps == before);
}

TEST_CASE("shift moves along the labelled edge") {
  auto state = basis_state<Rational>(gamma4(), 0, 0);
  apply_shift(state);
  const std::size_t mu_rank = rank(perm_from_cycles(4, {{0, 1}}));
  CHECK(state.at(0, mu_rank) == 1);

  // bijectivity: shift then inverse shift restores
  auto roundtrip = basis_state<Rational>(gamma4(), 1, 7);
  apply_shift(roundtrip);
  apply_shift_inverse(roundtrip);
  CHECK(roundtrip.at(1, 7) == 1);
}

TEST_CASE("flip-flop relabelling toggles chirality") {
  const ChiralityPermutation swap{1, 0};
  auto state = basis_state<Rational>(gamma4(), 0, 0);
  apply_shift(state, swap);
  const std::size_t mu_rank = rank(perm_from_cycles(4, {{0, 1}}));
  CHECK(state.at(1, mu_rank) == 1);

  CHECK_THROWS_AS(apply_shift(state, ChiralityPermutation{0, 0}), std::invalid_argument);
}

TEST_CASE("one hadamard step from the origin") {
  auto state = evolve(basis_state<Complex>(gamma4(), 0, 0), hadamard_coin(), 1);
  const double h = 1.0 / std::sqrt(2.0);
  const std::size_t mu_rank = rank(perm_from_cycles(4, {{0, 1}}));
  const std::size_t sigma_rank = rank(perm_from_cycles(4, {{0, 1, 2, 3}}));
  CHECK(std::abs(state.at(0, mu_rank) - Complex{h}) < 1e-15);
  CHECK(std::abs(state.at(1, sigma_rank) - Complex{h}) < 1e-15);
  double rest = 0;
  for (const auto& a : state.amps) rest += std::norm(a);
  CHECK(rest == Catch::Approx(1.0));
}

TEST_CASE("norm is preserved over long runs") {
  auto h = evolve(basis_state<Complex>(gamma4(), 0, 0), hadamard_coin(), 50);
  CHECK(std::abs(norm_squared(h) - 1.0) < 1e-10);

  auto ix = evolve(basis_state<Complex>(gamma4(), 0, 0), ix_coin(), 50);
  CHECK(std::abs(norm_squared(ix) - 1.0) < 1e-10);

  auto g = evolve(uniform_coin_state<Complex>(s4_transpositions(), 0), grover_coin(6), 50);
  CHECK(std::abs(norm_squared(g) - 1.0) < 1e-10);
}

TEST_CASE("evolve is iterated step") {
  auto stepped = basis_state<Complex>(gamma4(), 0, 0);
  for (int i = 0; i < 5; ++i) step(stepped, hadamard_coin());
  const auto evolved = evolve(basis_state<Complex>(gamma4(), 0, 0), hadamard_coin(), 5);
  for (std::size_t i = 0; i < stepped.amps.size(); ++i)
    CHECK(std::abs(stepped.amps[i] - evolved.amps[i]) < 1e-15);

  const auto frozen = evolve(basis_state<Complex>(gamma4(), 0, 0), hadamard_coin(), 0);
  CHECK(frozen.amps == basis_state<Complex>(gamma4(), 0, 0).amps);
  CHECK_THROWS_AS(evolve(basis_state<Complex>(gamma4(), 0, 0), hadamard_coin(), -1),
                  std::invalid_argument);
}

TEST_CASE("adjoint step reverses the walk") {
  const auto start = basis_state<Complex>(s4_transpositions(), 2, 3);
  auto state = evolve(start, grover_coin(6), 8);
  for (int i = 0; i < 8; ++i) step_adjoint(state, grover_coin(6));
  for (std::size_t i = 0; i < state.amps.size(); ++i)
    CHECK(std::abs(state.amps[i] - start.amps[i]) < 1e-10);
}

TEST_CASE("two grover steps on s4 transpositions reproduce the known distribution") {
  // start |(12), e>; (12) is generator index 0 in lexicographic order
  const auto& graph = s4_transpositions();
  REQUIRE(graph.gens.labels[0] == "(1 2)");
  const auto state = evolve(basis_state<Rational>(graph, 0, 0), grover_coin(6), 2);
  CHECK(norm_squared(state) == 1);

  const auto dist = position_distribution(state);
  Rational total = 0;
  for (const auto& p : dist.probs) total += p;
  CHECK(total == 1);

  std::map<Rational, int> multiset;
  for (const auto& p : dist.probs) ++multiset[p];
  const std::map<Rational, int> expected{
      {Rational(4, 9), 1},  {Rational(0), 12},    {Rational(2, 27), 4},
      {Rational(1, 27), 4}, {Rational(5, 81), 1}, {Rational(2, 81), 2},
  };
  CHECK(multiset == expected);
  CHECK(multiset.size() == 6); // more distinct values than the 5 classes
}

TEST_CASE("rational and float grover evolution agree") {
  for (const CayleyGraph* graph : {&s3_transpositions(), &s4_transpositions()}) {
    const int d = graph->coin_dim();
    auto exact = uniform_coin_state<Rational>(*graph, 0);
    auto approx = uniform_coin_state<Complex>(*graph, 0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int t = 0; t <= 10; ++t) {
      for (int s = 0; s < d; ++s)
        for (std::size_t g = 0; g < graph->order; ++g) {
          const Complex a = approx.at(s, g);
          CHECK(std::abs(a.imag()) < 1e-15);
          CHECK(std::abs(to_double(exact.at(s, g)) * scale - a.real()) < 1e-12);
        }
      step(exact, grover_coin(d));
      step(approx, grover_coin(d));
    }
  }
}

TEST_CASE("scaled integer hadamard backend") {
  auto state = basis_state<Int>(gamma4(), 0, 0);
  for (int t = 1; t <= 10; ++t) {
    step(state, hadamard_coin());
    CHECK(state.radicand == int_pow(2, t));
    Int sum_sq = 0;
    for (const auto& m : state.amps) sum_sq += m * m;
    CHECK(sum_sq == state.radicand); // unitarity in scaled form
  }
  CHECK_THROWS_AS(step(state, ix_coin()), std::invalid_argument);

  auto grover_state = basis_state<Int>(s4_transpositions(), 0, 0);
  CHECK_THROWS_AS(step(grover_state, grover_coin(6)), std::invalid_argument);
}
