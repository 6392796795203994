#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "caywalk/analytics.hpp"

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

CoinOperator identity_coin2() {
  return custom_coin({Complex{1}, Complex{0}, Complex{0}, Complex{1}}, 2);
}
} // namespace

TEST_CASE("total variation distance") {
  Distribution p, q;
  p.probs = {0.5, 0.5, 0.0};
  q.probs = {0.5, 0.5, 0.0};
  CHECK(tv_distance(p, q) == 0.0);

  Distribution a, b;
  a.probs = {1.0, 0.0};
  b.probs = {0.0, 1.0};
  CHECK(tv_distance(a, b) == 2.0);

  Distribution point;
  point.probs.assign(24, 0.0);
  point.probs[0] = 1.0;
  CHECK(tv_distance(uniform_distribution(24), point) == Catch::Approx(2.0 * (1.0 - 1.0 / 24.0)));

  CHECK_THROWS_AS(tv_distance(a, p), std::invalid_argument);
}

TEST_CASE("tv distance is a scaled metric") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_dist = [&] {
    Distribution d;
    d.probs.resize(10);
    double sum = 0;
    for (double& x : d.probs) sum += (x = u(rng));
    for (double& x : d.probs) x /= sum;
    return d;
  };
  for (int it = 0; it < 25; ++it) {
    const auto p = random_dist(), q = random_dist(), r = random_dist();
    CHECK(tv_distance(p, q) == Catch::Approx(tv_distance(q, p)));
    CHECK(tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + 1e-12);
    CHECK(tv_distance(p, q) >= 0.0);
  }
}

TEST_CASE("time averaging") {
  const auto start = basis_state<Complex>(gamma4(), 0, 0);
  const auto coin = hadamard_coin();

  const auto p0 = time_averaged(start, coin, 1);
  CHECK(p0.probs[0] == 1.0); // T = 1 is P_0

  const auto avg = time_averaged(start, coin, 64);
  double sum = 0;
  for (double v : avg.probs) sum += v;
  CHECK(sum == Catch::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(time_averaged(start, coin, 0), std::invalid_argument);
}

TEST_CASE("prefix mean identity") {
  const auto coin = hadamard_coin();
  const long long T = 32;
  const auto full = time_averaged(basis_state<Complex>(gamma4(), 0, 0), coin, 2 * T);

  const auto first = time_averaged(basis_state<Complex>(gamma4(), 0, 0), coin, T);
  const auto midpoint = evolve(basis_state<Complex>(gamma4(), 0, 0), coin, T);
  const auto second = time_averaged(midpoint, coin, T);

  for (std::size_t g = 0; g < full.size(); ++g)
    CHECK(full.probs[g] == Catch::Approx(0.5 * first.probs[g] + 0.5 * second.probs[g])
                               .margin(1e-12));
}

TEST_CASE("empirical limit of a period-two orbit") {
  // identity coin: the walker deterministically alternates e <-> (12)
  const auto start = basis_state<Complex>(gamma4(), 0, 0);
  const auto limit = empirical_limit(start, identity_coin2(), 64, 0.05);
  CHECK(limit.limit.probs[0] == Catch::Approx(0.5));
  CHECK(limit.limit.probs[rank(perm_from_cycles(4, {{0, 1}}))] == Catch::Approx(0.5));
  // worst tail tv is at the first odd T >= 32: 1/33
  CHECK(limit.residual == Catch::Approx(1.0 / 33.0));
  CHECK(limit.converged);
  CHECK_FALSE(empirical_limit(start, identity_coin2(), 64, 0.01).converged);
}

TEST_CASE("empirical limit residual shrinks as the window doubles") {
  const auto start = basis_state<Complex>(gamma4(), 0, 0);
  const auto coin = hadamard_coin();
  double prev = empirical_limit(start, coin, 256, 1.0).residual;
  for (long long t_max : {512, 1024, 2048}) {
    const double res = empirical_limit(start, coin, t_max, 1.0).residual;
    CHECK(res < prev);
    prev = res;
  }
}

TEST_CASE("mixing time of the deterministic orbit is not reached") {
  const auto start = basis_state<Complex>(gamma4(), 0, 0);
  const auto report = mixing_time(start, identity_coin2(), 1e-4, 64);
  CHECK_FALSE(report.mixing_time.has_value());
  CHECK(report.cauchy_residual > 1e-4);

  // a vacuous bound is met immediately
  const auto vacuous = mixing_time(start, identity_coin2(), 2.0, 64);
  REQUIRE(vacuous.mixing_time.has_value());
  CHECK(*vacuous.mixing_time == 1);
}

TEST_CASE("hadamard walk mixing report") {
  const auto start = basis_state<Complex>(gamma4(), 0, 0);
  const auto report = mixing_time(start, hadamard_coin(), 0.05, 1024);
  REQUIRE(report.mixing_time.has_value());
  CHECK(*report.mixing_time <= 512);
  CHECK(report.epsilon == 0.05);
  REQUIRE(!report.sampled_T.empty());
  for (std::size_t i = 1; i < report.sampled_T.size(); ++i)
    CHECK(report.sampled_T[i] > report.sampled_T[i - 1]);
  for (double tv : report.tv_to_reference) {
    CHECK(tv >= 0.0);
    CHECK(tv <= 2.0);
  }

  std::ostringstream out;
  write_convergence_json(report, out);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j["epsilon"] == 0.05);
  CHECK(j["mixing_time"].get<long long>() == *report.mixing_time);
  CHECK(!j["samples"].empty());
}

TEST_CASE("class function check on exact distributions") {
  const auto& graph = s4_transpositions();
  const auto coin = grover_coin(6);

  // uniform-coin start: every class carries one probability value
  const auto exact = position_distribution(
      evolve(uniform_coin_state<Rational>(graph, 0), coin, 3));
  const auto report = class_function_check(exact, 4);
  CHECK(report.is_class_function);
  CHECK(report.max_spread == 0.0);

  // basis start breaks the class structure: 6 distinct values at t = 2
  const auto basis = position_distribution(
      evolve(basis_state<Rational>(graph, 0, 0), coin, 2));
  const auto broken = class_function_check(basis, 4);
  CHECK_FALSE(broken.is_class_function);
  CHECK(broken.distinct_values == 6);
}

TEST_CASE("class function check on float distributions") {
  const auto uniform = uniform_distribution(24);
  const auto report = class_function_check(uniform, 4);
  CHECK(report.is_class_function);
  CHECK(report.distinct_values == 1);
  CHECK(report.classes.size() == 5);
}

TEST_CASE("walk matrix matches the streaming engine") {
  const auto u = build_walk_matrix(gamma4(), hadamard_coin());
  CHECK(u.dim == 48);
  CHECK(unitarity_defect(u) < 1e-12);

  auto streamed = basis_state<Complex>(gamma4(), 0, 0);
  auto matrixed = basis_state<Complex>(gamma4(), 0, 0);
  for (int t = 0; t < 20; ++t) {
    step(streamed, hadamard_coin());
    matrixed = apply_walk_matrix(u, matrixed);
    for (std::size_t i = 0; i < streamed.amps.size(); ++i)
      CHECK(std::abs(streamed.amps[i] - matrixed.amps[i]) < 1e-12);
  }
}

TEST_CASE("walk matrix block structure") {
  // oracle: independently assembled blocks C[s2][s1] * P_{s2}
  const auto& graph = gamma4();
  const auto coin = hadamard_coin();
  const auto u = build_walk_matrix(graph, coin);
  const std::size_t n = graph.order;
  for (int s2 = 0; s2 < 2; ++s2)
    for (int s1 = 0; s1 < 2; ++s1)
      for (std::size_t g2 = 0; g2 < n; ++g2)
        for (std::size_t g1 = 0; g1 < n; ++g1) {
          const Complex expected =
              (graph.succ[s2][g1] == g2) ? coin.at(s2, s1) : Complex{0.0};
          CHECK(u.at(s2 * n + g2, s1 * n + g1) == expected);
        }
}

TEST_CASE("walk matrix respects the chirality relabelling") {
  const ChiralityPermutation swap{1, 0};
  const auto u = build_walk_matrix(gamma4(), hadamard_coin(), swap);
  auto streamed = basis_state<Complex>(gamma4(), 0, 0);
  auto matrixed = streamed;
  for (int t = 0; t < 6; ++t) {
    step(streamed, hadamard_coin(), swap);
    matrixed = apply_walk_matrix(u, matrixed);
  }
  for (std::size_t i = 0; i < streamed.amps.size(); ++i)
    CHECK(std::abs(streamed.amps[i] - matrixed.amps[i]) < 1e-12);
}

TEST_CASE("dense cap") {
  Caps caps;
  caps.dense_dim = 40;
  CHECK_THROWS_AS(build_walk_matrix(gamma4(), hadamard_coin(), std::nullopt, caps), CapExceeded);
}

TEST_CASE("walk operator spectrum") {
  const auto u = build_walk_matrix(gamma4(), hadamard_coin());
  const auto report = walk_spectrum(u);
  CHECK(report.eigen.values.size() == 48);
  CHECK(report.max_modulus_deviation < 1e-8);
  CHECK(report.clusters.max_multiplicity >= 2); // degenerate spectrum

  int total_multiplicity = 0;
  for (const auto& c : report.clusters.clusters) total_multiplicity += c.multiplicity();
  CHECK(total_multiplicity == 48);

  // U is real for the hadamard coin, so the spectrum is conjugation-closed
  for (const Complex& v : report.eigen.values) {
    double best = 1e9;
    for (const Complex& w : report.eigen.values) best = std::min(best, std::abs(std::conj(v) - w));
    CHECK(best < 1e-7);
  }

  std::ostringstream out;
  write_spectrum_csv(report, out);
  CHECK(out.str().starts_with("index,re,im,modulus,cluster\n"));
}

TEST_CASE("pair of unit eigenvalues for the bare hadamard coin") {
  WalkMatrix u;
  u.dim = 2;
  const double h = 1.0 / std::sqrt(2.0);
  u.entries = {Complex{h}, Complex{h}, Complex{h}, Complex{-h}};
  const auto report = walk_spectrum(u);
  CHECK(report.max_modulus_deviation < 1e-12);
  const Complex product = report.eigen.values[0] * report.eigen.values[1];
  CHECK(std::abs(product - Complex{-1.0}) < 1e-12); // det H = -1
}
