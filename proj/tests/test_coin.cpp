#include <catch2/catch_amalgamated.hpp>

#include "caywalk/coin.hpp"

using namespace caywalk;

TEST_CASE("grover coin entries") {
  const auto c3 = grover_coin(3);
  REQUIRE(c3.exact.has_value());
  CHECK(c3.exact_at(0, 0) == Rational(-1, 3));
  CHECK(c3.exact_at(0, 1) == Rational(2, 3));
  CHECK(unitarity_defect(c3) < 1e-12);

  // d = 2 degenerates to NOT
  const auto c2 = grover_coin(2);
  CHECK(c2.exact_at(0, 0) == 0);
  CHECK(c2.exact_at(0, 1) == 1);

  // row sums a + (d-1) b = 1
  for (int d = 2; d <= 8; ++d) {
    const auto c = grover_coin(d);
    Rational row = 0;
    for (int j = 0; j < d; ++j) row += c.exact_at(0, j);
    CHECK(row == 1);
  }
  CHECK_THROWS_AS(grover_coin(1), std::invalid_argument);
}

TEST_CASE("grover coin is the reflection about the uniform chirality state") {
  for (int d = 2; d <= 6; ++d) {
    const auto c = grover_coin(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Rational expected = Rational(2, d) - (i == j ? 1 : 0); // 2|psi><psi| - I
        CHECK(c.exact_at(i, j) == expected);
      }
  }
}

TEST_CASE("hadamard coin") {
  const auto h = hadamard_coin();
  CHECK(h.at(0, 0).real() == Catch::Approx(1.0 / std::sqrt(2.0)));
  CHECK(h.at(1, 1).real() == Catch::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(unitarity_defect(h) < 1e-15);

  // involution: H H = I
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < 2; ++k) acc += h.at(i, k) * h.at(k, j);
      CHECK(std::abs(acc - (i == j ? Complex{1.0} : Complex{0.0})) < 1e-15);
    }
}

TEST_CASE("ix coin") {
  const auto c = ix_coin();
  CHECK(c.at(0, 1) == Complex(0.0, 1.0 / std::sqrt(2.0)));
  CHECK(unitarity_defect(c) < 1e-15);
}

TEST_CASE("custom coin validation") {
  CHECK_NOTHROW(custom_coin({Complex{1}, Complex{0}, Complex{0}, Complex{1}}, 2));
  CHECK_THROWS_AS(custom_coin({Complex{1}, Complex{0}, Complex{0}, Complex{2}}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(custom_coin({Complex{1}, Complex{0}, Complex{0}}, 2), std::invalid_argument);

  // grover entries accepted as custom and equal to the builtin
  const auto g = grover_coin(3);
  const auto as_custom = custom_coin(g.entries, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(as_custom.at(i, j) == g.at(i, j));
}

TEST_CASE("coin from json") {
  const auto j = nlohmann::json::parse(R"([[[0,0],[1,0]],[[1,0],[0,0]]])");
  const auto c = coin_from_json(j);
  CHECK(c.d == 2);
  CHECK(c.at(0, 1) == Complex{1.0});
  CHECK_THROWS_AS(coin_from_json(nlohmann::json::parse(R"([[[1,0]],[[0,0],[1,0]]])")),
                  std::invalid_argument);
}
