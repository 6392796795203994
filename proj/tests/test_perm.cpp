#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "caywalk/perm.hpp"

using namespace caywalk;

TEST_CASE("cycle construction") {
  CHECK(perm_from_cycles(3, {{0, 1}}).img == std::vector<int>{1, 0, 2});
  CHECK(perm_from_cycles(4, {{0, 1, 2, 3}}).img == std::vector<int>{1, 2, 3, 0});
  CHECK(perm_from_cycles(4, {{0, 1}, {2, 3}}).img == std::vector<int>{1, 0, 3, 2});
  CHECK(perm_from_cycles(3, {}) == Permutation::identity(3));

  CHECK_THROWS_AS(perm_from_cycles(3, {{0, 1}, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(perm_from_cycles(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("cycle string parsing is 1-based") {
  CHECK(perm_from_cycle_string(3, "(1 2)") == perm_from_cycles(3, {{0, 1}}));
  CHECK(perm_from_cycle_string(4, "(1,2)(3,4)") == perm_from_cycles(4, {{0, 1}, {2, 3}}));
  CHECK(perm_from_cycle_string(4, "e") == Permutation::identity(4));
  CHECK(cycle_string(perm_from_cycle_string(4, "(1 2 3 4)")) == "(1 2 3 4)");
  CHECK(cycle_string(Permutation::identity(5)) == "e");
  CHECK_THROWS_AS(perm_from_cycle_string(3, "(1 2"), std::invalid_argument);
}

TEST_CASE("composition applies left to right") {
  const auto t01 = perm_from_cycles(3, {{0, 1}});
  const auto c012 = perm_from_cycles(3, {{0, 1, 2}});

  CHECK(compose(Permutation::identity(3), t01) == t01);
  CHECK(compose(t01, Permutation::identity(3)) == t01);

  // (0 1) then (0 1 2): 0 -> 1 -> 2, 1 -> 0 -> 1, 2 -> 2 -> 0
  CHECK(compose(t01, c012).img == std::vector<int>{2, 1, 0});
  CHECK(compose(t01, t01) == Permutation::identity(3));
  CHECK_THROWS_AS(compose(t01, Permutation::identity(4)), std::invalid_argument);
}

TEST_CASE("inverse") {
  for (std::size_t r = 0; r < 24; ++r) {
    const auto p = unrank(4, r);
    CHECK(compose(p, inverse(p)) == Permutation::identity(4));
    CHECK(compose(inverse(p), p) == Permutation::identity(4));
  }
}

TEST_CASE("associativity on random triples") {
  std::mt19937 rng(12345);
  for (int n = 2; n <= 8; ++n) {
    std::size_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= static_cast<std::size_t>(i);
    std::uniform_int_distribution<std::size_t> pick(0, fact - 1);
    for (int it = 0; it < 20; ++it) {
      const auto p = unrank(n, pick(rng));
      const auto q = unrank(n, pick(rng));
      const auto r = unrank(n, pick(rng));
      CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
    }
  }
}

TEST_CASE("lehmer rank and unrank") {
  CHECK(rank(Permutation::identity(4)) == 0);
  CHECK(rank(unrank(4, 17)) == 17);
  CHECK_THROWS_AS(unrank(3, 6), std::invalid_argument);

  std::set<std::vector<int>> seen;
  for (std::size_t k = 0; k < 6; ++k) {
    const auto p = unrank(3, k);
    CHECK(rank(p) == k);
    seen.insert(p.img);
  }
  CHECK(seen.size() == 6);

  // all ranks distinct and round-trip for n = 5
  std::set<std::size_t> ranks;
  for (std::size_t k = 0; k < 120; ++k) ranks.insert(rank(unrank(5, k)));
  CHECK(ranks.size() == 120);
  CHECK(*ranks.begin() == 0);
  CHECK(*ranks.rbegin() == 119);
}

TEST_CASE("cycle type") {
  CHECK(cycle_type(Permutation::identity(4)).parts == std::vector<int>{1, 1, 1, 1});
  CHECK(cycle_type(perm_from_cycles(4, {{0, 1, 2, 3}})).parts == std::vector<int>{4});
  CHECK(cycle_type(perm_from_cycles(4, {{0, 1}, {2, 3}})).parts == std::vector<int>{2, 2});
}

TEST_CASE("conjugation preserves cycle type") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, 5039);
  for (int it = 0; it < 50; ++it) {
    const auto p = unrank(7, pick(rng));
    const auto tau = unrank(7, pick(rng));
    CHECK(cycle_type(conjugate(p, tau)) == cycle_type(p));
  }
}

TEST_CASE("conjugacy classes") {
  CHECK(conjugacy_classes(4).size() == 5);

  // class sizes of S_3: identity 1, transpositions 3, 3-cycles 2
  std::map<std::vector<int>, Int> sizes;
  for (const auto& [label, size] : conjugacy_classes(3)) sizes[label.parts] = size;
  CHECK(sizes[{1, 1, 1}] == 1);
  CHECK(sizes[{2, 1}] == 3);
  CHECK(sizes[{3}] == 2);

  // oracle: direct enumeration of S_4 by cycle type
  std::map<std::vector<int>, long long> enumerated;
  for (std::size_t r = 0; r < 24; ++r) ++enumerated[cycle_type(unrank(4, r)).parts];
  for (const auto& [label, size] : conjugacy_classes(4))
    CHECK(Int(enumerated[label.parts]) == size);
  CHECK(enumerated[{2, 1, 1}] == 6);

  // sizes sum to n! for n <= 8
  for (int n = 1; n <= 8; ++n) {
    Int sum = 0;
    for (const auto& [label, size] : conjugacy_classes(n)) sum += size;
    CHECK(sum == factorial(n));
  }
}

TEST_CASE("partition generation order") {
  const auto p3 = partitions(3);
  REQUIRE(p3.size() == 3);
  CHECK(p3[0].parts == std::vector<int>{3});
  CHECK(p3[1].parts == std::vector<int>{2, 1});
  CHECK(p3[2].parts == std::vector<int>{1, 1, 1});
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(8).size() == 22);
}
