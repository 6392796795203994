#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include "caywalk/chartable.hpp"

using namespace caywalk;

namespace {
Partition part(std::vector<int> parts) { return Partition{std::move(parts)}; }
} // namespace

TEST_CASE("characters of s3 by hand") {
  // rim-hook recursion unrolled by hand for the standard representation
  CHECK(mn_character(part({2, 1}), part({1, 1, 1})) == 2);
  CHECK(mn_character(part({2, 1}), part({2, 1})) == 0);
  CHECK(mn_character(part({2, 1}), part({3})) == -1);
}

TEST_CASE("trivial and sign representations") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& mu : partitions(n)) {
      CHECK(mn_character(part({n}), mu) == 1);
      const int expected_sign = (n - mu.size()) % 2 == 0 ? 1 : -1;
      CHECK(mn_character(part(std::vector<int>(n, 1)), mu) == expected_sign);
    }
  }
}

TEST_CASE("size mismatch rejected") {
  CHECK_THROWS_AS(mn_character(part({2, 1}), part({2})), std::invalid_argument);
}

TEST_CASE("table for s3") {
  const auto table = character_table(3);
  REQUIRE(table.labels.size() == 3);
  CHECK(table.dims[0] == 1); // (3): trivial
  CHECK(table.dims[1] == 2); // (2,1): standard
  CHECK(table.dims[2] == 1); // (1,1,1): sign
  CHECK(table.class_sizes[table.class_index(part({2, 1}))] == 3);
}

TEST_CASE("table for s4 dimensions") {
  const auto table = character_table(4);
  std::multiset<long long> dims;
  Int sum_sq = 0;
  for (const auto& d : table.dims) {
    dims.insert(d.convert_to<long long>());
    sum_sq += d * d;
  }
  CHECK(dims == std::multiset<long long>{1, 1, 2, 3, 3});
  CHECK(sum_sq == 24);
}

TEST_CASE("table for s1") {
  const auto table = character_table(1);
  REQUIRE(table.labels.size() == 1);
  CHECK(table.values[0][0] == 1);
}

TEST_CASE("character table degree cap") { CHECK_THROWS_AS(character_table(11), CapExceeded); }

TEST_CASE("table invariants up to degree 8") {
  for (int n = 1; n <= 8; ++n) {
    const auto table = character_table(n);
    const std::size_t k = table.labels.size();
    const Int group_order = factorial(n);

    Int sum_sq = 0;
    for (const auto& d : table.dims) {
      CHECK(d >= 1);
      sum_sq += d * d;
    }
    CHECK(sum_sq == group_order);

    // hook length formula agrees with chi_lambda(e)
    for (std::size_t l = 0; l < k; ++l)
      CHECK(table.dims[l] == hook_length_dimension(table.labels[l]));

    // row orthogonality
    for (std::size_t l1 = 0; l1 < k; ++l1)
      for (std::size_t l2 = l1; l2 < k; ++l2) {
        Int dot = 0;
        for (std::size_t m = 0; m < k; ++m)
          dot += table.class_sizes[m] * table.values[l1][m] * table.values[l2][m];
        CHECK(dot == (l1 == l2 ? group_order : 0));
      }

    // column orthogonality
    for (std::size_t m1 = 0; m1 < k; ++m1)
      for (std::size_t m2 = m1; m2 < k; ++m2) {
        Int dot = 0;
        for (std::size_t l = 0; l < k; ++l) dot += table.values[l][m1] * table.values[l][m2];
        CHECK(dot == (m1 == m2 ? Int(group_order / table.class_sizes[m1]) : Int(0)));
      }
  }
}

TEST_CASE("characters are real: chi(g) = chi(g inverse)") {
  for (std::size_t r = 0; r < 120; ++r) {
    const auto g = unrank(5, r);
    const auto type = cycle_type(g);
    const auto inv_type = cycle_type(inverse(g));
    for (const auto& lambda : partitions(5))
      CHECK(mn_character(lambda, type) == mn_character(lambda, inv_type));
  }
}

TEST_CASE("delta identity sum") {
  const auto t4 = character_table(4);
  CHECK(delta_identity_sum(t4, Permutation::identity(4)) == 24);
  CHECK(delta_identity_sum(t4, perm_from_cycles(4, {{0, 1}})) == 0);

  const auto t3 = character_table(3);
  CHECK(delta_identity_sum(t3, perm_from_cycles(3, {{0, 1, 2}})) == 0);

  // exhaustive: n! at e, 0 elsewhere, for n <= 6
  for (int n = 2; n <= 6; ++n) {
    const auto table = character_table(n);
    std::size_t order = 1;
    for (int i = 2; i <= n; ++i) order *= static_cast<std::size_t>(i);
    for (std::size_t r = 0; r < order; ++r)
      CHECK(delta_identity_sum(table, unrank(n, r)) == (r == 0 ? factorial(n) : Int(0)));
  }
}

TEST_CASE("csv export") {
  std::ostringstream out;
  write_character_csv(character_table(3), out);
  const std::string csv = out.str();
  CHECK(csv.starts_with("lambda\\mu,3,2+1,1+1+1\n"));
  CHECK(csv.find("\n3,1,1,1\n") != std::string::npos);   // trivial rep row
  CHECK(csv.find("\n2+1,-1,0,2\n") != std::string::npos); // standard rep row
}
