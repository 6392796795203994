#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "caywalk/verify.hpp"

using namespace caywalk;

TEST_CASE("corrupted character table fails the invariant check") {
  auto table = character_table(4);
  REQUIRE_FALSE(verify::character_table_invariants(table).has_value());

  auto corrupted = table;
  corrupted.values[1][2] += 1;
  const auto why = verify::character_table_invariants(corrupted);
  REQUIRE(why.has_value());
  CHECK(why->find("orthogonality") != std::string::npos);

  auto bad_dim = table;
  bad_dim.dims[2] += 1;
  CHECK(verify::character_table_invariants(bad_dim).has_value());
}

TEST_CASE("check filtering by id substring") {
  const auto all = verify::run_checks("gamma4");
  REQUIRE(all.size() == 1);
  CHECK(all[0].id == "gamma4-structure");
  CHECK(all[0].pass);

  CHECK(verify::run_checks("no-such-check").empty());

  const auto paths = verify::run_checks("paths");
  CHECK(paths.size() == 3);
}

TEST_CASE("report prints one line block per check and an overall verdict") {
  std::ostringstream out;
  const bool ok = verify::report(verify::run_checks("character-table"), out);
  CHECK(ok);
  CHECK(out.str().find("[PASS] character-table") != std::string::npos);
  CHECK(out.str().find("all checks passed") != std::string::npos);

  std::ostringstream empty_out;
  CHECK_FALSE(verify::report({}, empty_out));
}
