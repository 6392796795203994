// Acceptance suite: runs every verification check and prints one pass/fail
// line per criterion. Nonzero exit if anything fails.

#include <iostream>

#include "caywalk/verify.hpp"

int main() {
  const auto results = caywalk::verify::run_checks();
  const bool ok = caywalk::verify::report(results, std::cout);
  return ok ? 0 : 1;
}
