#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>

namespace caywalk {

// Exact arithmetic used by the rational and scaled-integer walk backends
// and by the character table. Header-only bignums keep the library
// self-contained.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline Int int_pow(Int base, unsigned exp) {
  Int r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline Rational rational_pow(const Rational& base, unsigned exp) {
  Rational r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

inline Int factorial(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const Int& i) { return i.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

} // namespace caywalk
