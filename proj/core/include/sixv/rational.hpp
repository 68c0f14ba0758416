#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sixv {

// Exact arithmetic for the theory-check suites and small exact measures.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_pow(const Rational& base, unsigned exp) {
  Rational r = 1;
  Rational b = base;
  unsigned e = exp;
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace sixv
