#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace vm {

using Rational = boost::rational<std::int64_t>;

// Parses "184/19", "9" or "-3/4". Throws ArgumentError otherwise.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Error-exponent bookkeeping for the k-th moment given an admissible
// exponent A0 > 2 in  int |Delta|^{A0} << T^{1 + A0/4 + eps}:
//   K0     = least even integer >= A0
//   b(k)   = 2^{k-2} + (k-6)/4
//   sigma  = 1/4                       if k - 1 < A0/2
//          = (A0 - k) / (2 (A0 - 2))   if A0/2 + 1 <= k < A0
//   delta1 = sigma / (2 b(K0))
//   delta2 = sigma / (2 b(k) + 2 sigma)
struct ExponentBook {
  int k = 0;
  Rational a0;
  std::int64_t k0 = 0;
  Rational b_k;
  Rational b_k0;
  Rational sigma;
  Rational delta1;
  Rational delta2;
};

Rational b_exponent(int k);

// Throws ArgumentError unless A0 > 2, k >= 3 and k < A0.
ExponentBook exponent_book(int k, const Rational& a0);

}  // namespace vm
