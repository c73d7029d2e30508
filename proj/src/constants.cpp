#include "vm/constants.hpp"

#include <array>
#include <cmath>

#include "vm/errors.hpp"

namespace vm {

namespace {

// B_2, B_4, ..., B_20
constexpr std::array<long double, 10> kBernoulli = {
    1.0L / 6,        -1.0L / 30,       1.0L / 42,         -1.0L / 30,
    5.0L / 66,       -691.0L / 2730,   7.0L / 6,          -3617.0L / 510,
    43867.0L / 798,  -174611.0L / 330,
};

constexpr int kEulerMaclaurinCut = 40;

}  // namespace

long double zeta(long double s) {
  if (!(s > 1.0L)) throw ArgumentError("zeta(s) needs real s > 1");
  const long double n = kEulerMaclaurinCut;
  long double sum = 0.0L;
  for (int k = 1; k < kEulerMaclaurinCut; ++k) sum += std::pow(static_cast<long double>(k), -s);
  // tail: N^{1-s}/(s-1) + N^{-s}/2 + sum_j B_2j/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
  sum += std::pow(n, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(n, -s);
  long double rising = s;      // s (s+1) ... (s+2j-2)
  long double factorial = 2;   // (2j)!
  long double npow = std::pow(n, -s - 1.0L);
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    const long double term = kBernoulli[j] / factorial * rising * npow;
    sum += term;
    if (std::fabs(term) < 1e-22L * sum) break;
    const long double a = s + 2 * j + 1;
    rising *= a * (a + 1);
    factorial *= (2 * j + 3) * (2 * j + 4);
    npow /= n * n;
  }
  return sum;
}

long double euler_gamma() {
  // gamma = H_N - ln N - 1/(2N) + sum_j B_2j / (2j N^{2j})
  const int big_n = 1000;
  long double h = 0.0L;
  for (int k = big_n; k >= 1; --k) h += 1.0L / k;
  const long double n = big_n;
  long double g = h - std::log(n) - 0.5L / n;
  long double npow = n * n;
  for (std::size_t j = 0; j < 4; ++j) {
    g += kBernoulli[j] / (2.0L * (j + 1) * npow);
    npow *= n * n;
  }
  return g;
}

long double pi_machin() {
  // pi = 16 atan(1/5) - 4 atan(1/239), both by their Taylor series
  auto arctan_inv = [](long double q) {
    long double term = 1.0L / q;
    long double sum = term;
    const long double q2 = q * q;
    for (int k = 1; k < 60; ++k) {
      term /= -q2;
      sum += term / (2 * k + 1);
    }
    return sum;
  };
  return 16.0L * arctan_inv(5.0L) - 4.0L * arctan_inv(239.0L);
}

const MathConstants& constants() {
  static const MathConstants c{
      static_cast<double>(euler_gamma()),
      static_cast<double>(zeta(1.5L)),
      static_cast<double>(zeta(3.0L)),
      static_cast<double>(pi_machin()),
  };
  return c;
}

}  // namespace vm
