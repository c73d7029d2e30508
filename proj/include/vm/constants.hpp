#pragma once

namespace vm {

struct MathConstants {
  double gamma;     // Euler's constant
  double zeta_3_2;  // zeta(3/2)
  double zeta_3;    // zeta(3)
  double pi;
};

// Computed once from series (see constants.cpp); each value carries a
// truncation bound below 1e-15 relative.
const MathConstants& constants();

// zeta(s) for real s > 1: direct sum to N plus the Euler-Maclaurin tail.
// Throws ArgumentError for s <= 1.
long double zeta(long double s);

long double euler_gamma();
long double pi_machin();

}  // namespace vm
