#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vm/arith_tables.hpp"

namespace vm {

enum class Weight { Divisor, TwoSquares, CuspNormalized, AlternatingDivisor };

// Selects the weight f(n) of the square-root series and the amplitude, phase
// and x-power of the matching truncated Voronoi expansion
//   amplitude * x^power * sum_{n<=y} f(n) n^{-3/4} cos(4 pi sqrt(n x) + phase).
class CoefficientKind {
 public:
  static CoefficientKind divisor() { return CoefficientKind(Weight::Divisor, 0); }
  static CoefficientKind two_squares() { return CoefficientKind(Weight::TwoSquares, 0); }
  static CoefficientKind alternating_divisor() {
    return CoefficientKind(Weight::AlternatingDivisor, 0);
  }
  // Weight-12 coefficients come from the table's tau(n). Other even weights
  // >= 12 need caller-supplied normalised coefficients a(n) n^{-(kappa-1)/2},
  // indexed by n (element 0 ignored).
  static CoefficientKind cusp(int kappa = 12);
  static CoefficientKind cusp(int kappa, std::vector<double> normalized);

  Weight weight() const { return weight_; }
  int kappa() const { return kappa_; }

  double amplitude() const;
  double phase() const;
  double x_power() const;

  // f(n). Throws RangeError when n is beyond the coefficient source.
  double coefficient(const ArithTable& table, std::uint64_t n) const;
  // Largest n for which coefficient() is available.
  std::uint64_t coefficient_limit(const ArithTable& table) const;

  // Short tag: d, r, a, dstar (a12 etc. for other weights).
  std::string tag() const;

  friend bool operator==(const CoefficientKind& a, const CoefficientKind& b) {
    return a.weight_ == b.weight_ && a.kappa_ == b.kappa_ && a.user_ == b.user_;
  }

 private:
  CoefficientKind(Weight w, int kappa) : weight_(w), kappa_(kappa) {}

  Weight weight_;
  int kappa_;
  std::shared_ptr<const std::vector<double>> user_;
};

// Parses d|r|a|dstar (also delta|p|delta-star spellings used by the CLI).
CoefficientKind parse_coefficient_kind(const std::string& s);

}  // namespace vm
