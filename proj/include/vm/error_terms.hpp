#pragma once

#include <string>
#include <vector>

#include "vm/arith_tables.hpp"
#include "vm/coefficient_kind.hpp"

namespace vm {

//   Delta(x)  = sum_{n<=x} d(n) - x log x - (2 gamma - 1) x
//   P(x)      = sum_{n<=x} r(n) - pi x
//   A(x)      = sum_{n<=x} tau(n)                    (weight 12, no main term)
//   Delta*(x) = 1/2 sum_{n<=4x} (-1)^n d(n) - x (log x + 2 gamma - 1)
enum class ErrorTermKind { Delta, P, A, DeltaStar };

ErrorTermKind parse_error_term_kind(const std::string& s);
std::string to_string(ErrorTermKind kind);

// The coefficient kind whose truncated Voronoi sum approximates `kind`.
CoefficientKind matching_coefficient_kind(ErrorTermKind kind);

// Points where the step part of the error term can jump: multiples of
// 1/step_denominator (4 for Delta*, 1 otherwise).
int step_denominator(ErrorTermKind kind);

// Largest x the table can evaluate for this kind.
double max_argument(const ArithTable& table, ErrorTermKind kind);

// The smooth main term subtracted from the step sum.
double main_term(ErrorTermKind kind, double x);

// The step part sum_{n<=x} ..., exact integer arithmetic, returned as double.
double step_part(const ArithTable& table, ErrorTermKind kind, double x);

double error_term(const ArithTable& table, ErrorTermKind kind, double x);

// Delta*(x) - (-Delta(x) + 2 Delta(2x) - Delta(4x)/2).
double delta_star_identity_check(const ArithTable& table, double x);

// R1(x, y) = amplitude x^power sum_{n<=y} f(n) n^{-3/4} cos(4 pi sqrt(n x) + phase),
// with the per-n weights precomputed so repeated evaluation (quadrature
// nodes) only pays for the cosines.
class TruncatedExpansion {
 public:
  TruncatedExpansion(const ArithTable& table, const CoefficientKind& kind, double y);

  double operator()(double x) const;

  const CoefficientKind& kind() const { return kind_; }
  double y() const { return y_; }
  std::size_t terms() const { return weights_.size(); }

 private:
  CoefficientKind kind_;
  double y_;
  std::vector<double> weights_;    // f(n) n^{-3/4}, zero weights dropped
  std::vector<double> sqrt_n_;     // 4 pi sqrt(n)
};

// R1(x, y) for any coefficient kind, compensated summation over n <= y.
double voronoi_truncated(const ArithTable& table, const CoefficientKind& kind, double x, double y);

// R2(x, y) = E(x) - R1(x, y) for the error term E of `kind`.
double remainder_r2(const ArithTable& table, double x, double y,
                    ErrorTermKind kind = ErrorTermKind::Delta);

}  // namespace vm
