#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vm/arith_tables.hpp"
#include "vm/coefficient_kind.hpp"
#include "vm/error_terms.hpp"
#include "vm/series.hpp"

namespace vm {

// Fixed-order Gauss-Legendre on every cell between consecutive jump points of
// the step part, cells grouped into contiguous chunks.
struct QuadratureSpec {
  int order = 8;
  std::uint64_t chunk_cells = std::uint64_t{1} << 16;
};

// Nodes and weights on [-1, 1] (Newton iteration on P_n).
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int order);

// Sets the OpenMP worker count (0 leaves the runtime default).
void set_worker_threads(int threads);

struct MomentReport {
  std::string kind;        // delta, p, a, delta-star or r1:<tag>
  int k = 0;
  double lower = 0;        // integration range
  double upper = 0;
  double y = 0;            // truncation used for the predicted coefficient / R1
  double empirical = 0;
  double predicted = 0;
  std::optional<double> ratio;
  bool tail_corrected = false;
  std::uint64_t chunk_count = 0;
  int quadrature_order = 0;
  bool gated = true;       // false where no tolerance is asserted (k >= 5)
  std::string note;
};

struct MomentOptions {
  QuadratureSpec quadrature;
  double coefficient_y = 1e5;  // clipped to the coefficient table
  bool tail_corrected = true;  // add the fitted series tails to the coefficient
  bool predict = true;
};

// int_1^T E(x)^k dx for the error term E, with the predicted main term.
// Delta and P are streamed from a segmented sieve when T is beyond the table.
MomentReport integrate_moment(const ArithTable& table, ErrorTermKind kind, int k, double T,
                              const MomentOptions& options = {}, SeriesEngine* engine = nullptr);

// Only the integral over [a, b]; shares the chunked engine.
double moment_integral(const ArithTable& table, ErrorTermKind kind, int k, double a, double b,
                       const QuadratureSpec& spec = {});
// Table-free variant for Delta and P (segmented sieve + closed-form offsets).
double streamed_moment_integral(ErrorTermKind kind, int k, double a, double b, const QuadratureSpec& spec = {});

// int_T^{2T} R1(x, y)^h dx against
//   amplitude^h B_h(f; y) 2^{1-h} int_T^{2T} x^{h * power} dx
// with the same truncation y on both sides.
MomentReport integrate_truncated_moment(const ArithTable& table, const CoefficientKind& kind, int h, double T,
                                        double y, const QuadratureSpec& spec = {},
                                        SeriesEngine* engine = nullptr);

// int_{t1}^{t2} cos(A sqrt(t) + B) dt from the antiderivative
// (2 sqrt(t)/A) sin(A sqrt(t) + B) + (2/A^2) cos(A sqrt(t) + B).
double cos_sqrt_integral(double A, double B, double t1, double t2);

// int_T^{2T} R2(x, y)^2 dx for Delta.
double mean_square_remainder(const ArithTable& table, double T, double y, const QuadratureSpec& spec = {});

// T^{3/2} log^3 T / y^{1/2}
double remainder_envelope(double T, double y);

}  // namespace vm
