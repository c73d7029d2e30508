#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "vm/arith_tables.hpp"
#include "vm/coefficient_kind.hpp"

namespace vm {

// Truncated s_{k;l}(f; y): the sum over balanced k-tuples with all n_j <= y
// of f(n_1)...f(n_k) / (n_1...n_k)^{3/4}.
struct SeriesEstimate {
  int k = 0;
  int l = 0;
  CoefficientKind kind = CoefficientKind::divisor();
  double y = 0;
  double value = 0;
  double tail_estimate = 0;  // fitted s(inf) - s(y)
};

struct BkTerm {
  int l = 0;
  double binomial = 0;  // C(k-1, l)
  double s_value = 0;
  double cosine = 0;    // cos(pi (k - 2l) / 4), exactly 0 when k - 2l = 2 mod 4
  double contribution = 0;
};

// B_k(f; y) = sum_{l=1}^{k-1} C(k-1, l) s_{k;l}(f; y) cos(pi (k - 2l) / 4)
struct BkValue {
  int k = 0;
  CoefficientKind kind = CoefficientKind::divisor();
  double y = 0;
  double value = 0;
  bool tail_corrected = false;  // s-values include the fitted tails
  std::vector<BkTerm> breakdown;
};

// Constant c in  int_1^T E^k = c T^{t_exponent} + lower order.
struct MainTermCoefficient {
  int theorem = 1;
  int k = 0;
  std::optional<int> kappa;
  double y = 0;
  double value = 0;
  double t_exponent = 0;
  bool tail_corrected = false;
  std::string formula;
};

// cos(pi m / 4) with the zeros and +-1 exact.
double quarter_pi_cosine(int m);

// Evaluates the square-root series by composing kernel classes: every
// balanced tuple splits, kernel by kernel, into per-class balanced pieces
//   sum_{i in I_h} s_i = sum_{j in J_h} s_j,   n = s^2 h.
// Per kernel the class sums T_h(a, b) are convolutions over the common sum;
// the kernels are then combined with an exponential generating function in
// (left slots, right slots), which counts the position assignments.
//
// Work is split into fixed blocks of kernels; block products are combined in
// ascending-h order, so results do not depend on the thread count. Values are
// cached per (kind, k, floor(y)); the cache takes concurrent readers.
class SeriesEngine {
 public:
  explicit SeriesEngine(const ArithTable& table, std::size_t kernels_per_block = 4096);

  const ArithTable& table() const { return table_; }

  // T_h(a, b); h must be squarefree.
  double class_sum(const CoefficientKind& kind, std::uint64_t h, int a, int b, double y) const;

  // s_{k;l}(f; y) for l = 0..k (entries 0 and k are zero).
  std::vector<double> series_values(const CoefficientKind& kind, int k, double y);

  SeriesEstimate series(const CoefficientKind& kind, int k, int l, double y);
  // Fitted s_{k;l}(f) - s_{k;l}(f; y) for l = 0..k, zero when y is too small to fit.
  std::vector<double> tail_values(const CoefficientKind& kind, int k, double y);

  BkValue bk(const CoefficientKind& kind, int k, double y, bool tail_corrected = false);
  MainTermCoefficient main_term_coefficient(int theorem, int k, std::optional<int> kappa, double y,
                                            bool tail_corrected = false);

 private:
  std::vector<double> compute(const CoefficientKind& kind, int k, std::uint64_t y) const;

  const ArithTable& table_;
  std::size_t kernels_per_block_;
  std::vector<std::uint64_t> squarefree_;
  mutable std::shared_mutex mutex_;
  std::map<std::tuple<std::string, int, std::uint64_t>, std::vector<double>> cache_;
};

// Stateless wrappers (a fresh engine per call).
double class_sum(const ArithTable& table, const CoefficientKind& kind, std::uint64_t h, int a, int b,
                 double y);
SeriesEstimate series_skl(const ArithTable& table, const CoefficientKind& kind, int k, int l, double y);
BkValue bk(const ArithTable& table, const CoefficientKind& kind, int k, double y);
MainTermCoefficient main_term_coefficient(int theorem, int k, std::optional<int> kappa,
                                          const ArithTable& table, double y);

// Tail model s(y) = s(inf) - y^{-1/2} (c0 + c1 L + c2 L^2 + c3 L^3), L = log y,
// solved exactly through kTailPoints truncations at y/16, y/8, ..., y (in
// ascending order). Returns s(inf) - s(y_last).
inline constexpr int kTailPoints = 5;
inline constexpr double kTailMinimumY = 64;
double fitted_tail(std::span<const double> ys, std::span<const double> s);

// The hand-reduced Theorem-1 coefficient forms for k = 2..9 in terms of
// s_{k;l}; s[l] = s_{k;l}. Used to cross-check the generic formula.
double tabulated_theorem1_coefficient(int k, std::span<const double> s);
std::string tabulated_theorem1_formula(int k);

}  // namespace vm
