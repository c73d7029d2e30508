#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace vm {

// n = s^2 h with h squarefree, so sqrt(n) = s sqrt(h) exactly.
struct SqrtInteger {
  std::uint64_t s = 1;
  std::uint64_t h = 1;

  std::uint64_t value() const { return s * s * h; }
  // Factorises n by trial division.
  static SqrtInteger of(std::uint64_t n);

  friend auto operator<=>(const SqrtInteger&, const SqrtInteger&) = default;
};

// sqrt(n_1) + ... + sqrt(n_l) = sqrt(n_{l+1}) + ... + sqrt(n_k)
struct Relation {
  int k = 0;
  int l = 0;
  std::vector<SqrtInteger> terms;

  std::vector<std::uint64_t> values() const;
  // "h:{s..|s..}" per kernel class, kernels ascending, e.g. "1:{2|1,1}".
  std::string kernel_decomposition() const;
};

// Exact test: for every kernel h, the s-sum over the first `l` terms equals
// the s-sum over the rest. By linear independence of square roots of
// squarefree numbers this is equivalent to the real equation.
bool is_balanced(std::span<const SqrtInteger> terms, int l);

// Same test for a signed sum: sum_j sign_j sqrt(n_j) == 0.
bool is_zero_sum(std::span<const SqrtInteger> terms, std::span<const int> signs);

// Whether n_1 + ... + n_k is even.
bool parity_check(const Relation& rel);

struct EnumerationOptions {
  int max_k = 9;
};

// Every ordered k-tuple with all n_j <= y satisfying the balanced relation.
// Generated kernel by kernel (ascending squarefree h), each kernel taking a
// nonempty set of left and right positions with balanced s-values.
void for_each_relation(int k, int l, std::uint64_t y, const std::function<void(const Relation&)>& visit,
                       const EnumerationOptions& options = {});
std::vector<Relation> enumerate_relations(int k, int l, std::uint64_t y,
                                          const EnumerationOptions& options = {});

inline constexpr std::uint64_t kBruteForceBudget = 1'000'000'000;

// Tests all y^k tuples. Throws ResourceError when y^k exceeds `budget`.
std::vector<Relation> brute_force_enumerate(int k, int l, std::uint64_t y,
                                            std::uint64_t budget = kBruteForceBudget);

// Signs of sqrt(n_2), ..., sqrt(n_k): bit i set means a minus sign.
class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::vector<std::uint8_t> bits);
  static SignPattern parse(const std::string& text);  // e.g. "11"

  int k() const { return static_cast<int>(bits_.size()) + 1; }
  bool all_zero() const;
  // +1 / -1 for term j (term 0 is always +1).
  std::vector<int> signs() const;
  std::string str() const;

 private:
  std::vector<std::uint8_t> bits_;
};

struct GapResult {
  long double alpha_min = 0;         // |value| at the witness, 30+ digits
  std::vector<std::uint64_t> witness;
  long double lower = 0;             // true nonzero minimum lies in [lower, alpha_min]
  bool found = false;
};

inline constexpr std::uint64_t kGapBudget = 50'000'000;

// Smallest nonzero |sqrt(n_1) +- sqrt(n_2) +- ... +- sqrt(n_k)| over n_j <= N.
// Meet in the middle over the two halves of the tuple; exact zeros are
// recognised by is_zero_sum and skipped.
GapResult min_gap(int k, const SignPattern& pattern, std::uint64_t N,
                  std::uint64_t budget = kGapBudget);

inline constexpr std::uint64_t kCountBudget = 200'000'000;

// Number of tuples with N_j < n_j <= 2 N_j and |alpha| < delta.
std::uint64_t count_inequality_solutions(std::span<const std::uint64_t> N, const SignPattern& pattern,
                                         double delta, std::uint64_t budget = kCountBudget);

// delta E^{-1/2} prod N_j + E^{-1} prod N_j with E = max N_j.
double inequality_bound(std::span<const std::uint64_t> N, double delta);

}  // namespace vm
