#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "vm/calibration.hpp"
#include "vm/errors.hpp"
#include "vm/sqrt_relations.hpp"

using namespace vm;

namespace {

using Tuples = std::vector<std::vector<std::uint64_t>>;

Tuples sorted_values(const std::vector<Relation>& rels) {
  Tuples out;
  for (const auto& r : rels) out.push_back(r.values());
  std::sort(out.begin(), out.end());
  return out;
}

// Every k-tuple over 1..y, kept when the signed sum of long double square
// roots vanishes to 1e-13.
Tuples float_brute(int k, int l, std::uint64_t y) {
  std::vector<long double> root(y + 1);
  for (std::uint64_t n = 1; n <= y; ++n) root[n] = std::sqrt(static_cast<long double>(n));
  Tuples out;
  std::vector<std::uint64_t> t(k, 1);
  while (true) {
    long double s = 0;
    for (int j = 0; j < k; ++j) s += j < l ? root[t[j]] : -root[t[j]];
    if (std::fabs(s) < 1e-13L) out.push_back(t);
    int j = k - 1;
    while (j >= 0 && t[j] == y) t[j--] = 1;
    if (j < 0) break;
    ++t[j];
  }
  return out;
}

}  // namespace

TEST_CASE("SqrtInteger decomposition") {
  const auto a = SqrtInteger::of(48);
  CHECK(a.s == 4);
  CHECK(a.h == 3);
  CHECK(a.value() == 48);
  CHECK(SqrtInteger::of(1).h == 1);
  CHECK(SqrtInteger::of(30).s == 1);
  CHECK(SqrtInteger::of(72).h == 2);
}

TEST_CASE("small enumerations") {
  CHECK(sorted_values(enumerate_relations(3, 1, 4)) == Tuples{{4, 1, 1}});
  const Tuples eight = {{4, 1, 1}, {8, 2, 2}, {9, 1, 4}, {9, 4, 1}, {12, 3, 3}, {16, 1, 9}, {16, 4, 4}, {16, 9, 1}};
  CHECK(sorted_values(enumerate_relations(3, 1, 16)) == eight);
  CHECK(enumerate_relations(3, 2, 16).size() == 8);
  const auto diag = enumerate_relations(2, 1, 10);
  CHECK(diag.size() == 10);
  for (const auto& r : diag) CHECK(r.terms[0] == r.terms[1]);
  CHECK(brute_force_enumerate(4, 2, 9).size() == 157);
  CHECK(enumerate_relations(4, 2, 9).size() == 157);
  CHECK(enumerate_relations(3, 1, 16)[0].kernel_decomposition().find("1:") == 0);
}

TEST_CASE("kernel enumeration, exact brute force and float brute force agree") {
  for (int k = 2; k <= 5; ++k) {
    const std::uint64_t top = 30;
    for (int l = 1; l < k; ++l) {
      const auto fl = float_brute(k, l, top);
      for (std::uint64_t y = 1; y <= top; ++y) {
        const auto fast = sorted_values(enumerate_relations(k, l, y));
        REQUIRE(std::adjacent_find(fast.begin(), fast.end()) == fast.end());
        REQUIRE(fast == sorted_values(brute_force_enumerate(k, l, y)));
        Tuples expect;
        for (const auto& t : fl) {
          if (*std::max_element(t.begin(), t.end()) <= y) expect.push_back(t);
        }
        REQUIRE(fast == expect);
        REQUIRE(fast.size() == enumerate_relations(k, k - l, y).size());
      }
    }
  }
  for (int l = 1; l < 5; ++l) {
    CHECK(sorted_values(enumerate_relations(5, l, 30)) == sorted_values(brute_force_enumerate(5, l, 30)));
  }
}

TEST_CASE("parity and balance of enumerated relations") {
  std::size_t n = 0;
  for (int k = 2; k <= 5; ++k) {
    for (int l = 1; l < k; ++l) {
      for (const auto& r : enumerate_relations(k, l, 30)) {
        REQUIRE(parity_check(r));
        REQUIRE(is_balanced(r.terms, r.l));
        ++n;
      }
    }
  }
  CHECK(n > 1000);
  Relation r{3, 1, {SqrtInteger::of(8), SqrtInteger::of(2), SqrtInteger::of(2)}};
  CHECK(parity_check(r));
  const std::vector<SqrtInteger> z = {SqrtInteger::of(4), SqrtInteger::of(1), SqrtInteger::of(1)};
  const std::vector<int> signs = {1, -1, -1};
  CHECK(is_zero_sum(z, signs));
  CHECK(!is_balanced(z, 2));
}

TEST_CASE("min_gap against a direct scan") {
  for (const auto& [k, pattern, N] : {std::tuple{3, "11", 30}, std::tuple{3, "01", 30}, std::tuple{3, "10", 25},
                                      std::tuple{4, "011", 12}, std::tuple{4, "111", 12}}) {
    const auto p = SignPattern::parse(pattern);
    const auto signs = p.signs();
    long double best = 1e300L;
    std::vector<std::uint64_t> t(k, 1);
    while (true) {
      long double s = 0;
      for (int j = 0; j < k; ++j) s += signs[j] * std::sqrt(static_cast<long double>(t[j]));
      if (std::fabs(s) > 1e-13L) best = std::min(best, std::fabs(s));
      int j = k - 1;
      while (j >= 0 && t[j] == static_cast<std::uint64_t>(N)) t[j--] = 1;
      if (j < 0) break;
      ++t[j];
    }
    const auto g = min_gap(k, p, N);
    REQUIRE(g.found);
    CHECK(static_cast<double>(g.alpha_min) == doctest::Approx(static_cast<double>(best)).epsilon(1e-12));
    CHECK(g.lower <= g.alpha_min);
    long double w = 0;
    for (int j = 0; j < k; ++j) w += signs[j] * std::sqrt(static_cast<long double>(g.witness[j]));
    CHECK(static_cast<double>(std::fabs(w)) == doctest::Approx(static_cast<double>(g.alpha_min)).epsilon(1e-12));
  }
  const auto g2 = min_gap(2, SignPattern::parse("1"), 100);
  CHECK(static_cast<double>(g2.alpha_min) == doctest::Approx(10 - std::sqrt(99.0)).epsilon(1e-13));
  const auto g3 = min_gap(3, SignPattern::parse("11"), 50);
  CHECK(static_cast<double>(g3.alpha_min) * std::pow(50.0, 1.5) >= calibration::kGapConstant);
}

TEST_CASE("inequality counts") {
  const std::vector<std::uint64_t> N = {8, 8, 8};
  const auto p = SignPattern::parse("11");
  std::uint64_t recount = 0;
  for (std::uint64_t a = 16; a > 8; --a)
    for (std::uint64_t b = 16; b > 8; --b)
      for (std::uint64_t c = 16; c > 8; --c)
        if (std::fabs(std::sqrt(double(a)) - std::sqrt(double(b)) - std::sqrt(double(c))) < 0.01) ++recount;
  CHECK(count_inequality_solutions(N, p, 0.01) == recount);
  CHECK(count_inequality_solutions(N, p, 100) == 512);
  const std::vector<std::uint64_t> M = {5, 9};
  CHECK(count_inequality_solutions(M, SignPattern::parse("1"), 100) == 45);
  CHECK(inequality_bound(N, 0.5) == doctest::Approx(0.5 * 512 / std::sqrt(8.0) + 64));
}

TEST_CASE("guards and argument errors") {
  CHECK_THROWS_AS(brute_force_enumerate(9, 4, 100), ResourceError);
  CHECK_THROWS_AS(enumerate_relations(3, 3, 10), ArgumentError);
  CHECK_THROWS_AS(enumerate_relations(1, 1, 10), ArgumentError);
  CHECK_THROWS_AS(SignPattern::parse("12"), ArgumentError);
  CHECK_THROWS_AS(min_gap(4, SignPattern::parse("11"), 10), ArgumentError);
  CHECK_THROWS_AS(min_gap(3, SignPattern::parse("11"), 100000), ResourceError);
  const std::vector<std::uint64_t> big = {1000, 1000, 1000};
  CHECK_THROWS_AS(count_inequality_solutions(big, SignPattern::parse("11"), 0.1), ResourceError);
}
