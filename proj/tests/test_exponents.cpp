#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vm/errors.hpp"
#include "vm/exponents.hpp"

using namespace vm;

namespace {

Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

Rational pow2(int e) { return e >= 0 ? q(std::int64_t{1} << e) : q(1, std::int64_t{1} << -e); }

Rational reference_sigma(int k, const Rational& a0) {
  if (q(k - 1) < a0 / 2) return q(1, 4);
  return (a0 - k) / (2 * (a0 - 2));
}

}  // namespace

TEST_CASE("delta2 at A0 = 184/19") {
  const Rational a0 = parse_rational("184/19");
  CHECK(exponent_book(5, a0).delta2 == q(1, 64));
  CHECK(exponent_book(6, a0).delta2 == q(35, 4742));
  CHECK(exponent_book(7, a0).delta2 == q(17, 6312));
  CHECK(exponent_book(8, a0).delta2 == q(8, 9433));
  CHECK(exponent_book(9, a0).delta2 == q(13, 75216));
}

TEST_CASE("bookkeeping against the defining formulas") {
  for (const char* text : {"184/19", "262/27", "5/2", "10", "7"}) {
    const Rational a0 = parse_rational(text);
    for (int k = 3; q(k) < a0; ++k) {
      INFO(text, " k=", k);
      const auto b = exponent_book(k, a0);
      std::int64_t k0 = 2;
      while (q(k0) < a0) k0 += 2;
      const Rational bk = pow2(k - 2) + q(k - 6, 4);
      const Rational bk0 = pow2(static_cast<int>(k0) - 2) + q(k0 - 6, 4);
      const Rational sigma = reference_sigma(k, a0);
      CHECK(b.k0 == k0);
      CHECK(b.k0 % 2 == 0);
      CHECK(q(b.k0) >= a0);
      CHECK(b.b_k == bk);
      CHECK(b.b_k0 == bk0);
      CHECK(b.sigma == sigma);
      CHECK(b.delta1 == sigma / (2 * bk0));
      CHECK(b.delta2 == sigma / (2 * bk + 2 * sigma));
    }
  }
}

TEST_CASE("b(k) and sigma branches") {
  CHECK(b_exponent(3) == q(5, 4));
  CHECK(b_exponent(6) == q(16));
  const Rational a0 = parse_rational("184/19");
  CHECK(exponent_book(5, a0).sigma == q(1, 4));
  CHECK(exponent_book(6, a0).sigma == (a0 - 6) / (2 * (a0 - 2)));
  CHECK(exponent_book(9, a0).sigma == q(13, 292));
  CHECK(exponent_book(3, a0).k0 == 10);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("9") == q(9));
  CHECK(parse_rational("-3/4") == q(-3, 4));
  CHECK(parse_rational("6/8") == q(3, 4));
  CHECK(to_string(q(1, 64)) == "1/64");
  CHECK(to_string(q(4)) == "4");
  CHECK(to_double(q(1, 4)) == 0.25);
  for (const char* bad : {"", "1/0", "a/3", "1.5", "1//2", "3/"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_rational(bad), ArgumentError);
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(exponent_book(2, q(184, 19)), ArgumentError);
  CHECK_THROWS_AS(exponent_book(10, q(184, 19)), ArgumentError);
  CHECK_THROWS_AS(exponent_book(3, q(2)), ArgumentError);
  CHECK_THROWS_AS(exponent_book(3, q(3)), ArgumentError);
}
