#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <omp.h>

#include "vm/arith_tables.hpp"
#include "vm/errors.hpp"
#include "vm/series.hpp"
#include "vm/sqrt_relations.hpp"
#include "vm/summation.hpp"

using namespace vm;

namespace {

const ArithTable& table() {
  static const ArithTable t = build_tables(200000, 200);
  return t;
}

const double kPi = boost::math::constants::pi<double>();

double tuple_sum(const CoefficientKind& kind, int k, int l, std::uint64_t y) {
  NeumaierSum s;
  for (const auto& r : brute_force_enumerate(k, l, y)) {
    double p = 1;
    for (auto n : r.values()) p *= kind.coefficient(table(), n) * std::pow(static_cast<double>(n), -0.75);
    s.add(p);
  }
  return s.value();
}

}  // namespace

TEST_CASE("class sums by hand") {
  const auto d = CoefficientKind::divisor();
  CHECK(class_sum(table(), d, 1, 1, 1, 4) == doctest::Approx(2.125).epsilon(1e-15));
  CHECK(class_sum(table(), d, 2, 1, 2, 16) ==
        doctest::Approx(4 * std::pow(8.0, -0.75) * std::pow(2 * std::pow(2.0, -0.75), 2)).epsilon(1e-14));
  CHECK(class_sum(table(), d, 3, 2, 0, 100) == 0.0);
  CHECK(class_sum(table(), d, 3, 0, 0, 100) == 1.0);
  CHECK_THROWS_AS(class_sum(table(), d, 12, 1, 1, 100), ArgumentError);
  CHECK(series_skl(table(), d, 3, 1, 4).value == doctest::Approx(3 * std::pow(4.0, -0.75)).epsilon(1e-15));
}

TEST_CASE("kernel composition equals the brute-force tuple sum") {
  SeriesEngine engine(table());
  for (const auto& kind : {CoefficientKind::divisor(), CoefficientKind::two_squares(),
                           CoefficientKind::alternating_divisor(), CoefficientKind::cusp()}) {
    for (int k = 2; k <= 5; ++k) {
      for (std::uint64_t y : {1, 7, 16, 30}) {
        const auto s = engine.series_values(kind, k, static_cast<double>(y));
        for (int l = 1; l < k; ++l) {
          const double ref = tuple_sum(kind, k, l, y);
          INFO(kind.tag(), " k=", k, " l=", l, " y=", y);
          REQUIRE(s[l] == doctest::Approx(ref).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("symmetry and B_k reductions") {
  SeriesEngine engine(table());
  const auto d = CoefficientKind::divisor();
  const auto s5 = engine.series_values(d, 5, 100);
  CHECK(s5[2] == doctest::Approx(s5[3]).epsilon(1e-12));
  CHECK(s5[1] == doctest::Approx(s5[4]).epsilon(1e-12));
  for (double y : {50.0, 1000.0}) {
    const auto s4 = engine.series_values(d, 4, y);
    CHECK(engine.bk(d, 4, y).value == doctest::Approx(3 * s4[2]).epsilon(1e-14));
    const auto s = engine.series_values(d, 5, y);
    CHECK(engine.bk(d, 5, y).value ==
          doctest::Approx(5 * std::sqrt(2.0) / 2 * (2 * s[2] - s[1])).epsilon(1e-12));
  }
  for (int k = 2; k <= 12; ++k) {
    for (const auto& t : engine.bk(d, k, 100).breakdown) {
      if (((k - 2 * t.l) % 4 + 4) % 4 == 2) REQUIRE(t.contribution == 0.0);
    }
  }
  for (int k = 3; k <= 5; ++k) {
    CHECK(engine.bk(CoefficientKind::alternating_divisor(), k, 200).value ==
          doctest::Approx(engine.bk(d, k, 200).value).epsilon(1e-12));
  }
  CHECK(quarter_pi_cosine(2) == 0.0);
  CHECK(quarter_pi_cosine(-4) == -1.0);
  CHECK(quarter_pi_cosine(8) == 1.0);
}

TEST_CASE("explicit theorem-1 forms equal the generic coefficient") {
  SeriesEngine engine(table());
  for (int k = 2; k <= 9; ++k) {
    const auto s = engine.series_values(CoefficientKind::divisor(), k, 2000);
    const auto c = engine.main_term_coefficient(1, k, std::nullopt, 2000);
    CHECK(c.value == doctest::Approx(tabulated_theorem1_coefficient(k, s)).epsilon(1e-12));
    CHECK(c.t_exponent == 1 + k / 4.0);
  }
  CHECK(engine.main_term_coefficient(1, 4, std::nullopt, 100).formula == "3·s42/(64π⁴)");
  CHECK(engine.main_term_coefficient(1, 3, std::nullopt, 100).formula == "3·s31/(28π³)");
}

TEST_CASE("mean-square constants") {
  SeriesEngine engine(table());
  const double closed = std::pow(boost::math::zeta(1.5), 4) / (6 * kPi * kPi * boost::math::zeta(3.0));
  const auto c = engine.main_term_coefficient(1, 2, std::nullopt, 1e5, true);
  CHECK(c.value == doctest::Approx(closed).epsilon(1e-4));
  CHECK(closed == doctest::Approx(0.654).epsilon(1e-3));
  const auto c5 = engine.main_term_coefficient(5, 2, std::nullopt, 1e5, true);
  CHECK(c5.value == doctest::Approx(2 * std::pow(boost::math::zeta(1.5), 4) /
                                    (3 * boost::math::zeta(3.0) * std::sqrt(2 * kPi)))
                        .epsilon(5e-4));
}

TEST_CASE("coefficient argument checks") {
  SeriesEngine engine(table());
  CHECK_THROWS_AS(engine.main_term_coefficient(4, 3, std::nullopt, 100), ArgumentError);
  CHECK_THROWS_AS(engine.main_term_coefficient(1, 3, 12, 100), ArgumentError);
  CHECK_THROWS_AS(engine.main_term_coefficient(2, 3, std::nullopt, 100), ArgumentError);
  CHECK_THROWS_AS(engine.main_term_coefficient(1, 1, std::nullopt, 100), ArgumentError);
  CHECK_THROWS_AS(engine.series(CoefficientKind::divisor(), 3, 3, 100), ArgumentError);
  CHECK_THROWS_AS(engine.series(CoefficientKind::cusp(), 2, 1, 1000), RangeError);
  CHECK_THROWS_AS(CoefficientKind::cusp(14), ArgumentError);
  const auto c4 = engine.main_term_coefficient(4, 2, 12, 200);
  CHECK(c4.t_exponent == 12.5);
}

TEST_CASE("positivity of odd B_k") {
  SeriesEngine engine(table());
  for (int k : {3, 5, 7, 9}) CHECK(engine.bk(CoefficientKind::divisor(), k, 1e4).value > 0);
}

TEST_CASE("tail fit recovers a synthetic limit") {
  std::vector<double> ys, s;
  for (int j = 4; j >= 0; --j) {
    const double y = 1e6 / std::ldexp(1.0, j);
    const double L = std::log(y);
    ys.push_back(y);
    s.push_back(10 - (1 + 2 * L + 0.5 * L * L + 0.1 * L * L * L) / std::sqrt(y));
  }
  CHECK(s.back() + fitted_tail(ys, s) == doctest::Approx(10).epsilon(1e-9));
  CHECK_THROWS_AS(fitted_tail(std::span(ys).first(3), std::span(s).first(3)), ArgumentError);
}

TEST_CASE("s21 with the fitted tail approaches zeta^4(3/2)/zeta(3)") {
  const auto t = build_tables(1000000, 1);
  const auto e = series_skl(t, CoefficientKind::divisor(), 2, 1, 1e6);
  const double target = std::pow(boost::math::zeta(1.5), 4) / boost::math::zeta(3.0);
  CHECK(std::fabs(e.value + e.tail_estimate - target) <= 1e-2);
  CHECK(e.value < target);
}

TEST_CASE("results do not depend on block size or thread count") {
  SeriesEngine a(table(), 4096), b(table(), 7);
  omp_set_num_threads(1);
  const auto x = a.series_values(CoefficientKind::divisor(), 6, 20000);
  omp_set_num_threads(4);
  const auto y = b.series_values(CoefficientKind::divisor(), 6, 20000);
  SeriesEngine c(table(), 7);
  const auto z = c.series_values(CoefficientKind::divisor(), 6, 20000);
  omp_set_num_threads(1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-13));
    CHECK(y[i] == z[i]);
  }
}
