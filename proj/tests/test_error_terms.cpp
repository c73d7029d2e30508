#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "vm/arith_tables.hpp"
#include "vm/calibration.hpp"
#include "vm/error_terms.hpp"
#include "vm/errors.hpp"

using namespace vm;

namespace {

const ArithTable& table() {
  static const ArithTable t = build_tables(200000, 2000);
  return t;
}

const long double kPi = boost::math::constants::pi<long double>();
const long double kGamma = boost::math::constants::euler<long double>();

// Direct cosine sum in long double, weights computed on the spot.
long double naive_r1(const CoefficientKind& kind, long double x, std::uint64_t y) {
  long double s = 0;
  for (std::uint64_t n = 1; n <= y; ++n) {
    const long double f = kind.coefficient(table(), n);
    s += f * std::pow(static_cast<long double>(n), -0.75L) *
         std::cos(4 * kPi * std::sqrt(n * x) + kind.phase());
  }
  return kind.amplitude() * std::pow(x, static_cast<long double>(kind.x_power())) * s;
}

}  // namespace

TEST_CASE("error terms at small x") {
  CHECK(error_term(table(), ErrorTermKind::Delta, 2) ==
        doctest::Approx(static_cast<double>(3 - 2 * std::log(2.0L) - 2 * (2 * kGamma - 1))).epsilon(1e-14));
  CHECK(error_term(table(), ErrorTermKind::Delta, 2) == doctest::Approx(1.30484).epsilon(1e-5));
  CHECK(error_term(table(), ErrorTermKind::P, 1) == doctest::Approx(static_cast<double>(4 - kPi)).epsilon(1e-15));
  CHECK(error_term(table(), ErrorTermKind::A, 1) == 1.0);
  CHECK(error_term(table(), ErrorTermKind::A, 2.5) == -23.0);
  // Delta*(1) = (1/2)(-1 + 2 - 2 + 3) - (2 gamma - 1)
  CHECK(error_term(table(), ErrorTermKind::DeltaStar, 1) ==
        doctest::Approx(static_cast<double>(1 - (2 * kGamma - 1))).epsilon(1e-14));
}

TEST_CASE("Delta* identity") {
  for (double x : {1.0, 10.0, 1000.5, 0.3, 7.125, 49999.75}) {
    const double star = error_term(table(), ErrorTermKind::DeltaStar, x);
    CHECK(std::fabs(delta_star_identity_check(table(), x)) <= 1e-9 * (1 + std::fabs(star)));
  }
  CHECK_THROWS_AS(delta_star_identity_check(table(), 60000), RangeError);
}

TEST_CASE("Delta jumps by d(n) at integers and is right-continuous") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t n = 2 + rng() % 100000;
    const double x = static_cast<double>(n);
    const double left = error_term(table(), ErrorTermKind::Delta, std::nextafter(x, 0.0));
    const double at = error_term(table(), ErrorTermKind::Delta, x);
    REQUIRE(at - left == doctest::Approx(table().d(n)).epsilon(1e-9));
    REQUIRE(std::fabs(error_term(table(), ErrorTermKind::Delta, x + 1e-9) - at) < 1e-6);
  }
}

TEST_CASE("truncated expansion against a direct long double sum") {
  for (const auto& kind : {CoefficientKind::divisor(), CoefficientKind::two_squares(),
                           CoefficientKind::alternating_divisor(), CoefficientKind::cusp()}) {
    for (double x : {10.5, 1234.25, 99999.9}) {
      const double v = voronoi_truncated(table(), kind, x, 500);
      const long double ref = naive_r1(kind, x, 500);
      CHECK(v == doctest::Approx(static_cast<double>(ref)).epsilon(1e-11));
    }
  }
  const TruncatedExpansion e(table(), CoefficientKind::divisor(), 300);
  CHECK(e.terms() == 300);
  CHECK(e(777.5) == voronoi_truncated(table(), CoefficientKind::divisor(), 777.5, 300));
  // r(n) = 0 terms are dropped
  CHECK(TruncatedExpansion(table(), CoefficientKind::two_squares(), 10).terms() == 7);
}

TEST_CASE("empty expansion") {
  CHECK(voronoi_truncated(table(), CoefficientKind::divisor(), 1000, 0.5) == 0.0);
  CHECK(remainder_r2(table(), 1000.5, 0.5) == error_term(table(), ErrorTermKind::Delta, 1000.5));
}

TEST_CASE("range errors name the needed limit") {
  CHECK_THROWS_AS(error_term(table(), ErrorTermKind::Delta, 300000), RangeError);
  CHECK_THROWS_AS(error_term(table(), ErrorTermKind::A, 3000), RangeError);
  CHECK_THROWS_AS(error_term(table(), ErrorTermKind::DeltaStar, 60000), RangeError);
  CHECK_THROWS_AS(voronoi_truncated(table(), CoefficientKind::cusp(), 10, 5000), RangeError);
  try {
    error_term(table(), ErrorTermKind::DeltaStar, 60000);
  } catch (const RangeError& e) {
    CHECK(std::string(e.what()).find("240000") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_error_term_kind("q"), ArgumentError);
  CHECK(parse_error_term_kind("delta-star") == ErrorTermKind::DeltaStar);
}

TEST_CASE("truncated Voronoi envelope with N = x") {
  std::mt19937_64 rng(calibration::kCheckSeed);
  std::uniform_real_distribution<double> ux(1e3, 1e5);
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng);
    REQUIRE(std::fabs(remainder_r2(table(), x, x)) <=
            calibration::kTruncationConstant * std::pow(x, calibration::kTruncationExponent));
  }
  CHECK(std::fabs(remainder_r2(table(), 500, 2000, ErrorTermKind::DeltaStar)) <=
        calibration::kAlternatingConstant * std::pow(500.0, calibration::kTruncationExponent));
}

TEST_CASE("frozen constants match the calibration fixture") {
  std::ifstream in(std::string(VM_FIXTURE_DIR) + "/calibration.json");
  REQUIRE(in);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["margin"].get<double>() == calibration::kCalibrationMargin);
  auto near = [](double header, double fixture) { return std::fabs(header - fixture) <= 1e-3 * fixture; };
  CHECK(near(calibration::kTruncationConstant, j["truncation"]["frozen"]));
  CHECK(near(calibration::kAlternatingConstant, j["alternating"]["frozen"]));
  CHECK(near(calibration::kMeanSquareConstant, j["mean_square"]["frozen"]));
  CHECK(near(calibration::kGapConstant, j["gap"]["frozen"]));
  CHECK(near(calibration::kCountConstant, j["count"]["frozen"]));
  CHECK(calibration::kFirstMomentConstant == j["first_moment"]["frozen"].get<double>());
}
