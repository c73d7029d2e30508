#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "vm/arith_tables.hpp"
#include "vm/errors.hpp"
#include "vm/moments.hpp"

using namespace vm;
using boost::math::quadrature::gauss_kronrod;

namespace {

const ArithTable& table() {
  static const ArithTable t = build_tables(100000, 400);
  return t;
}

const long double kGamma = boost::math::constants::euler<long double>();

std::vector<long double> divisor_prefix(std::uint64_t n_max) {
  std::vector<long double> D(n_max + 1, 0);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    std::uint64_t c = 0;
    for (std::uint64_t m = 1; m * m <= n; ++m) {
      if (n % m == 0) c += m * m == n ? 1 : 2;
    }
    D[n] = D[n - 1] + c;
  }
  return D;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
  for (int order : {1, 2, 5, 8, 16, 40}) {
    const auto& g = gauss_legendre(order);
    REQUIRE(g.nodes.size() == static_cast<std::size_t>(order));
    for (int p = 0; p < 2 * order; ++p) {
      double s = 0;
      for (int i = 0; i < order; ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1));
    }
  }
  const auto& g = gauss_legendre(10);
  const auto& ref = boost::math::quadrature::gauss<double, 10>::abscissa();
  const auto& w = boost::math::quadrature::gauss<double, 10>::weights();
  for (std::size_t i = 0; i < ref.size(); ++i) {
    bool found = false;
    for (int j = 0; j < 10; ++j) {
      if (std::fabs(std::fabs(g.nodes[j]) - ref[i]) < 1e-14) {
        found = true;
        CHECK(g.weights[j] == doctest::Approx(w[i]).epsilon(1e-13));
      }
    }
    CHECK(found);
  }
  CHECK_THROWS_AS(gauss_legendre(0), ArgumentError);
  CHECK_THROWS_AS(gauss_legendre(65), ArgumentError);
}

TEST_CASE("first moment of Delta against the exact antiderivative") {
  for (double T : {10.0, 1000.0, 12345.5, 100000.0}) {
    long double step = 0;
    for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(T); ++n) {
      step += table().d(n) * (static_cast<long double>(T) - n);
    }
    const long double t = T;
    const long double main = (t * t / 2 * std::log(t) - t * t / 4 + 0.25L) + (2 * kGamma - 1) * (t * t - 1) / 2;
    const double exact = static_cast<double>(step - main);
    INFO("T=", T);
    CHECK(moment_integral(table(), ErrorTermKind::Delta, 1, 1, T) ==
          doctest::Approx(exact).epsilon(1e-9).scale(std::sqrt(T)));
  }
}

TEST_CASE("second moment of Delta against adaptive quadrature") {
  const std::uint64_t T = 2000;
  const auto D = divisor_prefix(T);
  double ref = 0;
  for (std::uint64_t n = 1; n < T; ++n) {
    const double dn = static_cast<double>(D[n]);
    auto f = [&](double x) {
      const double v = dn - x * std::log(x) - static_cast<double>(2 * kGamma - 1) * x;
      return v * v;
    };
    ref += gauss_kronrod<double, 31>::integrate(f, n, n + 1, 5, 1e-13);
  }
  CHECK(moment_integral(table(), ErrorTermKind::Delta, 2, 1, T) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("first moment of the tau summatory") {
  const double T = 300;
  long double ref = 0;
  for (std::uint64_t n = 1; n <= 300; ++n) ref += to_long_double(table().tau(n)) * (T - n);
  CHECK(moment_integral(table(), ErrorTermKind::A, 1, 1, T) ==
        doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("quadrature order is converged") {
  for (auto kind : {ErrorTermKind::Delta, ErrorTermKind::P, ErrorTermKind::DeltaStar}) {
    for (int k : {2, 3}) {
      QuadratureSpec lo{8}, hi{16};
      const double a = moment_integral(table(), kind, k, 1, 10000, lo);
      const double b = moment_integral(table(), kind, k, 1, 10000, hi);
      CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
  }
}

TEST_CASE("chunking, threads and streaming give identical sums") {
  const double T = 50000.25;
  QuadratureSpec one{8, 1u << 20}, many{8, 777};
  for (auto kind : {ErrorTermKind::Delta, ErrorTermKind::P, ErrorTermKind::DeltaStar}) {
    set_worker_threads(1);
    const double top = kind == ErrorTermKind::DeltaStar ? T / 4 : T;
    const double a = moment_integral(table(), kind, 3, 1, top, one);
    set_worker_threads(3);
    const double b = moment_integral(table(), kind, 3, 1, top, many);
    CHECK(a == b);
    if (kind != ErrorTermKind::DeltaStar) CHECK(streamed_moment_integral(kind, 3, 1, T, many) == a);
  }
  set_worker_threads(0);
  CHECK_THROWS_AS(set_worker_threads(-1), ArgumentError);
}

TEST_CASE("moment reports") {
  SeriesEngine engine(table());
  const auto r = integrate_moment(table(), ErrorTermKind::Delta, 1, 1e4, {}, &engine);
  CHECK(r.predicted == 2500.0);
  CHECK(r.ratio.has_value());
  CHECK(integrate_moment(table(), ErrorTermKind::DeltaStar, 1, 1e4, {}, &engine).predicted == 1250.0);
  CHECK(integrate_moment(table(), ErrorTermKind::P, 1, 1e4, {}, &engine).predicted == 0.0);
  const auto s = integrate_moment(table(), ErrorTermKind::Delta, 2, 2e5, {}, &engine);
  CHECK(s.note.find("streamed") != std::string::npos);
  CHECK(s.ratio.value() == doctest::Approx(1).epsilon(0.05));
  CHECK_FALSE(integrate_moment(table(), ErrorTermKind::Delta, 5, 1e3, {}, &engine).gated);
  CHECK_THROWS_AS(integrate_moment(table(), ErrorTermKind::Delta, 0, 1e3, {}, &engine), ArgumentError);
  CHECK_THROWS_AS(integrate_moment(table(), ErrorTermKind::DeltaStar, 2, 1e5, {}, &engine), RangeError);
}

TEST_CASE("truncated expansion moments") {
  SeriesEngine engine(table());
  const auto d = CoefficientKind::divisor();
  const auto empty = integrate_truncated_moment(table(), d, 2, 1000, 0.5, {}, &engine);
  CHECK(empty.empirical == 0.0);
  CHECK(empty.predicted == 0.0);
  CHECK_THROWS_AS(integrate_truncated_moment(table(), d, 1, 1000, 10, {}, &engine), ArgumentError);
  const auto r = integrate_truncated_moment(table(), d, 2, 1e4, 20, {}, &engine);
  CHECK(r.kind == "r1:d");
  CHECK(r.ratio.value() == doctest::Approx(1).epsilon(0.05));
}

TEST_CASE("oscillatory cosine integral") {
  for (double A : {0.7, -3.0, 25.0}) {
    for (double B : {0.0, 1.3}) {
      auto f = [&](double t) { return std::cos(A * std::sqrt(t) + B); };
      const double ref = gauss_kronrod<double, 61>::integrate(f, 2.0, 50.0, 15, 1e-14);
      CHECK(cos_sqrt_integral(A, B, 2.0, 50.0) == doctest::Approx(ref).epsilon(1e-10).scale(1));
    }
  }
  CHECK(cos_sqrt_integral(2.0, 0.5, 7.0, 7.0) == 0.0);
  CHECK_THROWS_AS(cos_sqrt_integral(2.0, 0.5, 9.0, 3.0), ArgumentError);
  CHECK_THROWS_AS(cos_sqrt_integral(0.0, 0.5, 1.0, 2.0), ArgumentError);
}

TEST_CASE("mean square of the remainder") {
  CHECK(mean_square_remainder(table(), 1000, 10) > 0);
  CHECK(mean_square_remainder(table(), 1000, 100) < mean_square_remainder(table(), 1000, 1));
  CHECK_THROWS_AS(mean_square_remainder(table(), 1000, 0.5), ArgumentError);
  CHECK_THROWS_AS(mean_square_remainder(table(), 1000, 2000), ArgumentError);
  CHECK_THROWS_AS(mean_square_remainder(table(), 60000, 10), RangeError);
  CHECK(remainder_envelope(100, 4) == doctest::Approx(500 * std::pow(std::log(100.0), 3)));
}
