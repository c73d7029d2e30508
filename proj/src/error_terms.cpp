#include "vm/error_terms.hpp"

#include <cmath>

#include "vm/constants.hpp"
#include "vm/errors.hpp"
#include "vm/summation.hpp"

namespace vm {

ErrorTermKind parse_error_term_kind(const std::string& s) {
  if (s == "delta" || s == "d") return ErrorTermKind::Delta;
  if (s == "p" || s == "r") return ErrorTermKind::P;
  if (s == "a") return ErrorTermKind::A;
  if (s == "delta-star" || s == "dstar") return ErrorTermKind::DeltaStar;
  throw ArgumentError("unknown error term '" + s + "' (expected delta, p, a or delta-star)");
}

std::string to_string(ErrorTermKind kind) {
  switch (kind) {
    case ErrorTermKind::Delta:
      return "delta";
    case ErrorTermKind::P:
      return "p";
    case ErrorTermKind::A:
      return "a";
    case ErrorTermKind::DeltaStar:
      return "delta-star";
  }
  return "?";
}

CoefficientKind matching_coefficient_kind(ErrorTermKind kind) {
  switch (kind) {
    case ErrorTermKind::Delta:
      return CoefficientKind::divisor();
    case ErrorTermKind::P:
      return CoefficientKind::two_squares();
    case ErrorTermKind::A:
      return CoefficientKind::cusp(12);
    case ErrorTermKind::DeltaStar:
      return CoefficientKind::alternating_divisor();
  }
  throw ArgumentError("bad error term kind");
}

int step_denominator(ErrorTermKind kind) { return kind == ErrorTermKind::DeltaStar ? 4 : 1; }

double max_argument(const ArithTable& table, ErrorTermKind kind) {
  switch (kind) {
    case ErrorTermKind::A:
      return static_cast<double>(table.tau_limit());
    case ErrorTermKind::DeltaStar:
      return static_cast<double>(table.limit()) / 4.0;
    case ErrorTermKind::Delta:
    case ErrorTermKind::P:
      break;
  }
  return static_cast<double>(table.limit());
}

double main_term(ErrorTermKind kind, double x) {
  const auto& c = constants();
  switch (kind) {
    case ErrorTermKind::Delta:
      return x * std::log(x) + (2 * c.gamma - 1) * x;
    case ErrorTermKind::P:
      return c.pi * x;
    case ErrorTermKind::A:
      return 0.0;
    case ErrorTermKind::DeltaStar:
      return x * (std::log(x) + 2 * c.gamma - 1);
  }
  return 0.0;
}

namespace {

void check_argument(const ArithTable& table, ErrorTermKind kind, double x) {
  if (!(x > 0) || !std::isfinite(x)) throw ArgumentError("x must be a positive real");
  if (x > max_argument(table, kind)) {
    const double scale = kind == ErrorTermKind::DeltaStar ? 4.0 : 1.0;
    const auto needed = static_cast<std::uint64_t>(std::ceil(scale * x));
    throw RangeError(to_string(kind) + "(" + std::to_string(x) + ") needs a " +
                     (kind == ErrorTermKind::A ? "tau limit" : "table limit") + " of at least " +
                     std::to_string(needed));
  }
}

}  // namespace

double step_part(const ArithTable& table, ErrorTermKind kind, double x) {
  check_argument(table, kind, x);
  switch (kind) {
    case ErrorTermKind::Delta:
      return static_cast<double>(table.divisor_sum(static_cast<std::uint64_t>(std::floor(x))));
    case ErrorTermKind::P:
      return static_cast<double>(table.two_squares_sum(static_cast<std::uint64_t>(std::floor(x))));
    case ErrorTermKind::A:
      return static_cast<double>(to_long_double(table.tau_sum(static_cast<std::uint64_t>(std::floor(x)))));
    case ErrorTermKind::DeltaStar:
      return 0.5 * static_cast<double>(
                       table.alternating_divisor_sum(static_cast<std::uint64_t>(std::floor(4 * x))));
  }
  return 0.0;
}

double error_term(const ArithTable& table, ErrorTermKind kind, double x) {
  return step_part(table, kind, x) - main_term(kind, x);
}

double delta_star_identity_check(const ArithTable& table, double x) {
  if (!(x > 0)) throw ArgumentError("x must be a positive real");
  if (4 * x > static_cast<double>(table.limit())) {
    throw RangeError("Delta* identity at x=" + std::to_string(x) + " needs a table limit of at least " +
                     std::to_string(static_cast<std::uint64_t>(std::floor(4 * x))));
  }
  const double star = error_term(table, ErrorTermKind::DeltaStar, x);
  const double combo = -error_term(table, ErrorTermKind::Delta, x) +
                       2 * error_term(table, ErrorTermKind::Delta, 2 * x) -
                       0.5 * error_term(table, ErrorTermKind::Delta, 4 * x);
  return star - combo;
}

TruncatedExpansion::TruncatedExpansion(const ArithTable& table, const CoefficientKind& kind, double y)
    : kind_(kind), y_(y) {
  if (!(y > 0)) throw ArgumentError("truncation y must be positive");
  const auto n_max = static_cast<std::uint64_t>(std::floor(y));
  if (n_max > kind.coefficient_limit(table)) {
    throw RangeError("truncation y=" + std::to_string(y) + " needs coefficients up to " +
                     std::to_string(n_max) + " but only " +
                     std::to_string(kind.coefficient_limit(table)) + " are available");
  }
  const double four_pi = 4 * constants().pi;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double f = kind.coefficient(table, n);
    if (f == 0.0) continue;
    const double nd = static_cast<double>(n);
    weights_.push_back(f * std::pow(nd, -0.75));
    sqrt_n_.push_back(four_pi * std::sqrt(nd));
  }
}

double TruncatedExpansion::operator()(double x) const {
  if (!(x > 0)) throw ArgumentError("x must be a positive real");
  const double phase = kind_.phase();
  const double sqrt_x = std::sqrt(x);
  NeumaierSum sum;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    sum.add(weights_[i] * std::cos(sqrt_n_[i] * sqrt_x + phase));
  }
  return kind_.amplitude() * std::pow(x, kind_.x_power()) * sum.value();
}

double voronoi_truncated(const ArithTable& table, const CoefficientKind& kind, double x, double y) {
  return TruncatedExpansion(table, kind, y)(x);
}

double remainder_r2(const ArithTable& table, double x, double y, ErrorTermKind kind) {
  return error_term(table, kind, x) - voronoi_truncated(table, matching_coefficient_kind(kind), x, y);
}

}  // namespace vm
