#include "vm/coefficient_kind.hpp"

#include <cmath>

#include "vm/constants.hpp"
#include "vm/errors.hpp"

namespace vm {

CoefficientKind CoefficientKind::cusp(int kappa) {
  if (kappa < 12 || kappa % 2 != 0) throw ArgumentError("cusp weight must be an even integer >= 12");
  if (kappa != 12) {
    throw ArgumentError("only weight 12 has a built-in coefficient source; supply coefficients for weight " +
                        std::to_string(kappa));
  }
  return CoefficientKind(Weight::CuspNormalized, kappa);
}

CoefficientKind CoefficientKind::cusp(int kappa, std::vector<double> normalized) {
  if (kappa < 12 || kappa % 2 != 0) throw ArgumentError("cusp weight must be an even integer >= 12");
  CoefficientKind k(Weight::CuspNormalized, kappa);
  k.user_ = std::make_shared<const std::vector<double>>(std::move(normalized));
  return k;
}

double CoefficientKind::amplitude() const {
  const double pi = constants().pi;
  switch (weight_) {
    case Weight::TwoSquares:
      return -1.0 / pi;
    case Weight::Divisor:
    case Weight::CuspNormalized:
    case Weight::AlternatingDivisor:
      break;
  }
  return 1.0 / (std::sqrt(2.0) * pi);
}

double CoefficientKind::phase() const {
  const double quarter = constants().pi / 4;
  return weight_ == Weight::TwoSquares ? quarter : -quarter;
}

double CoefficientKind::x_power() const {
  return weight_ == Weight::CuspNormalized ? kappa_ / 2.0 - 0.25 : 0.25;
}

double CoefficientKind::coefficient(const ArithTable& table, std::uint64_t n) const {
  switch (weight_) {
    case Weight::Divisor:
      return table.d(n);
    case Weight::TwoSquares:
      return table.r(n);
    case Weight::AlternatingDivisor:
      return (n & 1) ? -static_cast<double>(table.d(n)) : static_cast<double>(table.d(n));
    case Weight::CuspNormalized:
      if (user_) {
        if (n == 0 || n >= user_->size()) {
          throw RangeError("cusp coefficient " + std::to_string(n) + " not supplied");
        }
        return (*user_)[n];
      }
      return static_cast<double>(to_long_double(table.tau(n)) *
                                 std::pow(static_cast<long double>(n), -5.5L));
  }
  return 0.0;
}

std::uint64_t CoefficientKind::coefficient_limit(const ArithTable& table) const {
  if (weight_ == Weight::CuspNormalized) {
    return user_ ? (user_->empty() ? 0 : user_->size() - 1) : table.tau_limit();
  }
  return table.limit();
}

std::string CoefficientKind::tag() const {
  switch (weight_) {
    case Weight::Divisor:
      return "d";
    case Weight::TwoSquares:
      return "r";
    case Weight::AlternatingDivisor:
      return "dstar";
    case Weight::CuspNormalized:
      return kappa_ == 12 ? "a" : "a" + std::to_string(kappa_);
  }
  return "?";
}

CoefficientKind parse_coefficient_kind(const std::string& s) {
  if (s == "d" || s == "delta") return CoefficientKind::divisor();
  if (s == "r" || s == "p") return CoefficientKind::two_squares();
  if (s == "a") return CoefficientKind::cusp(12);
  if (s == "dstar" || s == "delta-star") return CoefficientKind::alternating_divisor();
  throw ArgumentError("unknown coefficient kind '" + s + "' (expected d, r, a or dstar)");
}

}  // namespace vm
