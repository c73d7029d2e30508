#include "vm/exponents.hpp"

#include <charconv>

#include "vm/errors.hpp"

namespace vm {

namespace {

std::int64_t parse_int(std::string_view s, const std::string& whole) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end || s.empty()) {
    throw ArgumentError("not a rational number: '" + whole + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text, text));
  const std::int64_t num = parse_int(std::string_view(text).substr(0, slash), text);
  const std::int64_t den = parse_int(std::string_view(text).substr(slash + 1), text);
  if (den == 0) throw ArgumentError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Rational b_exponent(int k) {
  if (k < 2 || k > 60) throw ArgumentError("b(k) needs 2 <= k <= 60");
  return Rational(std::int64_t{1} << (k - 2)) + Rational(k - 6, 4);
}

ExponentBook exponent_book(int k, const Rational& a0) {
  if (a0 <= Rational(2)) throw ArgumentError("A0 must exceed 2, got " + to_string(a0));
  if (k < 3) throw ArgumentError("k must be >= 3");
  if (Rational(k) >= a0) {
    throw ArgumentError("k=" + std::to_string(k) + " must be below A0=" + to_string(a0));
  }
  ExponentBook book;
  book.k = k;
  book.a0 = a0;
  std::int64_t k0 = boost::rational_cast<std::int64_t>(a0);  // truncates toward zero
  if (Rational(k0) < a0) ++k0;
  if (k0 % 2 != 0) ++k0;
  book.k0 = k0;
  book.b_k = b_exponent(k);
  book.b_k0 = b_exponent(static_cast<int>(k0));
  // k - 1 < A0/2, otherwise k >= A0/2 + 1 for integer k
  if (Rational(k - 1) < a0 / 2) {
    book.sigma = Rational(1, 4);
  } else {
    book.sigma = (a0 - k) / (2 * (a0 - 2));
  }
  book.delta1 = book.sigma / (2 * book.b_k0);
  book.delta2 = book.sigma / (2 * book.b_k + 2 * book.sigma);
  return book;
}

}  // namespace vm
