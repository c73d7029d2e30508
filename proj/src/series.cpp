#include "vm/series.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <Eigen/Dense>

#include "vm/constants.hpp"
#include "vm/errors.hpp"
#include "vm/summation.hpp"

namespace vm {

double quarter_pi_cosine(int m) {
  const double half_root2 = std::sqrt(2.0) / 2;
  switch (((m % 8) + 8) % 8) {
    case 0:
      return 1.0;
    case 1:
    case 7:
      return half_root2;
    case 2:
    case 6:
      return 0.0;
    case 3:
    case 5:
      return -half_root2;
    default:
      return -1.0;
  }
}

namespace {

std::uint64_t truncation(double y) {
  if (!(y >= 1)) throw ArgumentError("truncation y must be >= 1");
  return static_cast<std::uint64_t>(std::floor(y));
}

void check_series_args(int k, int l) {
  if (k < 2) throw ArgumentError("k must be >= 2");
  if (l < 1 || l >= k) throw ArgumentError("l must lie in [1, k-1]");
}

// Dense (k+1) x (k+1) bivariate polynomial truncated to total degree k.
class Egf {
 public:
  explicit Egf(int k) : k_(k), c_((k + 1) * (k + 1), 0.0) { c_[0] = 1.0; }

  double& at(int i, int j) { return c_[i * (k_ + 1) + j]; }
  double at(int i, int j) const { return c_[i * (k_ + 1) + j]; }

  // *this *= 1 + sum_{a,b>=1} factor(a,b) x^a z^b, in place
  void multiply_kernel(const std::vector<double>& factor) {
    for (int i = k_; i >= 1; --i) {
      for (int j = k_ - i; j >= 1; --j) {
        double acc = at(i, j);
        for (int a = 1; a <= i; ++a) {
          for (int b = 1; b <= j; ++b) {
            const double f = factor[a * (k_ + 1) + b];
            if (f != 0.0) acc += at(i - a, j - b) * f;
          }
        }
        at(i, j) = acc;
      }
    }
  }

  void multiply(const Egf& other) {
    Egf out(k_);
    out.at(0, 0) = 0.0;
    for (int i = 0; i <= k_; ++i) {
      for (int j = 0; i + j <= k_; ++j) {
        double acc = 0.0;
        for (int a = 0; a <= i; ++a) {
          for (int b = 0; b <= j; ++b) acc += at(i - a, j - b) * other.at(a, b);
        }
        out.at(i, j) = acc;
      }
    }
    c_ = std::move(out.c_);
  }

 private:
  int k_;
  std::vector<double> c_;
};

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// g(s) = f(s^2 h) (s^2 h)^{-3/4}, s = 1..s_max (index 0 unused)
std::vector<double> class_weights(const ArithTable& table, const CoefficientKind& kind, std::uint64_t h,
                                  std::uint64_t s_max) {
  std::vector<double> g(s_max + 1, 0.0);
  const double h_scale = std::pow(static_cast<double>(h), -0.75);
  for (std::uint64_t s = 1; s <= s_max; ++s) {
    const double f = kind.coefficient(table, s * s * h);
    if (f != 0.0) g[s] = f * h_scale * std::pow(static_cast<double>(s), -1.5);
  }
  return g;
}

// T(a, b) for 1 <= a, b and a + b <= k, stored at a * (k + 1) + b; entries
// already divided by a! b!. Returns false if the class contributes nothing.
bool class_table(const std::vector<double>& g, int k, std::vector<double>& out) {
  const std::size_t s_max = g.size() - 1;
  bool any = false;
  for (std::size_t s = 1; s <= s_max; ++s) any = any || g[s] != 0.0;
  if (!any) return false;

  out.assign((k + 1) * (k + 1), 0.0);
  const int a_max = k - 1;
  // powers[a][m]: a-fold convolution of g, m = a .. a * s_max
  std::vector<std::vector<double>> powers(a_max + 1);
  powers[1] = g;
  for (int a = 2; a <= a_max; ++a) {
    const auto& prev = powers[a - 1];
    auto& cur = powers[a];
    cur.assign(a * s_max + 1, 0.0);
    for (std::size_t m = a; m <= a * s_max; ++m) {
      NeumaierSum acc;
      const std::size_t s_lo = m > (a - 1) * s_max ? m - (a - 1) * s_max : 1;
      const std::size_t s_hi = std::min(s_max, m - (a - 1));
      for (std::size_t s = s_lo; s <= s_hi; ++s) {
        if (g[s] != 0.0 && prev[m - s] != 0.0) acc.add(prev[m - s] * g[s]);
      }
      cur[m] = acc.value();
    }
  }
  for (int a = 1; a <= a_max; ++a) {
    for (int b = 1; a + b <= k; ++b) {
      const std::size_t m_lo = std::max(a, b);
      const std::size_t m_hi = std::min(a, b) * s_max;
      NeumaierSum acc;
      for (std::size_t m = m_lo; m <= m_hi; ++m) acc.add(powers[a][m] * powers[b][m]);
      out[a * (k + 1) + b] = acc.value() / (factorial(a) * factorial(b));
    }
  }
  return true;
}

}  // namespace

SeriesEngine::SeriesEngine(const ArithTable& table, std::size_t kernels_per_block)
    : table_(table), kernels_per_block_(kernels_per_block == 0 ? 1 : kernels_per_block) {
  const auto mu = table.mu_values();
  for (std::uint64_t n = 1; n <= table.limit(); ++n) {
    if (mu[n] != 0) squarefree_.push_back(n);
  }
}

double SeriesEngine::class_sum(const CoefficientKind& kind, std::uint64_t h, int a, int b, double y) const {
  if (a < 0 || b < 0) throw ArgumentError("class sizes must be nonnegative");
  if (h == 0 || h > table_.limit()) throw RangeError("kernel " + std::to_string(h) + " outside the table");
  if (table_.mu(h) == 0) throw ArgumentError("kernel " + std::to_string(h) + " is not squarefree");
  if (a == 0 && b == 0) return 1.0;
  if (a == 0 || b == 0) return 0.0;
  const std::uint64_t y_int = truncation(y);
  if (y_int > kind.coefficient_limit(table_)) {
    throw RangeError("truncation y=" + std::to_string(y_int) + " exceeds the coefficient table (" +
                     std::to_string(kind.coefficient_limit(table_)) + ")");
  }
  if (h > y_int) return 0.0;
  const auto g = class_weights(table_, kind, h, isqrt(y_int / h));
  std::vector<double> t;
  const int k = a + b;
  if (!class_table(g, k, t)) return 0.0;
  return t[a * (k + 1) + b] * factorial(a) * factorial(b);
}

std::vector<double> SeriesEngine::compute(const CoefficientKind& kind, int k, std::uint64_t y) const {
  const auto end = std::upper_bound(squarefree_.begin(), squarefree_.end(), y);
  const std::size_t kernels = static_cast<std::size_t>(end - squarefree_.begin());
  const std::size_t blocks = (kernels + kernels_per_block_ - 1) / kernels_per_block_;
  std::vector<Egf> partial(blocks, Egf(k));

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t bi = 0; bi < blocks; ++bi) {
    const std::size_t lo = bi * kernels_per_block_;
    const std::size_t hi = std::min(kernels, lo + kernels_per_block_);
    std::vector<double> factor;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t h = squarefree_[i];
      const auto g = class_weights(table_, kind, h, isqrt(y / h));
      if (class_table(g, k, factor)) partial[bi].multiply_kernel(factor);
    }
  }

  Egf total(k);
  for (const auto& p : partial) total.multiply(p);
  std::vector<double> s(k + 1, 0.0);
  for (int l = 1; l < k; ++l) s[l] = total.at(l, k - l) * factorial(l) * factorial(k - l);
  return s;
}

std::vector<double> SeriesEngine::series_values(const CoefficientKind& kind, int k, double y) {
  if (k < 2) throw ArgumentError("k must be >= 2");
  const std::uint64_t y_int = truncation(y);
  if (y_int > kind.coefficient_limit(table_)) {
    throw RangeError("truncation y=" + std::to_string(y_int) + " needs coefficients up to " +
                     std::to_string(y_int) + " but the table provides " +
                     std::to_string(kind.coefficient_limit(table_)));
  }
  const auto key = std::make_tuple(kind.tag(), k, y_int);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto values = compute(kind, k, y_int);
  std::unique_lock lock(mutex_);
  return cache_.emplace(key, std::move(values)).first->second;
}

double fitted_tail(std::span<const double> ys, std::span<const double> s) {
  const std::size_t n = ys.size();
  if (n != s.size() || n != kTailPoints) throw ArgumentError("tail fit needs " + std::to_string(kTailPoints) + " points");
  const double scale = std::log(ys[n - 1]);
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::log(ys[i]) / scale;
    const double w = 1.0 / std::sqrt(ys[i]);
    a(i, 0) = 1.0;
    for (std::size_t j = 1; j < n; ++j) a(i, j) = -w * std::pow(u, static_cast<double>(j - 1));
    b(i) = s[i];
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  return x(0) - s[n - 1];
}

SeriesEstimate SeriesEngine::series(const CoefficientKind& kind, int k, int l, double y) {
  check_series_args(k, l);
  SeriesEstimate e;
  e.k = k;
  e.l = l;
  e.kind = kind;
  e.y = std::floor(y);
  e.value = series_values(kind, k, y)[l];
  e.tail_estimate = tail_values(kind, k, y)[l];
  return e;
}

std::vector<double> SeriesEngine::tail_values(const CoefficientKind& kind, int k, double y) {
  std::vector<double> tail(static_cast<std::size_t>(k) + 1, 0.0);
  const double top = std::floor(y);
  const double bottom = std::floor(top / std::ldexp(1.0, kTailPoints - 1));
  if (bottom < kTailMinimumY) return tail;
  std::vector<double> ys;
  std::vector<std::vector<double>> vals;
  for (int j = kTailPoints - 1; j >= 0; --j) {
    ys.push_back(std::floor(top / std::ldexp(1.0, j)));
    vals.push_back(series_values(kind, k, ys.back()));
  }
  for (int l = 1; l < k; ++l) {
    std::vector<double> sl;
    for (const auto& v : vals) sl.push_back(v[l]);
    tail[l] = fitted_tail(ys, sl);
  }
  return tail;
}

BkValue SeriesEngine::bk(const CoefficientKind& kind, int k, double y, bool tail_corrected) {
  if (k < 2) throw ArgumentError("k must be >= 2");
  auto s = series_values(kind, k, y);
  if (tail_corrected) {
    const auto tail = tail_values(kind, k, y);
    for (int l = 1; l < k; ++l) s[l] += tail[l];
  }
  BkValue out;
  out.k = k;
  out.kind = kind;
  out.y = std::floor(y);
  out.tail_corrected = tail_corrected;
  NeumaierSum total;
  double binom = 1;  // C(k-1, 0)
  for (int l = 1; l < k; ++l) {
    binom = binom * (k - l) / l;
    BkTerm t;
    t.l = l;
    t.binomial = binom;
    t.s_value = s[l];
    t.cosine = quarter_pi_cosine(k - 2 * l);
    t.contribution = t.cosine == 0.0 ? 0.0 : binom * s[l] * t.cosine;
    total.add(t.contribution);
    out.breakdown.push_back(t);
  }
  out.value = total.value();
  return out;
}

namespace {

std::string superscript(int n) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(n)) s += digits[c - '0'];
  return s;
}

}  // namespace

double tabulated_theorem1_coefficient(int k, std::span<const double> s) {
  const double pi = constants().pi;
  switch (k) {
    case 2:
      return s[1] / (6 * pi * pi);
    case 3:
      return 3 * s[1] / (28 * std::pow(pi, 3));
    case 4:
      return 3 * s[2] / (64 * std::pow(pi, 4));
    case 5:
      return 5 * (2 * s[2] - s[1]) / (288 * std::pow(pi, 5));
    case 6:
      return (5 * s[3] - 3 * s[1]) / (320 * std::pow(pi, 6));
    case 7:
      return 7 * (5 * s[3] - 3 * s[2] - s[1]) / (2816 * std::pow(pi, 7));
    case 8:
      return 7 * (5 * s[4] - 4 * s[2]) / (6144 * std::pow(pi, 8));
    case 9:
      return 3 * (3 * s[1] - 12 * s[2] - 28 * s[3] + 42 * s[4]) / (26624 * std::pow(pi, 9));
    default:
      throw ArgumentError("no tabulated form for k=" + std::to_string(k));
  }
}

std::string tabulated_theorem1_formula(int k) {
  switch (k) {
    case 2:
      return "s21/(6π²)";
    case 3:
      return "3·s31/(28π³)";
    case 4:
      return "3·s42/(64π⁴)";
    case 5:
      return "5(2·s52−s51)/(288π⁵)";
    case 6:
      return "(5·s63−3·s61)/(320π⁶)";
    case 7:
      return "7(5·s73−3·s72−s71)/(2816π⁷)";
    case 8:
      return "7(5·s84−4·s82)/(6144π⁸)";
    case 9:
      return "3(3·s91−12·s92−28·s93+42·s94)/(26624π⁹)";
    default:
      throw ArgumentError("no tabulated form for k=" + std::to_string(k));
  }
}

MainTermCoefficient SeriesEngine::main_term_coefficient(int theorem, int k, std::optional<int> kappa,
                                                         double y, bool tail_corrected) {
  if (theorem != 1 && theorem != 3 && theorem != 4 && theorem != 5) {
    throw ArgumentError("theorem must be 1, 3, 4 or 5");
  }
  if (k < 2) throw ArgumentError("k must be >= 2");
  if (theorem == 4 && !kappa) throw ArgumentError("theorem 4 needs kappa");
  if (theorem != 4 && kappa) throw ArgumentError("kappa only applies to theorem 4");

  const double pi = constants().pi;
  const double kd = k;
  MainTermCoefficient c;
  c.theorem = theorem;
  c.k = k;
  c.kappa = kappa;
  c.y = std::floor(y);
  c.tail_corrected = tail_corrected;
  const std::string ks = std::to_string(k);
  switch (theorem) {
    case 1: {
      const double b = bk(CoefficientKind::divisor(), k, y, tail_corrected).value;
      c.value = b / ((1 + kd / 4) * std::pow(2.0, 1.5 * kd - 1) * std::pow(pi, kd));
      c.t_exponent = 1 + kd / 4;
      c.formula = k <= 9 ? tabulated_theorem1_formula(k)
                         : "B" + ks + "(d)/((1+" + ks + "/4)·2^(3·" + ks + "/2−1)·π" + superscript(k) + ")";
      break;
    }
    case 3: {
      const double b = bk(CoefficientKind::two_squares(), k, y, tail_corrected).value;
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      c.value = sign * b / ((1 + kd / 4) * std::pow(2.0, kd - 1) * std::pow(pi, kd));
      c.t_exponent = 1 + kd / 4;
      c.formula = "(−1)" + superscript(k) + "·B" + ks + "(r)/((1+" + ks + "/4)·2" + superscript(k - 1) + "·π" +
                  superscript(k) + ")";
      break;
    }
    case 4: {
      const auto kind = CoefficientKind::cusp(*kappa);
      const double b = bk(kind, k, y, tail_corrected).value;
      const double growth = 1 + kd * (2.0 * *kappa - 1) / 4;
      c.value = b / (growth * std::pow(2.0, 1.5 * kd - 1) * std::pow(pi, kd));
      c.t_exponent = growth;
      c.formula = "B" + ks + "(ã)/((1+" + ks + "(2κ−1)/4)·2^(3·" + ks + "/2−1)·π" + superscript(k) +
                  "), κ=" + std::to_string(*kappa);
      break;
    }
    case 5: {
      const double b = bk(CoefficientKind::divisor(), k, y, tail_corrected).value;
      c.value = b / ((1 + kd / 4) * std::pow(2.0, 0.75 * kd - 1) * std::pow(pi, kd / 4));
      c.t_exponent = 1 + kd / 4;
      c.formula = "B" + ks + "(d)/((1+" + ks + "/4)·2^(3·" + ks + "/4−1)·π^(" + ks + "/4))";
      break;
    }
  }
  return c;
}

double class_sum(const ArithTable& table, const CoefficientKind& kind, std::uint64_t h, int a, int b, double y) {
  return SeriesEngine(table).class_sum(kind, h, a, b, y);
}

SeriesEstimate series_skl(const ArithTable& table, const CoefficientKind& kind, int k, int l, double y) {
  return SeriesEngine(table).series(kind, k, l, y);
}

BkValue bk(const ArithTable& table, const CoefficientKind& kind, int k, double y) {
  return SeriesEngine(table).bk(kind, k, y);
}

MainTermCoefficient main_term_coefficient(int theorem, int k, std::optional<int> kappa, const ArithTable& table,
                                          double y) {
  return SeriesEngine(table).main_term_coefficient(theorem, k, kappa, y);
}

}  // namespace vm
