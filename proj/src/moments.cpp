#include "vm/moments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "vm/constants.hpp"
#include "vm/errors.hpp"
#include "vm/summation.hpp"

namespace vm {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    long double p0 = 1, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    const long double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[i] = rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double ipow(double v, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= v;
  return r;
}

// Step values at the left end c/q of every cell c in [c0, c1).
using StepFill = std::function<void(std::int64_t c0, std::int64_t c1, std::vector<double>& out)>;
// Integrand at x given the step value on the cell.
using CellIntegrand = std::function<double(double x, double step)>;

struct Integration {
  double value = 0;
  std::uint64_t chunks = 0;
};

Integration integrate_cells(double a, double b, int q, const QuadratureSpec& spec, const StepFill& fill,
                            const CellIntegrand& f) {
  if (spec.order < 1 || spec.order > 64) throw ArgumentError("quadrature order must be in 1..64");
  if (spec.chunk_cells == 0) throw ArgumentError("chunk size must be positive");
  Integration result;
  if (!(b > a)) return result;
  const auto& rule = gauss_legendre(spec.order);
  const auto c_first = static_cast<std::int64_t>(std::floor(a * q));
  const auto c_end = static_cast<std::int64_t>(std::ceil(b * q));
  const auto cells = static_cast<std::uint64_t>(c_end - c_first);
  const std::uint64_t chunks = (cells + spec.chunk_cells - 1) / spec.chunk_cells;
  std::vector<ExactSum> partial(chunks);
  std::exception_ptr failure;
  std::mutex failure_mutex;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(chunks); ++ci) {
    try {
      const std::int64_t c0 = c_first + ci * static_cast<std::int64_t>(spec.chunk_cells);
      const std::int64_t c1 = std::min<std::int64_t>(c_end, c0 + static_cast<std::int64_t>(spec.chunk_cells));
      std::vector<double> steps;
      if (fill) fill(c0, c1, steps);
      ExactSum acc;
      for (std::int64_t c = c0; c < c1; ++c) {
        const double lo = std::max(a, static_cast<double>(c) / q);
        const double hi = std::min(b, static_cast<double>(c + 1) / q);
        if (!(hi > lo)) continue;
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        const double step = fill ? steps[static_cast<std::size_t>(c - c0)] : 0.0;
        double s = 0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          s += rule.weights[i] * f(mid + half * rule.nodes[i], step);
        }
        acc.add(s * half);
      }
      partial[static_cast<std::size_t>(ci)] = std::move(acc);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  ExactSum total;
  for (const auto& p : partial) total.add(p);
  result.value = total.value();
  result.chunks = chunks;
  return result;
}

StepFill table_steps(const ArithTable& table, ErrorTermKind kind) {
  const ArithTable* t = &table;
  switch (kind) {
    case ErrorTermKind::Delta:
      return [t](std::int64_t c0, std::int64_t c1, std::vector<double>& out) {
        out.resize(static_cast<std::size_t>(c1 - c0));
        for (std::int64_t c = c0; c < c1; ++c) out[c - c0] = static_cast<double>(t->divisor_sum(c));
      };
    case ErrorTermKind::P:
      return [t](std::int64_t c0, std::int64_t c1, std::vector<double>& out) {
        out.resize(static_cast<std::size_t>(c1 - c0));
        for (std::int64_t c = c0; c < c1; ++c) out[c - c0] = static_cast<double>(t->two_squares_sum(c));
      };
    case ErrorTermKind::A:
      return [t](std::int64_t c0, std::int64_t c1, std::vector<double>& out) {
        out.resize(static_cast<std::size_t>(c1 - c0));
        for (std::int64_t c = c0; c < c1; ++c) {
          out[c - c0] = static_cast<double>(to_long_double(t->tau_sum(c)));
        }
      };
    case ErrorTermKind::DeltaStar:
      return [t](std::int64_t c0, std::int64_t c1, std::vector<double>& out) {
        out.resize(static_cast<std::size_t>(c1 - c0));
        for (std::int64_t c = c0; c < c1; ++c) {
          out[c - c0] = 0.5 * static_cast<double>(t->alternating_divisor_sum(c));
        }
      };
  }
  return {};
}

StepFill streamed_steps(ErrorTermKind kind) {
  if (kind == ErrorTermKind::Delta) {
    return [](std::int64_t c0, std::int64_t c1, std::vector<double>& out) {
      out.resize(static_cast<std::size_t>(c1 - c0));
      std::int64_t acc = divisor_summatory(static_cast<std::uint64_t>(c0));
      std::vector<std::uint32_t> d(static_cast<std::size_t>(c1 - c0));
      if (c1 > c0 + 1) sieve_divisors(c0 + 1, c1, std::span(d.data(), c1 - c0 - 1));
      for (std::int64_t c = c0; c < c1; ++c) {
        if (c > c0) acc += d[c - c0 - 1];
        out[c - c0] = static_cast<double>(acc);
      }
    };
  }
  if (kind == ErrorTermKind::P) {
    return [](std::int64_t c0, std::int64_t c1, std::vector<double>& out) {
      out.resize(static_cast<std::size_t>(c1 - c0));
      std::int64_t acc = two_squares_summatory(static_cast<std::uint64_t>(c0));
      std::vector<std::int32_t> r(static_cast<std::size_t>(c1 - c0));
      if (c1 > c0 + 1) sieve_two_squares(c0 + 1, c1, std::span(r.data(), c1 - c0 - 1));
      for (std::int64_t c = c0; c < c1; ++c) {
        if (c > c0) acc += r[c - c0 - 1];
        out[c - c0] = static_cast<double>(acc);
      }
    };
  }
  throw ArgumentError("only delta and p can be streamed beyond the table");
}

void check_moment_args(int k, double a, double b) {
  if (k < 1) throw ArgumentError("moment order k must be >= 1");
  if (!(a >= 1) || !(b >= a) || !std::isfinite(b)) throw ArgumentError("need 1 <= a <= b < inf");
}

Integration run_moment(const StepFill& fill, ErrorTermKind kind, int k, double a, double b,
                       const QuadratureSpec& spec) {
  return integrate_cells(a, b, step_denominator(kind), spec, fill,
                         [kind, k](double x, double step) { return ipow(step - main_term(kind, x), k); });
}

double power_integral(double e, double lo, double hi) {
  return (std::pow(hi, e + 1) - std::pow(lo, e + 1)) / (e + 1);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1 || order > 64) throw ArgumentError("quadrature order must be in 1..64");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> rules;
  std::lock_guard lock(mutex);
  auto& slot = rules[order];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(order));
  return *slot;
}

void set_worker_threads(int threads) {
  if (threads < 0) throw ArgumentError("thread count must be >= 0");
  if (threads > 0) omp_set_num_threads(threads);
}

double moment_integral(const ArithTable& table, ErrorTermKind kind, int k, double a, double b,
                       const QuadratureSpec& spec) {
  check_moment_args(k, a, b);
  if (b > max_argument(table, kind)) step_part(table, kind, b);  // throws the range error
  return run_moment(table_steps(table, kind), kind, k, a, b, spec).value;
}

double streamed_moment_integral(ErrorTermKind kind, int k, double a, double b, const QuadratureSpec& spec) {
  check_moment_args(k, a, b);
  return run_moment(streamed_steps(kind), kind, k, a, b, spec).value;
}

MomentReport integrate_moment(const ArithTable& table, ErrorTermKind kind, int k, double T,
                              const MomentOptions& options, SeriesEngine* engine) {
  check_moment_args(k, 1.0, T);
  MomentReport report;
  report.kind = to_string(kind);
  report.k = k;
  report.lower = 1.0;
  report.upper = T;
  report.quadrature_order = options.quadrature.order;

  Integration integ;
  if (T <= max_argument(table, kind)) {
    integ = run_moment(table_steps(table, kind), kind, k, 1.0, T, options.quadrature);
  } else if (kind == ErrorTermKind::Delta || kind == ErrorTermKind::P) {
    integ = run_moment(streamed_steps(kind), kind, k, 1.0, T, options.quadrature);
    report.note = "step values streamed beyond the table";
  } else {
    step_part(table, kind, T);
  }
  report.empirical = integ.value;
  report.chunk_count = integ.chunks;
  report.gated = k <= 4;
  if (!options.predict) return report;

  if (k == 1) {
    if (kind == ErrorTermKind::Delta) {
      report.predicted = T / 4;
    } else if (kind == ErrorTermKind::DeltaStar) {
      report.predicted = T / 8;
    } else {
      report.predicted = 0;
      report.note = "no first-moment main term";
    }
  } else {
    const auto coeff_kind = matching_coefficient_kind(kind);
    const double y = std::max(1.0, std::min(options.coefficient_y,
                                            static_cast<double>(coeff_kind.coefficient_limit(table))));
    report.y = y;
    report.tail_corrected = options.tail_corrected;
    std::unique_ptr<SeriesEngine> own;
    if (!engine || &engine->table() != &table) {
      own = std::make_unique<SeriesEngine>(table);
      engine = own.get();
    }
    const double pi = constants().pi;
    switch (kind) {
      case ErrorTermKind::Delta: {
        const auto c = engine->main_term_coefficient(1, k, std::nullopt, y, options.tail_corrected);
        report.predicted = c.value * std::pow(T, c.t_exponent);
        break;
      }
      case ErrorTermKind::P: {
        const auto c = engine->main_term_coefficient(3, k, std::nullopt, y, options.tail_corrected);
        report.predicted = c.value * std::pow(T, c.t_exponent);
        break;
      }
      case ErrorTermKind::A: {
        const auto c = engine->main_term_coefficient(4, k, 12, y, options.tail_corrected);
        report.predicted = c.value * std::pow(T, c.t_exponent);
        break;
      }
      case ErrorTermKind::DeltaStar: {
        const double b = engine->bk(coeff_kind, k, y, options.tail_corrected).value;
        const double e = 1.0 + k / 4.0;
        report.predicted = b / (e * std::pow(2.0, 1.5 * k - 1) * std::pow(pi, k)) * std::pow(T, e);
        break;
      }
    }
    if (k >= 5) report.note = "k >= 5: reported only, the asymptotic is not resolved at this T";
  }
  if (report.predicted != 0) report.ratio = report.empirical / report.predicted;
  return report;
}

MomentReport integrate_truncated_moment(const ArithTable& table, const CoefficientKind& kind, int h, double T,
                                        double y, const QuadratureSpec& spec, SeriesEngine* engine) {
  if (h < 2) throw ArgumentError("h must be >= 2");
  if (!(T >= 1) || !std::isfinite(T)) throw ArgumentError("T must be >= 1");
  if (!(y > 0)) throw ArgumentError("truncation y must be positive");
  MomentReport report;
  report.kind = "r1:" + kind.tag();
  report.k = h;
  report.lower = T;
  report.upper = 2 * T;
  report.y = y;
  report.quadrature_order = spec.order;
  if (y < 1) {
    report.chunk_count = 0;
    report.note = "empty expansion";
    return report;
  }
  const TruncatedExpansion r1(table, kind, y);
  const auto integ = integrate_cells(T, 2 * T, 1, spec, {},
                                     [&r1, h](double x, double) { return ipow(r1(x), h); });
  report.empirical = integ.value;
  report.chunk_count = integ.chunks;

  std::unique_ptr<SeriesEngine> own;
  if (!engine || &engine->table() != &table) {
    own = std::make_unique<SeriesEngine>(table);
    engine = own.get();
  }
  const double b = engine->bk(kind, h, y).value;
  report.predicted = ipow(kind.amplitude(), h) * b * std::pow(2.0, 1 - h) *
                     power_integral(h * kind.x_power(), T, 2 * T);
  if (report.predicted != 0) report.ratio = report.empirical / report.predicted;
  return report;
}

double cos_sqrt_integral(double A, double B, double t1, double t2) {
  if (A == 0) throw ArgumentError("A must be nonzero");
  if (!(t1 > 0) || !(t2 >= t1)) throw ArgumentError("need 0 < T1 <= T2");
  if (t1 == t2) return 0.0;
  const auto F = [A, B](long double t) {
    const long double s = std::sqrt(t);
    const long double ph = static_cast<long double>(A) * s + B;
    return 2 * s / A * std::sin(ph) + 2 / (static_cast<long double>(A) * A) * std::cos(ph);
  };
  return static_cast<double>(F(t2) - F(t1));
}

double mean_square_remainder(const ArithTable& table, double T, double y, const QuadratureSpec& spec) {
  if (!(T >= 1)) throw ArgumentError("T must be >= 1");
  if (!(y >= 1) || y > T) throw ArgumentError("need 1 <= y <= T");
  if (2 * T > static_cast<double>(table.limit())) {
    throw RangeError("mean square over [T, 2T] needs a table limit of at least " +
                     std::to_string(static_cast<std::uint64_t>(std::ceil(2 * T))));
  }
  const TruncatedExpansion r1(table, CoefficientKind::divisor(), y);
  return integrate_cells(T, 2 * T, 1, spec, table_steps(table, ErrorTermKind::Delta),
                         [&r1](double x, double step) {
                           const double r2 = step - main_term(ErrorTermKind::Delta, x) - r1(x);
                           return r2 * r2;
                         })
      .value;
}

double remainder_envelope(double T, double y) {
  const double l = std::log(T);
  return std::pow(T, 1.5) * l * l * l / std::sqrt(y);
}

}  // namespace vm
