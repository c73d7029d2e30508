#include "vm/sqrt_relations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "vm/arith_tables.hpp"
#include "vm/errors.hpp"

namespace vm {

using HighFloat = boost::multiprecision::cpp_bin_float_50;

SqrtInteger SqrtInteger::of(std::uint64_t n) {
  if (n == 0) throw ArgumentError("SqrtInteger needs n >= 1");
  SqrtInteger out{1, 1};
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) out.s *= p;
    if (e & 1) out.h *= p;
  }
  out.h *= n;
  return out;
}

std::vector<std::uint64_t> Relation::values() const {
  std::vector<std::uint64_t> v;
  v.reserve(terms.size());
  for (const auto& t : terms) v.push_back(t.value());
  return v;
}

std::string Relation::kernel_decomposition() const {
  std::map<std::uint64_t, std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> classes;
  for (int j = 0; j < k; ++j) {
    auto& c = classes[terms[j].h];
    (j < l ? c.first : c.second).push_back(terms[j].s);
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [h, sides] : classes) {
    if (!first) os << ' ';
    first = false;
    os << h << ":{";
    for (std::size_t i = 0; i < sides.first.size(); ++i) os << (i ? "," : "") << sides.first[i];
    os << '|';
    for (std::size_t i = 0; i < sides.second.size(); ++i) os << (i ? "," : "") << sides.second[i];
    os << '}';
  }
  return os.str();
}

bool is_zero_sum(std::span<const SqrtInteger> terms, std::span<const int> signs) {
  // at most k distinct kernels; linear scan is enough
  std::uint64_t kernels[64];
  std::int64_t sums[64];
  std::size_t used = 0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    std::size_t i = 0;
    while (i < used && kernels[i] != terms[j].h) ++i;
    if (i == used) {
      if (used == 64) throw ArgumentError("too many terms");
      kernels[used] = terms[j].h;
      sums[used++] = 0;
    }
    sums[i] += signs[j] * static_cast<std::int64_t>(terms[j].s);
  }
  for (std::size_t i = 0; i < used; ++i) {
    if (sums[i] != 0) return false;
  }
  return true;
}

bool is_balanced(std::span<const SqrtInteger> terms, int l) {
  std::vector<int> signs(terms.size(), -1);
  for (int j = 0; j < l && j < static_cast<int>(terms.size()); ++j) signs[j] = 1;
  return is_zero_sum(terms, signs);
}

bool parity_check(const Relation& rel) {
  std::uint64_t sum = 0;
  for (const auto& t : rel.terms) sum += t.value();
  return sum % 2 == 0;
}

namespace {

void check_kl(int k, int l, int max_k) {
  if (k < 2 || k > max_k) {
    throw ArgumentError("k=" + std::to_string(k) + " outside [2, " + std::to_string(max_k) + "]");
  }
  if (l < 1 || l >= k) throw ArgumentError("l=" + std::to_string(l) + " outside [1, k-1]");
}

// kernel h(n) and s(n) for n <= y
std::vector<SqrtInteger> sqrt_forms(std::uint64_t y) {
  std::vector<SqrtInteger> forms(y + 1);
  for (std::uint64_t n = 1; n <= y; ++n) forms[n] = SqrtInteger{1, n};
  for (std::uint64_t q = 2; q * q <= y; ++q) {
    const std::uint64_t sq = q * q;
    for (std::uint64_t m = sq; m <= y; m += sq) {
      while (forms[m].h % sq == 0) {
        forms[m].h /= sq;
        forms[m].s *= q;
      }
    }
  }
  return forms;
}

class RelationEnumerator {
 public:
  RelationEnumerator(int k, int l, std::uint64_t y, const std::function<void(const Relation&)>& visit)
      : k_(k), l_(l), visit_(visit) {
    current_.k = k;
    current_.l = l;
    current_.terms.assign(k, SqrtInteger{});
    const auto forms = sqrt_forms(y);
    for (std::uint64_t n = 1; n <= y; ++n) {
      if (forms[n].s == 1) kernels_.push_back({n, isqrt(y / n)});
    }
  }

  void run() { next_kernel(0, (1u << l_) - 1, ((1u << k_) - 1) & ~((1u << l_) - 1)); }

 private:
  struct Kernel {
    std::uint64_t h;
    std::uint64_t s_max;
  };

  void next_kernel(std::size_t from, unsigned left_free, unsigned right_free) {
    if (left_free == 0 && right_free == 0) {
      visit_(current_);
      return;
    }
    if (left_free == 0 || right_free == 0) return;
    for (std::size_t ki = from; ki < kernels_.size(); ++ki) {
      // subsets in increasing mask order
      for (unsigned a = left_free; a != 0; a = (a - 1) & left_free) {
        for (unsigned b = right_free; b != 0; b = (b - 1) & right_free) {
          assign(ki, a, b, left_free & ~a, right_free & ~b);
        }
      }
    }
  }

  void assign(std::size_t ki, unsigned a, unsigned b, unsigned left_rest, unsigned right_rest) {
    const Kernel& ker = kernels_[ki];
    std::vector<int> left_pos, right_pos;
    for (int j = 0; j < k_; ++j) {
      if (a >> j & 1u) left_pos.push_back(j);
      if (b >> j & 1u) right_pos.push_back(j);
    }
    // each side needs at least as many units as positions
    if (left_pos.size() > right_pos.size() * ker.s_max || right_pos.size() > left_pos.size() * ker.s_max) {
      return;
    }
    fill_left(ker, left_pos, 0, 0, right_pos, [&] { next_kernel(ki + 1, left_rest, right_rest); });
  }

  template <typename F>
  void fill_left(const Kernel& ker, const std::vector<int>& left_pos, std::size_t i, std::uint64_t sum,
                 const std::vector<int>& right_pos, const F& done) {
    if (i == left_pos.size()) {
      fill_right(ker, right_pos, 0, sum, done);
      return;
    }
    for (std::uint64_t s = 1; s <= ker.s_max; ++s) {
      current_.terms[left_pos[i]] = SqrtInteger{s, ker.h};
      fill_left(ker, left_pos, i + 1, sum + s, right_pos, done);
    }
  }

  template <typename F>
  void fill_right(const Kernel& ker, const std::vector<int>& right_pos, std::size_t i, std::uint64_t remaining,
                  const F& done) {
    const std::uint64_t slots_after = right_pos.size() - i - 1;
    if (slots_after == 0) {
      if (remaining >= 1 && remaining <= ker.s_max) {
        current_.terms[right_pos[i]] = SqrtInteger{remaining, ker.h};
        done();
      }
      return;
    }
    for (std::uint64_t s = 1; s <= ker.s_max && s + slots_after <= remaining; ++s) {
      if (remaining - s > slots_after * ker.s_max) continue;
      current_.terms[right_pos[i]] = SqrtInteger{s, ker.h};
      fill_right(ker, right_pos, i + 1, remaining - s, done);
    }
  }

  int k_;
  int l_;
  const std::function<void(const Relation&)>& visit_;
  Relation current_;
  std::vector<Kernel> kernels_;
};

}  // namespace

void for_each_relation(int k, int l, std::uint64_t y, const std::function<void(const Relation&)>& visit,
                       const EnumerationOptions& options) {
  check_kl(k, l, options.max_k);
  if (k > 31) throw ArgumentError("k too large for position masks");
  if (y < 1) throw ArgumentError("y must be >= 1");
  RelationEnumerator(k, l, y, visit).run();
}

std::vector<Relation> enumerate_relations(int k, int l, std::uint64_t y, const EnumerationOptions& options) {
  std::vector<Relation> out;
  for_each_relation(k, l, y, [&](const Relation& r) { out.push_back(r); }, options);
  return out;
}

namespace {

// y^k, saturating at `cap + 1`
std::uint64_t bounded_power(std::uint64_t base, int exp, std::uint64_t cap) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::vector<Relation> brute_force_enumerate(int k, int l, std::uint64_t y, std::uint64_t budget) {
  check_kl(k, l, 64);
  if (y < 1) throw ArgumentError("y must be >= 1");
  const std::uint64_t cost = bounded_power(y, k, budget);
  if (cost > budget) {
    throw ResourceError("brute-force enumeration needs y^k = " + std::to_string(y) + "^" + std::to_string(k) +
                        " work units, above the budget of " + std::to_string(budget));
  }
  const auto forms = sqrt_forms(y);
  std::vector<int> signs(k, -1);
  for (int j = 0; j < l; ++j) signs[j] = 1;

  std::vector<Relation> out;
  Relation rel;
  rel.k = k;
  rel.l = l;
  rel.terms.assign(k, forms[1]);
  std::vector<std::uint64_t> idx(k, 1);
  while (true) {
    if (is_zero_sum(rel.terms, signs)) out.push_back(rel);
    int j = k - 1;
    while (j >= 0 && idx[j] == y) {
      idx[j] = 1;
      rel.terms[j] = forms[1];
      --j;
    }
    if (j < 0) break;
    rel.terms[j] = forms[++idx[j]];
  }
  return out;
}

// ---- sign patterns ---------------------------------------------------------

SignPattern::SignPattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw ArgumentError("sign pattern entries must be 0 or 1");
  }
}

SignPattern SignPattern::parse(const std::string& text) {
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    if (c != '0' && c != '1') throw ArgumentError("sign pattern must be a string of 0/1, got '" + text + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (bits.empty()) throw ArgumentError("empty sign pattern");
  return SignPattern(std::move(bits));
}

bool SignPattern::all_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](auto b) { return b == 0; });
}

std::vector<int> SignPattern::signs() const {
  std::vector<int> s(bits_.size() + 1, 1);
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i + 1] = bits_[i] ? -1 : 1;
  return s;
}

std::string SignPattern::str() const {
  std::string s;
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

// ---- sign-pattern gaps ------------------------------------------------------

namespace {

void decode(std::uint64_t index, std::uint64_t base, std::size_t count, std::uint64_t* out) {
  for (std::size_t i = count; i-- > 0;) {
    out[i] = index % base + 1;
    index /= base;
  }
}

}  // namespace

GapResult min_gap(int k, const SignPattern& pattern, std::uint64_t N, std::uint64_t budget) {
  if (k < 2) throw ArgumentError("min_gap needs k >= 2");
  if (pattern.k() != k) {
    throw ArgumentError("sign pattern '" + pattern.str() + "' has length " + std::to_string(pattern.k() - 1) +
                        ", expected k-1 = " + std::to_string(k - 1));
  }
  if (N < 1) throw ArgumentError("N must be >= 1");
  const int m1 = (k + 1) / 2;
  const int m2 = k - m1;
  const std::uint64_t size1 = bounded_power(N, m1, budget);
  const std::uint64_t size2 = bounded_power(N, m2, budget);
  if (size1 > budget || size2 > budget) {
    throw ResourceError("min_gap needs N^" + std::to_string(m1) + " half-sums for N=" + std::to_string(N) +
                        ", above the budget of " + std::to_string(budget));
  }
  const std::vector<int> signs = pattern.signs();
  std::vector<double> root(N + 1);
  for (std::uint64_t n = 1; n <= N; ++n) root[n] = std::sqrt(static_cast<double>(n));

  auto half_sum = [&](std::uint64_t index, int offset, int count) {
    std::uint64_t digits[64];
    decode(index, N, count, digits);
    double v = 0;
    for (int i = 0; i < count; ++i) v += signs[offset + i] * root[digits[i]];
    return v;
  };

  // alpha = X - Y with X over the first m1 terms and Y = -(rest)
  std::vector<std::pair<double, std::uint64_t>> ys(size2);
  for (std::uint64_t i = 0; i < size2; ++i) ys[i] = {-half_sum(i, m1, m2), i};
  std::sort(ys.begin(), ys.end());

  std::vector<SqrtInteger> forms(N + 1);
  for (std::uint64_t n = 1; n <= N; ++n) forms[n] = SqrtInteger::of(n);

  auto tuple_of = [&](std::uint64_t ix, std::uint64_t iy) {
    std::vector<std::uint64_t> t(k);
    decode(ix, N, m1, t.data());
    decode(iy, N, m2, t.data() + m1);
    return t;
  };
  auto exact_zero = [&](std::uint64_t ix, std::uint64_t iy) {
    const auto t = tuple_of(ix, iy);
    std::vector<SqrtInteger> terms(k);
    for (int j = 0; j < k; ++j) terms[j] = forms[t[j]];
    return is_zero_sum(terms, signs);
  };

  // values are at most k sqrt(N); rounding in X - Y stays below this
  const double search_error = 8 * k * std::sqrt(static_cast<double>(N)) * std::numeric_limits<double>::epsilon();
  const double zero_suspect = 1e-9;

  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_x = 0, best_y = 0;
  for (std::uint64_t ix = 0; ix < size1; ++ix) {
    const double x = half_sum(ix, 0, m1);
    auto pos = std::lower_bound(ys.begin(), ys.end(), std::make_pair(x, std::uint64_t{0}));
    // walk right
    for (auto it = pos; it != ys.end(); ++it) {
      const double diff = std::fabs(x - it->first);
      if (diff >= best) break;
      if (diff < zero_suspect && exact_zero(ix, it->second)) continue;
      best = diff;
      best_x = ix;
      best_y = it->second;
      break;
    }
    // walk left
    for (auto it = pos; it != ys.begin();) {
      --it;
      const double diff = std::fabs(x - it->first);
      if (diff >= best) break;
      if (diff < zero_suspect && exact_zero(ix, it->second)) continue;
      best = diff;
      best_x = ix;
      best_y = it->second;
      break;
    }
  }

  GapResult result;
  if (!std::isfinite(best)) return result;
  result.found = true;
  result.witness = tuple_of(best_x, best_y);
  HighFloat alpha = 0;
  for (int j = 0; j < k; ++j) alpha += signs[j] * boost::multiprecision::sqrt(HighFloat(result.witness[j]));
  result.alpha_min = static_cast<long double>(boost::multiprecision::abs(alpha));
  result.lower = std::max(0.0L, static_cast<long double>(best) - search_error);
  return result;
}

std::uint64_t count_inequality_solutions(std::span<const std::uint64_t> N, const SignPattern& pattern,
                                         double delta, std::uint64_t budget) {
  const int k = static_cast<int>(N.size());
  if (k < 2) throw ArgumentError("need at least two ranges");
  if (pattern.k() != k) throw ArgumentError("sign pattern length must be k-1");
  if (!(delta > 0)) throw ArgumentError("delta must be positive");
  unsigned __int128 work = 1;
  for (auto n : N) {
    if (n < 1) throw ArgumentError("ranges N_j must be >= 1");
    work *= n;
    if (work > budget) {
      throw ResourceError("inequality count needs prod N_j work units, above the budget of " +
                          std::to_string(budget));
    }
  }
  const std::vector<int> signs = pattern.signs();
  std::vector<std::vector<double>> roots(k);
  for (int j = 0; j < k; ++j) {
    for (std::uint64_t n = N[j] + 1; n <= 2 * N[j]; ++n) {
      roots[j].push_back(signs[j] * std::sqrt(static_cast<double>(n)));
    }
  }
  std::uint64_t count = 0;
  // depth-first over positions with running partial sums
  std::vector<double> partial(k + 1, 0.0);
  std::vector<std::size_t> idx(k, 0);
  int depth = 0;
  while (depth >= 0) {
    if (depth == k - 1) {
      const double base = partial[depth];
      for (double v : roots[depth]) {
        if (std::fabs(base + v) < delta) ++count;
      }
      --depth;
      if (depth >= 0) ++idx[depth];
      continue;
    }
    if (idx[depth] == roots[depth].size()) {
      idx[depth] = 0;
      --depth;
      if (depth >= 0) ++idx[depth];
      continue;
    }
    partial[depth + 1] = partial[depth] + roots[depth][idx[depth]];
    ++depth;
    idx[depth] = 0;
  }
  return count;
}

double inequality_bound(std::span<const std::uint64_t> N, double delta) {
  double product = 1;
  double e = 0;
  for (auto n : N) {
    product *= static_cast<double>(n);
    e = std::max(e, static_cast<double>(n));
  }
  return delta * product / std::sqrt(e) + product / e;
}

}  // namespace vm
