#include "vm/arith_tables.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>

#include "vm/errors.hpp"

namespace vm {

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v)
                                 : static_cast<unsigned __int128>(v);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

long double to_long_double(Int128 v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v)
                                 : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<std::uint64_t>(u >> 64);
  const auto lo = static_cast<std::uint64_t>(u);
  const long double x = std::ldexp(static_cast<long double>(hi), 64) + static_cast<long double>(lo);
  return negative ? -x : x;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

std::uint64_t ceil_sqrt(std::uint64_t n) {
  const std::uint64_t r = isqrt(n);
  return r * r == n ? r : r + 1;
}

std::vector<std::uint64_t> small_primes(std::uint64_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t m = p * p; m <= bound; m += p) composite[m] = true;
  }
  return primes;
}

std::uint64_t physical_memory_bytes() {
  const long pages = sysconf(_SC_PHYS_PAGES);
  const long page_size = sysconf(_SC_PAGE_SIZE);
  if (pages <= 0 || page_size <= 0) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(pages) * static_cast<std::uint64_t>(page_size);
}

std::uint64_t table_bytes(std::uint64_t limit, std::uint64_t tau_limit) {
  // d, r, mu, kernel per entry, tau per tau entry
  return (limit + 1) * (4 + 4 + 1 + 8) + (tau_limit + 1) * sizeof(Int128);
}

}  // namespace

struct ArithTable::Prefix {
  std::once_flag once;
  std::vector<std::int64_t> d_sum;
  std::vector<std::int64_t> r_sum;
  std::vector<std::int64_t> alt_sum;
  std::vector<Int128> tau_sum;
};

ArithTable::ArithTable(std::uint64_t limit, std::uint64_t tau_limit)
    : limit_(limit), tau_limit_(tau_limit), prefix_(std::make_unique<Prefix>()) {}
ArithTable::ArithTable(ArithTable&&) noexcept = default;
ArithTable& ArithTable::operator=(ArithTable&&) noexcept = default;
ArithTable::~ArithTable() = default;

namespace {
[[noreturn]] void out_of_table(const char* what, std::uint64_t n, std::uint64_t limit) {
  throw RangeError(std::string(what) + "(" + std::to_string(n) + ") needs a table limit of at least " +
                   std::to_string(n) + " (current limit " + std::to_string(limit) + ")");
}
}  // namespace

std::uint32_t ArithTable::d(std::uint64_t n) const {
  if (n == 0 || n > limit_) out_of_table("d", n, limit_);
  return d_[n];
}
std::int32_t ArithTable::r(std::uint64_t n) const {
  if (n == 0 || n > limit_) out_of_table("r", n, limit_);
  return r_[n];
}
std::int8_t ArithTable::mu(std::uint64_t n) const {
  if (n == 0 || n > limit_) out_of_table("mu", n, limit_);
  return mu_[n];
}
std::uint64_t ArithTable::kernel(std::uint64_t n) const {
  if (n == 0 || n > limit_) out_of_table("kernel", n, limit_);
  return kernel_[n];
}
Int128 ArithTable::tau(std::uint64_t n) const {
  if (n == 0 || n > tau_limit_) {
    throw RangeError("tau(" + std::to_string(n) + ") needs a tau limit of at least " +
                     std::to_string(n) + " (current tau limit " + std::to_string(tau_limit_) + ")");
  }
  return tau_[n];
}

const ArithTable::Prefix& ArithTable::prefix() const {
  std::call_once(prefix_->once, [this] {
    Prefix& p = *prefix_;
    p.d_sum.assign(limit_ + 1, 0);
    p.r_sum.assign(limit_ + 1, 0);
    p.alt_sum.assign(limit_ + 1, 0);
    for (std::uint64_t n = 1; n <= limit_; ++n) {
      p.d_sum[n] = p.d_sum[n - 1] + d_[n];
      p.r_sum[n] = p.r_sum[n - 1] + r_[n];
      p.alt_sum[n] = p.alt_sum[n - 1] + ((n & 1) ? -std::int64_t{d_[n]} : std::int64_t{d_[n]});
    }
    p.tau_sum.assign(tau_limit_ + 1, 0);
    for (std::uint64_t n = 1; n <= tau_limit_; ++n) p.tau_sum[n] = p.tau_sum[n - 1] + tau_[n];
  });
  return *prefix_;
}

std::int64_t ArithTable::divisor_sum(std::uint64_t m) const {
  if (m > limit_) out_of_table("divisor_sum", m, limit_);
  return prefix().d_sum[m];
}
std::int64_t ArithTable::two_squares_sum(std::uint64_t m) const {
  if (m > limit_) out_of_table("two_squares_sum", m, limit_);
  return prefix().r_sum[m];
}
std::int64_t ArithTable::alternating_divisor_sum(std::uint64_t m) const {
  if (m > limit_) out_of_table("alternating_divisor_sum", m, limit_);
  return prefix().alt_sum[m];
}
Int128 ArithTable::tau_sum(std::uint64_t m) const {
  if (m > tau_limit_) {
    throw RangeError("tau_sum(" + std::to_string(m) + ") needs a tau limit of at least " +
                     std::to_string(m) + " (current tau limit " + std::to_string(tau_limit_) + ")");
  }
  return prefix().tau_sum[m];
}

bool operator==(const ArithTable& a, const ArithTable& b) {
  return a.limit_ == b.limit_ && a.tau_limit_ == b.tau_limit_ && a.d_ == b.d_ && a.r_ == b.r_ &&
         a.mu_ == b.mu_ && a.kernel_ == b.kernel_ && a.tau_ == b.tau_;
}

ArithTable build_tables(std::uint64_t limit, std::uint64_t tau_limit, const SieveOptions& options) {
  if (limit == 0) throw ArgumentError("table limit must be positive");
  if (tau_limit > limit) {
    throw ArgumentError("tau_limit " + std::to_string(tau_limit) + " exceeds limit " +
                        std::to_string(limit));
  }
  if (options.segment_size == 0) throw ArgumentError("segment size must be positive");

  const std::uint64_t bytes = table_bytes(limit, tau_limit);
  if (limit > (std::uint64_t{1} << 40) || bytes > physical_memory_bytes()) {
    throw ResourceError("cannot allocate arithmetic tables for limit " + std::to_string(limit) +
                        " (about " + std::to_string(bytes) + " bytes)");
  }

  ArithTable t(limit, tau_limit);
  try {
    t.d_.assign(limit + 1, 0);
    t.r_.assign(limit + 1, 0);
    t.mu_.assign(limit + 1, 0);
    t.kernel_.assign(limit + 1, 0);
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate arithmetic tables for limit " + std::to_string(limit) +
                        " (about " + std::to_string(bytes) + " bytes)");
  }

  const std::vector<std::uint64_t> primes = small_primes(isqrt(limit));
  const std::uint64_t seg = options.segment_size;
  const std::uint64_t segments = (limit + seg - 1) / seg;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::uint64_t s = 0; s < segments; ++s) {
    const std::uint64_t lo = 1 + s * seg;
    const std::uint64_t hi = std::min(limit + 1, lo + seg);
    std::vector<std::uint64_t> rem(hi - lo);
    std::vector<std::uint32_t> dv(hi - lo, 1);
    std::vector<std::int32_t> rv(hi - lo, 1);  // r(n)/4
    std::vector<std::int8_t> mv(hi - lo, 1);
    std::vector<std::uint64_t> kv(hi - lo, 1);
    for (std::uint64_t n = lo; n < hi; ++n) rem[n - lo] = n;

    for (const std::uint64_t p : primes) {
      if (p * p >= hi) break;
      for (std::uint64_t m = (lo + p - 1) / p * p; m < hi; m += p) {
        const std::uint64_t i = m - lo;
        std::uint32_t e = 0;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          ++e;
        }
        dv[i] *= e + 1;
        mv[i] = e > 1 ? 0 : static_cast<std::int8_t>(-mv[i]);
        if (e & 1) kv[i] *= p;
        if (p % 4 == 1) {
          rv[i] *= static_cast<std::int32_t>(e + 1);
        } else if (p % 4 == 3 && (e & 1)) {
          rv[i] = 0;
        }
      }
    }
    for (std::uint64_t i = 0; i < hi - lo; ++i) {
      const std::uint64_t q = rem[i];
      if (q > 1) {  // one prime factor above sqrt(n)
        dv[i] *= 2;
        mv[i] = static_cast<std::int8_t>(-mv[i]);
        kv[i] *= q;
        if (q % 4 == 1) {
          rv[i] *= 2;
        } else if (q % 4 == 3) {
          rv[i] = 0;
        }
      }
      t.d_[lo + i] = dv[i];
      t.r_[lo + i] = 4 * rv[i];
      t.mu_[lo + i] = mv[i];
      t.kernel_[lo + i] = kv[i];
    }
  }

  if (tau_limit > 0) t.tau_ = ramanujan_tau(tau_limit);
  else t.tau_.assign(1, 0);
  return t;
}

std::vector<Int128> ramanujan_tau(std::uint64_t n_max) {
  using U = unsigned __int128;
  const std::uint64_t n = n_max;
  // sigma_3, sigma_5 by divisor sieve
  std::vector<U> e4(n + 1, 0), e6(n + 1, 0);
  for (std::uint64_t dv = 1; dv <= n; ++dv) {
    const U d3 = U(dv) * dv * dv;
    const U d5 = d3 * dv * dv;
    for (std::uint64_t m = dv; m <= n; m += dv) {
      e4[m] += d3;
      e6[m] += d5;
    }
  }
  e4[0] = 1;
  e6[0] = 1;
  for (std::uint64_t m = 1; m <= n; ++m) {
    e4[m] *= 240;
    e6[m] = U(0) - e6[m] * 504;
  }
  // Intermediate coefficients of E4^3 and E6^2 overflow 128 bits, but
  // 1728 tau(m) itself fits, so wrap-around arithmetic mod 2^128 is exact.
  auto square = [n](const std::vector<U>& a) {
    std::vector<U> out(n + 1, 0);
    for (std::uint64_t m = 0; m <= n; ++m) {
      U acc = 0;
      for (std::uint64_t i = 0; 2 * i < m; ++i) acc += a[i] * a[m - i];
      acc *= 2;
      if (m % 2 == 0) acc += a[m / 2] * a[m / 2];
      out[m] = acc;
    }
    return out;
  };
  const std::vector<U> e4sq = square(e4);
  const std::vector<U> e6sq = square(e6);
  std::vector<Int128> tau(n + 1, 0);
  for (std::uint64_t m = 1; m <= n; ++m) {
    U acc = 0;
    for (std::uint64_t i = 0; i <= m; ++i) acc += e4sq[i] * e4[m - i];
    const auto v = static_cast<Int128>(acc - e6sq[m]);
    if (v % 1728 != 0) throw std::logic_error("E4^3 - E6^2 not divisible by 1728");
    tau[m] = v / 1728;
  }
  return tau;
}

std::int64_t divisor_summatory(std::uint64_t x) {
  if (x == 0) return 0;
  const std::uint64_t s = isqrt(x);
  std::int64_t acc = 0;
  for (std::uint64_t i = 1; i <= s; ++i) acc += static_cast<std::int64_t>(x / i);
  return 2 * acc - static_cast<std::int64_t>(s * s);
}

std::int64_t two_squares_summatory(std::uint64_t x) {
  const std::uint64_t s = isqrt(x);
  std::int64_t acc = 2 * static_cast<std::int64_t>(s) + 1;  // a = 0
  for (std::uint64_t a = 1; a <= s; ++a) {
    acc += 2 * (2 * static_cast<std::int64_t>(isqrt(x - a * a)) + 1);
  }
  return acc - 1;  // drop the origin
}

void sieve_divisors(std::uint64_t lo, std::uint64_t hi, std::span<std::uint32_t> out) {
  if (lo == 0 || hi < lo || out.size() < hi - lo) throw ArgumentError("bad divisor segment");
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(hi - lo), 0u);
  for (std::uint64_t i = 1; i * i < hi; ++i) {
    const std::uint64_t j0 = std::max(i, (lo + i - 1) / i);
    std::uint64_t m = i * j0;
    if (j0 == i && m < hi) {
      out[m - lo] += 1;
      m += i;
    }
    for (; m < hi; m += i) out[m - lo] += 2;
  }
}

void sieve_two_squares(std::uint64_t lo, std::uint64_t hi, std::span<std::int32_t> out) {
  if (lo == 0 || hi < lo || out.size() < hi - lo) throw ArgumentError("bad two-squares segment");
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(hi - lo), 0);
  if (hi == lo) return;
  const std::uint64_t top = hi - 1;
  for (std::uint64_t a = 0; a * a <= top; ++a) {
    const std::uint64_t a2 = a * a;
    const std::uint64_t b_lo = lo > a2 ? ceil_sqrt(lo - a2) : 0;
    const std::uint64_t b_hi = isqrt(top - a2);
    for (std::uint64_t b = b_lo; b <= b_hi; ++b) {
      const std::uint64_t n = a2 + b * b;
      if (n == 0) continue;
      out[n - lo] += (a == 0 || b == 0) ? 2 : 4;
    }
  }
}

// ---- cache file -------------------------------------------------------------

namespace {

constexpr std::array<char, 6> kMagic = {'V', 'M', 'A', 'T', '1', '\0'};

class Writer {
 public:
  explicit Writer(std::ofstream& out) : out_(out) {}
  template <typename T>
  void put(T v) {
    unsigned char buf[sizeof(T)];
    auto u = static_cast<std::make_unsigned_t<T>>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(u >> (8 * i));
    out_.write(reinterpret_cast<const char*>(buf), sizeof(T));
    checksum_ += static_cast<std::uint64_t>(static_cast<std::int64_t>(v));
  }
  void put_u64(std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out_.write(reinterpret_cast<const char*>(buf), 8);
    checksum_ += v;
  }
  std::uint64_t checksum() const { return checksum_; }

 private:
  std::ofstream& out_;
  std::uint64_t checksum_ = 0;
};

class Reader {
 public:
  Reader(const std::vector<unsigned char>& buf, std::size_t pos) : buf_(buf), pos_(pos) {}
  std::uint64_t raw(std::size_t bytes) {
    if (pos_ + bytes > buf_.size()) throw ResourceError("table cache truncated");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bytes; ++i) v |= std::uint64_t{buf_[pos_ + i]} << (8 * i);
    pos_ += bytes;
    return v;
  }
  template <typename T>
  T get() {
    const std::uint64_t bits = raw(sizeof(T));
    const auto v = static_cast<T>(static_cast<std::make_unsigned_t<T>>(bits));
    checksum_ += static_cast<std::uint64_t>(static_cast<std::int64_t>(v));
    return v;
  }
  std::uint64_t get_u64() {
    const std::uint64_t v = raw(8);
    checksum_ += v;
    return v;
  }
  std::uint64_t checksum() const { return checksum_; }
  std::size_t pos() const { return pos_; }

 private:
  const std::vector<unsigned char>& buf_;
  std::size_t pos_;
  std::uint64_t checksum_ = 0;
};

}  // namespace

void ArithTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot open table cache for writing: " + path.string());
  out.write(kMagic.data(), kMagic.size());
  Writer w(out);
  w.put_u64(limit_);
  w.put_u64(tau_limit_);
  for (std::uint64_t n = 1; n <= limit_; ++n) w.put<std::uint32_t>(d_[n]);
  for (std::uint64_t n = 1; n <= limit_; ++n) w.put<std::int32_t>(r_[n]);
  for (std::uint64_t n = 1; n <= limit_; ++n) w.put<std::int8_t>(mu_[n]);
  for (std::uint64_t n = 1; n <= limit_; ++n) w.put_u64(kernel_[n]);
  for (std::uint64_t n = 1; n <= tau_limit_; ++n) {
    // tau needs up to ~80 bits: low word, then sign-carrying high word
    const auto u = static_cast<unsigned __int128>(tau_[n]);
    w.put_u64(static_cast<std::uint64_t>(u));
    w.put_u64(static_cast<std::uint64_t>(u >> 64));
  }
  const std::uint64_t sum = w.checksum();
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(sum >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), 8);
  if (!out) throw ResourceError("failed writing table cache: " + path.string());
}

ArithTable ArithTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open table cache: " + path.string());
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kMagic.size() + 24 ||
      std::memcmp(buf.data(), kMagic.data(), kMagic.size()) != 0) {
    throw ResourceError("not a VMAT1 table cache: " + path.string());
  }
  Reader rd(buf, kMagic.size());
  const std::uint64_t limit = rd.get_u64();
  const std::uint64_t tau_limit = rd.get_u64();
  const std::uint64_t expected =
      kMagic.size() + 16 + limit * (4 + 4 + 1 + 8) + tau_limit * 16 + 8;
  if (limit == 0 || tau_limit > limit || buf.size() != expected) {
    throw ResourceError("table cache has inconsistent size: " + path.string());
  }
  ArithTable t(limit, tau_limit);
  t.d_.assign(limit + 1, 0);
  t.r_.assign(limit + 1, 0);
  t.mu_.assign(limit + 1, 0);
  t.kernel_.assign(limit + 1, 0);
  t.tau_.assign(tau_limit + 1, 0);
  for (std::uint64_t n = 1; n <= limit; ++n) t.d_[n] = rd.get<std::uint32_t>();
  for (std::uint64_t n = 1; n <= limit; ++n) t.r_[n] = rd.get<std::int32_t>();
  for (std::uint64_t n = 1; n <= limit; ++n) t.mu_[n] = rd.get<std::int8_t>();
  for (std::uint64_t n = 1; n <= limit; ++n) t.kernel_[n] = rd.get_u64();
  for (std::uint64_t n = 1; n <= tau_limit; ++n) {
    const std::uint64_t lo = rd.get_u64();
    const std::uint64_t hi = rd.get_u64();
    t.tau_[n] = static_cast<Int128>((static_cast<unsigned __int128>(hi) << 64) | lo);
  }
  const std::uint64_t computed = rd.checksum();
  Reader tail(buf, rd.pos());
  if (tail.raw(8) != computed) throw ResourceError("table cache checksum mismatch: " + path.string());
  return t;
}

ArithTable load_or_build(const std::filesystem::path& path, std::uint64_t limit,
                         std::uint64_t tau_limit, const SieveOptions& options) {
  if (!path.empty() && std::filesystem::exists(path)) {
    ArithTable cached = ArithTable::load(path);
    if (cached.limit() >= limit && cached.tau_limit() >= tau_limit) return cached;
  }
  ArithTable t = build_tables(limit, tau_limit, options);
  if (!path.empty()) t.save(path);
  return t;
}

}  // namespace vm
