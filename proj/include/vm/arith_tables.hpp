#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace vm {

using Int128 = __int128;

std::string to_string(Int128 v);
long double to_long_double(Int128 v);

// floor(sqrt(n)), exact for the whole 64-bit range.
std::uint64_t isqrt(std::uint64_t n);

struct SieveOptions {
  std::uint64_t segment_size = std::uint64_t{1} << 22;
};

// Sieved arithmetic functions on 1..limit. Immutable after construction;
// concurrent readers are fine (the cumulative tables are built once, under
// std::call_once).
class ArithTable {
 public:
  ArithTable(ArithTable&&) noexcept;
  ArithTable& operator=(ArithTable&&) noexcept;
  ~ArithTable();

  std::uint64_t limit() const { return limit_; }
  std::uint64_t tau_limit() const { return tau_limit_; }

  // Checked accessors; throw RangeError outside 1..limit (1..tau_limit).
  std::uint32_t d(std::uint64_t n) const;
  std::int32_t r(std::uint64_t n) const;
  std::int8_t mu(std::uint64_t n) const;
  std::uint64_t kernel(std::uint64_t n) const;
  Int128 tau(std::uint64_t n) const;

  // Raw tables indexed by n (element 0 is a zero placeholder).
  std::span<const std::uint32_t> d_values() const { return d_; }
  std::span<const std::int32_t> r_values() const { return r_; }
  std::span<const std::int8_t> mu_values() const { return mu_; }
  std::span<const std::uint64_t> kernel_values() const { return kernel_; }
  std::span<const Int128> tau_values() const { return tau_; }

  // Cumulative sums over n <= m, built on first use.
  std::int64_t divisor_sum(std::uint64_t m) const;
  std::int64_t two_squares_sum(std::uint64_t m) const;
  std::int64_t alternating_divisor_sum(std::uint64_t m) const;  // sum (-1)^n d(n)
  Int128 tau_sum(std::uint64_t m) const;

  // Binary cache ("VMAT1\0" + little-endian tables + additive checksum).
  void save(const std::filesystem::path& path) const;
  static ArithTable load(const std::filesystem::path& path);

  friend bool operator==(const ArithTable& a, const ArithTable& b);

 private:
  struct Prefix;
  ArithTable(std::uint64_t limit, std::uint64_t tau_limit);
  const Prefix& prefix() const;

  std::uint64_t limit_ = 0;
  std::uint64_t tau_limit_ = 0;
  std::vector<std::uint32_t> d_;
  std::vector<std::int32_t> r_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint64_t> kernel_;
  std::vector<Int128> tau_;
  std::unique_ptr<Prefix> prefix_;

  friend ArithTable build_tables(std::uint64_t, std::uint64_t, const SieveOptions&);
};

// Segmented factorisation sieve for d, r, mu and the squarefree kernel, plus
// tau(n) for n <= tau_limit. Throws ArgumentError for limit == 0 or
// tau_limit > limit and ResourceError when the tables cannot be allocated.
ArithTable build_tables(std::uint64_t limit, std::uint64_t tau_limit,
                        const SieveOptions& options = {});

// Load `path` if it holds a table covering (limit, tau_limit); otherwise build
// and write it. An empty path just builds.
ArithTable load_or_build(const std::filesystem::path& path, std::uint64_t limit,
                         std::uint64_t tau_limit, const SieveOptions& options = {});

// Ramanujan tau(1..n_max) from 1728 Delta = E4^3 - E6^2 (index 0 is zero).
std::vector<Int128> ramanujan_tau(std::uint64_t n_max);

// Closed-form summatory functions, O(sqrt x).
std::int64_t divisor_summatory(std::uint64_t x);   // sum_{n<=x} d(n)
std::int64_t two_squares_summatory(std::uint64_t x);  // sum_{n<=x} r(n)

// Values on [lo, hi) written to out[0 .. hi-lo). Used by the streaming
// moment integrator; independent of ArithTable.
void sieve_divisors(std::uint64_t lo, std::uint64_t hi, std::span<std::uint32_t> out);
void sieve_two_squares(std::uint64_t lo, std::uint64_t hi, std::span<std::int32_t> out);

}  // namespace vm
