#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vm/arith_tables.hpp"
#include "vm/moments.hpp"
#include "vm/series.hpp"

namespace vm {

struct Check {
  std::string name;
  bool passed = false;
  bool gated = true;  // informational checks never fail a suite
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
};

struct VerifyContext {
  const ArithTable& table;
  SeriesEngine& engine;
  QuadratureSpec quadrature{};
  double y = 1e4;  // truncation for coefficient identities
};

// identities, parity, gap, count, truncation, meansquare, lemma23, tails, moments
const std::vector<std::string>& suite_names();

// Table sizes a suite needs (limit, tau limit).
std::pair<std::uint64_t, std::uint64_t> suite_table_size(const std::string& suite);

// Throws ArgumentError for an unknown suite.
SuiteReport run_suite(const std::string& suite, VerifyContext& ctx);

}  // namespace vm
