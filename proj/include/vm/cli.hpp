#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace vm {

// Resolution order: built-in defaults, VM_TABLE_CACHE, the --config file,
// then explicit flags. A zero table or tau limit means "size to the request".
struct RunConfig {
  std::uint64_t table_limit = 0;
  std::uint64_t tau_limit = 0;
  std::string cache_path;
  double y = 1e5;
  std::uint64_t chunk_size = std::uint64_t{1} << 16;
  int quadrature_order = 8;
  std::string format = "json";
  int threads = 0;
};

// One `key = value` per line, `#` starts a comment. Unknown keys are an
// ArgumentError.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);
void apply_config(RunConfig& config, const std::map<std::string, std::string>& entries);

std::string version_string();

// Exit codes: 0 success, 1 range/resource error (or a failing verify suite),
// 2 argument error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace vm
