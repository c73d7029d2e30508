#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "vm/cli.hpp"
#include "vm/errors.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = vm::run(args, out, err);
  return {code, out.str(), err.str()};
}

json call_json(const std::vector<std::string>& args) {
  const auto o = call(args);
  REQUIRE(o.code == 0);
  return json::parse(o.out);
}

std::string without_wall_time(const std::string& s) {
  std::istringstream in(s);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.find("wall_time_s") == std::string::npos) kept += line + "\n";
  }
  return kept;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vmom_test_" + name);
}

}  // namespace

TEST_CASE("exponents subcommand keeps exact rationals") {
  const auto j = call_json({"exponents", "--k", "5", "--a0", "184/19"});
  CHECK(j["command"] == "exponents");
  CHECK(j["result"]["delta2"] == "1/64");
  CHECK(j["result"]["decimal"]["delta2"].get<double>() == 0.015625);
  CHECK(call_json({"exponents", "--k", "9", "--a0", "184/19"})["result"]["delta2"] == "13/75216");
}

TEST_CASE("coefficient formula and error terms") {
  const auto c = call_json({"--y", "300", "coeff", "--theorem", "1", "--k", "4"});
  CHECK(c["result"]["formula"] == "3·s42/(64π⁴)");
  CHECK(c["result"]["t_exponent"].get<double>() == 2.0);
  const auto e = call_json({"error-term", "--kind", "delta", "--x", "2"});
  CHECK(e["result"]["value"].get<double>() == doctest::Approx(1.30484297927).epsilon(1e-10));
  const auto a = call_json({"error-term", "--kind", "a", "--x", "2.5"});
  CHECK(a["result"]["value"].get<double>() == -23.0);
}

TEST_CASE("exit codes and error reports") {
  auto bad = call({"moment", "--kind", "delta", "--k", "2", "--T", "0"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"error-term", "--kind", "zeta", "--x", "2"}).code == 2);
  CHECK(call({"verify", "--suite", "nope"}).code == 2);
  const auto range = call({"--table-limit", "100", "error-term", "--kind", "delta", "--x", "1000"});
  CHECK(range.code == 1);
  const auto j = json::parse(range.out);
  CHECK(j["error"]["type"] == "range");
  CHECK(j["error"]["message"].get<std::string>().find("1000") != std::string::npos);
  const auto csv = call({"--format", "csv", "--table-limit", "100", "error-term", "--kind", "delta", "--x", "1000"});
  CHECK(csv.code == 1);
  CHECK(csv.err.find("needs a table limit of at least 1000") != std::string::npos);
}

TEST_CASE("configuration precedence") {
  const auto path = temp_path("config.txt");
  {
    std::ofstream f(path);
    f << "# test config\ny = 400\nquad_order = 12\n";
  }
  const auto from_file = call_json({"--config", path.string(), "coeff", "--theorem", "1", "--k", "3"});
  CHECK(from_file["config"]["y"].get<double>() == 400.0);
  CHECK(from_file["config"]["quad_order"].get<int>() == 12);
  const auto flag = call_json({"--config", path.string(), "--y", "500", "coeff", "--theorem", "1", "--k", "3"});
  CHECK(flag["config"]["y"].get<double>() == 500.0);
  CHECK(flag["result"]["y"].get<double>() == 500.0);
  {
    std::ofstream f(path);
    f << "colour = blue\n";
  }
  CHECK(call({"--config", path.string(), "exponents", "--k", "5", "--a0", "184/19"}).code == 2);
  std::filesystem::remove(path);
  CHECK(call({"--config", path.string(), "exponents", "--k", "5", "--a0", "184/19"}).code != 0);

  vm::RunConfig cfg;
  vm::apply_config(cfg, {{"chunk_size", "4096"}, {"threads", "2"}});
  CHECK(cfg.chunk_size == 4096);
  CHECK(cfg.threads == 2);
  CHECK_THROWS_AS(vm::apply_config(cfg, {{"chunk_size", "many"}}), vm::ArgumentError);
}

TEST_CASE("table cache from the environment") {
  const auto cache = temp_path("table.bin");
  std::filesystem::remove(cache);
  ::setenv("VM_TABLE_CACHE", cache.string().c_str(), 1);
  const auto first = call_json({"--table-limit", "5000", "error-term", "--kind", "delta", "--x", "4000.5"});
  CHECK(std::filesystem::exists(cache));
  const auto second = call_json({"--table-limit", "5000", "error-term", "--kind", "delta", "--x", "4000.5"});
  CHECK(first["result"] == second["result"]);
  ::unsetenv("VM_TABLE_CACHE");
  std::filesystem::remove(cache);
}

TEST_CASE("repeat runs agree byte for byte") {
  const std::vector<std::string> args = {"--table-limit", "20000", "moment", "--kind", "p", "--k", "3", "--T", "15000"};
  const auto a = call(args);
  const auto b = call(args);
  REQUIRE(a.code == 0);
  CHECK(without_wall_time(a.out) == without_wall_time(b.out));
  auto threaded = args;
  threaded.insert(threaded.begin(), {"--threads", "2", "--chunk-size", "1000"});
  const auto c = json::parse(call(threaded).out);
  CHECK(c["result"]["empirical"] == json::parse(a.out)["result"]["empirical"]);
}

TEST_CASE("csv carries the same payload") {
  const auto j = call_json({"series", "--kind", "d", "--k", "3", "--l", "1", "--y", "50"});
  const auto c = call({"--format", "csv", "series", "--kind", "d", "--k", "3", "--l", "1", "--y", "50"});
  REQUIRE(c.code == 0);
  std::istringstream in(c.out);
  std::string line;
  double value = 0;
  while (std::getline(in, line)) {
    if (line.rfind("result.value,", 0) == 0) value = std::stod(line.substr(13));
  }
  CHECK(value == doctest::Approx(j["result"]["value"].get<double>()).epsilon(1e-15));

  const auto rel = call({"--format", "csv", "relations", "enumerate", "--k", "3", "--l", "1", "--n-max", "20"});
  REQUIRE(rel.code == 0);
  CHECK(rel.out.find("n1,n2,n3,kernels,parity\n") != std::string::npos);
  CHECK(rel.out.find("result.count,11\n") != std::string::npos);
}

TEST_CASE("relation subcommands") {
  const auto e = call_json({"relations", "enumerate", "--k", "4", "--l", "2", "--n-max", "10"});
    const auto brute = call_json({"relations", "enumerate", "--k", "4", "--l", "2", "--n-max", "10", "--brute"});
  CHECK(brute["result"]["count"] == e["result"]["count"]);
  CHECK(brute["result"]["rows"] == e["result"]["rows"]);
  CHECK(e["result"]["rows"][0]["n1"] == 1);
  const auto g = call_json({"relations", "gap", "--k", "3", "--pattern", "11", "--N", "20"});
  CHECK(g["result"]["alpha_min"].get<double>() > 0);
}

TEST_CASE("binary entry point") {
  const std::string cmd = std::string(VMOM_BINARY) + " exponents --k 6 --a0 184/19 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string bad = std::string(VMOM_BINARY) + " exponents --k 2 --a0 184/19 2> /dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
