#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "teneig/cli.hpp"
#include "teneig/generators.hpp"
#include "teneig/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run teneig_run(std::vector<std::string> args) {
  args.insert(args.begin(), "teneig");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = teneig::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("teneig_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("z on the generated three-eigenpair fixture") {
  TempDir dir;
  REQUIRE(teneig_run({"gen", "three-eig", "-o", dir / "three.tns"}).code == 0);
  const Run r = teneig_run({"z", "--input", dir / "three.tns", "--seed", "7",
                            "--trace", dir / "trace.csv"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["pairs"].size() == 1);
  CHECK(j["pairs"][0]["residual"].get<double>() <= 1e-10);
  CHECK(fs::file_size(dir / "trace.csv") > 0);
}

TEST_CASE("zodd finds three pairs") {
  TempDir dir;
  REQUIRE(teneig_run({"gen", "three-eig", "-o", dir / "three.tns"}).code == 0);
  const Run r = teneig_run({"zodd", "--input", dir / "three.tns", "--k", "8", "--seed", "1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pairs"].size() == 3);
  CHECK(j["summary"]["odd"] == true);
}

TEST_CASE("h on a generated Laplacian") {
  TempDir dir;
  REQUIRE(teneig_run({"gen", "laplacian", "--m", "3", "--n", "20", "-o", dir / "a.tns"}).code ==
          0);
  const Run r = teneig_run({"h", "--input", dir / "a.tns"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["pairs"][0]["residual"].get<double>() <= 1e-10);
}

TEST_CASE("output is byte-identical across runs") {
  TempDir dir;
  REQUIRE(teneig_run({"gen", "pagerank", "--alpha", "0.99", "-o", dir / "p.tns"}).code == 0);
  const std::vector<std::string> args = {"zodd", "--input", dir / "p.tns", "--k", "3",
                                         "--seed", "4"};
  std::vector<std::string> to_file = args;
  to_file.insert(to_file.end(), {"--output", dir / "a.json"});
  REQUIRE(teneig_run(to_file).code == 0);
  to_file.back() = dir / "b.json";
  to_file.insert(to_file.end(), {"--threads", "2"});
  REQUIRE(teneig_run(to_file).code == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(teneig_run(args).out == slurp(dir / "a.json"));
}

TEST_CASE("baselines through the CLI") {
  TempDir dir;
  REQUIRE(teneig_run({"gen", "scaled-laplacian", "--w", "1", "--m", "4", "--n", "20", "-o",
                      dir / "s.tns"})
              .code == 0);
  const Run ss = teneig_run({"baseline", "sshopm", "--input", dir / "s.tns", "--alpha", "1"});
  REQUIRE(ss.code == 0);
  const json j = json::parse(ss.out);
  CHECK(j["converged"] == true);
  CHECK(j["evaluations"].get<long>() > 0);
  const Run capped =
      teneig_run({"baseline", "nqz", "--input", dir / "s.tns", "--max-eval", "2"});
  CHECK(capped.code == teneig::exit_code(teneig::ErrorKind::budget));
  CHECK(json::parse(capped.out)["converged"] == false);
}

TEST_CASE("error categories map to exit codes") {
  TempDir dir;
  CHECK(teneig_run({"z", "--input", dir / "missing.tns"}).code ==
        teneig::exit_code(teneig::ErrorKind::input));
  CHECK(teneig_run({"z"}).code == teneig::exit_code(teneig::ErrorKind::input));
  CHECK(teneig_run({"frobnicate"}).code == teneig::exit_code(teneig::ErrorKind::input));
  CHECK(teneig_run({"gen", "nonsense"}).code == teneig::exit_code(teneig::ErrorKind::input));
  REQUIRE(teneig_run({"gen", "laplacian", "--m", "3", "--n", "6", "-o", dir / "l.tns"}).code ==
          0);
  const Run reducible = teneig_run({"zodd", "--input", dir / "l.tns"});
  CHECK(reducible.code == teneig::exit_code(teneig::ErrorKind::precondition));
  CHECK(reducible.err.find("reducible") != std::string::npos);
  CHECK(teneig_run({"zodd", "--input", dir / "l.tns", "--k", "0"}).code ==
        teneig::exit_code(teneig::ErrorKind::input));
  CHECK(teneig_run({"gen", "pagerank", "--alpha", "1.5"}).code ==
        teneig::exit_code(teneig::ErrorKind::input));
  CHECK(teneig_run({"--help"}).code == 0);
}

TEST_CASE("exit codes are distinct") {
  using teneig::ErrorKind;
  std::vector<int> codes;
  for (ErrorKind k : {ErrorKind::input, ErrorKind::domain, ErrorKind::precondition,
                      ErrorKind::singular_curve, ErrorKind::stalled, ErrorKind::divergence,
                      ErrorKind::budget, ErrorKind::refinement_failed, ErrorKind::anomaly}) {
    const int c = teneig::exit_code(k);
    CHECK(c != 0);
    for (int prev : codes) CHECK(prev != c);
    codes.push_back(c);
  }
}
