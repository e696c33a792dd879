#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "teneig/error.hpp"
#include "teneig/tracker.hpp"

namespace teneig {

enum class Command { z, h, zodd, gen, baseline };

struct RunConfig {
  Command command = Command::z;
  std::string input;
  std::string output;  ///< empty: standard output
  std::optional<std::string> trace;
  std::uint64_t seed = 0;
  int k = 8;
  double tol = 1e-10;
  std::optional<double> alpha;
  int threads = 1;
  TrackerConfig tracker;

  // h: random positive generator instead of the uniform start.
  bool random_start = false;

  // gen
  std::string generator;  ///< laplacian, scaled-laplacian, pagerank, three-eig
  int m = 3;
  int n = 20;
  double w = 1.0;

  // baseline
  std::string method;  ///< nqz or sshopm
  long max_eval = 2000;

  /// Throws ErrorKind::input on inconsistent fields.
  void validate() const;
};

/// Process exit code for an error category; 0 is success.
int exit_code(ErrorKind kind) noexcept;

/// Executes one command. Results go to cfg.output (or `out`), diagnostics
/// to `err`. Returns the exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses `teneig <command> [flags]` and runs it.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace teneig
