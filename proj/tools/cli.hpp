#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bohrwig/frequency.hpp"
#include "bohrwig/holonomy.hpp"

namespace bohrwig::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

struct RunConfig {
  Tolerances tol;
  double quadrature_agreement = 1e-10;
  MubarScheme scheme;
  std::optional<double> K;
  std::string output_dir = ".";
  std::uint64_t seed = 1;
  double beta_lo = -20.0;
  double beta_hi = 20.0;
  std::size_t samples = 2000;
};

/// Reads a JSON config file over the defaults. Unknown keys are errors.
RunConfig load_config(const std::string& path, RunConfig base = {});

using Getenv = std::function<std::optional<std::string>(const char*)>;
std::optional<std::string> system_getenv(const char* name);

/// Runs one command line (without the program name). Precedence for every
/// setting: flags > environment (BOHRWIG_OUTPUT_DIR) > config file > defaults.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Getenv& getenv = system_getenv);

}  // namespace bohrwig::cli
