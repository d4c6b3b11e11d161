#pragma once

// Seeded property suites, one per module. Used by `bohrwig verify`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bohrwig/frequency.hpp"
#include "bohrwig/holonomy.hpp"

namespace bohrwig {

struct SuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::vector<std::string> failures;
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  Tolerances tol;
  MubarScheme scheme;
  /// APS constant; when unset the APS checks sweep K in {0.5, 1, 2}.
  std::optional<double> K;
  double quadrature_agreement = 1e-10;
};

SuiteReport verify_freqcore(const VerifyConfig& cfg);
SuiteReport verify_wigner(const VerifyConfig& cfg);
SuiteReport verify_gaussdual(const VerifyConfig& cfg);
SuiteReport verify_weylquant(const VerifyConfig& cfg);
SuiteReport verify_holonomy(const VerifyConfig& cfg);

std::vector<SuiteReport> verify_all(const VerifyConfig& cfg);

nlohmann::json to_json(const SuiteReport& report);

}  // namespace bohrwig
