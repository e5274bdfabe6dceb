#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace quadprop {

struct ResidualCheck {
  std::string name;
  double max_residual = 0;
  double tolerance = 0;

  bool passed() const { return max_residual <= tolerance; }
};

struct SuiteResult {
  std::string name;
  std::vector<ResidualCheck> checks;

  bool passed() const;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
  nlohmann::ordered_json to_json() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20260101;
  /// Corrupts one residual so the harness can prove it detects failures.
  bool inject_fault = false;
};

/// Runs the invariant suites {lie_core, symplectic, propagator, iwop, oracle}.
VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace quadprop
