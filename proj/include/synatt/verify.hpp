// Property suites behind the `verify` command. Each check reports the
// measured quantity next to its limit so a failing run says by how much.

#ifndef SYNATT_VERIFY_HPP_
#define SYNATT_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace synatt {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  /// "<", "<=", ">", ">=" or "==": how measured is compared with limit.
  std::string relation;
  double limit = 0.0;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
};

/// lemma1, gradients, consistency, critpoints, gap, lyapunov.
std::vector<std::string> verify_suite_names();

/// Runs one suite ("all" is handled by the caller). Throws
/// std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 20240607);

/// One line per check plus a summary line.
std::string format_suite(const SuiteResult& r);

// Sample sizes used by the suites.
inline constexpr int kIdentitySamples = 10000;
inline constexpr int kGradientSamples = 1000;
inline constexpr int kConsistencySamples = 10000;
inline constexpr int kCriticalSearchStarts = 1000;

}  // namespace synatt

#endif  // SYNATT_VERIFY_HPP_
