#ifndef THREEWAVE_VERIFY_HPP
#define THREEWAVE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace threewave {

enum class Suite { all, classical, quantum, coherent };
Suite suite_from_string(const std::string& s);

/// Test-mode corruption hooks (see the verify CLI contract).
struct FaultInjection {
  bool negate_coupling = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;   // measured
  double tolerance = 0.0;  // allowed
  std::string note;
};

/// Runs the named invariant/property checks of the selected modules with
/// deterministic seeding. Every check reports its measured residual.
std::vector<CheckResult> run_verification(Suite suite, std::uint64_t seed,
                                          const FaultInjection& fault = {});

}  // namespace threewave

#endif
