#ifndef ASYM_VERIFY_HPP
#define ASYM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace asym {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  ///< counterexample or summary
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Suite names accepted by run_suite (besides "all").
const std::vector<std::string>& suite_names();

/// Runs one invariant suite. "all" runs every suite in order.
/// Throws std::invalid_argument on an unknown suite name.
std::vector<SuiteReport> run_suite(std::string_view suite, std::uint64_t seed);

/// Five-point central difference of fn at x with step h.
template <typename Fn>
double central_difference(Fn&& fn, double x, double h) {
  return (fn(x - 2 * h) - 8 * fn(x - h) + 8 * fn(x + h) - fn(x + 2 * h)) / (12 * h);
}

}  // namespace asym

#endif  // ASYM_VERIFY_HPP
