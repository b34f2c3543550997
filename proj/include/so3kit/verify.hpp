#ifndef SO3KIT_VERIFY_HPP
#define SO3KIT_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace so3kit {

/// One numerically certified claim. For most checks `pass` means
/// residual <= tolerance; negative controls (named *_min) instead require
/// residual >= tolerance.
struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double residual = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> environment;
  std::vector<CheckResult> checks;

  bool overall() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
};

/// Suites: orthogonality | equivariance | cg | steerable | finite | all.
/// Throws DomainError for unknown names.
VerificationReport verify_suite(const std::string& suite, const VerifyOptions& options);

const std::vector<std::string>& verify_suite_names();

/// Deterministic line-oriented rendering:
///   VERIFY 1 <suite>
///   env <key>=<value>
///   check <name> tol=<t> residual=<r> <pass|fail>
///   overall <pass|fail>
void print_report(std::ostream& out, const VerificationReport& report);

// individual suites (verify_suite dispatches to these)
std::vector<CheckResult> verify_orthogonality(const VerifyOptions& options);
std::vector<CheckResult> verify_equivariance(const VerifyOptions& options);
std::vector<CheckResult> verify_cg(const VerifyOptions& options);
std::vector<CheckResult> verify_steerable(const VerifyOptions& options);
std::vector<CheckResult> verify_finite(const VerifyOptions& options);

}  // namespace so3kit

#endif
