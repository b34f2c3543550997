// Acceptance suite: runs every numerical certification the library claims,
// printing one pass/fail line per criterion. Exit status 0 iff all pass.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "so3kit/verify.hpp"

namespace {

using so3kit::CheckResult;

struct Criterion {
  std::string description;
  std::vector<std::string> check_names;
};

bool is_min_check(const std::string& name) { return name.find("_min") != std::string::npos; }

}  // namespace

int main() {
  so3kit::VerifyOptions options;
  options.seed = 0;

  std::map<std::string, CheckResult> results;
  for (const char* suite : {"orthogonality", "equivariance", "cg", "steerable", "finite"}) {
    for (const CheckResult& c : so3kit::verify_suite(suite, options).checks) {
      results[c.name] = c;
    }
  }

  const std::vector<Criterion> criteria = {
      {"1. SHT round trip, B in {4,8,16,32}, max error <= 1e-10, <= 60 s",
       {"sht_round_trip_B4", "sht_round_trip_B8", "sht_round_trip_B16", "sht_round_trip_B32",
        "sht_round_trip_runtime_seconds"}},
      {"2. Peter-Weyl orthogonality of matrix elements, l <= 6 at B = 8, <= 1e-8",
       {"peter_weyl_L6_B8"}},
      {"3. Wigner homomorphism and unitarity, l <= 16, 200 rotations, <= 1e-9",
       {"wigner_unitarity_l16", "wigner_homomorphism_l16"}},
      {"4. Spectral ops match brute-force quadrature at B = 4, <= 1e-7",
       {"oracle_spherical_convolution_B4", "oracle_spherical_correlation_B4",
        "oracle_so3_convolution_B4", "oracle_so3_correlation_B4"}},
      {"5. Equivariance of all four operations, 20 grid rotations at B = 8, <= 1e-9",
       {"equivariance_spherical_convolution_B8", "equivariance_spherical_correlation_B8",
        "equivariance_so3_convolution_B8", "equivariance_so3_correlation_B8"}},
      {"6. Rotation recovery at B = 16, >= 99/100 trials at grid resolution",
       {"rotation_recovery_B16_failures_of_100"}},
      {"7. Clebsch-Gordan orthogonality (1e-12) and block diagonalization (1e-10), l <= 4",
       {"cg_orthogonality_lmax4", "cg_block_diagonalization_lmax4"}},
      {"8. Steerable kernel constraint <= 1e-10 with negative control >= 0.1",
       {"steerable_constraint_lmax3", "steerable_negative_control_min"}},
      {"9. Finite groups: exhaustive equivariance and dim(maps) = dim(kernels)",
       {"finite_equivariance_cyclic6", "finite_equivariance_dihedral4",
        "finite_equivariance_symmetric3", "finite_equivariance_symmetric4",
        "case_I_coset_constancy_dihedral4", "case_III_double_coset_reduction_symmetric3",
        "theorem_dimension_match_7_configs"}},
      {"10. Mackey/twist consistency: exact two-path agreement on dihedral(4)",
       {"mackey_two_path_dihedral4_sign", "mackey_function_property_dihedral4",
        "mackey_equivariance_dihedral4_sign", "twist_cocycle_dihedral4"}},
  };

  bool all_pass = true;
  for (const Criterion& crit : criteria) {
    bool pass = true;
    double worst_margin = 0.0;
    std::string detail;
    for (const std::string& name : crit.check_names) {
      const auto it = results.find(name);
      if (it == results.end()) {
        pass = false;
        detail += " missing:" + name;
        continue;
      }
      const CheckResult& c = it->second;
      pass = pass && c.pass;
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s=%.3g%s", c.name.c_str(), c.residual,
                    c.pass ? "" : "(FAIL)");
      detail += buf;
      if (!is_min_check(c.name)) worst_margin = std::max(worst_margin, c.residual);
    }
    all_pass = all_pass && pass;
    std::printf("[%s] %s\n", pass ? "PASS" : "FAIL", crit.description.c_str());
    std::printf("       %s\n", detail.c_str());
  }

  std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria passed"
                               : "ACCEPTANCE: at least one criterion FAILED");
  return all_pass ? 0 : 1;
}
