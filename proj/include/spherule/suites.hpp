#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spherule/random.hpp"

namespace spherule {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::string detail;
  double seconds = 0;
};

/// Parameters for the individual checks; defaults are the acceptance sizes.
struct CheckOptions {
  std::uint64_t seed = 7;
  int arrangements = 50;
  int lambda_points = 5;
  int closed_form_points = 20;
  double quadrature_tol = 1e-6;
  double gauss_manin_tol = 1e-5;
};

/// Bareiss against cofactor expansion, antisymmetry, the A-minor identities, the deletion expansion
/// of B(0 mu_1..mu_k), and the Jacobi identity for |J| = n+2.
CheckResult check_determinant_layer(const CheckOptions& opt);
/// eta_j = eta_J = 1 for |J| <= n+1, n <= 4.
CheckResult check_eta(const CheckOptions& opt);
/// beta recurrence against the chain sum, and the F <-> W0 transition round trip.
CheckResult check_beta_roundtrip(const CheckOptions& opt);
/// Closed-form gamma-tilde against the negative recurrence, and three-point lambda-linearity.
CheckResult check_negative_dual_path(const CheckOptions& opt);
/// Positive contiguity consistency: closed chain sums against the recursion, independence
/// from the auxiliary set, and mult_diff against mult_fj.
CheckResult check_positive_contiguity(const CheckOptions& opt);
/// Standard-form expansion, positive and negative contiguity, f_j - f_k, and the skew relation by quadrature.
CheckResult check_quadrature_identities(const CheckOptions& opt);
/// Connection matrix and the covariant derivative of varpi against finite differences.
CheckResult check_gauss_manin(const CheckOptions& opt);
/// Closed-form columns for m = 2 and n = 1, zeta_{jkl} = 0 and the Wronskian trace.
CheckResult check_closed_forms(const CheckOptions& opt);
/// NBC cardinality, chamber count, idempotent reduction, adjacency of the gamma support.
CheckResult check_structure(const CheckOptions& opt);
/// Anchor independence of the recursion and the theta-chain exact/float agreement.
CheckResult check_connection_consistency(const CheckOptions& opt);

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass() const;
};

/// `exact`, `quadrature`, `gauss-manin` or `all`.
SuiteReport run_suite(const std::string& name, const CheckOptions& opt);
std::string format_check(const CheckResult& r);
std::string format_report(const SuiteReport& report);

}  // namespace spherule
