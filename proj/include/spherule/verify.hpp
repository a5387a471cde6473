#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spherule/arrangement.hpp"
#include "spherule/cohomology.hpp"
#include "spherule/connection.hpp"
#include "spherule/indices.hpp"

namespace spherule {

/// Bounded interval between consecutive roots of the f_j (n = 1).
struct Chamber {
  long double a = 0;
  long double b = 0;
  int sphere_a = 0;  // sphere whose root is a
  int sphere_b = 0;  // sphere whose root is b
};

/// Sorted roots of every f_j and the 2m-1 bounded intervals between them.
std::vector<Chamber> chambers_1d(const Arrangement& arr);

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double tolerance = 1e-10;
  std::size_t max_refinements = 15;
};

/// Finite sum of c * prod_j f_j^{-order_j}; order 1 divides by f_j, order -1 multiplies by it.
struct Integrand {
  struct Term {
    double coeff = 0;
    std::vector<int> order;
  };
  int m = 0;
  std::vector<Term> terms;

  Integrand() = default;
  explicit Integrand(int spheres) : m(spheres) {}
  Integrand(const Arrangement& arr, const CohomClass& phi);

  /// Multiplies every term by f_j^power.
  Integrand& multiply(int j, int power);
  Integrand& operator+=(const Integrand& other);
  Integrand& operator*=(double s);
  int max_order(int j) const;
};

/// Throws ConvergenceViolation unless every endpoint exponent of Phi * phi exceeds -1.
void check_convergence(const std::vector<double>& lambda, const Integrand& phi, const Chamber& chamber);

/// Integral over the chamber of prod |f_j|^lambda_j times phi dx, by tanh-sinh quadrature.
QuadratureResult integrate(const Arrangement& arr, const std::vector<double>& lambda, const Integrand& phi,
                           const Chamber& chamber, const QuadratureOptions& options = {});
QuadratureResult integrate(const Arrangement& arr, const std::vector<double>& lambda, const CohomClass& phi,
                           const Chamber& chamber, const QuadratureOptions& options = {});
QuadratureResult integrate(const Arrangement& arr, const std::vector<double>& lambda, const IndexSet& J,
                           const Chamber& chamber, const QuadratureOptions& options = {});

struct ChamberResidual {
  Chamber chamber;
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
  bool pass = false;
};

struct IdentityReport {
  double tolerance = 0;
  std::vector<ChamberResidual> chambers;
  bool pass() const;
  double max_residual() const;
};

/// Integrates both sides on every chamber; residual is relative to max(1, |lhs|).
IdentityReport verify_identity(const Arrangement& arr, const std::vector<double>& lambda, const Integrand& lhs,
                               const Integrand& rhs, const std::vector<Chamber>& chambers, double tol = 1e-6);
IdentityReport verify_identity(const Arrangement& arr, const std::vector<double>& lambda, const CohomClass& lhs,
                               const CohomClass& rhs, const std::vector<Chamber>& chambers, double tol = 1e-6);

struct GaussManinEntry {
  IndexSet column;
  std::size_t chamber = 0;
  double derivative = 0;
  double predicted = 0;
  double richardson_residual = 0;
  double residual = 0;
  bool pass = false;
};

struct GaussManinReport {
  double tolerance = 0;
  std::vector<GaussManinEntry> entries;
  bool pass() const;
  double max_residual() const;
};

/// Compares Richardson-extrapolated centered differences of the chamber integrals of every NBC F_J
/// along an alpha-space tangent with the connection matrix applied to the induced invariant rates.
GaussManinReport verify_gauss_manin(const Arrangement& arr, const LambdaPoint& lambda,
                                    const std::vector<std::vector<Scalar>>& alpha_tangent,
                                    const Scalar& h = Scalar(1, 1000), double tol = 1e-5);

/// The same comparison for the standard form: derivative of the integral of varpi against
/// the NBC expansion of its covariant derivative.
GaussManinReport verify_nabla_varpi(const Arrangement& arr, const LambdaPoint& lambda,
                                    const std::vector<std::vector<Scalar>>& alpha_tangent,
                                    const Scalar& h = Scalar(1, 1000), double tol = 1e-5);

/// n = 2: region where each f_j has the prescribed sign (-1 inside, +1 outside); at least one -1.
struct SignRegion {
  std::vector<int> signs;
};

/// Plain Monte Carlo over the bounding box of the region with rejection sampling.
QuadratureResult monte_carlo_2d(const Arrangement& arr, const std::vector<double>& lambda, const CohomClass& phi,
                                const SignRegion& region, std::size_t samples, std::uint64_t seed);

/// Non-empty bounded sign regions found by sampling a grid over the union of the disks.
std::vector<SignRegion> sign_regions_2d(const Arrangement& arr);

/// Number of worker threads: SPHERULE_THREADS if set, else hardware concurrency.
unsigned worker_threads();

}  // namespace spherule
