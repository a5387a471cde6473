#pragma once

#include "spherule/arrangement.hpp"
#include "spherule/cohomology.hpp"
#include "spherule/indices.hpp"
#include "spherule/scalar.hpp"

namespace spherule {

/// Coefficients of W_0(J) varpi in (2 lambda_inf + n) varpi over all admissible J.
CohomClass standard_form(const Arrangement& arr, const LambdaPoint& lambda);

/// varpi itself as a W0-kind class: standard_form / (2 lambda_inf + n).
CohomClass varpi_in_w0(const Arrangement& arr, const LambdaPoint& lambda);

/// varpi in the NBC F basis.
CohomClass varpi_in_nbc(const Arrangement& arr, const LambdaPoint& lambda);

/// The chain sum eta_J(h) for an auxiliary index h outside J; identically 1.
Scalar eta(const Arrangement& arr, int h, const IndexSet& J);

/// Class of f_L times W_0(N) varpi, |N| = n+1, L a proper subset of N (nested chain formula).
CohomClass mult_fJ_w0(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& N, const IndexSet& L);
/// Same with N = {1..n+1}.
CohomClass mult_fJ_w0(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& L);
/// Same class by peeling one factor of f_L at a time.
CohomClass mult_fJ_w0_recursive(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& N,
                                const IndexSet& L);

/// Class of f_j F_J in the F basis before NBC reduction; may carry a varpi term.  `N` is the
/// auxiliary (n+1)-set containing J and j used when j is not in J and |J| <= n.
CohomClass mult_fj_raw(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J,
                       const IndexSet& N);
/// Default auxiliary set: J, j and the smallest remaining indices.
IndexSet default_auxiliary_set(const Arrangement& arr, int j, const IndexSet& J);
/// Class of f_j F_J, NBC-reduced.
CohomClass mult_fj(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J);

/// Class of (f_j - f_k) F_k as a W0-kind combination.
CohomClass mult_diff(const Arrangement& arr, const LambdaPoint& lambda, int j, int k);

/// How F_{kJ} with |kJ| = n+2 is removed from the division coefficients.
enum class GammaForm { Reduced, PartialFraction };

/// W_0^{(j)}(J) varpi = (lambda_j - 1) f_j^{-1} W_0(J) varpi at the shifted exponent, in F
/// coordinates, before NBC reduction.
CohomClass gamma_raw(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J,
                     GammaForm form = GammaForm::Reduced);
CohomClass gamma(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J,
                 GammaForm form = GammaForm::Reduced);

/// (lambda_j - 1) f_j^{-1} F_J through the inverse transition, before and after NBC reduction.
CohomClass gamma_tilde_raw(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J,
                           GammaForm form = GammaForm::Reduced);
CohomClass gamma_tilde(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J,
                       GammaForm form = GammaForm::Reduced);

/// The same class as gamma_tilde_raw for j in J built by the U_0, U_inf, U_k recurrence, and
/// (lambda_j - 1) F_{jJ} for j outside J.  Not NBC-reduced.
CohomClass negative_recurrence(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J);

}  // namespace spherule
