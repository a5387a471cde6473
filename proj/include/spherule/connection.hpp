#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spherule/arrangement.hpp"
#include "spherule/cohomology.hpp"
#include "spherule/indices.hpp"
#include "spherule/scalar.hpp"

namespace spherule {

/// Differential basis key: (0, j) is dr_j^2, (j, k) with j < k is drho_jk^2.
using ParamKey = std::pair<int, int>;
ParamKey dr2(int j);
ParamKey drho2(int j, int k);
std::string format_param_key(const ParamKey& key);

/// Covector on the parameter space of invariants.
using ParamOneForm = Sparse<ParamKey, Scalar>;
std::string format_form(const ParamOneForm& form);

/// Rates of change of the invariants along a tangent vector.
using ParamTangent = std::map<ParamKey, Scalar>;
Scalar evaluate(const ParamOneForm& form, const ParamTangent& tangent);
double evaluate(const ParamOneForm& form, const std::map<ParamKey, double>& tangent);

/// Covector on the coefficient space: (j, nu) is d alpha_{j nu}, nu = 0 the constant term.
using AlphaKey = std::pair<int, int>;
using AlphaOneForm = Sparse<AlphaKey, Scalar>;
std::string format_alpha_form(const AlphaOneForm& form);

/// Chain rule dr_j^2 = 2 sum alpha d alpha - d alpha_{j0}, drho_jk^2 = 2 sum (alpha_j - alpha_k)(d alpha_j - d alpha_k).
AlphaOneForm pullback_to_alpha(const Arrangement& arr, const ParamOneForm& form);
/// Invariant rates induced by a coefficient-space tangent (row j-1, entry nu as in Arrangement).
ParamTangent invariant_rates(const Arrangement& arr, const std::vector<std::vector<Scalar>>& alpha_tangent);

/// Differential of a Cayley-Menger minor via cofactors, and its logarithmic differential.
ParamOneForm minor_differential(const Arrangement& arr, const Symbols& rows, const Symbols& cols);
ParamOneForm dlog_minor(const Arrangement& arr, const Symbols& rows, const Symbols& cols);

/// The invariant one-form attached to an admissible set.
ParamOneForm theta(const Arrangement& arr, const IndexSet& J);

/// theta_j^j and theta_{j+1}^j from their minor expressions (m = n+1, k in {j, j+1}).
ParamOneForm theta_chain_exact(const Arrangement& arr, int j, int k);

/// Floating covector with the same keys as ParamOneForm.
using FloatOneForm = std::map<ParamKey, double>;
/// theta_k^j, 1 <= j <= k <= n, from the triangular normal form and its derivative.
FloatOneForm theta_chain(const Invariants& inv, int n, int j, int k);

using FormMap = std::map<IndexSet, ParamOneForm, GradedLess>;
/// Coefficient of W_0(J) varpi in the covariant derivative of varpi, for every admissible J.
FormMap nabla_b_varpi(const Arrangement& arr, const LambdaPoint& lambda);

/// F-keyed combination with one-form coefficients: a column of the connection matrix.
using FormClass = SetMap<ParamOneForm>;
FormClass reduce_form_class(const Arrangement& arr, const FormClass& cls);
/// nabla_b_varpi in the NBC F basis.
FormClass nabla_b_varpi_class(const Arrangement& arr, const LambdaPoint& lambda);

/// Column of F_j from theta forms and division coefficients (NBC-reduced).
FormClass gm_singleton_column(const Arrangement& arr, const LambdaPoint& lambda, int j);
/// Column of an NBC set J.  `anchor` = 0 picks min J; otherwise it must lie in J.
FormClass gm_column(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& J, int anchor = 0);
ParamOneForm gm_theta(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& K, const IndexSet& J,
                      int anchor = 0);

struct ConnectionMatrix {
  std::vector<IndexSet> basis;
  std::map<IndexSet, FormClass, GradedLess> columns;
  ParamOneForm entry(const IndexSet& K, const IndexSet& J) const;
};
ConnectionMatrix gm_matrix(const Arrangement& arr, const LambdaPoint& lambda);

/// n = 1 combinations of theta forms.
ParamOneForm zeta_pair(const Arrangement& arr, int j, int k);
ParamOneForm zeta_pair_at(const Arrangement& arr, int j, int k);
ParamOneForm zeta_triple(const Arrangement& arr, int j, int k, int l);

struct WronskianReport {
  ParamOneForm trace;
  ParamOneForm closed;
  bool equal() const { return trace == closed; }
};
/// m = 2: trace of the connection matrix and d log of the Wronskian product.
WronskianReport wronskian_trace(const Arrangement& arr, const LambdaPoint& lambda);

struct ConjectureReport {
  ParamOneForm residual_first;
  ParamOneForm residual_second;
  bool lambda_independent() const { return residual_first == residual_second; }
};
/// m <= n+1: trace minus sum (lambda_J + (n-p-1)/2) d log B(0*J) at two exponent points.
ConjectureReport conjecture_check(const Arrangement& arr, const LambdaPoint& first, const LambdaPoint& second);

/// Coefficients expressing the unbounded cycle through the bounded ones, m = n+1.
std::map<IndexSet, double, GradedLess> infinity_cycle_coeffs(const std::vector<double>& lambda, int n);

/// Closed-form columns used as oracles for the recursion.
/// m = 2, any n: J in {1}, {2}, {1,2}.
FormClass closed_form_m2(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& J);
/// n = 1, any m >= 2: J = {j} or {j,k}; keys over the full admissible system.
FormClass closed_form_n1(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& J);

}  // namespace spherule
