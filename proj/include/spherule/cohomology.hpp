#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spherule/arrangement.hpp"
#include "spherule/indices.hpp"
#include "spherule/scalar.hpp"

namespace spherule {

enum class Kind { F, W0 };

template <class C>
using SetMap = Sparse<IndexSet, C, GradedLess>;

using Coeffs = SetMap<Scalar>;

/// Linear combination of F_J (kind F) or W_0(J) varpi (kind W0).  The empty key is
/// the standard form varpi in either kind.
struct CohomClass {
  Kind kind = Kind::F;
  Coeffs coeffs;

  CohomClass() = default;
  CohomClass(Kind k, Coeffs c) : kind(k), coeffs(std::move(c)) {}

  static CohomClass basis(Kind k, const IndexSet& J, const Scalar& c = Scalar(1));

  Scalar operator[](const IndexSet& J) const { return coeffs.get(J); }
  bool is_zero() const { return coeffs.empty(); }

  CohomClass& operator+=(const CohomClass& o);
  CohomClass& operator-=(const CohomClass& o);
  CohomClass& operator*=(const Scalar& s);
  friend CohomClass operator+(CohomClass a, const CohomClass& b) { return a += b; }
  friend CohomClass operator-(CohomClass a, const CohomClass& b) { return a -= b; }
  friend CohomClass operator*(const Scalar& s, CohomClass a) { return a *= s; }
  friend bool operator==(const CohomClass& a, const CohomClass& b) { return a.kind == b.kind && a.coeffs == b.coeffs; }
  friend bool operator!=(const CohomClass& a, const CohomClass& b) { return !(a == b); }
};

std::string format_class(const CohomClass& c);

/// Exponents lambda_1..lambda_m; lambda_infinity is their sum.
class LambdaPoint {
 public:
  LambdaPoint() = default;
  explicit LambdaPoint(std::vector<Scalar> values);

  int m() const { return static_cast<int>(values_.size()); }
  const Scalar& operator[](int j) const { return values_.at(static_cast<std::size_t>(j - 1)); }
  const std::vector<Scalar>& values() const { return values_; }
  Scalar infinity() const;
  Scalar sum(const IndexSet& J) const;
  Scalar product(const IndexSet& J) const;
  LambdaPoint shifted(int j, int delta) const;
  std::vector<double> as_double() const;

  friend bool operator==(const LambdaPoint& a, const LambdaPoint& b) { return a.values_ == b.values_; }
  friend bool operator<(const LambdaPoint& a, const LambdaPoint& b) { return a.values_ < b.values_; }

 private:
  std::vector<Scalar> values_;
};

/// Raises ResonantDenominator with the given context when d = 0.
Scalar resonant_div(const Scalar& num, const Scalar& den, const std::string& context);

/// W_0(J) varpi in the F basis.  Zero when |J| >= n+2.
CohomClass w0_in_F(const Arrangement& arr, const IndexSet& J);

/// Converts a W0-kind class to the F basis (varpi passes through).
CohomClass to_F(const Arrangement& arr, const CohomClass& cls);
/// Converts an F-kind class to W0 coordinates through the inverse transition.
CohomClass to_W0(const Arrangement& arr, const CohomClass& cls);

/// Transition coefficient by the one-step recurrence.
Scalar beta(const Arrangement& arr, const IndexSet& K, const IndexSet& J);
/// Same coefficient as a sum over chains K = L_0 < L_1 < ... < L_q = J.
Scalar beta_closed(const Arrangement& arr, const IndexSet& K, const IndexSet& J);
/// beta / B(0 star J).
Scalar beta_tilde(const Arrangement& arr, const IndexSet& K, const IndexSet& J);

struct BetaEntry {
  IndexSet K;
  IndexSet J;
  Scalar value;
};
/// All nonzero beta_{K,J}, K a nonempty subset of an admissible J.
std::vector<BetaEntry> beta_matrix(const Arrangement& arr);

/// Coefficients c_nu (nu in J, |J| = n+2) with sum_nu c_nu W_0(J - nu) = 0 and
/// c_{max J} = 1.
Coeffs w0_relation(const Arrangement& arr, const IndexSet& J);

/// F_J for |J| = n+2 as a combination of F_{J - nu}.
Coeffs partial_fraction(const Arrangement& arr, const IndexSet& J);

/// Expansion of F_K (admissible or |K| = n+2) in the NBC F basis.
Coeffs nbc_expansion_F(const Arrangement& arr, const IndexSet& K);
/// Expansion of W_0(K) in NBC W_0 classes.
Coeffs nbc_expansion_W0(const Arrangement& arr, const IndexSet& K);

/// Rewrites a class onto the NBC basis.  A varpi component is expanded through the
/// standard-form identity, which needs `lambda`; without it a varpi term is an error.
CohomClass reduce_to_nbc(const Arrangement& arr, const CohomClass& cls, const LambdaPoint* lambda = nullptr);

/// Reduction of F-keyed combinations with arbitrary coefficient type (varpi excluded).
template <class C>
SetMap<C> reduce_f_keys(const Arrangement& arr, const SetMap<C>& in) {
  SetMap<C> out;
  for (const auto& [K, c] : in) {
    if (K.empty()) {
      throw Error(ErrorKind::InvalidArgument, "varpi component cannot be reduced without exponents");
    }
    if (is_nbc(K, arr.m(), arr.n())) {
      out.add(K, c);
      continue;
    }
    for (const auto& [L, r] : nbc_expansion_F(arr, K)) {
      C t = c;
      t *= r;
      out.add(L, t);
    }
  }
  return out;
}

std::pair<int, int> weight_range(const CohomClass& cls);

/// Value of the rational function represented by a class at an exact point.
Scalar evaluate(const Arrangement& arr, const CohomClass& cls, const std::vector<Scalar>& x);

/// n = 1: coefficients v of the skew relation among F_j, F_k, F_l, F_jk, F_jl, F_kl.
CohomClass skew_relation(const Arrangement& arr, int j, int k, int l);

}  // namespace spherule
