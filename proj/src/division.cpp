#include "spherule/contiguity.hpp"

namespace spherule {

namespace {

void add_f(CohomClass& r, const IndexSet& K, const Scalar& c, const Arrangement& arr, GammaForm form) {
  if (is_zero(c)) return;
  if (static_cast<int>(K.size()) == arr.n() + 2) {
    if (form == GammaForm::Reduced) throw Error(ErrorKind::InvalidArgument, "unexpected F of size n+2");
    r.coeffs.add(partial_fraction(arr, K), c);
    return;
  }
  r.coeffs.add(K, c);
}

Scalar ratio(const Arrangement& arr, const Symbols& rows, const Symbols& cols, const Symbols& den) {
  return checked_div(arr.minor(rows, cols), arr.minor(den), "division coefficient denominator");
}

/// Z_J for j in J, 2 <= |J|.
void add_z(CohomClass& r, const Arrangement& arr, int j, const IndexSet& J, const Scalar& w) {
  const IndexSet D = remove(J, j);
  r.coeffs.add(D, w * arr.b0(D));
  for (int nu : D) {
    IndexSet DD = remove(D, nu);
    r.coeffs.add(remove(J, nu), -w * arr.minor(sym({kZero, j}, DD), sym({kZero, nu}, DD)));
  }
  r.coeffs.add(J, w * arr.minor(sym({kZero, kStar}, D), sym({kZero, j}, D)));
}

/// Z_{J,k} for j in J, k outside J.
void add_zk(CohomClass& r, const Arrangement& arr, int j, int k, const IndexSet& J, const Scalar& w, GammaForm form) {
  const int n = arr.n();
  const IndexSet D = remove(J, j);
  const IndexSet kD = insert(D, k);
  if (static_cast<int>(J.size()) == n + 1 && form == GammaForm::Reduced) {
    const IndexSet kJ = insert(J, k);
    const Scalar pre = w * ratio(arr, sym({kZero, kStar}, J), sym({kZero, k}, J), sym({kZero, kStar}, kJ));
    r.coeffs.add(kD, pre * arr.b0s(kD));
    r.coeffs.add(J, -pre * arr.minor(sym({kZero, kStar, k}, D), sym({kZero, kStar, j}, D)));
    for (int nu : D) {
      IndexSet DD = remove(D, nu);
      r.coeffs.add(insert(remove(J, nu), k), -pre * arr.minor(sym({kZero, kStar, k, j}, DD), sym({kZero, kStar, k, nu}, DD)));
    }
    return;
  }
  add_f(r, kD, w * arr.minor(sym({kZero, kStar}, D), sym({kZero, k}, D)), arr, form);
  for (int nu : D) {
    IndexSet DD = remove(D, nu);
    add_f(r, insert(remove(J, nu), k), -w * arr.minor(sym({kZero, kStar, j}, DD), sym({kZero, k, nu}, DD)), arr, form);
  }
  add_f(r, insert(J, k), -w * arr.minor(sym({kZero, kStar, k}, D), sym({kZero, kStar, j}, D)), arr, form);
}

void check_args(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J) {
  if (lambda.m() != arr.m()) throw Error(ErrorKind::InvalidArgument, "exponent vector length differs from m");
  if (j < 1 || j > arr.m()) throw Error(ErrorKind::InvalidArgument, "sphere index out of range");
  if (!is_admissible(J, arr.m(), arr.n())) throw Error(ErrorKind::InvalidArgument, "set is not admissible: " + format_set(J));
}

/// The p = 1, j in J expansion (already multiplied through).
void add_singleton(CohomClass& r, const Arrangement& arr, const LambdaPoint& lambda, int j, const Scalar& w) {
  const int n = arr.n();
  r.coeffs.add({j}, -w * (lambda.infinity() + n - 2 + lambda[j]));
  for (int k = 1; k <= arr.m(); ++k) {
    if (k == j) continue;
    r.coeffs.add({k}, -w * lambda[k]);
    r.coeffs.add(make_set({j, k}), -w * lambda[k] * arr.minor({kZero, kStar, k}, {kZero, kStar, j}));
  }
}

}  // namespace

CohomClass gamma_raw(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J, GammaForm form) {
  check_args(arr, lambda, j, J);
  const int n = arr.n();
  const int p = static_cast<int>(J.size());
  CohomClass r;
  r.kind = Kind::F;
  const Scalar lj = lambda[j] - 1;
  if (!contains(J, j)) {
    if (p == n + 1 && form == GammaForm::Reduced) {
      const IndexSet jJ = insert(J, j);
      const Scalar pre = lj * ratio(arr, sym({kZero, kStar}, J), sym({kZero, j}, J), sym({kZero, kStar}, jJ));
      r.coeffs.add(J, pre * arr.b0s(J));
      for (int nu : J) {
        IndexSet D = remove(J, nu);
        r.coeffs.add(insert(D, j), -pre * arr.minor(sym({kZero, kStar, j}, D), sym({kZero, kStar, nu}, D)));
      }
      return r;
    }
    for (const auto& [K, c] : w0_in_F(arr, J).coeffs) add_f(r, insert(K, j), lj * c, arr, form);
    return r;
  }
  if (p == 1) {
    add_singleton(r, arr, lambda, j, Scalar(1));
    return r;
  }
  add_z(r, arr, j, J, lambda.infinity() + n - p);
  for (int k : complement(J, arr.m())) {
    if (is_zero(lambda[k])) continue;
    add_zk(r, arr, j, k, J, lambda[k], form);
  }
  return r;
}

CohomClass gamma(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J, GammaForm form) {
  return reduce_to_nbc(arr, gamma_raw(arr, lambda, j, J, form));
}

CohomClass gamma_tilde_raw(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J,
                           GammaForm form) {
  check_args(arr, lambda, j, J);
  CohomClass r;
  r.kind = Kind::F;
  for (const auto& L : subsets(J)) {
    if (L.empty()) continue;
    Scalar b = beta_tilde(arr, L, J);
    if (is_zero(b)) continue;
    r += b * gamma_raw(arr, lambda, j, L, form);
  }
  r.kind = Kind::F;
  return r;
}

CohomClass gamma_tilde(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J,
                       GammaForm form) {
  return reduce_to_nbc(arr, gamma_tilde_raw(arr, lambda, j, J, form));
}

CohomClass negative_recurrence(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J) {
  check_args(arr, lambda, j, J);
  const int n = arr.n();
  const int p = static_cast<int>(J.size());
  CohomClass r;
  r.kind = Kind::F;
  if (!contains(J, j)) {
    add_f(r, insert(J, j), lambda[j] - 1, arr, GammaForm::PartialFraction);
    return r;
  }
  const Scalar bsJ = arr.b0s(J);
  if (is_zero(bsJ)) throw Error(ErrorKind::SingularMinor, "B(0*J) = 0 for " + format_set(J));
  const Scalar inv = Scalar(1) / bsJ;
  if (p == 1) {
    add_singleton(r, arr, lambda, j, inv);
    return r;
  }
  const IndexSet D = remove(J, j);
  const Scalar bsD = arr.b0s(D);
  auto cross = [&](int mu) {
    IndexSet DD = remove(D, mu);
    return arr.minor(sym({kZero, kStar, mu}, DD), sym({kZero, kStar, j}, DD));
  };
  auto recurse_sum = [&](const IndexSet& S, const Scalar& w) {
    for (int nu : S) r += (w * inv) * negative_recurrence(arr, lambda, nu, S);
  };
  recurse_sum(D, bsD);
  for (int mu : D) recurse_sum(remove(J, mu), -cross(mu));

  Scalar fj = (lambda.infinity() + n - p - 1) * arr.minor(sym({kZero, j}, D), sym({kZero, kStar}, D));
  for (int mu : D) fj -= lambda[mu] * cross(mu);
  fj += lambda[j] * bsD;
  r.coeffs.add(J, fj * inv);
  for (int k : complement(J, arr.m())) {
    if (is_zero(lambda[k])) continue;
    const Scalar w = lambda[k] * inv;
    add_f(r, insert(D, k), w * bsD, arr, GammaForm::PartialFraction);
    for (int mu : D) add_f(r, insert(remove(J, mu), k), -w * cross(mu), arr, GammaForm::PartialFraction);
    add_f(r, insert(J, k), -w * arr.minor(sym({kZero, kStar, k}, D), sym({kZero, kStar, j}, D)), arr,
          GammaForm::PartialFraction);
  }
  return r;
}

}  // namespace spherule
