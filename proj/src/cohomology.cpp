#include "spherule/cohomology.hpp"

#include <map>

#include "spherule/contiguity.hpp"

namespace spherule {

CohomClass CohomClass::basis(Kind k, const IndexSet& J, const Scalar& c) {
  CohomClass r;
  r.kind = k;
  r.coeffs.add(J, c);
  return r;
}

namespace {

void require_same_kind(const CohomClass& a, const CohomClass& b) {
  if (a.kind != b.kind && !a.is_zero() && !b.is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "adding classes of different kinds");
  }
}

}  // namespace

CohomClass& CohomClass::operator+=(const CohomClass& o) {
  require_same_kind(*this, o);
  if (is_zero()) kind = o.kind;
  coeffs += o.coeffs;
  return *this;
}

CohomClass& CohomClass::operator-=(const CohomClass& o) {
  require_same_kind(*this, o);
  if (is_zero()) kind = o.kind;
  coeffs -= o.coeffs;
  return *this;
}

CohomClass& CohomClass::operator*=(const Scalar& s) {
  coeffs *= s;
  return *this;
}

std::string format_class(const CohomClass& c) {
  if (c.is_zero()) return "0";
  std::string out;
  const char* name = c.kind == Kind::F ? "F" : "W0";
  for (const auto& [J, v] : c.coeffs) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(v) + ")*";
    out += J.empty() ? std::string("varpi") : std::string(name) + format_set(J);
  }
  return out;
}

LambdaPoint::LambdaPoint(std::vector<Scalar> values) : values_(std::move(values)) {
  for (auto& v : values_) v.canonicalize();
}

Scalar LambdaPoint::infinity() const {
  Scalar s(0);
  for (const auto& v : values_) s += v;
  return s;
}

Scalar LambdaPoint::sum(const IndexSet& J) const {
  Scalar s(0);
  for (int j : J) s += (*this)[j];
  return s;
}

Scalar LambdaPoint::product(const IndexSet& J) const {
  Scalar s(1);
  for (int j : J) s *= (*this)[j];
  return s;
}

LambdaPoint LambdaPoint::shifted(int j, int delta) const {
  LambdaPoint r = *this;
  r.values_.at(static_cast<std::size_t>(j - 1)) += delta;
  return r;
}

std::vector<double> LambdaPoint::as_double() const {
  std::vector<double> r;
  for (const auto& v : values_) r.push_back(v.get_d());
  return r;
}

Scalar resonant_div(const Scalar& num, const Scalar& den, const std::string& context) {
  if (is_zero(den)) throw Error(ErrorKind::ResonantDenominator, "vanishing factor in " + context);
  return num / den;
}

CohomClass w0_in_F(const Arrangement& arr, const IndexSet& J) {
  CohomClass r;
  r.kind = Kind::F;
  if (J.empty()) {
    r.coeffs.add(J, Scalar(1));
    return r;
  }
  if (static_cast<int>(J.size()) >= arr.n() + 2) return r;
  if (J.size() == 1) {
    r.coeffs.add(J, arr.b0s(J));
    return r;
  }
  for (int j : J) {
    IndexSet D = remove(J, j);
    r.coeffs.add(D, -arr.minor(sym({kZero, kStar}, D), sym({kZero, j}, D)));
  }
  r.coeffs.add(J, arr.b0s(J));
  return r;
}

CohomClass to_F(const Arrangement& arr, const CohomClass& cls) {
  if (cls.kind == Kind::F) return cls;
  CohomClass r;
  r.kind = Kind::F;
  for (const auto& [K, c] : cls.coeffs) r += c * w0_in_F(arr, K);
  r.kind = Kind::F;
  return r;
}

namespace {

Scalar beta_step(const Arrangement& arr, const IndexSet& L, int l) {
  return checked_div(arr.minor(sym({kZero, kStar}, L), sym({kZero, l}, L)), arr.b0s(L), "transition step B(0*L)");
}

Scalar beta_rec(const Arrangement& arr, const IndexSet& K, const IndexSet& J,
                std::map<IndexSet, Scalar>& memo) {
  if (K == J) return Scalar(1);
  auto it = memo.find(K);
  if (it != memo.end()) return it->second;
  Scalar s(0);
  for (int l : set_difference(J, K)) {
    IndexSet Kl = insert(K, l);
    s += beta_step(arr, K, l) * beta_rec(arr, Kl, J, memo);
  }
  memo.emplace(K, s);
  return s;
}

void check_beta_args(const IndexSet& K, const IndexSet& J) {
  if (K.empty() || !is_subset(K, J)) throw Error(ErrorKind::InvalidArgument, "transition needs nonempty K inside J");
}

}  // namespace

Scalar beta(const Arrangement& arr, const IndexSet& K, const IndexSet& J) {
  check_beta_args(K, J);
  std::map<IndexSet, Scalar> memo;
  return beta_rec(arr, K, J, memo);
}

Scalar beta_closed(const Arrangement& arr, const IndexSet& K, const IndexSet& J) {
  check_beta_args(K, J);
  Scalar total(0);
  for_each_permutation(set_difference(J, K), [&](const OrderedSeq& seq) {
    Scalar prod(1);
    IndexSet L = K;
    for (int l : seq) {
      prod *= beta_step(arr, L, l);
      L = insert(L, l);
    }
    total += prod;
  });
  return total;
}

Scalar beta_tilde(const Arrangement& arr, const IndexSet& K, const IndexSet& J) {
  return checked_div(beta(arr, K, J), arr.b0s(J), "B(0*J)");
}

std::vector<BetaEntry> beta_matrix(const Arrangement& arr) {
  std::vector<BetaEntry> out;
  for (const auto& J : admissible_sets(arr.m(), arr.n())) {
    std::map<IndexSet, Scalar> memo;
    for (const auto& K : subsets(J)) {
      if (K.empty()) continue;
      Scalar b = beta_rec(arr, K, J, memo);
      if (!is_zero(b)) out.push_back({K, J, b});
    }
  }
  return out;
}

CohomClass to_W0(const Arrangement& arr, const CohomClass& cls) {
  if (cls.kind == Kind::W0) return cls;
  CohomClass r;
  r.kind = Kind::W0;
  for (const auto& [J, c] : cls.coeffs) {
    if (J.empty()) {
      r.coeffs.add(J, c);
      continue;
    }
    std::map<IndexSet, Scalar> memo;
    Scalar bs = arr.b0s(J);
    for (const auto& K : subsets(J)) {
      if (K.empty()) continue;
      r.coeffs.add(K, c * checked_div(beta_rec(arr, K, J, memo), bs, "B(0*J)"));
    }
  }
  return r;
}

Coeffs w0_relation(const Arrangement& arr, const IndexSet& J) {
  if (static_cast<int>(J.size()) != arr.n() + 2) throw Error(ErrorKind::InvalidArgument, "relation needs |J| = n+2");
  const int top = J.back();
  IndexSet Dtop = remove(J, top);
  Coeffs c;
  c.add({top}, Scalar(1));
  for (int nu : Dtop) {
    IndexSet DD = remove(Dtop, nu);
    Scalar num = arr.minor(sym({kZero, top}, DD), sym({kZero, nu}, DD));
    c.add({nu}, -checked_div(num, arr.b0(remove(J, nu)), "B(0 d J) in the W0 relation"));
  }
  return c;
}

Coeffs partial_fraction(const Arrangement& arr, const IndexSet& J) {
  if (static_cast<int>(J.size()) != arr.n() + 2) {
    throw Error(ErrorKind::InvalidArgument, "partial fractions need |J| = n+2, got " + format_set(J));
  }
  Scalar bs = arr.b0s(J);
  Coeffs r;
  for (int nu : J) {
    IndexSet D = remove(J, nu);
    r.add(D, checked_div(arr.minor(sym({kZero, kStar}, D), sym({kZero, nu}, D)), bs, "B(0*J), |J| = n+2"));
  }
  return r;
}

Coeffs nbc_expansion_W0(const Arrangement& arr, const IndexSet& K) {
  const int n = arr.n(), m = arr.m();
  Coeffs out;
  if (K.empty() || is_nbc(K, m, n)) {
    out.add(K, Scalar(1));
    return out;
  }
  if (static_cast<int>(K.size()) >= n + 2) return out;
  if (static_cast<int>(K.size()) != n + 1) throw Error(ErrorKind::InvalidArgument, "not an admissible set");
  const int h = n + 1;
  IndexSet J = insert(K, h);
  Coeffs rel = w0_relation(arr, J);
  Scalar ch = rel.get({h});
  if (is_zero(ch)) throw Error(ErrorKind::SingularMinor, "degenerate W0 relation for " + format_set(J));
  for (const auto& [nu, c] : rel) {
    if (nu[0] == h) continue;
    out.add(remove(J, nu[0]), -c / ch);
  }
  return out;
}

Coeffs nbc_expansion_F(const Arrangement& arr, const IndexSet& K) {
  const int n = arr.n(), m = arr.m();
  Coeffs out;
  if (K.empty() || is_nbc(K, m, n)) {
    out.add(K, Scalar(1));
    return out;
  }
  const int p = static_cast<int>(K.size());
  if (p == n + 2) {
    for (const auto& [D, c] : partial_fraction(arr, K)) out.add(nbc_expansion_F(arr, D), c);
    return out;
  }
  if (p != n + 1) throw Error(ErrorKind::InvalidArgument, "cannot reduce F" + format_set(K));
  // F_K = (W_0(K) + sum_nu B(0* d K / 0 nu d K) F_{dK}) / B(0*K); faces have size n and are NBC.
  Scalar bs = arr.b0s(K);
  if (is_zero(bs)) throw Error(ErrorKind::SingularMinor, "B(0*K) = 0 for " + format_set(K));
  for (int nu : K) {
    IndexSet D = remove(K, nu);
    out.add(D, arr.minor(sym({kZero, kStar}, D), sym({kZero, nu}, D)) / bs);
  }
  for (const auto& [L, c] : nbc_expansion_W0(arr, K)) {
    for (const auto& [M, d] : w0_in_F(arr, L).coeffs) out.add(M, c * d / bs);
  }
  return out;
}

CohomClass reduce_to_nbc(const Arrangement& arr, const CohomClass& cls, const LambdaPoint* lambda) {
  CohomClass in = cls;
  Scalar v = in.coeffs.get({});
  if (!is_zero(v)) {
    if (lambda == nullptr) throw Error(ErrorKind::InvalidArgument, "varpi term needs exponents for its expansion");
    in.coeffs.add(IndexSet{}, Scalar(-v));
    CohomClass w = varpi_in_w0(arr, *lambda);
    w *= v;
    if (in.kind == Kind::F) in += to_F(arr, w);
    else in += w;
  }
  CohomClass out;
  out.kind = in.kind;
  for (const auto& [K, c] : in.coeffs) {
    const Coeffs e = in.kind == Kind::F ? nbc_expansion_F(arr, K) : nbc_expansion_W0(arr, K);
    out.coeffs.add(e, c);
  }
  return out;
}

std::pair<int, int> weight_range(const CohomClass& cls) {
  if (cls.is_zero()) return {0, 0};
  int lo = 1 << 30, hi = 0;
  for (const auto& [J, c] : cls.coeffs) {
    lo = std::min(lo, static_cast<int>(J.size()));
    hi = std::max(hi, static_cast<int>(J.size()));
  }
  return {lo, hi};
}

Scalar evaluate(const Arrangement& arr, const CohomClass& cls, const std::vector<Scalar>& x) {
  CohomClass f = to_F(arr, cls);
  std::vector<Scalar> fv;
  for (int j = 1; j <= arr.m(); ++j) fv.push_back(arr.eval_f(j, x));
  Scalar total(0);
  for (const auto& [K, c] : f.coeffs) {
    Scalar den(1);
    for (int k : K) den *= fv[static_cast<std::size_t>(k - 1)];
    total += c / den;
  }
  return total;
}

CohomClass skew_relation(const Arrangement& arr, int j, int k, int l) {
  if (arr.n() != 1) throw Error(ErrorKind::InvalidArgument, "skew relation is stated for n = 1");
  auto rho = [&](int a, int b) { return Scalar(arr.alpha(a, 1) - arr.alpha(b, 1)); };
  CohomClass r;
  r += checked_div(Scalar(1), rho(k, l), "rho_kl") * w0_in_F(arr, make_set({k, l}));
  r -= checked_div(Scalar(1), rho(j, l), "rho_jl") * w0_in_F(arr, make_set({j, l}));
  r += checked_div(Scalar(1), rho(j, k), "rho_jk") * w0_in_F(arr, make_set({j, k}));
  return r;
}

}  // namespace spherule
