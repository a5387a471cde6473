#include "spherule/connection.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "spherule/contiguity.hpp"

namespace spherule {

ParamKey dr2(int j) { return {0, j}; }

ParamKey drho2(int j, int k) {
  if (j == k) throw Error(ErrorKind::InvalidArgument, "drho^2 needs two distinct spheres");
  return {std::min(j, k), std::max(j, k)};
}

std::string format_param_key(const ParamKey& key) {
  if (key.first == 0) return "dr2_" + std::to_string(key.second);
  return "drho2_" + std::to_string(key.first) + "_" + std::to_string(key.second);
}

std::string format_form(const ParamOneForm& form) {
  if (form.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : form) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")*" + format_param_key(k);
  }
  return out;
}

Scalar evaluate(const ParamOneForm& form, const ParamTangent& tangent) {
  Scalar s(0);
  for (const auto& [k, c] : form) {
    auto it = tangent.find(k);
    if (it != tangent.end()) s += c * it->second;
  }
  return s;
}

double evaluate(const ParamOneForm& form, const std::map<ParamKey, double>& tangent) {
  double s = 0.0;
  for (const auto& [k, c] : form) {
    auto it = tangent.find(k);
    if (it != tangent.end()) s += c.get_d() * it->second;
  }
  return s;
}

std::string format_alpha_form(const AlphaOneForm& form) {
  if (form.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : form) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")*dalpha_" + std::to_string(k.first) + "_" + std::to_string(k.second);
  }
  return out;
}

AlphaOneForm pullback_to_alpha(const Arrangement& arr, const ParamOneForm& form) {
  AlphaOneForm out;
  const int n = arr.n();
  for (const auto& [key, c] : form) {
    if (key.first == 0) {
      const int j = key.second;
      for (int nu = 1; nu <= n; ++nu) out.add({j, nu}, 2 * c * arr.alpha(j, nu));
      out.add({j, 0}, -c);
    } else {
      const int j = key.first, k = key.second;
      for (int nu = 1; nu <= n; ++nu) {
        Scalar d = 2 * c * (arr.alpha(j, nu) - arr.alpha(k, nu));
        out.add({j, nu}, d);
        out.add({k, nu}, -d);
      }
    }
  }
  return out;
}

ParamTangent invariant_rates(const Arrangement& arr, const std::vector<std::vector<Scalar>>& alpha_tangent) {
  const int n = arr.n(), m = arr.m();
  if (static_cast<int>(alpha_tangent.size()) != m) throw Error(ErrorKind::DimensionMismatch, "tangent rows differ from m");
  auto t = [&](int j, int nu) -> const Scalar& { return alpha_tangent.at(static_cast<std::size_t>(j - 1)).at(static_cast<std::size_t>(nu == 0 ? n : nu - 1)); };
  ParamTangent out;
  for (int j = 1; j <= m; ++j) {
    Scalar s = -t(j, 0);
    for (int nu = 1; nu <= n; ++nu) s += 2 * arr.alpha(j, nu) * t(j, nu);
    out[dr2(j)] = s;
    for (int k = j + 1; k <= m; ++k) {
      Scalar r(0);
      for (int nu = 1; nu <= n; ++nu) r += 2 * (arr.alpha(j, nu) - arr.alpha(k, nu)) * (t(j, nu) - t(k, nu));
      out[drho2(j, k)] = r;
    }
  }
  return out;
}

namespace {

bool entry_key(int s, int t, ParamKey& key) {
  if (s == t || s == kZero || t == kZero) return false;
  if (s == kStar) {
    key = dr2(t);
    return true;
  }
  if (t == kStar) {
    key = dr2(s);
    return true;
  }
  key = drho2(s, t);
  return true;
}

Symbols drop(const Symbols& s, std::size_t i) {
  Symbols r;
  r.reserve(s.size() - 1);
  for (std::size_t t = 0; t < s.size(); ++t)
    if (t != i) r.push_back(s[t]);
  return r;
}

Symbols concat(std::initializer_list<int> head, const OrderedSeq& mid, const IndexSet& tail) {
  Symbols s(head);
  s.insert(s.end(), mid.begin(), mid.end());
  s.insert(s.end(), tail.begin(), tail.end());
  return s;
}

}  // namespace

ParamOneForm minor_differential(const Arrangement& arr, const Symbols& rows, const Symbols& cols) {
  if (rows.size() != cols.size() || rows.empty()) throw Error(ErrorKind::InvalidArgument, "minor needs matching nonempty symbol lists");
  ParamOneForm out;
  const std::size_t s = rows.size();
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      ParamKey key;
      if (!entry_key(rows[a], cols[b], key)) continue;
      Scalar cof = s == 1 ? Scalar(1) : arr.minor(drop(rows, a), drop(cols, b));
      if ((a + b) % 2 == 1) cof = -cof;
      out.add(key, cof);
    }
  }
  return out;
}

ParamOneForm dlog_minor(const Arrangement& arr, const Symbols& rows, const Symbols& cols) {
  Scalar v = arr.minor(rows, cols);
  if (is_zero(v)) throw Error(ErrorKind::SingularMinor, "logarithmic differential of a vanishing minor");
  ParamOneForm d = minor_differential(arr, rows, cols);
  d *= Scalar(1) / v;
  return d;
}

ParamOneForm theta(const Arrangement& arr, const IndexSet& J) {
  if (!is_admissible(J, arr.m(), arr.n())) throw Error(ErrorKind::InvalidArgument, "set is not admissible: " + format_set(J));
  const int p = static_cast<int>(J.size());
  if (p == 1) {
    ParamOneForm f = dlog_minor(arr, sym({kZero, kStar}, J), sym({kZero, kStar}, J));
    f *= Scalar(-1, 2);
    return f;
  }
  ParamOneForm out;
  for (std::size_t a = 0; a < J.size(); ++a) {
    for (std::size_t b = a + 1; b < J.size(); ++b) {
      const int j = J[a], k = J[b];
      const IndexSet jk{j, k};
      const IndexSet rest = set_difference(J, jk);
      Scalar chain(0);
      for_each_permutation(rest, [&](const OrderedSeq& mu) {
        Scalar prod(1);
        for (std::size_t s = 1; s <= mu.size(); ++s) {
          OrderedSeq prev(mu.rend() - static_cast<std::ptrdiff_t>(s - 1), mu.rend());
          OrderedSeq upto(mu.rend() - static_cast<std::ptrdiff_t>(s), mu.rend());
          prod *= arr.minor(concat({kZero, kStar}, prev, jk), concat({kZero, mu[s - 1]}, prev, jk));
          prod = checked_div(prod, arr.minor(concat({kZero}, upto, jk), concat({kZero}, upto, jk)), "chain minor B(0 mu..mu j k)");
        }
        chain += prod;
      });
      if (is_zero(chain)) continue;
      out.add(dlog_minor(arr, sym({kZero}, jk), sym({kZero}, jk)), chain / 2);
    }
  }
  if (p % 2 == 1) out *= Scalar(-1);
  return out;
}

ParamOneForm theta_chain_exact(const Arrangement& arr, int j, int k) {
  const int n = arr.n();
  if (arr.m() != n + 1) throw Error(ErrorKind::InvalidArgument, "the chain forms need m = n+1");
  if (j < 1 || j > n || (k != j && k != j + 1) || k > n) {
    throw Error(ErrorKind::InvalidArgument, "exact chain forms exist for k = j and k = j+1 <= n");
  }
  if (k == j) {
    const IndexSet upper = range_set(j, n + 1);
    const IndexSet lower = range_set(j + 1, n + 1);
    ParamOneForm f = dlog_minor(arr, sym({kZero}, upper), sym({kZero}, upper));
    f -= dlog_minor(arr, sym({kZero}, lower), sym({kZero}, lower));
    f *= Scalar(1, 2);
    return f;
  }
  const IndexSet R = range_set(j + 2, n + 1);
  const Symbols rows = sym({kZero, j}, R);
  const Symbols cols = sym({kZero, j + 1}, R);
  const Scalar c = arr.minor(rows, cols);
  ParamOneForm f = minor_differential(arr, rows, cols);
  ParamOneForm logs = dlog_minor(arr, sym({kZero}, range_set(j, n + 1)), sym({kZero}, range_set(j, n + 1)));
  logs += dlog_minor(arr, sym({kZero}, R), sym({kZero}, R));
  f.add(logs, -c / 2);
  f *= checked_div(Scalar(1), arr.b0(range_set(j + 1, n + 1)), "B(0 j+1 .. n+1)");
  return f;
}

FloatOneForm theta_chain(const Invariants& inv, int n, int j, int k) {
  if (inv.m != n + 1) throw Error(ErrorKind::InvalidArgument, "the chain forms need m = n+1");
  if (j < 1 || k < j || k > n) throw Error(ErrorKind::InvalidArgument, "need 1 <= j <= k <= n");
  NormalizedAlphas na = derive_normalized_alphas(inv, n);
  // Row i (0-based) of the lower-triangular factor is sphere n - i, using coordinates 1..i+1.
  Eigen::MatrixXd Lm = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int nu = 0; nu <= i; ++nu) Lm(i, nu) = na.alpha[static_cast<std::size_t>(n - i - 1)][static_cast<std::size_t>(nu)];
  const Eigen::MatrixXd Linv = Lm.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
  auto sphere_row = [n](int sphere) { return n - sphere; };

  FloatOneForm out;
  for (int a = 1; a <= n + 1; ++a) {
    for (int b = a + 1; b <= n + 1; ++b) {
      Eigen::MatrixXd dG = Eigen::MatrixXd::Zero(n, n);
      if (b == n + 1) {
        const int ia = sphere_row(a);
        dG(ia, ia) += 1.0;
        for (int t = 0; t < n; ++t) {
          if (t == ia) continue;
          dG(ia, t) += 0.5;
          dG(t, ia) += 0.5;
        }
      } else {
        const int ia = sphere_row(a), ib = sphere_row(b);
        dG(ia, ib) -= 0.5;
        dG(ib, ia) -= 0.5;
      }
      Eigen::MatrixXd X = Linv * dG * Linv.transpose();
      Eigen::MatrixXd Phi = X.triangularView<Eigen::StrictlyLower>();
      Phi.diagonal() = 0.5 * X.diagonal();
      const Eigen::MatrixXd dL = Lm * Phi;
      auto alpha = [&](int s, int nu) { return Lm(sphere_row(s), nu - 1); };
      auto dalpha = [&](int s, int nu) { return dL(sphere_row(s), nu - 1); };
      std::vector<double> th(static_cast<std::size_t>(n + 1), 0.0);
      for (int kk = j; kk <= k; ++kk) {
        const int nu = n + 1 - kk;
        double v = dalpha(j, nu);
        for (int s = j; s < kk; ++s) v -= alpha(s, nu) * th[static_cast<std::size_t>(s)];
        th[static_cast<std::size_t>(kk)] = v / alpha(kk, nu);
      }
      const double value = th[static_cast<std::size_t>(k)];
      if (value != 0.0) out[drho2(a, b)] = value;
    }
  }
  return out;
}

FormMap nabla_b_varpi(const Arrangement& arr, const LambdaPoint& lambda) {
  const int n = arr.n();
  FormMap out;
  const Scalar linf = lambda.infinity();
  for (const auto& J : admissible_sets(arr.m(), n)) {
    const int p = static_cast<int>(J.size());
    Scalar den(1);
    for (int s = 1; s < p; ++s) den *= linf + n - s;
    Scalar c = resonant_div(lambda.product(J), den, "lambda_inf + n - s");
    if (is_zero(c)) continue;
    ParamOneForm f = theta(arr, J);
    f *= c;
    out.emplace(J, f);
  }
  return out;
}

FormClass reduce_form_class(const Arrangement& arr, const FormClass& cls) { return reduce_f_keys(arr, cls); }

FormClass nabla_b_varpi_class(const Arrangement& arr, const LambdaPoint& lambda) {
  FormClass out;
  for (const auto& [J, form] : nabla_b_varpi(arr, lambda)) {
    for (const auto& [K, c] : w0_in_F(arr, J).coeffs) out.add(K, form * c);
  }
  return reduce_form_class(arr, out);
}

namespace {

struct ColumnKey {
  IndexSet J;
  int anchor;
  std::vector<Scalar> lambda;
  bool operator<(const ColumnKey& o) const {
    if (J != o.J) return J < o.J;
    if (anchor != o.anchor) return anchor < o.anchor;
    return lambda < o.lambda;
  }
};

struct GammaKey {
  int j;
  IndexSet L;
  std::vector<Scalar> lambda;
  bool operator<(const GammaKey& o) const {
    if (j != o.j) return j < o.j;
    if (L != o.L) return L < o.L;
    return lambda < o.lambda;
  }
};

class ConnectionBuilder {
 public:
  explicit ConnectionBuilder(const Arrangement& arr) : arr_(arr) {}

  const ParamOneForm& theta_of(const IndexSet& L) {
    auto it = thetas_.find(L);
    if (it == thetas_.end()) it = thetas_.emplace(L, theta(arr_, L)).first;
    return it->second;
  }

  FormClass singleton(const LambdaPoint& lambda, int j) {
    const int n = arr_.n();
    const Scalar linf = lambda.infinity();
    FormClass col;
    for (const auto& L : admissible_sets(arr_.m(), n)) {
      const int p = static_cast<int>(L.size());
      Scalar den(1);
      for (int nu = 1; nu < p; ++nu) den *= linf + n - nu - 1;
      CohomClass cls;
      Scalar c;
      if (contains(L, j)) {
        c = resonant_div(lambda.product(remove(L, j)), den, "lambda_inf + n - nu - 1");
        if (is_zero(c)) continue;
        cls = gamma_raw(arr_, lambda, j, L);
      } else {
        c = resonant_div(lambda.product(L), den, "lambda_inf + n - nu - 1");
        if (is_zero(c)) continue;
        cls.kind = Kind::F;
        for (const auto& [K, v] : w0_in_F(arr_, L).coeffs) {
          IndexSet jK = insert(K, j);
          if (static_cast<int>(jK.size()) == n + 2) cls.coeffs.add(partial_fraction(arr_, jK), v);
          else cls.coeffs.add(jK, v);
        }
      }
      const ParamOneForm& th = theta_of(L);
      for (const auto& [K, v] : cls.coeffs) col.add(K, th * (c * v));
    }
    return reduce_form_class(arr_, col);
  }

  const CohomClass& gamma_tilde_of(const LambdaPoint& lambda, int j, const IndexSet& L) {
    GammaKey key{j, L, lambda.values()};
    auto it = gammas_.find(key);
    if (it == gammas_.end()) it = gammas_.emplace(key, gamma_tilde(arr_, lambda, j, L)).first;
    return it->second;
  }

  FormClass column(const LambdaPoint& lambda, const IndexSet& J, int anchor) {
    if (J.empty()) throw Error(ErrorKind::InvalidArgument, "column needs a nonempty set");
    if (!is_nbc(J, arr_.m(), arr_.n())) throw Error(ErrorKind::InvalidArgument, "column set must be NBC: " + format_set(J));
    const int j = anchor == 0 ? J.front() : anchor;
    if (!contains(J, j)) throw Error(ErrorKind::InvalidArgument, "anchor must lie in the column set");
    ColumnKey key{J, j, lambda.values()};
    auto it = columns_.find(key);
    if (it != columns_.end()) return it->second;
    FormClass out;
    if (J.size() == 1) {
      out = singleton(lambda, j);
    } else {
      const Scalar inv = resonant_div(Scalar(1), lambda[j] - 1, "lambda_j - 1");
      const FormClass sub = column(lambda.shifted(j, -1), remove(J, j), 0);
      for (const auto& [L, form] : sub) {
        for (const auto& [K, g] : gamma_tilde_of(lambda, j, L).coeffs) out.add(K, form * (g * inv));
      }
    }
    columns_.emplace(key, out);
    return out;
  }

 private:
  const Arrangement& arr_;
  std::map<IndexSet, ParamOneForm> thetas_;
  std::map<GammaKey, CohomClass> gammas_;
  std::map<ColumnKey, FormClass> columns_;
};

}  // namespace

FormClass gm_singleton_column(const Arrangement& arr, const LambdaPoint& lambda, int j) {
  ConnectionBuilder b(arr);
  return b.singleton(lambda, j);
}

FormClass gm_column(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& J, int anchor) {
  if (lambda.m() != arr.m()) throw Error(ErrorKind::InvalidArgument, "exponent vector length differs from m");
  ConnectionBuilder b(arr);
  return b.column(lambda, J, anchor);
}

ParamOneForm gm_theta(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& K, const IndexSet& J, int anchor) {
  return gm_column(arr, lambda, J, anchor).get(K);
}

ParamOneForm ConnectionMatrix::entry(const IndexSet& K, const IndexSet& J) const {
  auto it = columns.find(J);
  if (it == columns.end()) throw Error(ErrorKind::InvalidArgument, "no column " + format_set(J));
  return it->second.get(K);
}

ConnectionMatrix gm_matrix(const Arrangement& arr, const LambdaPoint& lambda) {
  if (lambda.m() != arr.m()) throw Error(ErrorKind::InvalidArgument, "exponent vector length differs from m");
  ConnectionMatrix M;
  M.basis = nbc_basis(arr.m(), arr.n());
  ConnectionBuilder b(arr);
  for (const auto& J : M.basis) M.columns.emplace(J, b.column(lambda, J, 0));
  return M;
}

ParamOneForm zeta_pair(const Arrangement& arr, int j, int k) {
  if (arr.n() != 1) throw Error(ErrorKind::InvalidArgument, "zeta forms are defined for n = 1");
  ParamOneForm z;
  z.add(theta(arr, {j}), arr.minor({kZero, kStar, j}, {kZero, k, j}));
  z.add(theta(arr, {k}), arr.minor({kZero, kStar, k}, {kZero, j, k}));
  z.add(theta(arr, make_set({j, k})), arr.minor({kZero, j, k}, {kZero, j, k}));
  return z;
}

ParamOneForm zeta_pair_at(const Arrangement& arr, int j, int k) {
  if (arr.n() != 1) throw Error(ErrorKind::InvalidArgument, "zeta forms are defined for n = 1");
  ParamOneForm z;
  z.add(theta(arr, {j}), -arr.minor({kZero, kStar, k}, {kZero, kStar, j}));
  z.add(theta(arr, {k}), arr.b0s({k}));
  z.add(theta(arr, make_set({j, k})), arr.minor({kZero, kStar, k}, {kZero, j, k}));
  return z;
}

ParamOneForm zeta_triple(const Arrangement& arr, int j, int k, int l) {
  if (arr.n() != 1) throw Error(ErrorKind::InvalidArgument, "zeta forms are defined for n = 1");
  ParamOneForm z;
  z.add(theta(arr, make_set({j, k})), arr.minor({kZero, kStar, j, k}, {kZero, l, j, k}));
  z.add(theta(arr, make_set({j, l})), arr.minor({kZero, kStar, j, l}, {kZero, k, j, l}));
  z.add(theta(arr, make_set({k, l})), arr.minor({kZero, kStar, k, l}, {kZero, j, k, l}));
  return z;
}

WronskianReport wronskian_trace(const Arrangement& arr, const LambdaPoint& lambda) {
  if (arr.m() != 2) throw Error(ErrorKind::InvalidArgument, "the Wronskian identity is stated for m = 2");
  const int n = arr.n();
  ConnectionMatrix M = gm_matrix(arr, lambda);
  WronskianReport r;
  r.trace = M.entry({1}, {1}) + M.entry({2}, {2}) + M.entry({1, 2}, {1, 2});
  const Scalar half_shift = Scalar(n - 2) / 2;
  auto dlog = [&](const Symbols& s) { return dlog_minor(arr, s, s); };
  r.closed.add(dlog({kZero, kStar, 1}), lambda[1] + half_shift);
  r.closed.add(dlog({kZero, kStar, 2}), lambda[2] + half_shift);
  r.closed.add(dlog({kZero, kStar, 1, 2}), lambda.infinity() + Scalar(n - 3) / 2);
  r.closed.add(dlog({kZero, 1, 2}), -half_shift);
  return r;
}

ConjectureReport conjecture_check(const Arrangement& arr, const LambdaPoint& first, const LambdaPoint& second) {
  const int n = arr.n();
  if (arr.m() > n + 1) throw Error(ErrorKind::InvalidArgument, "the trace formula is considered for m <= n+1");
  auto residual = [&](const LambdaPoint& lambda) {
    ConnectionMatrix M = gm_matrix(arr, lambda);
    ParamOneForm r;
    for (const auto& J : M.basis) {
      r += M.entry(J, J);
      const int p = static_cast<int>(J.size());
      Symbols s = sym({kZero, kStar}, J);
      r.add(dlog_minor(arr, s, s), -(lambda.sum(J) + Scalar(n - p - 1) / 2));
    }
    return r;
  };
  return {residual(first), residual(second)};
}

std::map<IndexSet, double, GradedLess> infinity_cycle_coeffs(const std::vector<double>& lambda, int n) {
  const int m = static_cast<int>(lambda.size());
  if (m != n + 1) throw Error(ErrorKind::InvalidArgument, "the unbounded cycle relation needs m = n+1");
  double linf = 0.0;
  for (double v : lambda) linf += v;
  const bool odd = n % 2 == 1;
  const double pi = std::numbers::pi;
  const double den = odd ? std::sin(pi * linf) : std::cos(pi * linf);
  if (std::abs(den) < 1e-12) throw Error(ErrorKind::ResonantDenominator, odd ? "sin(pi lambda_inf) = 0" : "cos(pi lambda_inf) = 0");
  std::map<IndexSet, double, GradedLess> out;
  for (const auto& J : nbc_basis(m, n)) {
    if (odd && static_cast<int>(J.size()) > n) continue;
    double lc = 0.0;
    for (int k : complement(J, m)) lc += lambda[static_cast<std::size_t>(k - 1)];
    out[J] = -(odd ? std::sin(pi * lc) : std::cos(pi * lc)) / den;
  }
  return out;
}

}  // namespace spherule
