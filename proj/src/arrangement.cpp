#include "spherule/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <unordered_map>

namespace spherule {

Symbols sym(std::initializer_list<int> prefix, const IndexSet& tail) {
  Symbols s(prefix);
  s.insert(s.end(), tail.begin(), tail.end());
  return s;
}

Symbols sym(const Symbols& prefix, const IndexSet& tail) {
  Symbols s = prefix;
  s.insert(s.end(), tail.begin(), tail.end());
  return s;
}

Scalar det_bareiss(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return Scalar(1);
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  Scalar scale(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    mpz_class l = 1;
    for (const auto& x : a[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j].get_num() * (l / a[i][j].get_den());
    scale *= l;
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return Scalar(0);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  Scalar d(m[n - 1][n - 1]);
  if (sign < 0) d = -d;
  return d / scale;
}

Scalar det_cofactor(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return Scalar(1);
  if (n == 1) return a[0][0];
  Scalar d(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (is_zero(a[0][c])) continue;
    Matrix sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Scalar> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[i][j]);
      sub.push_back(std::move(row));
    }
    Scalar term = a[0][c] * det_cofactor(sub);
    if (c % 2) d -= term;
    else d += term;
  }
  return d;
}

struct Arrangement::Cache {
  std::mutex mutex;
  std::unordered_map<std::string, Scalar> minors;
};

Arrangement::Arrangement(int n, std::vector<std::vector<Scalar>> rows)
    : n_(n), m_(static_cast<int>(rows.size())), alpha_(std::move(rows)), cache_(std::make_shared<Cache>()) {
  if (n_ < 1) throw Error(ErrorKind::InvalidArgument, "dimension n must be positive");
  if (m_ < 1) throw Error(ErrorKind::InvalidArgument, "at least one sphere is required");
  if (m_ > 60) throw Error(ErrorKind::InvalidArgument, "too many spheres");
  for (auto& row : alpha_) {
    if (static_cast<int>(row.size()) != n_ + 1) {
      throw Error(ErrorKind::InconsistentDimension, "each sphere needs n+1 coefficients");
    }
    for (auto& v : row) v.canonicalize();
  }
  r2_.resize(static_cast<std::size_t>(m_));
  rho2_.assign(static_cast<std::size_t>(m_), std::vector<Scalar>(static_cast<std::size_t>(m_)));
  for (int j = 1; j <= m_; ++j) {
    Scalar s(0);
    for (int nu = 1; nu <= n_; ++nu) s += this->alpha(j, nu) * this->alpha(j, nu);
    r2_[static_cast<std::size_t>(j - 1)] = s - this->alpha(j, 0);
    for (int k = 1; k <= m_; ++k) {
      Scalar t(0);
      for (int nu = 1; nu <= n_; ++nu) {
        Scalar d = this->alpha(j, nu) - this->alpha(k, nu);
        t += d * d;
      }
      rho2_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] = t;
    }
  }
}

Arrangement Arrangement::from_centers(const std::vector<std::vector<Scalar>>& centers,
                                      const std::vector<Scalar>& radius_sq) {
  if (centers.empty() || centers.size() != radius_sq.size()) {
    throw Error(ErrorKind::InconsistentDimension, "centers and radii differ in count");
  }
  const int n = static_cast<int>(centers.front().size());
  std::vector<std::vector<Scalar>> alpha;
  for (std::size_t j = 0; j < centers.size(); ++j) {
    if (static_cast<int>(centers[j].size()) != n) throw Error(ErrorKind::InconsistentDimension, "center dimension");
    std::vector<Scalar> row;
    Scalar c2(0);
    for (Scalar c : centers[j]) {
      c.canonicalize();
      row.push_back(-c);
      c2 += c * c;
    }
    Scalar r2 = radius_sq[j];
    r2.canonicalize();
    row.push_back(c2 - r2);
    alpha.push_back(std::move(row));
  }
  return Arrangement(n, std::move(alpha));
}

const Scalar& Arrangement::alpha(int j, int nu) const {
  const auto& row = alpha_.at(static_cast<std::size_t>(j - 1));
  return nu == 0 ? row.at(static_cast<std::size_t>(n_)) : row.at(static_cast<std::size_t>(nu - 1));
}

void Arrangement::check_symbol(int s) const {
  if (s < kStar || s > m_) throw Error(ErrorKind::InvalidArgument, "symbol out of range: " + std::to_string(s));
}

Scalar Arrangement::entry(int s, int t) const {
  check_symbol(s);
  check_symbol(t);
  if (s == t) return Scalar(0);
  if (s == kZero || t == kZero) return Scalar(1);
  if (s == kStar) return r2(t);
  if (t == kStar) return r2(s);
  return rho2(s, t);
}

Matrix Arrangement::cm_matrix() const {
  Symbols all = sym({kZero, kStar}, range_set(1, m_));
  Matrix b;
  for (int s : all) {
    std::vector<Scalar> row;
    for (int t : all) row.push_back(entry(s, t));
    b.push_back(std::move(row));
  }
  return b;
}

namespace {

// Sorts in place; returns the permutation sign, or 0 on a repeated symbol.
int sort_with_sign(Symbols& s) {
  int sign = 1;
  for (std::size_t i = 1; i < s.size(); ++i) {
    for (std::size_t j = i; j > 0 && s[j - 1] >= s[j]; --j) {
      if (s[j - 1] == s[j]) return 0;
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] == s[i]) return 0;
  return sign;
}

std::string encode(const Symbols& s) {
  std::string k;
  k.reserve(s.size());
  for (int x : s) k.push_back(static_cast<char>(x + 2));
  return k;
}

}  // namespace

Scalar Arrangement::minor(const Symbols& rows_in, const Symbols& cols_in) const {
  if (rows_in.size() != cols_in.size() || rows_in.empty()) {
    throw Error(ErrorKind::InvalidArgument, "minor needs equally many rows and columns");
  }
  if (rows_in.size() > static_cast<std::size_t>(m_ + 2)) {
    throw Error(ErrorKind::InvalidArgument, "minor larger than the Cayley-Menger matrix");
  }
  for (int s : rows_in) check_symbol(s);
  for (int s : cols_in) check_symbol(s);
  Symbols rows = rows_in, cols = cols_in;
  int sr = sort_with_sign(rows);
  int sc = sort_with_sign(cols);
  if (sr == 0 || sc == 0) return Scalar(0);
  std::string kr = encode(rows), kc = encode(cols);
  // The matrix is symmetric, so B(R/C) = B(C/R).
  std::string key = kr <= kc ? kr + '|' + kc : kc + '|' + kr;
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->minors.find(key);
    if (it != cache_->minors.end()) return sr * sc > 0 ? it->second : Scalar(-it->second);
  }
  Matrix sub;
  for (int r : rows) {
    std::vector<Scalar> row;
    for (int c : cols) row.push_back(entry(r, c));
    sub.push_back(std::move(row));
  }
  Scalar d = det_bareiss(sub);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->minors.emplace(key, d);
  }
  return sr * sc > 0 ? d : Scalar(-d);
}

Scalar Arrangement::eval_f(int j, const std::vector<Scalar>& x) const {
  Scalar v = alpha(j, 0);
  for (int nu = 1; nu <= n_; ++nu) {
    const Scalar& xi = x.at(static_cast<std::size_t>(nu - 1));
    v += xi * xi + 2 * alpha(j, nu) * xi;
  }
  return v;
}

bool Arrangement::same_sphere(int j, int k) const { return alpha_.at(j - 1) == alpha_.at(k - 1); }

Matrix build_cm_matrix(const Arrangement& arr) { return arr.cm_matrix(); }

Scalar cm_minor(const Arrangement& arr, const MinorSpec& spec) { return arr.minor(spec); }

Scalar a_principal_minor(const Arrangement& arr, const IndexSet& J) {
  if (J.empty()) throw Error(ErrorKind::InvalidArgument, "A(J) needs a nonempty J");
  Matrix c;
  Scalar denom(1);
  for (int j : J) {
    if (is_zero(arr.r2(j))) throw Error(ErrorKind::ZeroRadius, "r_" + std::to_string(j) + "^2 = 0");
    denom *= 2 * arr.r2(j);
    std::vector<Scalar> row;
    for (int k : J) row.push_back(arr.r2(j) + arr.r2(k) - arr.rho2(j, k));
    c.push_back(std::move(row));
  }
  return det_bareiss(c) / denom;
}

HypothesisReport check_hypotheses(const Arrangement& arr) {
  HypothesisReport rep;
  for (const auto& J : admissible_sets(arr.m(), arr.n())) {
    const int p = static_cast<int>(J.size());
    Scalar bs = arr.b0s(J);
    bool h1 = !is_zero(bs) && (p < 2 || !is_zero(arr.b0(J)));
    if (!h1) rep.h1_violations.push_back(J);
    Scalar signed_bs = (p % 2 == 1) ? bs : Scalar(-bs);
    if (sgn(signed_bs) <= 0) rep.h2_violations.push_back(J);
  }
  return rep;
}

bool general_position(const Arrangement& arr) {
  if (arr.m() < arr.n() + 2) return true;
  for (const auto& J : subsets_of_size(range_set(1, arr.m()), static_cast<std::size_t>(arr.n() + 2))) {
    if (is_zero(arr.b0s(J))) return false;
  }
  return true;
}

Invariants invariants_of(const Arrangement& arr) {
  Invariants inv;
  inv.m = arr.m();
  inv.r2.resize(static_cast<std::size_t>(arr.m()));
  inv.rho2.assign(static_cast<std::size_t>(arr.m()), std::vector<double>(static_cast<std::size_t>(arr.m())));
  for (int j = 1; j <= arr.m(); ++j) {
    inv.r2[static_cast<std::size_t>(j - 1)] = arr.r2(j).get_d();
    for (int k = 1; k <= arr.m(); ++k) inv.rho2[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] = arr.rho2(j, k).get_d();
  }
  return inv;
}

NormalizedAlphas derive_normalized_alphas(const Invariants& inv, int n) {
  if (inv.m != n + 1) throw Error(ErrorKind::InvalidArgument, "normal form needs m = n+1 spheres");
  auto rho2 = [&](int j, int k) { return inv.rho2[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)]; };
  auto gram = [&](int j, int k) { return 0.5 * (rho2(j, n + 1) + rho2(k, n + 1) - rho2(j, k)); };
  NormalizedAlphas out;
  out.n = n;
  out.alpha.assign(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
  auto a = [&](int j, int nu) -> double& { return out.alpha[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(nu - 1)]; };
  double scale = 0.0;
  for (int j = 1; j <= n; ++j) scale = std::max(scale, std::abs(rho2(j, n + 1)));
  for (int j = n; j >= 1; --j) {
    const int diag = n + 1 - j;
    for (int nu = 1; nu < diag; ++nu) {
      const int s = n + 1 - nu;  // sphere whose last coordinate is nu
      double v = gram(j, s);
      for (int mu = 1; mu < nu; ++mu) v -= a(j, mu) * a(s, mu);
      a(j, nu) = v / a(s, nu);
    }
    double d = gram(j, j);
    for (int mu = 1; mu < diag; ++mu) d -= a(j, mu) * a(j, mu);
    if (!(d > 1e-14 * std::max(1.0, scale))) {
      throw Error(ErrorKind::NegativeDiscriminant, "normal form pivot for sphere " + std::to_string(j) + " is not positive");
    }
    a(j, diag) = std::sqrt(d);
  }
  for (int j = 1; j <= n + 1; ++j) {
    double q = 0.0;
    for (int nu = 1; nu <= n; ++nu) q += a(j, nu) * a(j, nu);
    out.alpha[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(n)] = q - inv.r2[static_cast<std::size_t>(j - 1)];
  }
  return out;
}

Invariants invariants_of(const NormalizedAlphas& a) {
  Invariants inv;
  const int n = a.n;
  inv.m = static_cast<int>(a.alpha.size());
  inv.r2.resize(static_cast<std::size_t>(inv.m));
  inv.rho2.assign(static_cast<std::size_t>(inv.m), std::vector<double>(static_cast<std::size_t>(inv.m)));
  for (int j = 0; j < inv.m; ++j) {
    double q = 0;
    for (int nu = 0; nu < n; ++nu) q += a.alpha[j][nu] * a.alpha[j][nu];
    inv.r2[j] = q - a.alpha[j][n];
    for (int k = 0; k < inv.m; ++k) {
      double t = 0;
      for (int nu = 0; nu < n; ++nu) t += (a.alpha[j][nu] - a.alpha[k][nu]) * (a.alpha[j][nu] - a.alpha[k][nu]);
      inv.rho2[j][k] = t;
    }
  }
  return inv;
}

}  // namespace spherule
