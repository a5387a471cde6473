#pragma once

#include <memory>
#include <vector>

#include "spherule/indices.hpp"
#include "spherule/scalar.hpp"

namespace spherule {

/// Row/column labels of the Cayley-Menger matrix: 0, the star symbol, and
/// sphere indices 1..m.
constexpr int kZero = 0;
constexpr int kStar = -1;

using Symbols = std::vector<int>;

struct MinorSpec {
  Symbols rows;
  Symbols cols;
};

/// Concatenates a symbol prefix with the elements of an index set.
Symbols sym(std::initializer_list<int> prefix, const IndexSet& tail = {});
Symbols sym(const Symbols& prefix, const IndexSet& tail);

using Matrix = std::vector<std::vector<Scalar>>;

/// Fraction-free elimination after clearing row denominators.
Scalar det_bareiss(const Matrix& a);
/// Laplace expansion along the first row.
Scalar det_cofactor(const Matrix& a);

/// f_j(x) = |x|^2 + 2 sum_nu alpha_{j nu} x_nu + alpha_{j0}, j = 1..m.
class Arrangement {
 public:
  /// Row j-1 of `alpha` holds alpha_{j1..jn} followed by alpha_{j0}.
  Arrangement(int n, std::vector<std::vector<Scalar>> alpha);

  static Arrangement from_centers(const std::vector<std::vector<Scalar>>& centers, const std::vector<Scalar>& radius_sq);

  int n() const { return n_; }
  int m() const { return m_; }

  /// nu = 0 is the constant term; nu = 1..n the linear coefficients.
  const Scalar& alpha(int j, int nu) const;
  const std::vector<std::vector<Scalar>>& alpha_rows() const { return alpha_; }

  const Scalar& r2(int j) const { return r2_[static_cast<std::size_t>(j - 1)]; }
  const Scalar& rho2(int j, int k) const { return rho2_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)]; }

  /// Entry b(s,t) of the Cayley-Menger matrix.
  Scalar entry(int s, int t) const;
  Matrix cm_matrix() const;

  /// Signed determinant of the submatrix with the given ordered rows and columns.
  Scalar minor(const Symbols& rows, const Symbols& cols) const;
  Scalar minor(const MinorSpec& spec) const { return minor(spec.rows, spec.cols); }
  Scalar minor(const Symbols& rows_and_cols) const { return minor(rows_and_cols, rows_and_cols); }

  /// B(0 J) and B(0 star J).
  Scalar b0(const IndexSet& J) const { return minor(sym({kZero}, J)); }
  Scalar b0s(const IndexSet& J) const { return minor(sym({kZero, kStar}, J)); }

  /// Value of f_j at a point (exact).
  Scalar eval_f(int j, const std::vector<Scalar>& x) const;

  bool same_sphere(int j, int k) const;

 private:
  void check_symbol(int s) const;

  int n_;
  int m_;
  std::vector<std::vector<Scalar>> alpha_;
  std::vector<Scalar> r2_;
  std::vector<std::vector<Scalar>> rho2_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

Matrix build_cm_matrix(const Arrangement& arr);
Scalar cm_minor(const Arrangement& arr, const MinorSpec& spec);

/// det over J of (r_j^2 + r_k^2 - rho_jk^2), divided by 2^|J| prod r_j^2.
Scalar a_principal_minor(const Arrangement& arr, const IndexSet& J);

struct HypothesisReport {
  std::vector<IndexSet> h1_violations;
  std::vector<IndexSet> h2_violations;
  bool h1() const { return h1_violations.empty(); }
  bool h2() const { return h2_violations.empty(); }
};

HypothesisReport check_hypotheses(const Arrangement& arr);

/// Additional general-position conditions used when m > n+1: B(0 star J) != 0 for |J| = n+2.
bool general_position(const Arrangement& arr);

struct Invariants {
  int m = 0;
  std::vector<double> r2;                 // r_j^2, j = 1..m stored at j-1
  std::vector<std::vector<double>> rho2;  // rho_jk^2
};

Invariants invariants_of(const Arrangement& arr);

/// Floating-point coefficients in the triangular normal form: sphere n+1 centered at
/// the origin, sphere j using only the first n+1-j coordinates with a positive last one.
struct NormalizedAlphas {
  int n = 0;
  /// Row j-1 holds alpha_{j1..jn} followed by alpha_{j0}, as in Arrangement.
  std::vector<std::vector<double>> alpha;
};

NormalizedAlphas derive_normalized_alphas(const Invariants& inv, int n);

/// Invariants recomputed from normalized coefficients.
Invariants invariants_of(const NormalizedAlphas& a);

}  // namespace spherule
