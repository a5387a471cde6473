#include "doctest.h"
#include "fixtures.hpp"
#include "spherule/contiguity.hpp"
#include "spherule/verify.hpp"

using namespace spherule;
using fixtures::q;

namespace {

bool adjacent(const IndexSet& J, const IndexSet& K) {
  const std::size_t common = set_intersection(J, K).size();
  return J.size() - common <= 1 && K.size() - common <= 1;
}

}  // namespace

TEST_CASE("pair coefficient of the divided singleton") {
  const Arrangement arr = fixtures::standard_m2();
  const LambdaPoint lam = fixtures::lam({"3/2", "5/4"});
  CHECK(gamma_tilde(arr, lam, 1, {2})[{1, 2}] == lam[1] - 1);
  CHECK(gamma(arr, lam, 1, {1})[{1}] == -(lam.infinity() + lam[1] - 1));
  CHECK(gamma_tilde(arr, lam, 2, {1})[{1, 2}] == lam[2] - 1);
}

TEST_CASE("diagonal singleton coefficients for n = 1") {
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const Arrangement arr = fixtures::random_arr(rng, 1, 2 + trial % 2);
    const LambdaPoint lam = fixtures::random_lam(rng, arr.m());
    for (int j = 1; j <= arr.m(); ++j) {
      const Scalar expected = -(lam.infinity() + lam[j] - 1);
      CHECK(gamma_raw(arr, lam, j, {j})[{j}] == expected);
      CHECK(gamma_tilde_raw(arr, lam, j, {j})[{j}] == expected / arr.b0s({j}));
    }
  }
}

TEST_CASE("closed form and recurrence give the same division") {
  Rng rng(42);
  for (int n = 1; n <= 2; ++n) {
    for (int m = n + 1; m <= n + 2; ++m) {
      const Arrangement arr = fixtures::random_arr(rng, n, m);
      const LambdaPoint lam = fixtures::random_lam(rng, m);
      for (const IndexSet& J : admissible_sets(m, n)) {
        for (int j = 1; j <= m; ++j) {
          const CohomClass closed = fixtures::nbc(arr, gamma_tilde_raw(arr, lam, j, J), lam);
          CHECK(closed == fixtures::nbc(arr, negative_recurrence(arr, lam, j, J), lam));
          CHECK(closed == gamma_tilde(arr, lam, j, J));
          CHECK(closed == gamma_tilde(arr, lam, j, J, GammaForm::PartialFraction));
        }
      }
    }
  }
}

TEST_CASE("division coefficients are linear in the exponents") {
  Rng rng(43);
  const Arrangement arr = fixtures::random_arr(rng, 2, 3);
  const LambdaPoint a = fixtures::random_lam(rng, 3);
  const LambdaPoint b = fixtures::random_lam(rng, 3);
  std::vector<Scalar> mid;
  for (int j = 1; j <= 3; ++j) mid.push_back((a[j] + b[j]) / 2);
  const LambdaPoint c(mid);
  for (const IndexSet& J : admissible_sets(3, 2)) {
    for (int j = 1; j <= 3; ++j) {
      CohomClass mean = gamma_tilde(arr, a, j, J) + gamma_tilde(arr, b, j, J);
      mean *= Scalar(1, 2);
      CHECK(gamma_tilde(arr, c, j, J) == mean);
    }
  }
}

TEST_CASE("division support stays adjacent before reduction") {
  Rng rng(44);
  for (int n = 1; n <= 3; ++n) {
    const Arrangement arr = fixtures::random_arr(rng, n, n + 2);
    const LambdaPoint lam = fixtures::random_lam(rng, arr.m());
    for (const IndexSet& J : admissible_sets(arr.m(), n)) {
      for (int j = 1; j <= arr.m(); ++j) {
        for (const auto& [K, c] : gamma_raw(arr, lam, j, J).coeffs) {
          CAPTURE(format_set(J));
          CAPTURE(format_set(K));
          CHECK(adjacent(J, K));
        }
      }
    }
  }
}

TEST_CASE("division by f_j by quadrature") {
  const Arrangement arr = fixtures::three_n1();
  const LambdaPoint lam = fixtures::lam({"3/2", "7/5", "6/5"});
  const std::vector<double> l = lam.as_double();
  const std::vector<Chamber> chambers = chambers_1d(arr);
  CHECK(chambers.size() == 5);
  for (int j = 1; j <= 3; ++j) {
    for (const IndexSet& J : std::vector<IndexSet>{{j}, {1, 2}}) {
      Integrand lhs(arr, CohomClass::basis(Kind::F, J));
      lhs.multiply(j, -1);
      lhs *= Scalar(lam[j] - 1).get_d();
      const Integrand rhs(arr, gamma_tilde(arr, lam, j, J));
      CAPTURE(j);
      CAPTURE(format_set(J));
      CHECK(verify_identity(arr, l, lhs, rhs, chambers).pass());
    }
  }
}
