#include "doctest.h"
#include "fixtures.hpp"
#include "spherule/contiguity.hpp"
#include "spherule/verify.hpp"

using namespace spherule;
using fixtures::q;

TEST_CASE("standard form of the standard pair at (1/2, 1/2)") {
  const Arrangement arr = fixtures::standard_m2();
  const CohomClass sf = standard_form(arr, fixtures::lam({"1/2", "1/2"}));
  CHECK(sf.kind == Kind::W0);
  CHECK(sf.coeffs.size() == 3);
  CHECK(sf[{1}] == q("-1/2"));
  CHECK(sf[{2}] == q("-1/2"));
  CHECK(sf[{1, 2}] == q("1/4"));
}

TEST_CASE("standard form singletons carry -lambda_j and vanish with lambda_j") {
  Rng rng(31);
  for (int n = 1; n <= 3; ++n) {
    const Arrangement arr = fixtures::random_arr(rng, n, n + 1);
    const LambdaPoint lam = fixtures::random_lam(rng, arr.m());
    const CohomClass sf = standard_form(arr, lam);
    for (int j = 1; j <= arr.m(); ++j) CHECK(sf[{j}] == -lam[j]);
    std::vector<Scalar> values = lam.values();
    values[0] = 0;
    const CohomClass killed = standard_form(arr, LambdaPoint(values));
    for (const auto& [J, c] : killed.coeffs) CHECK_FALSE(contains(J, 1));
    CohomClass scaled = varpi_in_w0(arr, lam);
    scaled *= 2 * lam.infinity() + n;
    CHECK(scaled == sf);
  }
}

TEST_CASE("varpi in the NBC basis matches the standard form") {
  Rng rng(32);
  const Arrangement arr = fixtures::random_arr(rng, 1, 3);
  const LambdaPoint lam = fixtures::random_lam(rng, 3);
  CHECK(varpi_in_nbc(arr, lam) == fixtures::nbc(arr, varpi_in_w0(arr, lam), lam));
}

TEST_CASE("multiplying by f_j with j in J deletes j") {
  const Arrangement arr = fixtures::three_n1();
  const LambdaPoint lam = fixtures::lam({"1/2", "1/3", "1/5"});
  CHECK(mult_fj(arr, lam, 2, {1, 2}) == CohomClass::basis(Kind::F, {1}));
  CHECK(mult_fj(arr, lam, 3, {2, 3}) == CohomClass::basis(Kind::F, {2}));
  CHECK(mult_fj_raw(arr, lam, 1, {1}, {1, 2}) == CohomClass::basis(Kind::F, {}));
}

TEST_CASE("f_j F_J does not depend on the auxiliary set") {
  Rng rng(33);
  for (int n = 1; n <= 2; ++n) {
    const Arrangement arr = fixtures::random_arr(rng, n, n + 2);
    const LambdaPoint lam = fixtures::random_lam(rng, arr.m());
    for (const IndexSet& J : admissible_sets(arr.m(), n)) {
      if (J.size() > static_cast<std::size_t>(n)) continue;
      for (int j = 1; j <= arr.m(); ++j) {
        if (contains(J, j)) continue;
        const IndexSet base = insert(J, j);
        const CohomClass expected = mult_fj(arr, lam, j, J);
        const std::size_t missing = static_cast<std::size_t>(n + 1) - base.size();
        for (const IndexSet& rest : subsets_of_size(complement(base, arr.m()), missing)) {
          CHECK(fixtures::nbc(arr, mult_fj_raw(arr, lam, j, J, set_union(base, rest)), lam) == expected);
        }
      }
    }
  }
}

TEST_CASE("f_L W0(N) by chain sums and by peeling agree") {
  Rng rng(34);
  for (int n = 1; n <= 3; ++n) {
    const Arrangement arr = fixtures::random_arr(rng, n, n + 1);
    const LambdaPoint lam = fixtures::random_lam(rng, arr.m());
    const IndexSet N = range_set(1, n + 1);
    CHECK(mult_fJ_w0(arr, lam, {}) == CohomClass::basis(Kind::W0, N));
    for (const IndexSet& L : subsets(N)) {
      if (L.size() == N.size()) continue;
      const CohomClass closed = mult_fJ_w0(arr, lam, N, L);
      CHECK(closed == mult_fJ_w0_recursive(arr, lam, N, L));
      if (!closed.is_zero()) CHECK(weight_range(closed).first >= n - static_cast<int>(L.size()));
    }
  }
}

TEST_CASE("f_j - f_k times F_k") {
  Rng rng(35);
  const Arrangement arr = fixtures::random_arr(rng, 2, 3);
  const LambdaPoint lam = fixtures::random_lam(rng, 3);
  const CohomClass d = mult_diff(arr, lam, 1, 2);
  CHECK(d.kind == Kind::W0);
  CHECK(d[{2}] == arr.minor({kZero, 1, 2}, {kZero, kStar, 2}) / arr.b0s({2}));
  const CohomClass expected =
      mult_fj(arr, lam, 1, {2}) - CohomClass::basis(Kind::F, {});
  CHECK(fixtures::nbc(arr, d, lam) == fixtures::nbc(arr, expected, lam));

  const Arrangement twins(1, {{Scalar(1), Scalar(-3)}, {Scalar(1), Scalar(-3)}});
  CHECK(mult_diff(twins, fixtures::lam({"1/2", "1/3"}), 1, 2).is_zero());
  CHECK(mult_diff(twins, fixtures::lam({"1/2", "1/3"}), 2, 1).is_zero());
}

TEST_CASE("eta chain sums equal one") {
  Rng rng(36);
  for (int n = 1; n <= 3; ++n) {
    const Arrangement arr = fixtures::random_arr(rng, n, n + 2);
    for (const IndexSet& J : admissible_sets(arr.m(), n)) {
      for (int h = 1; h <= arr.m(); ++h) {
        if (contains(J, h)) continue;
        CHECK(eta(arr, h, J) == 1);
      }
    }
  }
}

TEST_CASE("f_1 F_2 by quadrature on every chamber") {
  const Arrangement arr = fixtures::standard_m2();
  const LambdaPoint lam = fixtures::lam({"3/2", "1/2"});
  const std::vector<double> l = lam.as_double();
  Integrand lhs(arr, CohomClass::basis(Kind::F, {2}));
  lhs.multiply(1, 1);
  const Integrand rhs(arr, mult_fj(arr, lam, 1, {2}));
  const IdentityReport report = verify_identity(arr, l, lhs, rhs, chambers_1d(arr));
  CHECK(report.chambers.size() == 3);
  CHECK(report.pass());
}
