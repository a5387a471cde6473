#include "doctest.h"
#include "fixtures.hpp"

using namespace spherule;
using fixtures::q;

TEST_CASE("W0 in the F basis for the standard pair") {
  const Arrangement arr = fixtures::standard_m2();
  CHECK(w0_in_F(arr, {1}) == CohomClass::basis(Kind::F, {1}, Scalar(8)));
  const CohomClass w12 = w0_in_F(arr, {1, 2});
  CHECK(w12[{1, 2}] == -63);
  CHECK(w12.kind == Kind::F);
  for (const auto& [K, c] : w12.coeffs) CHECK(is_subset(K, {1, 2}));
}

TEST_CASE("W0 of an oversized set vanishes") {
  const Arrangement arr = fixtures::three_n1();
  CHECK(w0_in_F(arr, {1, 2, 3}).is_zero());
}

TEST_CASE("beta on the diagonal is one and the recurrence matches the chain sum") {
  Rng rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + trial % 3;
    const Arrangement arr = fixtures::random_arr(rng, n, n + 1 + trial % 2);
    for (const IndexSet& J : admissible_sets(arr.m(), n)) {
      CHECK(beta(arr, J, J) == 1);
      for (const IndexSet& K : subsets(J)) {
        if (K.empty()) continue;
        CHECK(beta(arr, K, J) == beta_closed(arr, K, J));
        CHECK(beta_tilde(arr, K, J) * arr.b0s(J) == beta(arr, K, J));
      }
    }
  }
}

TEST_CASE("beta matrix lists only nonzero subset entries") {
  const Arrangement arr = fixtures::three_n1();
  for (const BetaEntry& e : beta_matrix(arr)) {
    CHECK(!e.K.empty());
    CHECK(is_subset(e.K, e.J));
    CHECK(e.value != 0);
    CHECK(e.value == beta(arr, e.K, e.J));
  }
}

TEST_CASE("F and W0 coordinates invert each other") {
  Rng rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 3;
    const Arrangement arr = fixtures::random_arr(rng, n, n + 2);
    for (const IndexSet& J : admissible_sets(arr.m(), n)) {
      const CohomClass w = CohomClass::basis(Kind::W0, J);
      CHECK(to_W0(arr, to_F(arr, w)) == w);
      const CohomClass f = CohomClass::basis(Kind::F, J, arr.b0s(J));
      CHECK(to_F(arr, to_W0(arr, f)) == f);
    }
  }
}

TEST_CASE("W0(13) expands on W0(12) and W0(23)") {
  const Arrangement arr = fixtures::three_n1();
  const Scalar r12 = arr.alpha(1, 1) - arr.alpha(2, 1);
  const Scalar r13 = arr.alpha(1, 1) - arr.alpha(3, 1);
  const Scalar r23 = arr.alpha(2, 1) - arr.alpha(3, 1);
  const Coeffs expansion = nbc_expansion_W0(arr, {1, 3});
  CHECK(expansion.size() == 2);
  CHECK(expansion.get({2, 3}) == r13 / r23);
  CHECK(expansion.get({1, 2}) == r13 / r12);
  CHECK(expansion.get({1, 2}) == q("1/3"));
  CHECK(expansion.get({2, 3}) == q("-1/2"));
  CohomClass lhs = to_F(arr, CohomClass::basis(Kind::W0, {1, 3}));
  CohomClass rhs;
  for (const auto& [K, c] : expansion) rhs += c * to_F(arr, CohomClass::basis(Kind::W0, K));
  CHECK(reduce_to_nbc(arr, lhs) == reduce_to_nbc(arr, rhs));
}

TEST_CASE("W0 relation and partial fractions for |J| = n+2") {
  const Arrangement arr = fixtures::three_n1();
  const Coeffs rel = w0_relation(arr, {1, 2, 3});
  CHECK(rel.get({3}) == 1);
  CohomClass sum(Kind::F, {});
  for (const auto& [nu, c] : rel) sum += c * to_F(arr, CohomClass::basis(Kind::W0, remove({1, 2, 3}, nu[0])));
  CHECK(reduce_to_nbc(arr, sum).is_zero());
  const Coeffs pf = partial_fraction(arr, {1, 2, 3});
  const std::vector<Scalar> x{q("7/3")};
  Scalar rhs = 0;
  for (const auto& [K, c] : pf) rhs += c * evaluate(arr, CohomClass::basis(Kind::F, K), x);
  CHECK(evaluate(arr, CohomClass::basis(Kind::F, {1, 2, 3}), x) == rhs);
}

TEST_CASE("evaluate gives the rational function") {
  const Arrangement arr = fixtures::standard_m2();
  const std::vector<Scalar> x{Scalar(4)};
  CHECK(evaluate(arr, CohomClass::basis(Kind::F, {1}), x) == q("1/12"));
  CHECK(evaluate(arr, CohomClass::basis(Kind::F, {1, 2}), x) == q("-1/36"));
  CHECK(evaluate(arr, CohomClass::basis(Kind::F, {}), x) == 1);
}

TEST_CASE("NBC expansions agree pointwise") {
  Rng rng(8);
  const Arrangement arr = fixtures::random_arr(rng, 1, 4);
  const std::vector<Scalar> x{q("17/7")};
  for (const IndexSet& K : admissible_sets(4, 1)) {
    const CohomClass lhs = CohomClass::basis(Kind::F, K);
    const CohomClass rhs(Kind::F, nbc_expansion_F(arr, K));
    CHECK(evaluate(arr, lhs, x) == evaluate(arr, rhs, x));
  }
}

TEST_CASE("NBC-supported classes are unchanged by reduction") {
  const Arrangement arr = fixtures::three_n1();
  CohomClass cls;
  cls += CohomClass::basis(Kind::F, {1}, q("2/3"));
  cls += CohomClass::basis(Kind::F, {2, 3}, Scalar(-5));
  CHECK(reduce_to_nbc(arr, cls) == cls);
}

TEST_CASE("reduction is idempotent") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const Arrangement arr = fixtures::random_arr(rng, n, n + 3);
    const LambdaPoint lam = fixtures::random_lam(rng, arr.m());
    CohomClass cls;
    cls += CohomClass::basis(Kind::F, {}, Scalar(trial + 1));
    for (const IndexSet& J : admissible_sets(arr.m(), n)) cls += CohomClass::basis(Kind::F, J, Scalar(int(J.size()) - trial));
    const CohomClass once = reduce_to_nbc(arr, cls, &lam);
    for (const auto& [K, c] : once.coeffs) CHECK(is_nbc(K, arr.m(), n));
    CHECK(reduce_to_nbc(arr, once, &lam) == once);
  }
}

TEST_CASE("varpi needs exponents to reduce") {
  const Arrangement arr = fixtures::three_n1();
  CHECK_THROWS_AS(reduce_to_nbc(arr, CohomClass::basis(Kind::F, {})), Error);
}

TEST_CASE("skew relation is zero in cohomology") {
  const Arrangement arr = fixtures::three_n1();
  const CohomClass skew = skew_relation(arr, 1, 2, 3);
  CHECK_FALSE(skew.is_zero());
  CHECK(fixtures::nbc(arr, skew, LambdaPoint({q("1/2"), q("1/3"), q("1/5")})).is_zero());
}

TEST_CASE("weight range") {
  const Arrangement arr = fixtures::standard_m2();
  CHECK(weight_range(CohomClass::basis(Kind::F, {2})) == std::pair<int, int>{1, 1});
  CHECK(weight_range(CohomClass{}) == std::pair<int, int>{0, 0});
  CHECK(weight_range(w0_in_F(arr, {1, 2})) == std::pair<int, int>{1, 2});
}

TEST_CASE("lambda point arithmetic") {
  const LambdaPoint lam = fixtures::lam({"1/2", "1/3", "3/2"});
  CHECK(lam.infinity() == q("7/3"));
  CHECK(lam.sum({1, 3}) == 2);
  CHECK(lam.product({1, 2}) == q("1/6"));
  CHECK(lam.shifted(2, -1)[2] == q("-2/3"));
  CHECK(resonant_div(Scalar(1), Scalar(2), "x") == q("1/2"));
  try {
    resonant_div(Scalar(1), Scalar(0), "lambda_1 - 1");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResonantDenominator);
  }
}

TEST_CASE("class formatting") {
  CohomClass cls;
  cls += CohomClass::basis(Kind::F, {1, 2}, q("-1/2"));
  CHECK_FALSE(format_class(cls).empty());
}
