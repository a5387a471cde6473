#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"

using namespace spherule;
using fixtures::q;

TEST_CASE("Cayley-Menger entries of the standard pair") {
  const Arrangement arr = fixtures::standard_m2();
  CHECK(arr.entry(kStar, 1) == 4);
  CHECK(arr.entry(kStar, 2) == 4);
  CHECK(arr.entry(1, 2) == 9);
  CHECK(arr.entry(2, 1) == 9);
  CHECK(arr.entry(kZero, kStar) == 1);
  CHECK(arr.entry(kZero, kZero) == 0);
  CHECK(arr.entry(kZero, 2) == 1);
  CHECK(arr.cm_matrix().size() == 4);
}

TEST_CASE("single sphere matrix") {
  const Arrangement arr(1, {{Scalar(0), Scalar(-4)}});
  const Matrix expected{{0, 1, 1}, {1, 0, 4}, {1, 4, 0}};
  CHECK(arr.cm_matrix() == expected);
  CHECK(build_cm_matrix(arr) == expected);
}

TEST_CASE("minors of the standard pair") {
  const Arrangement arr = fixtures::standard_m2();
  CHECK(arr.b0s({1}) == 8);
  CHECK(arr.b0s({2}) == 8);
  CHECK(arr.b0({1, 2}) == 18);
  CHECK(arr.b0s({1, 2}) == -63);
  CHECK(cm_minor(arr, {sym({kZero, kStar}, {1, 2}), sym({kZero, kStar}, {1, 2})}) == -63);
  CHECK(arr.minor({kZero, 1, 1}, {kZero, 1, 1}) == 0);
  CHECK(arr.minor({kZero, kStar, 1}, {kZero, 1, kStar}) == -8);
}

TEST_CASE("Bareiss agrees with cofactor expansion") {
  const Matrix a{{q("1/2"), 3, -1}, {2, q("-5/3"), 4}, {0, 7, q("2/7")}};
  CHECK(det_bareiss(a) == det_cofactor(a));
  const Matrix singular{{1, 2}, {2, 4}};
  CHECK(det_bareiss(singular) == 0);
  const Matrix leading_zero{{0, 1, 2}, {1, 0, 3}, {4, 5, 0}};
  CHECK(det_bareiss(leading_zero) == det_cofactor(leading_zero));
  CHECK(det_bareiss(leading_zero) == 22);
}

TEST_CASE("principal minors of A") {
  const Arrangement arr = fixtures::standard_m2();
  CHECK(a_principal_minor(arr, {1}) == 1);
  CHECK(a_principal_minor(arr, {2}) == 1);
  CHECK(a_principal_minor(arr, {1, 2}) == q("63/64"));
  CHECK(a_principal_minor(arr, {1, 2}) * 4 * arr.r2(1) * arr.r2(2) == -arr.b0s({1, 2}));
  CHECK_THROWS_AS(a_principal_minor(arr, {}), Error);
}

TEST_CASE("principal minors of A on random arrangements") {
  Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    const Arrangement arr = fixtures::random_arr(rng, n, n + 2, false);
    for (const IndexSet& J : admissible_sets(arr.m(), n)) {
      const int p = static_cast<int>(J.size());
      Scalar lhs = a_principal_minor(arr, J) * pow(Scalar(2), static_cast<unsigned>(p));
      for (int j : J) lhs *= arr.r2(j);
      const Scalar sign = p % 2 == 1 ? 1 : -1;
      CHECK(lhs == sign * arr.b0s(J));
    }
  }
}

TEST_CASE("hypotheses") {
  CHECK(check_hypotheses(fixtures::standard_m2()).h1());
  CHECK(check_hypotheses(fixtures::standard_m2()).h2());
  const Arrangement tangent = Arrangement::from_centers({{Scalar(0)}, {Scalar(3)}}, {Scalar(1), Scalar(4)});
  const HypothesisReport report = check_hypotheses(tangent);
  CHECK(tangent.b0s({1, 2}) == 0);
  CHECK_FALSE(report.h2());
  CHECK(report.h2_violations == std::vector<IndexSet>{{1, 2}});
  const Arrangement single = Arrangement::from_centers({{Scalar(1), Scalar(2)}}, {Scalar(5)});
  CHECK(check_hypotheses(single).h1());
  CHECK(check_hypotheses(single).h2());
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Arrangement(1, {{Scalar(0)}}), Error);
  const Arrangement point = Arrangement::from_centers({{Scalar(0)}}, {Scalar(0)});
  try {
    a_principal_minor(point, {1});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroRadius);
  }
}

TEST_CASE("normalized alphas of the standard pair") {
  const Arrangement arr = fixtures::standard_m2();
  const NormalizedAlphas norm = derive_normalized_alphas(invariants_of(arr), 1);
  CHECK(std::abs(norm.alpha[0][0] - 3.0) < 1e-12);
  CHECK(std::abs(norm.alpha[1][1] - (-0.5 * arr.b0s({2}).get_d())) < 1e-12);
  const Invariants back = invariants_of(norm);
  const Invariants orig = invariants_of(arr);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(back.r2[j] - orig.r2[j]) < 1e-12);
    for (int k = 0; k < 2; ++k) CHECK(std::abs(back.rho2[j][k] - orig.rho2[j][k]) < 1e-12);
  }
}

TEST_CASE("normalized alphas round trip for n = 2") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Arrangement arr = fixtures::random_arr(rng, 2, 3);
    const Invariants orig = invariants_of(arr);
    const Invariants back = invariants_of(derive_normalized_alphas(orig, 2));
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(back.r2[j] - orig.r2[j]) < 1e-10 * (1 + std::abs(orig.r2[j])));
      for (int k = 0; k < 3; ++k)
        CHECK(std::abs(back.rho2[j][k] - orig.rho2[j][k]) < 1e-10 * (1 + std::abs(orig.rho2[j][k])));
    }
  }
}

TEST_CASE("row swaps negate minors") {
  Rng rng(3);
  const Arrangement arr = fixtures::random_arr(rng, 2, 4);
  const Symbols rows{kZero, kStar, 1, 3};
  const Symbols cols{kZero, 2, 3, 4};
  Symbols swapped = rows;
  std::swap(swapped[1], swapped[3]);
  CHECK(arr.minor(swapped, cols) == -arr.minor(rows, cols));
}

TEST_CASE("eval_f and same_sphere") {
  const Arrangement arr = fixtures::standard_m2();
  CHECK(arr.eval_f(1, {Scalar(2)}) == 0);
  CHECK(arr.eval_f(2, {Scalar(1)}) == 0);
  CHECK(arr.eval_f(2, {Scalar(0)}) == 5);
  CHECK_FALSE(arr.same_sphere(1, 2));
  const Arrangement twins(1, {{Scalar(1), Scalar(-3)}, {Scalar(1), Scalar(-3)}});
  CHECK(twins.same_sphere(1, 2));
}
