#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "spherule/connection.hpp"

using namespace spherule;
using fixtures::q;

namespace {

bool same_form(const Arrangement& arr, const ParamOneForm& a, const ParamOneForm& b) {
  return a == b || pullback_to_alpha(arr, a - b).empty();
}

}  // namespace

TEST_CASE("theta forms of the standard pair") {
  const Arrangement arr = fixtures::standard_m2();
  const ParamOneForm t1 = theta(arr, {1});
  CHECK(t1.get(dr2(1)) == q("-1/8"));
  const ParamOneForm t12 = theta(arr, {1, 2});
  CHECK(t12.get(drho2(1, 2)) == q("1/18"));
  CHECK(format_param_key(dr2(1)) == "dr2_1");
  CHECK(format_param_key(drho2(1, 2)) == "drho2_1_2");
}

TEST_CASE("theta is symmetric under relabeling") {
  const Arrangement arr = fixtures::three_n1();
  const Arrangement swapped = Arrangement::from_centers({{Scalar(3)}, {Scalar(0)}, {Scalar(1)}}, {Scalar(4), Scalar(4), q("9/4")});
  ParamOneForm relabeled;
  for (const auto& [key, c] : theta(swapped, {1, 3})) {
    auto swap = [](int i) { return i == 1 ? 2 : i == 2 ? 1 : i; };
    const ParamKey k = key.first == 0 ? dr2(swap(key.second)) : drho2(std::min(swap(key.first), swap(key.second)), std::max(swap(key.first), swap(key.second)));
    relabeled.add(k, c);
  }
  CHECK(relabeled == theta(arr, {2, 3}));
}

TEST_CASE("exact theta chain has no radius components") {
  Rng rng(51);
  for (int n = 1; n <= 3; ++n) {
    const Arrangement arr = fixtures::random_arr(rng, n, n + 1);
    for (int j = 1; j <= n; ++j) {
      for (int k = j; k <= std::min(n, j + 1); ++k) {
        const ParamOneForm form = theta_chain_exact(arr, j, k);
        for (int l = 1; l <= n + 1; ++l) CHECK(form.get(dr2(l)) == 0);
        if (j >= 2) CHECK(form.get(drho2(1, 2)) == 0);
      }
    }
    if (n >= 2) {
      IndexSet rest = range_set(3, n + 1);
      CHECK(theta_chain_exact(arr, 1, 2).get(drho2(1, 2)) ==
            arr.b0(set_union({1}, rest)) / arr.b0(range_set(1, n + 1)));
    }
  }
}

TEST_CASE("exact and floating theta chains agree") {
  Rng rng(52);
  const Arrangement arr = fixtures::random_arr(rng, 3, 4);
  const Invariants inv = invariants_of(arr);
  for (int j = 1; j <= 3; ++j) {
    for (int k = j; k <= std::min(3, j + 1); ++k) {
      const FloatOneForm approx = theta_chain(inv, 3, j, k);
      for (const auto& [key, c] : theta_chain_exact(arr, j, k)) {
        const auto it = approx.find(key);
        const double v = it == approx.end() ? 0.0 : it->second;
        CHECK(std::abs(v - c.get_d()) < 1e-9 * (1 + std::abs(c.get_d())));
      }
    }
  }
}

TEST_CASE("two-sphere connection entries") {
  Rng rng(53);
  for (int n = 1; n <= 2; ++n) {
    const Arrangement arr = fixtures::random_arr(rng, n, 2);
    const LambdaPoint lam = fixtures::random_lam(rng, 2);
    const ConnectionMatrix gm = gm_matrix(arr, lam);
    CHECK(gm.basis.size() == 3);
    for (int j = 1; j <= 2; ++j) {
      const int k = 3 - j;
      ParamOneForm expected = theta(arr, {j}) + theta(arr, {1, 2});
      expected *= -lam[k];
      CHECK(gm.entry({k}, {j}) == expected);
    }
    for (const IndexSet& J : nbc_basis(2, n)) CHECK(reduce_form_class(arr, closed_form_m2(arr, lam, J)) == gm_column(arr, lam, J));
  }
}

TEST_CASE("three circles on a line") {
  Rng rng(54);
  const Arrangement arr = fixtures::random_arr(rng, 1, 3);
  const LambdaPoint lam = fixtures::random_lam(rng, 3);
  const ConnectionMatrix gm = gm_matrix(arr, lam);
  CHECK(gm.basis == nbc_basis(3, 1));
  for (int j = 1; j <= 3; ++j) {
    const FormClass column = closed_form_n1(arr, lam, {j});
    for (int k = 1; k <= 3; ++k) {
      for (int l = k + 1; l <= 3; ++l) {
        if (j != k && j != l) CHECK(pullback_to_alpha(arr, column.get({k, l})).empty());
      }
    }
  }
  for (const IndexSet& J : nbc_basis(3, 1)) {
    const FormClass closed = reduce_form_class(arr, closed_form_n1(arr, lam, J));
    const FormClass recursive = gm_column(arr, lam, J);
    for (const IndexSet& K : nbc_basis(3, 1)) CHECK(same_form(arr, closed.get(K), recursive.get(K)));
  }
}

TEST_CASE("columns do not depend on the recursion anchor") {
  Rng rng(55);
  const Arrangement arr = fixtures::random_arr(rng, 2, 3);
  const LambdaPoint lam = fixtures::random_lam(rng, 3);
  for (const IndexSet& J : nbc_basis(3, 2)) {
    for (int a : J) CHECK(gm_column(arr, lam, J, a) == gm_column(arr, lam, J));
  }
  CHECK(gm_singleton_column(arr, lam, 2) == gm_column(arr, lam, {2}));
}

TEST_CASE("zeta forms") {
  Rng rng(56);
  const Arrangement arr = fixtures::random_arr(rng, 1, 4);
  CHECK(zeta_pair(arr, 1, 3) == zeta_pair(arr, 3, 1));
  CHECK(pullback_to_alpha(arr, zeta_triple(arr, 1, 2, 4)).empty());
  CHECK(pullback_to_alpha(arr, zeta_triple(arr, 2, 3, 4)).empty());
  CHECK_FALSE(zeta_pair_at(fixtures::standard_m2(), 1, 2).empty());
}

TEST_CASE("Wronskian trace") {
  Rng rng(57);
  for (int n = 1; n <= 3; ++n) {
    const Arrangement arr = fixtures::random_arr(rng, n, 2);
    const WronskianReport report = wronskian_trace(arr, fixtures::random_lam(rng, 2));
    CAPTURE(n);
    CHECK(report.equal());
    CHECK_FALSE(report.trace.empty());
  }
}

TEST_CASE("covariant derivative of the standard form") {
  Rng rng(58);
  const Arrangement arr = fixtures::random_arr(rng, 2, 3);
  const LambdaPoint lam = fixtures::random_lam(rng, 3);
  const FormMap nabla = nabla_b_varpi(arr, lam);
  for (int j = 1; j <= 3; ++j) {
    ParamOneForm expected = theta(arr, {j});
    expected *= lam[j];
    CHECK(nabla.at({j}) == expected);
  }
  std::vector<Scalar> values = lam.values();
  values[1] = 0;
  for (const auto& [J, form] : nabla_b_varpi(arr, LambdaPoint(values))) {
    if (contains(J, 2)) CHECK(form.empty());
  }
}

TEST_CASE("unbounded cycle coefficients") {
  const auto coeffs = infinity_cycle_coeffs({1.0 / 3, 1.0 / 3}, 1);
  CHECK(std::abs(coeffs.at({1}) + 1.0) < 1e-12);
  CHECK(std::abs(coeffs.at({2}) + 1.0) < 1e-12);
  const auto a = infinity_cycle_coeffs({0.2, 0.45}, 1);
  const auto b = infinity_cycle_coeffs({0.45, 0.2}, 1);
  CHECK(std::abs(a.at({1}) - b.at({2})) < 1e-12);
}

TEST_CASE("chain rule to the coefficients") {
  const Arrangement arr = fixtures::standard_m2();
  ParamOneForm form;
  form.add(dr2(1), Scalar(1));
  const AlphaOneForm pulled = pullback_to_alpha(arr, form);
  CHECK(pulled.get({1, 0}) == -1);
  CHECK(pulled.get({1, 1}) == 0);
  const std::vector<std::vector<Scalar>> tangent{{q("1/3"), Scalar(2)}, {Scalar(1), q("-1/2")}};
  const ParamTangent rates = invariant_rates(arr, tangent);
  CHECK(rates.at(dr2(2)) == 2 * arr.alpha(2, 1) * tangent[1][0] - tangent[1][1]);
  const ParamOneForm t = theta(arr, {1, 2}) + theta(arr, {2});
  Scalar through_alpha = 0;
  for (const auto& [key, c] : pullback_to_alpha(arr, t)) {
    const std::size_t nu = key.second == 0 ? 1 : 0;
    through_alpha += c * tangent[static_cast<std::size_t>(key.first - 1)][nu];
  }
  CHECK(evaluate(t, rates) == through_alpha);
}

TEST_CASE("conjecture residual checker runs") {
  Rng rng(59);
  const Arrangement arr = fixtures::random_arr(rng, 1, 2);
  const ConjectureReport report = conjecture_check(arr, fixtures::random_lam(rng, 2), fixtures::random_lam(rng, 2));
  CHECK(report.lambda_independent() == (report.residual_first == report.residual_second));
}
