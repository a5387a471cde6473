#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "spherule/contiguity.hpp"
#include "spherule/verify.hpp"

using namespace spherule;
using fixtures::q;

TEST_CASE("chambers of the standard pair") {
  const std::vector<Chamber> ch = chambers_1d(fixtures::standard_m2());
  REQUIRE(ch.size() == 3);
  const double expected[3][2] = {{-2, 1}, {1, 2}, {2, 5}};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(double(ch[i].a) - expected[i][0]) < 1e-15);
    CHECK(std::abs(double(ch[i].b) - expected[i][1]) < 1e-15);
  }
  CHECK(ch[0].sphere_a == 1);
  CHECK(ch[0].sphere_b == 2);
}

TEST_CASE("single sphere has one chamber") {
  const std::vector<Chamber> ch = chambers_1d(Arrangement::from_centers({{Scalar(1)}}, {Scalar(9)}));
  REQUIRE(ch.size() == 1);
  CHECK(std::abs(double(ch[0].a) + 2) < 1e-15);
  CHECK(std::abs(double(ch[0].b) - 4) < 1e-15);
}

TEST_CASE("chamber count is 2m - 1") {
  Rng rng(61);
  for (int m = 2; m <= 5; ++m) CHECK(chambers_1d(fixtures::random_arr(rng, 1, m)).size() == dimension(m, 1));
}

TEST_CASE("quadrature is stable across tolerances") {
  const Arrangement arr = fixtures::standard_m2();
  const Chamber ch = chambers_1d(arr)[1];
  const CohomClass one = CohomClass::basis(Kind::F, {});
  const QuadratureResult coarse = integrate(arr, {0.5, 0.5}, one, ch, {1e-8, 15});
  const QuadratureResult fine = integrate(arr, {0.5, 0.5}, one, ch, {1e-12, 15});
  CHECK(fine.value > 0);
  CHECK(std::abs(fine.value - coarse.value) < 1e-10 * fine.value);
  CHECK(fine.evaluations > 0);
}

TEST_CASE("endpoint exponents decide convergence") {
  const Arrangement arr = fixtures::standard_m2();
  const Chamber ch = chambers_1d(arr)[1];
  Integrand once(arr, CohomClass::basis(Kind::F, {1}));
  CHECK_NOTHROW(check_convergence({0.5, 0.5}, once, ch));
  CHECK(integrate(arr, {0.5, 0.5}, once, ch).value != 0);
  Integrand twice = once;
  twice.multiply(1, -1);
  try {
    check_convergence({0.5, 0.5}, twice, ch);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConvergenceViolation);
  }
  CHECK_THROWS_AS(integrate(arr, {0.5, 0.5}, twice, ch), Error);
  CHECK_NOTHROW(check_convergence({1.5, 0.5}, twice, ch));
}

TEST_CASE("standard form expansion by quadrature") {
  const Arrangement arr = fixtures::standard_m2();
  const LambdaPoint lam = fixtures::lam({"1/2", "1/2"});
  CohomClass lhs = CohomClass::basis(Kind::F, {}, 2 * lam.infinity() + 1);
  const IdentityReport report = verify_identity(arr, lam.as_double(), lhs, standard_form(arr, lam), chambers_1d(arr));
  CHECK(report.chambers.size() == 3);
  CHECK(report.pass());
  CHECK(report.max_residual() < 1e-6);
}

TEST_CASE("zero against zero") {
  const Arrangement arr = fixtures::standard_m2();
  const IdentityReport report = verify_identity(arr, {0.5, 0.5}, CohomClass{}, CohomClass{}, chambers_1d(arr));
  CHECK(report.pass());
  CHECK(report.max_residual() == 0);
}

TEST_CASE("skew relation integrates to zero") {
  const Arrangement arr = fixtures::three_n1();
  const CohomClass skew = skew_relation(arr, 1, 2, 3);
  CohomClass positive(Kind::F, {});
  CohomClass negative(Kind::F, {});
  for (const auto& [K, c] : skew.coeffs) {
    if (K.size() == 2) positive += CohomClass::basis(Kind::F, K, c);
    else negative -= CohomClass::basis(Kind::F, K, c);
  }
  const IdentityReport report = verify_identity(arr, {0.5, 0.4, 0.3}, positive, negative, chambers_1d(arr));
  CHECK(report.chambers.size() == 5);
  CHECK(report.pass());
}

TEST_CASE("connection matrix against finite differences, two spheres") {
  const Arrangement arr = fixtures::standard_m2();
  const LambdaPoint lam = fixtures::lam({"3/2", "5/4"});
  const std::vector<std::vector<Scalar>> move_center{{Scalar(0), Scalar(0)}, {Scalar(-1), Scalar(6)}};
  const GaussManinReport report = verify_gauss_manin(arr, lam, move_center);
  CHECK(report.entries.size() == 9);
  CHECK(report.pass());
  const GaussManinReport varpi = verify_nabla_varpi(arr, lam, move_center);
  CHECK(varpi.pass());
}

TEST_CASE("zero tangent gives zero derivative") {
  const Arrangement arr = fixtures::standard_m2();
  const GaussManinReport report =
      verify_gauss_manin(arr, fixtures::lam({"3/2", "5/4"}), {{Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0)}});
  CHECK(report.pass());
  for (const GaussManinEntry& e : report.entries) {
    CHECK(std::abs(e.derivative) < 1e-12);
    CHECK(e.predicted == 0);
  }
}

TEST_CASE("connection matrix against finite differences, three spheres") {
  const Arrangement arr = fixtures::three_n1();
  const LambdaPoint lam = fixtures::lam({"7/5", "6/5", "3/2"});
  const std::vector<std::vector<Scalar>> grow_first{{Scalar(0), Scalar(-1)}, {Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0)}};
  const GaussManinReport report = verify_gauss_manin(arr, lam, grow_first);
  CHECK(report.entries.size() == 25);
  CHECK(report.pass());
}

TEST_CASE("Monte Carlo smoke test in the plane") {
  const Arrangement arr = Arrangement::from_centers({{Scalar(0), Scalar(0)}, {Scalar(1), Scalar(0)}}, {Scalar(1), Scalar(1)});
  const std::vector<SignRegion> regions = sign_regions_2d(arr);
  CHECK(regions.size() == 3);
  const QuadratureResult a = monte_carlo_2d(arr, {0.5, 0.5}, CohomClass::basis(Kind::F, {}), regions.front(), 20000, 1);
  const QuadratureResult b = monte_carlo_2d(arr, {0.5, 0.5}, CohomClass::basis(Kind::F, {}), regions.front(), 20000, 1);
  CHECK(a.value == b.value);
  CHECK(a.value > 0);
}

TEST_CASE("worker thread count is positive") { CHECK(worker_threads() >= 1); }
