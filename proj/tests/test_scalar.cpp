#include "doctest.h"
#include "fixtures.hpp"

using namespace spherule;

TEST_CASE("parse_scalar reads integers and fractions exactly") {
  CHECK(parse_scalar("1/3") == Scalar(1, 3));
  CHECK(parse_scalar("-6/4") == Scalar(-3, 2));
  CHECK(parse_scalar(" 7 ") == Scalar(7));
  CHECK(parse_scalar("+5/10") == Scalar(1, 2));
  CHECK(to_string(parse_scalar("6/4")) == "3/2");
}

TEST_CASE("parse_scalar rejects malformed literals") {
  for (const char* bad : {"", "1/0", "abc", "1.5", "1/-2", "/3", "3/"}) {
    CAPTURE(bad);
    try {
      parse_scalar(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }
}

TEST_CASE("checked_div names the vanishing divisor") {
  CHECK(checked_div(Scalar(3), Scalar(6), "x") == Scalar(1, 2));
  try {
    checked_div(Scalar(1), Scalar(0), "B(0*J)");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMinor);
    CHECK(std::string(e.what()).find("B(0*J)") != std::string::npos);
  }
}

TEST_CASE("pow by repeated multiplication") {
  CHECK(pow(Scalar(2, 3), 3) == Scalar(8, 27));
  CHECK(pow(Scalar(5), 0) == Scalar(1));
}

TEST_CASE("Sparse prunes zero coefficients and is linear") {
  Sparse<int, Scalar> a, b;
  a.add(1, Scalar(2));
  a.add(2, Scalar(3));
  b.add(1, Scalar(-2));
  b.add(3, Scalar(1, 2));
  const auto c = a + b;
  CHECK(c.size() == 2);
  CHECK_FALSE(c.contains(1));
  CHECK(c.get(3) == Scalar(1, 2));
  CHECK((a - a).empty());
  CHECK((Scalar(0) * a).empty());
  CHECK((Scalar(2) * a).get(2) == Scalar(6));
  a.add(7, Scalar(0));
  CHECK_FALSE(a.contains(7));
}

TEST_CASE("Error kinds have stable names") {
  CHECK(std::string(to_string(ErrorKind::ResonantDenominator)) == "ResonantDenominator");
  CHECK(std::string(to_string(ErrorKind::StepTooLarge)) == "StepTooLarge");
  const Error e(ErrorKind::ZeroRadius, "r_1^2 = 0");
  CHECK(std::string(e.what()) == "ZeroRadius: r_1^2 = 0");
}
