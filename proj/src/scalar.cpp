#include "spherule/scalar.hpp"

#include <cctype>

namespace spherule {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroRadius: return "ZeroRadius";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularMinor: return "SingularMinor";
    case ErrorKind::ResonantDenominator: return "ResonantDenominator";
    case ErrorKind::ConvergenceViolation: return "ConvergenceViolation";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::DegenerateRoots: return "DegenerateRoots";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InconsistentDimension: return "InconsistentDimension";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw Error(ErrorKind::ParseError, "not a rational literal: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  mpz_class p(n, 10), q(std::string(den), 10);
  if (q == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Scalar r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

Scalar pow(const Scalar& base, unsigned exponent) {
  Scalar r(1);
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

Scalar checked_div(const Scalar& num, const Scalar& den, const char* context) {
  if (is_zero(den)) throw Error(ErrorKind::SingularMinor, std::string("vanishing denominator in ") + context);
  return num / den;
}

}  // namespace spherule
