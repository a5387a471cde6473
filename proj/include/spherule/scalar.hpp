#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace spherule {

/// Exact rational, always kept in canonical reduced form by GMP.
using Scalar = mpq_class;

enum class ErrorKind {
  InvalidArgument,
  ZeroRadius,
  NegativeDiscriminant,
  DimensionMismatch,
  SingularMinor,
  ResonantDenominator,
  ConvergenceViolation,
  ToleranceNotMet,
  DegenerateRoots,
  StepTooLarge,
  ParseError,
  InconsistentDimension,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parses "p/q", "-p/q" or an integer literal.
Scalar parse_scalar(std::string_view text);

std::string to_string(const Scalar& q);

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

Scalar pow(const Scalar& base, unsigned exponent);

/// Divides, raising SingularMinor (with the given context) on a zero divisor.
Scalar checked_div(const Scalar& num, const Scalar& den, const char* context);

/// Finite formal sum of keys with coefficients.  Zero coefficients are pruned.
/// C must provide +=, unary -, scaling by Scalar, and is_zero(C).
template <class Key, class C, class Less = std::less<Key>>
class Sparse {
 public:
  using map_type = std::map<Key, C, Less>;

  Sparse() = default;

  void add(const Key& key, const C& c) {
    if (is_zero(c)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  void add(const Sparse& other, const Scalar& s = Scalar(1)) {
    if (is_zero(s)) return;
    for (const auto& [k, c] : other.terms_) add(k, scaled(c, s));
  }

  C get(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? C() : it->second;
  }

  bool contains(const Key& key) const { return terms_.count(key) != 0; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const map_type& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Sparse& operator*=(const Scalar& s) {
    if (is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second = scaled(kv.second, s);
    return *this;
  }
  Sparse& operator+=(const Sparse& o) {
    add(o);
    return *this;
  }
  Sparse& operator-=(const Sparse& o) {
    add(o, Scalar(-1));
    return *this;
  }
  friend Sparse operator+(Sparse a, const Sparse& b) { return a += b; }
  friend Sparse operator-(Sparse a, const Sparse& b) { return a -= b; }
  friend Sparse operator*(Sparse a, const Scalar& s) { return a *= s; }
  friend Sparse operator*(const Scalar& s, Sparse a) { return a *= s; }
  friend bool operator==(const Sparse& a, const Sparse& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Sparse& a, const Sparse& b) { return !(a == b); }

 private:
  static C scaled(const C& c, const Scalar& s) {
    if constexpr (std::is_same_v<C, Scalar>) {
      return Scalar(c * s);
    } else {
      C r = c;
      r *= s;
      return r;
    }
  }

  map_type terms_;
};

template <class Key, class C, class Less>
bool is_zero(const Sparse<Key, C, Less>& s) {
  return s.empty();
}

}  // namespace spherule
