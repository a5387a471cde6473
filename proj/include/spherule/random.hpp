#pragma once

#include <cstdint>
#include <random>

#include "spherule/arrangement.hpp"
#include "spherule/cohomology.hpp"

namespace spherule {

using Rng = std::mt19937_64;

/// Grid of rationals p/q with |p| <= max_num and 1 <= q <= max_den.
struct RationalGrid {
  int max_num = 20;
  int max_den = 20;
};

Scalar random_rational(Rng& rng, const RationalGrid& grid);
Scalar random_rational(Rng& rng, const Scalar& lo, const Scalar& hi, int max_den);

struct ArrangementRequest {
  int n = 1;
  int m = 2;
  RationalGrid grid{};
  bool general_position = true;
  /// n = 1 only: minimum distance between sorted roots, keeps quadrature well conditioned.
  double min_root_gap = 0;
  int max_attempts = 100000;
};

/// Random center/radius arrangement satisfying H1, H2 and (optionally) general position.
Arrangement random_arrangement(Rng& rng, const ArrangementRequest& request);

struct LambdaRequest {
  int m = 2;
  Scalar lo = Scalar(1, 20);
  Scalar hi = Scalar(39, 20);
  int max_den = 20;
};

/// Exponents in [lo, hi] avoiding integers, with a non-integral sum.
LambdaPoint random_lambda(Rng& rng, const LambdaRequest& request);

}  // namespace spherule
