#pragma once

#include <string>
#include <vector>

#include "spherule/arrangement.hpp"
#include "spherule/cohomology.hpp"
#include "spherule/random.hpp"

namespace fixtures {

using namespace spherule;

inline Scalar q(const char* text) { return parse_scalar(text); }

/// f1 = x^2 - 4, f2 = x^2 - 6x + 5.
inline Arrangement standard_m2() { return Arrangement(1, {{Scalar(0), Scalar(-4)}, {Scalar(-3), Scalar(5)}}); }

/// Centers 0, 3, 1 with radii squared 4, 4, 9/4.
inline Arrangement three_n1() {
  return Arrangement::from_centers({{Scalar(0)}, {Scalar(3)}, {Scalar(1)}}, {Scalar(4), Scalar(4), q("9/4")});
}

inline LambdaPoint lam(std::vector<const char*> values) {
  std::vector<Scalar> v;
  for (const char* s : values) v.push_back(q(s));
  return LambdaPoint(v);
}

inline Arrangement random_arr(Rng& rng, int n, int m, bool general = true, double gap = 0) {
  ArrangementRequest req;
  req.n = n;
  req.m = m;
  req.general_position = general;
  req.min_root_gap = gap;
  return random_arrangement(rng, req);
}

inline LambdaPoint random_lam(Rng& rng, int m) { return random_lambda(rng, {m}); }

/// Reduction to the NBC F basis of a class of either kind.
inline CohomClass nbc(const Arrangement& arr, const CohomClass& cls, const LambdaPoint& l) {
  return reduce_to_nbc(arr, cls.kind == Kind::W0 ? to_F(arr, cls) : cls, &l);
}

}  // namespace fixtures
