#include "spherule/random.hpp"

#include <algorithm>
#include <cmath>

namespace spherule {

Scalar random_rational(Rng& rng, const RationalGrid& grid) {
  std::uniform_int_distribution<int> num(-grid.max_num, grid.max_num);
  std::uniform_int_distribution<int> den(1, grid.max_den);
  Scalar q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Scalar random_rational(Rng& rng, const Scalar& lo, const Scalar& hi, int max_den) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty sampling interval");
  std::uniform_int_distribution<int> den(1, max_den);
  for (;;) {
    const int q = den(rng);
    mpz_class first = mpz_class(lo * q);
    if (Scalar(first) / q < lo) first += 1;
    mpz_class last = mpz_class(hi * q);
    if (Scalar(last) / q > hi) last -= 1;
    if (last < first) continue;
    std::uniform_int_distribution<long> pick(first.get_si(), last.get_si());
    Scalar r(pick(rng), q);
    r.canonicalize();
    return r;
  }
}

namespace {

bool roots_separated(const Arrangement& arr, double gap) {
  if (arr.n() != 1 || gap <= 0) return true;
  std::vector<double> roots;
  for (int j = 1; j <= arr.m(); ++j) {
    const double c = -arr.alpha(j, 1).get_d();
    const double r = std::sqrt(arr.r2(j).get_d());
    roots.push_back(c - r);
    roots.push_back(c + r);
  }
  std::sort(roots.begin(), roots.end());
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (roots[i] - roots[i - 1] < gap) return false;
  return true;
}

}  // namespace

Arrangement random_arrangement(Rng& rng, const ArrangementRequest& request) {
  if (request.n < 1 || request.m < 1) throw Error(ErrorKind::InvalidArgument, "n and m must be positive");
  const Scalar spread(2);
  const Scalar r_lo(1), r_hi(request.grid.max_num);
  for (int attempt = 0; attempt < request.max_attempts; ++attempt) {
    std::vector<std::vector<Scalar>> centers;
    std::vector<Scalar> radius_sq;
    for (int j = 0; j < request.m; ++j) {
      std::vector<Scalar> c;
      for (int nu = 0; nu < request.n; ++nu) c.push_back(random_rational(rng, -spread, spread, request.grid.max_den));
      centers.push_back(std::move(c));
      radius_sq.push_back(random_rational(rng, r_lo, r_hi, request.grid.max_den));
    }
    Arrangement arr = Arrangement::from_centers(centers, radius_sq);
    const HypothesisReport rep = check_hypotheses(arr);
    if (!rep.h1() || !rep.h2()) continue;
    if (request.general_position && !general_position(arr)) continue;
    if (!roots_separated(arr, request.min_root_gap)) continue;
    return arr;
  }
  throw Error(ErrorKind::InvalidArgument, "no admissible random arrangement found");
}

LambdaPoint random_lambda(Rng& rng, const LambdaRequest& request) {
  for (;;) {
    std::vector<Scalar> v;
    bool ok = true;
    for (int j = 0; j < request.m && ok; ++j) {
      Scalar x = random_rational(rng, request.lo, request.hi, request.max_den);
      if (x.get_den() == 1) ok = false;
      v.push_back(x);
    }
    if (!ok) continue;
    LambdaPoint l(v);
    if (l.infinity().get_den() == 1) continue;
    return l;
  }
}

}  // namespace spherule
