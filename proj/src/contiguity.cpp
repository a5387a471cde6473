#include "spherule/contiguity.hpp"

#include <algorithm>

namespace spherule {

namespace {

Symbols cat(std::initializer_list<int> head, const OrderedSeq& mid, const IndexSet& tail = {}) {
  Symbols s(head);
  s.insert(s.end(), mid.begin(), mid.end());
  s.insert(s.end(), tail.begin(), tail.end());
  return s;
}

OrderedSeq reversed_prefix(const OrderedSeq& seq, std::size_t len) {
  return OrderedSeq(seq.rbegin() + static_cast<std::ptrdiff_t>(seq.size() - len), seq.rend());
}

Scalar falling_denominator(const Scalar& base, int count, const std::string& context) {
  Scalar d(1);
  for (int nu = 1; nu <= count; ++nu) {
    Scalar f = base - nu;
    if (is_zero(f)) throw Error(ErrorKind::ResonantDenominator, "vanishing factor in " + context);
    d *= f;
  }
  return d;
}

void require_sphere(const Arrangement& arr, int j) {
  if (j < 1 || j > arr.m()) throw Error(ErrorKind::InvalidArgument, "sphere index out of range: " + std::to_string(j));
}

void require_lambda(const Arrangement& arr, const LambdaPoint& lambda) {
  if (lambda.m() != arr.m()) throw Error(ErrorKind::InvalidArgument, "exponent vector length differs from m");
}

CohomClass w0_class(const IndexSet& J, const Scalar& c) { return CohomClass::basis(Kind::W0, J, c); }

}  // namespace

CohomClass standard_form(const Arrangement& arr, const LambdaPoint& lambda) {
  require_lambda(arr, lambda);
  const int n = arr.n();
  const Scalar base = lambda.infinity() + n;
  CohomClass r;
  r.kind = Kind::W0;
  for (const auto& J : admissible_sets(arr.m(), n)) {
    const int p = static_cast<int>(J.size());
    Scalar den = falling_denominator(base, p - 1, "lambda_inf + n - s");
    Scalar c = lambda.product(J) / den;
    r.coeffs.add(J, p % 2 == 0 ? c : Scalar(-c));
  }
  return r;
}

CohomClass varpi_in_w0(const Arrangement& arr, const LambdaPoint& lambda) {
  CohomClass r = standard_form(arr, lambda);
  r *= resonant_div(Scalar(1), 2 * lambda.infinity() + arr.n(), "2 lambda_inf + n");
  return r;
}

CohomClass varpi_in_nbc(const Arrangement& arr, const LambdaPoint& lambda) {
  return reduce_to_nbc(arr, to_F(arr, varpi_in_w0(arr, lambda)));
}

Scalar eta(const Arrangement& arr, int h, const IndexSet& J) {
  require_sphere(arr, h);
  if (J.empty()) throw Error(ErrorKind::InvalidArgument, "eta needs a nonempty set");
  if (J.size() == 1) {
    const int j = J[0];
    Scalar num = arr.minor({kZero, h, j}, {kZero, kStar, j}) + arr.minor({kZero, kStar, j}, {kZero, kStar, h});
    return checked_div(num, arr.b0s(J), "B(0*j)");
  }
  Scalar total(0);
  for (int j : J) {
    IndexSet D = remove(J, j);
    for_each_permutation(D, [&](const OrderedSeq& mu) {
      Scalar term = checked_div(arr.minor({kZero, h, j}, {kZero, mu[0], j}), arr.b0({std::min(mu[0], j), std::max(mu[0], j)}),
                                "B(0 mu_1 j)");
      for (std::size_t s = 2; s <= mu.size(); ++s) {
        OrderedSeq prev = reversed_prefix(mu, s - 1);
        Symbols rows = cat({kZero, kStar}, prev, {j});
        Symbols cols = cat({kZero, mu[s - 1]}, prev, {j});
        Symbols den = cat({kZero, mu[s - 1]}, prev, {j});
        term *= checked_div(arr.minor(rows, cols), arr.minor(den), "chain minor");
      }
      total += term;
    });
  }
  return total;
}

CohomClass mult_fJ_w0(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& N, const IndexSet& L) {
  require_lambda(arr, lambda);
  const int n = arr.n();
  if (static_cast<int>(N.size()) != n + 1 || !is_admissible(N, arr.m(), n)) {
    throw Error(ErrorKind::InvalidArgument, "auxiliary set must have n+1 elements");
  }
  if (!is_subset(L, N) || static_cast<int>(L.size()) > n) {
    throw Error(ErrorKind::InvalidArgument, "multiplier set must be a proper subset of " + format_set(N));
  }
  const int p = static_cast<int>(L.size());
  const IndexSet C = set_difference(N, L);
  const IndexSet pool = set_union(L, complement(N, arr.m()));
  const Scalar b0N = arr.b0(N);
  const Scalar b0C = arr.b0(C);
  const Scalar pref = checked_div(b0N, b0C, "B(0 C)");
  const Scalar linf = lambda.infinity();

  CohomClass r;
  r.kind = Kind::W0;
  if (p == n) r.coeffs.add(IndexSet{}, n % 2 == 0 ? b0N : Scalar(-b0N));
  r.coeffs.add(C, pref);
  for (int q = 1; q <= p; ++q) {
    const Scalar lden = falling_denominator(linf + p, q, "lambda_inf + p - nu");
    for_each_ordered(pool, static_cast<std::size_t>(q), [&](const OrderedSeq& K) {
      const Scalar lam = lambda.product(as_set(K));
      if (is_zero(lam)) return;
      for_each_ordered(L, static_cast<std::size_t>(q), [&](const OrderedSeq& M) {
        IndexSet seenK, seenM;
        for (int s = 0; s < q; ++s) {
          seenK = insert(seenK, K[static_cast<std::size_t>(s)]);
          seenM = insert(seenM, M[static_cast<std::size_t>(s)]);
          if (!is_subset(set_intersection(seenK, N), seenM)) return;
        }
        Scalar coef = pref * lam / lden;
        if (q % 2 == 1) coef = -coef;
        coef *= arr.minor(sym({kZero, kStar}, C), sym({kZero, M[0]}, C));
        IndexSet R = N;
        for (int s = 1; s <= q; ++s) {
          const int ks = K[static_cast<std::size_t>(s - 1)];
          const int mus = M[static_cast<std::size_t>(s - 1)];
          const OrderedSeq prev = reversed_prefix(K, static_cast<std::size_t>(s - 1));
          const OrderedSeq upto = reversed_prefix(K, static_cast<std::size_t>(s));
          if (s >= 2) coef *= arr.minor(cat({kZero, kStar}, prev, C), cat({kZero, mus}, prev, C));
          coef = checked_div(coef, arr.minor(cat({kZero}, upto, C)), "chain minor B(0 k..k C)");
          R = remove(R, mus);
          coef *= arr.minor(cat({kZero, ks}, prev, R), cat({kZero, mus}, prev, R));
          coef = checked_div(coef, arr.minor(cat({kZero}, upto, R)), "chain minor B(0 k..k R)");
        }
        coef *= checked_div(arr.b0(set_union(as_set(K), R)), b0N, "B(0 N)");
        r.coeffs.add(set_union(as_set(K), C), coef);
      });
    });
  }
  return r;
}

CohomClass mult_fJ_w0(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& L) {
  if (arr.m() < arr.n() + 1) throw Error(ErrorKind::InvalidArgument, "needs m >= n+1");
  return mult_fJ_w0(arr, lambda, range_set(1, arr.n() + 1), L);
}

CohomClass mult_fJ_w0_recursive(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& N,
                                const IndexSet& L) {
  require_lambda(arr, lambda);
  const int n = arr.n();
  if (static_cast<int>(N.size()) != n + 1 || !is_subset(L, N) || static_cast<int>(L.size()) > n) {
    throw Error(ErrorKind::InvalidArgument, "bad auxiliary or multiplier set");
  }
  const int p = static_cast<int>(L.size());
  if (p == 0) return w0_class(N, Scalar(1));
  const IndexSet C = set_difference(N, L);
  const Scalar b0N = arr.b0(N);
  const Scalar b0C = arr.b0(C);
  CohomClass r = w0_class(C, checked_div(b0N, b0C, "B(0 C)"));
  if (p == n) r.coeffs.add(IndexSet{}, n % 2 == 0 ? b0N : Scalar(-b0N));
  const Scalar shift = resonant_div(Scalar(1), lambda.infinity() + p - 1, "lambda_inf + p - 1");
  for (int nu : L) {
    const IndexSet Lnu = remove(L, nu);
    const IndexSet Dnu = remove(N, nu);
    Scalar c = -checked_div(arr.minor(sym({kZero, kStar}, C), sym({kZero, nu}, C)), b0C, "B(0 C)") * shift;
    CohomClass inner = lambda[nu] * mult_fJ_w0_recursive(arr, lambda, N, Lnu);
    for (int k : complement(N, arr.m())) {
      if (is_zero(lambda[k])) continue;
      IndexSet Nk = insert(Dnu, k);
      Scalar w = arr.minor(sym({kZero, nu}, Dnu), sym({kZero, k}, Dnu));
      w = checked_div(w, arr.minor(sym({kZero, k}, Dnu)), "B(0 k d N)");
      inner += (lambda[k] * w) * mult_fJ_w0_recursive(arr, lambda, Nk, Lnu);
    }
    r += c * inner;
  }
  return r;
}

IndexSet default_auxiliary_set(const Arrangement& arr, int j, const IndexSet& J) {
  IndexSet N = insert(J, j);
  for (int k = 1; k <= arr.m() && static_cast<int>(N.size()) < arr.n() + 1; ++k) N = insert(N, k);
  return N;
}

CohomClass mult_fj_raw(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J,
                       const IndexSet& N) {
  require_lambda(arr, lambda);
  require_sphere(arr, j);
  const int n = arr.n();
  if (!is_admissible(J, arr.m(), n)) throw Error(ErrorKind::InvalidArgument, "set is not admissible: " + format_set(J));
  if (contains(J, j)) return CohomClass::basis(Kind::F, remove(J, j));
  const int p = static_cast<int>(J.size());
  const Scalar b0J = arr.b0(J);
  CohomClass r;
  r.kind = Kind::F;
  r.coeffs.add(J, -checked_div(arr.minor(sym({kZero, kStar}, J), sym({kZero, j}, J)), b0J, "B(0 J)"));
  for (int nu : J) {
    IndexSet D = remove(J, nu);
    r.coeffs.add(D, checked_div(arr.minor(sym({kZero, nu}, D), sym({kZero, j}, D)), b0J, "B(0 J)"));
  }
  if (p == n + 1) return r;
  if (static_cast<int>(N.size()) != n + 1 || !is_subset(insert(J, j), N)) {
    throw Error(ErrorKind::InvalidArgument, "auxiliary set must contain J and j and have n+1 elements");
  }
  const Scalar b0N = arr.b0(N);
  const Scalar lden = resonant_div(Scalar(1), lambda.infinity() + n - p, "lambda_inf + n - p");
  const IndexSet outside = complement(N, arr.m());
  for (int nu : set_difference(N, J)) {
    const IndexSet Lnu = remove(set_difference(N, J), nu);
    const IndexSet Dnu = remove(N, nu);
    Scalar c = arr.minor(sym({kZero, nu}, J), sym({kZero, j}, J));
    if (is_zero(c)) continue;
    c = checked_div(c, b0N * b0J, "B(0 N) B(0 J)") * lden;
    CohomClass inner = lambda[nu] * mult_fJ_w0(arr, lambda, N, Lnu);
    for (int k : outside) {
      if (is_zero(lambda[k])) continue;
      Scalar w = arr.minor(sym({kZero, nu}, Dnu), sym({kZero, k}, Dnu));
      w = checked_div(w, arr.minor(sym({kZero, k}, Dnu)), "B(0 k d N)");
      inner += (lambda[k] * w) * mult_fJ_w0(arr, lambda, insert(Dnu, k), Lnu);
    }
    r += c * to_F(arr, inner);
  }
  return r;
}

CohomClass mult_fj(const Arrangement& arr, const LambdaPoint& lambda, int j, const IndexSet& J) {
  if (arr.m() < arr.n() + 1) throw Error(ErrorKind::InvalidArgument, "positive contiguity needs m >= n+1");
  return reduce_to_nbc(arr, mult_fj_raw(arr, lambda, j, J, default_auxiliary_set(arr, j, J)), &lambda);
}

CohomClass mult_diff(const Arrangement& arr, const LambdaPoint& lambda, int j, int k) {
  require_lambda(arr, lambda);
  require_sphere(arr, j);
  require_sphere(arr, k);
  if (j == k) throw Error(ErrorKind::InvalidArgument, "difference needs two distinct spheres");
  CohomClass r;
  r.kind = Kind::W0;
  if (arr.same_sphere(j, k)) return r;
  const int n = arr.n();
  const IndexSet kk{k};
  r.coeffs.add(kk, checked_div(arr.minor({kZero, j, k}, {kZero, kStar, k}), arr.b0s(kk), "B(0*k)"));
  const IndexSet pool = remove(range_set(1, arr.m()), k);
  const Scalar linf = lambda.infinity();
  for (int q = 1; q <= n; ++q) {
    const Scalar lden = falling_denominator(linf + n, q, "lambda_inf + n - s");
    for_each_ordered(pool, static_cast<std::size_t>(q), [&](const OrderedSeq& K) {
      const Scalar lam = lambda.product(as_set(K));
      if (is_zero(lam)) return;
      Scalar coef = lam / lden;
      if (q % 2 == 1) coef = -coef;
      coef *= checked_div(arr.minor({kZero, j, k}, {kZero, K[0], k}), arr.minor({kZero, K[0], k}), "B(0 k_1 k)");
      for (int s = 2; s <= q; ++s) {
        const OrderedSeq prev = reversed_prefix(K, static_cast<std::size_t>(s - 1));
        const OrderedSeq upto = reversed_prefix(K, static_cast<std::size_t>(s));
        coef *= arr.minor(cat({kZero, kStar}, prev, kk), cat({kZero}, upto, kk));
        coef = checked_div(coef, arr.minor(cat({kZero}, upto, kk)), "chain minor");
      }
      r.coeffs.add(insert(as_set(K), k), coef);
    });
  }
  return r;
}

}  // namespace spherule
