#include "spherule/connection.hpp"

namespace spherule {

namespace {

class Minors {
 public:
  explicit Minors(const Arrangement& arr) : arr_(arr) {}
  Scalar operator()(const Symbols& rows, const Symbols& cols) const { return arr_.minor(rows, cols); }
  Scalar bs(std::initializer_list<int> J) const { return arr_.b0s(make_set(J)); }
  Scalar b(std::initializer_list<int> J) const { return arr_.b0(make_set(J)); }
  ParamOneForm th(std::initializer_list<int> J) const { return theta(arr_, make_set(J)); }

 private:
  const Arrangement& arr_;
};

void require_pair(const IndexSet& J, int m) {
  if (J.empty() || J.size() > 2 || J.back() > m) throw Error(ErrorKind::InvalidArgument, "closed forms cover singletons and pairs");
}

}  // namespace

FormClass closed_form_m2(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& J) {
  if (arr.m() != 2) throw Error(ErrorKind::InvalidArgument, "closed form requires m = 2");
  require_pair(J, 2);
  const Minors B(arr);
  const int n = arr.n();
  const Scalar linf = lambda.infinity();
  FormClass col;
  if (J.size() == 1) {
    const int j = J[0], k = 3 - J[0];
    const IndexSet jj{j}, kk{k}, jk = make_set({j, k});
    col.add(jj, B.th({j}) * Scalar(-(linf + n - 2 + lambda[j])) + B.th({j, k}) * lambda[k]);
    col.add(kk, (B.th({j}) + B.th({j, k})) * Scalar(-lambda[k]));
    ParamOneForm f = B.th({j}) * Scalar(-B({kZero, kStar, k}, {kZero, kStar, j}));
    f += B.th({k}) * B.bs({k});
    f += B.th({j, k}) * B({kZero, kStar, k}, {kZero, j, k});
    col.add(jk, f * lambda[k]);
    return col;
  }
  const Scalar bs12 = B.bs({1, 2});
  for (int j : {1, 2}) {
    const int k = 3 - j;
    ParamOneForm a = B.th({j}) * B({kZero, kStar, j}, {kZero, k, j});
    a += B.th({k}) * B({kZero, kStar, k}, {kZero, j, k});
    a += B.th({j, k}) * B.b({j, k});
    a *= -lambda[j] / bs12;
    ParamOneForm b = B.th({j}) * B({kZero, kStar, j}, {kZero, kStar, k});
    b -= B.th({k}) * B.bs({k});
    b -= B.th({j, k}) * B({kZero, kStar, k}, {kZero, j, k});
    b *= (linf + n - 2) / bs12;
    col.add({j}, a + b);
  }
  const Scalar x21 = B({kZero, kStar, 2}, {kZero, kStar, 1});
  const Scalar x12 = B({kZero, kStar, 1}, {kZero, kStar, 2});
  const Scalar y1 = B({kZero, kStar, 1}, {kZero, 2, 1});
  const Scalar y2 = B({kZero, kStar, 2}, {kZero, 1, 2});
  ParamOneForm d;
  d += B.th({1}) * Scalar((-lambda[2] * x21 * y1 + (linf + lambda[1] + n - 3) * y2 * B.bs({1})) / bs12);
  d += B.th({2}) * Scalar((-lambda[1] * x12 * y2 + (linf + lambda[2] + n - 3) * y1 * B.bs({2})) / bs12);
  const Scalar t = x12 * B.b({1, 2}) / bs12;
  d += B.th({1, 2}) * Scalar(-(linf - 1) * (2 * t + 1) - (n - 1) * (t + 1));
  col.add({1, 2}, d);
  return col;
}

FormClass closed_form_n1(const Arrangement& arr, const LambdaPoint& lambda, const IndexSet& J) {
  if (arr.n() != 1) throw Error(ErrorKind::InvalidArgument, "closed form requires n = 1");
  const int m = arr.m();
  require_pair(J, m);
  const Minors B(arr);
  const Scalar linf = lambda.infinity();
  FormClass col;
  if (J.size() == 1) {
    const int j = J[0];
    ParamOneForm d = B.th({j}) * Scalar(-(linf + lambda[j] - 1));
    for (int nu = 1; nu <= m; ++nu)
      if (nu != j) d += B.th({j, nu}) * lambda[nu];
    col.add({j}, d);
    for (int k = 1; k <= m; ++k) {
      if (k == j) continue;
      col.add({k}, (B.th({j}) + B.th({j, k})) * Scalar(-lambda[k]));
      ParamOneForm f = zeta_pair_at(arr, j, k);
      for (int nu = 1; nu <= m; ++nu) {
        if (nu == j || nu == k) continue;
        Scalar c = -lambda[nu] / (linf - 1) * B({kZero, kStar, k, nu}, {kZero, kStar, k, j}) / B.bs({j, k, nu});
        f += zeta_triple(arr, j, k, nu) * c;
      }
      col.add(make_set({j, k}), f * lambda[k]);
      for (int l = k + 1; l <= m; ++l) {
        if (l == j) continue;
        Scalar c = lambda[k] * lambda[l] / (linf - 1) * B.bs({k, l}) / B.bs({j, k, l});
        col.add(make_set({k, l}), zeta_triple(arr, j, k, l) * c);
      }
    }
    return col;
  }
  const int j = J[0], k = J[1];
  const Scalar bsjk = B.bs({j, k});
  col.add({j}, (zeta_pair(arr, j, k) * Scalar(-lambda[j]) - zeta_pair_at(arr, j, k) * Scalar(linf - 1)) * Scalar(1 / bsjk));
  col.add({k}, (zeta_pair(arr, j, k) * Scalar(-lambda[k]) - zeta_pair_at(arr, k, j) * Scalar(linf - 1)) * Scalar(1 / bsjk));
  for (int l = 1; l <= m; ++l) {
    if (l == j || l == k) continue;
    col.add({l}, zeta_pair(arr, j, k) * Scalar(-lambda[l] / bsjk));
  }

  const Scalar s = lambda[j] + lambda[k] - 1;
  const Scalar ykj = B({kZero, kStar, k}, {kZero, j, k});
  const Scalar yjk = B({kZero, kStar, j}, {kZero, k, j});
  ParamOneForm d = B.th({j}) * lambda[k];
  d += B.th({j}) * Scalar(2 * s * B.bs({j}) * ykj / bsjk);
  d += B.th({k}) * lambda[j];
  d += B.th({k}) * Scalar(2 * s * B.bs({k}) * yjk / bsjk);
  d += B.th({j, k}) * Scalar(-s * (1 + 2 * B.b({j, k}) * B({kZero, kStar, j}, {kZero, kStar, k}) / bsjk));
  for (int nu = 1; nu <= m; ++nu) {
    if (nu == j || nu == k) continue;
    const Scalar bsjkn = B.bs({j, k, nu});
    ParamOneForm e = B.th({j}) * Scalar(B.bs({j}) * B({kZero, kStar, k, nu}, {kZero, j, k, nu}) / bsjkn);
    e += B.th({k}) * Scalar(B.bs({k}) * B({kZero, kStar, j, nu}, {kZero, k, j, nu}) / bsjkn);
    e += B.th({nu}) * Scalar(B.bs({nu}) * B({kZero, kStar, j, k}, {kZero, nu, j, k}) / bsjkn);
    e += B.th({k, nu}) * Scalar(B({kZero, kStar, k, nu}, {kZero, j, k, nu}) * B({kZero, kStar, j, nu}, {kZero, kStar, j, k}) * ykj /
                                (bsjkn * bsjk));
    e += B.th({j, nu}) * Scalar(B({kZero, kStar, j, nu}, {kZero, k, j, nu}) * B({kZero, kStar, k, nu}, {kZero, kStar, k, j}) * yjk /
                                (bsjkn * bsjk));
    e += B.th({j, k}) * Scalar(ykj * yjk / bsjk);
    d += e * lambda[nu];
  }
  col.add(J, d);

  for (int l = 1; l <= m; ++l) {
    if (l == j || l == k) continue;
    for (int a : {j, k}) {
      const int b = a == j ? k : j;
      // Entry at {a,l}; swapping a and b gives the entry at {b,l}.
      const Scalar bsabl = B.bs({a, b, l});
      const Scalar bsab = bsjk;
      const Scalar bsal = B.bs({a, l});
      const Scalar u = B({kZero, kStar, a, b}, {kZero, l, a, b});
      const Scalar w = B({kZero, kStar, a, l}, {kZero, b, a, l});
      ParamOneForm f = B.th({a}) * Scalar(-(bsal * u * B({kZero, kStar, b}, {kZero, kStar, a}) / (bsabl * bsab) +
                                            w * B({kZero, kStar, l}, {kZero, kStar, a}) / bsabl));
      f += B.th({b}) * Scalar(B.bs({b}) * bsal * u / (bsabl * bsab));
      f += B.th({l}) * Scalar(B.bs({l}) * w / bsabl);
      f += B.th({a, l}) * Scalar(B({kZero, kStar, l}, {kZero, a, l}) * w / bsabl);
      f += B.th({a, b}) * Scalar(B({kZero, kStar, b}, {kZero, a, b}) * bsal * u / (bsabl * bsab));
      col.add(make_set({a, l}), f * lambda[l]);
    }
  }
  return col;
}

}  // namespace spherule
