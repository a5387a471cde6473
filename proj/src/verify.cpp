#include "spherule/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace spherule {

unsigned worker_threads() {
  if (const char* env = std::getenv("SPHERULE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::min<std::size_t>(worker_threads(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

long double to_long_double(const Scalar& q) {
  return static_cast<long double>(q.get_num().get_d()) / static_cast<long double>(q.get_den().get_d());
}

struct Roots {
  std::vector<long double> lo, hi;
};

Roots roots_of(const Arrangement& arr) {
  if (arr.n() != 1) throw Error(ErrorKind::InvalidArgument, "one-dimensional quadrature requires n = 1");
  Roots r;
  for (int j = 1; j <= arr.m(); ++j) {
    if (sgn(arr.r2(j)) <= 0) throw Error(ErrorKind::ZeroRadius, "sphere " + std::to_string(j) + " has no real roots");
    const long double c = -to_long_double(arr.alpha(j, 1));
    const long double rad = std::sqrt(to_long_double(arr.r2(j)));
    r.lo.push_back(c - rad);
    r.hi.push_back(c + rad);
  }
  return r;
}

}  // namespace

Integrand::Integrand(const Arrangement& arr, const CohomClass& phi) : m(arr.m()) {
  for (const auto& [K, c] : to_F(arr, phi).coeffs) {
    Term t{c.get_d(), std::vector<int>(static_cast<std::size_t>(m), 0)};
    for (int k : K) t.order[static_cast<std::size_t>(k - 1)] = 1;
    terms.push_back(std::move(t));
  }
}

Integrand& Integrand::multiply(int j, int power) {
  if (j < 1 || j > m) throw Error(ErrorKind::InvalidArgument, "sphere index out of range");
  for (auto& t : terms) t.order[static_cast<std::size_t>(j - 1)] -= power;
  return *this;
}

Integrand& Integrand::operator+=(const Integrand& other) {
  if (m == 0) m = other.m;
  if (other.m != m) throw Error(ErrorKind::DimensionMismatch, "integrands over different arrangements");
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

Integrand& Integrand::operator*=(double s) {
  for (auto& t : terms) t.coeff *= s;
  return *this;
}

int Integrand::max_order(int j) const {
  int p = std::numeric_limits<int>::min();
  for (const auto& t : terms) p = std::max(p, t.order[static_cast<std::size_t>(j - 1)]);
  return terms.empty() ? 0 : p;
}

std::vector<Chamber> chambers_1d(const Arrangement& arr) {
  const Roots r = roots_of(arr);
  std::vector<std::pair<long double, int>> pts;
  for (int j = 1; j <= arr.m(); ++j) {
    pts.emplace_back(r.lo[static_cast<std::size_t>(j - 1)], j);
    pts.emplace_back(r.hi[static_cast<std::size_t>(j - 1)], j);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<Chamber> out;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const long double gap = pts[i].first - pts[i - 1].first;
    const long double scale = std::max<long double>(1, std::fabs(pts[i].first));
    if (gap <= 64 * std::numeric_limits<long double>::epsilon() * scale) {
      throw Error(ErrorKind::DegenerateRoots, "roots of spheres " + std::to_string(pts[i - 1].second) + " and " +
                                                  std::to_string(pts[i].second) + " coincide");
    }
    out.push_back({pts[i - 1].first, pts[i].first, pts[i - 1].second, pts[i].second});
  }
  return out;
}

void check_convergence(const std::vector<double>& lambda, const Integrand& phi, const Chamber& chamber) {
  if (static_cast<int>(lambda.size()) != phi.m) throw Error(ErrorKind::DimensionMismatch, "exponent vector length differs from m");
  for (int j : {chamber.sphere_a, chamber.sphere_b}) {
    const double exponent = lambda[static_cast<std::size_t>(j - 1)] - phi.max_order(j);
    if (!(exponent > -1)) {
      throw Error(ErrorKind::ConvergenceViolation,
                  "exponent " + std::to_string(exponent) + " at a root of f_" + std::to_string(j) + " is not above -1");
    }
  }
}

QuadratureResult integrate(const Arrangement& arr, const std::vector<double>& lambda, const Integrand& phi,
                           const Chamber& chamber, const QuadratureOptions& options) {
  if (phi.m != arr.m()) throw Error(ErrorKind::DimensionMismatch, "integrand built for a different arrangement");
  check_convergence(lambda, phi, chamber);
  const auto& terms = phi.terms;
  QuadratureResult res;
  if (terms.empty()) return res;
  const Roots roots = roots_of(arr);
  const int m = arr.m();
  const double a = static_cast<double>(chamber.a);
  const double b = static_cast<double>(chamber.b);
  auto is_endpoint = [](long double root, long double end) {
    return std::fabs(root - end) <= 1e-12L * std::max<long double>(1, std::fabs(end));
  };

  std::atomic<std::size_t> evaluations{0};
  auto integrand = [&](double x, double xc) -> double {
    evaluations.fetch_add(1, std::memory_order_relaxed);
    double logs[64];
    double signs[64];
    for (int j = 1; j <= m; ++j) {
      const std::size_t i = static_cast<std::size_t>(j - 1);
      auto dist = [&](long double root) -> long double {
        if (xc <= 0 && is_endpoint(root, chamber.a)) return -static_cast<long double>(xc);
        if (xc > 0 && is_endpoint(root, chamber.b)) return -static_cast<long double>(xc);
        return static_cast<long double>(x) - root;
      };
      const long double f = dist(roots.lo[i]) * dist(roots.hi[i]);
      logs[i] = static_cast<double>(std::log(std::fabs(f)));
      signs[i] = f < 0 ? -1.0 : 1.0;
    }
    double total = 0;
    for (const auto& t : terms) {
      double e = 0, s = t.coeff;
      for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
        e += (lambda[i] - t.order[i]) * logs[i];
        if (t.order[i] % 2 != 0) s *= signs[i];
      }
      total += s * std::exp(e);
    }
    return total;
  };

  boost::math::quadrature::tanh_sinh<double> integrator(options.max_refinements);
  double err = 0, l1 = 0;
  std::size_t levels = 0;
  res.value = integrator.integrate(integrand, a, b, options.tolerance, &err, &l1, &levels);
  res.error_estimate = std::fabs(err);
  res.evaluations = evaluations.load();
  if (!std::isfinite(res.value) || res.error_estimate > 100 * options.tolerance * std::max(l1, 1e-300)) {
    throw Error(ErrorKind::ToleranceNotMet, "tanh-sinh error estimate " + std::to_string(res.error_estimate) +
                                                " exceeds the requested tolerance");
  }
  return res;
}

QuadratureResult integrate(const Arrangement& arr, const std::vector<double>& lambda, const CohomClass& phi,
                           const Chamber& chamber, const QuadratureOptions& options) {
  return integrate(arr, lambda, Integrand(arr, phi), chamber, options);
}

QuadratureResult integrate(const Arrangement& arr, const std::vector<double>& lambda, const IndexSet& J,
                           const Chamber& chamber, const QuadratureOptions& options) {
  return integrate(arr, lambda, CohomClass::basis(Kind::F, J), chamber, options);
}

bool IdentityReport::pass() const {
  return std::all_of(chambers.begin(), chambers.end(), [](const ChamberResidual& c) { return c.pass; });
}

double IdentityReport::max_residual() const {
  double r = 0;
  for (const auto& c : chambers) r = std::max(r, c.residual);
  return r;
}

IdentityReport verify_identity(const Arrangement& arr, const std::vector<double>& lambda, const CohomClass& lhs,
                               const CohomClass& rhs, const std::vector<Chamber>& chambers, double tol) {
  return verify_identity(arr, lambda, Integrand(arr, lhs), Integrand(arr, rhs), chambers, tol);
}

IdentityReport verify_identity(const Arrangement& arr, const std::vector<double>& lambda, const Integrand& lhs,
                               const Integrand& rhs, const std::vector<Chamber>& chambers, double tol) {
  IdentityReport rep;
  rep.tolerance = tol;
  rep.chambers.resize(chambers.size());
  parallel_for(chambers.size(), [&](std::size_t i) {
    ChamberResidual& c = rep.chambers[i];
    c.chamber = chambers[i];
    c.lhs = integrate(arr, lambda, lhs, chambers[i]).value;
    c.rhs = integrate(arr, lambda, rhs, chambers[i]).value;
    c.residual = std::fabs(c.lhs - c.rhs) / std::max(1.0, std::fabs(c.lhs));
    c.pass = c.residual <= tol;
  });
  return rep;
}

bool GaussManinReport::pass() const {
  return !entries.empty() &&
         std::all_of(entries.begin(), entries.end(), [](const GaussManinEntry& e) { return e.pass; });
}

double GaussManinReport::max_residual() const {
  double r = 0;
  for (const auto& e : entries) r = std::max(r, e.residual);
  return r;
}

namespace {

/// Column c of the check: integrand phi[c] and its predicted derivative sum_K F_K * form[K].
struct FiniteDifferenceColumn {
  IndexSet label;
  CohomClass phi;
  FormClass prediction;
};

GaussManinReport finite_difference_check(const Arrangement& arr, const LambdaPoint& lambda,
                                         const std::vector<std::vector<Scalar>>& alpha_tangent, const Scalar& h,
                                         double tol, const std::vector<FiniteDifferenceColumn>& columns) {
  if (arr.n() != 1) throw Error(ErrorKind::InvalidArgument, "finite-difference check requires n = 1");
  if (static_cast<int>(alpha_tangent.size()) != arr.m()) throw Error(ErrorKind::DimensionMismatch, "tangent rows differ from m");
  if (sgn(h) <= 0) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  const std::vector<double> lam = lambda.as_double();
  const std::vector<Chamber> base = chambers_1d(arr);

  std::vector<IndexSet> keys;
  for (const auto& col : columns)
    for (const auto& [K, f] : col.prediction)
      if (std::find(keys.begin(), keys.end(), K) == keys.end()) keys.push_back(K);

  auto moved = [&](const Scalar& s) {
    std::vector<std::vector<Scalar>> rows = arr.alpha_rows();
    for (std::size_t j = 0; j < rows.size(); ++j)
      for (std::size_t nu = 0; nu < rows[j].size(); ++nu) rows[j][nu] += s * alpha_tangent[j].at(nu);
    return Arrangement(arr.n(), rows);
  };
  const std::vector<Scalar> steps = {h, -h, h / 2, -h / 2};
  std::vector<Arrangement> shifted;
  std::vector<std::vector<Chamber>> shifted_chambers;
  for (const auto& s : steps) {
    shifted.push_back(moved(s));
    shifted_chambers.push_back(chambers_1d(shifted.back()));
    const auto& ch = shifted_chambers.back();
    for (std::size_t c = 0; c < base.size(); ++c) {
      if (ch[c].sphere_a != base[c].sphere_a || ch[c].sphere_b != base[c].sphere_b) {
        throw Error(ErrorKind::StepTooLarge, "finite-difference step reorders the chamber endpoints");
      }
    }
  }

  const std::size_t nk = keys.size(), ncol = columns.size(), nc = base.size();
  std::vector<double> at_keys(nk * nc);
  std::vector<std::vector<double>> at_step(steps.size(), std::vector<double>(ncol * nc));
  QuadratureOptions quad;
  quad.tolerance = 1e-12;
  const std::size_t per_step = ncol * nc;
  parallel_for(nk * nc + steps.size() * per_step, [&](std::size_t idx) {
    if (idx < nk * nc) {
      at_keys[idx] = integrate(arr, lam, keys[idx / nc], base[idx % nc], quad).value;
      return;
    }
    idx -= nk * nc;
    const std::size_t s = idx / per_step, r = idx % per_step;
    const std::size_t col = r / nc, c = r % nc;
    at_step[s][r] = integrate(shifted[s], lam, Integrand(shifted[s], columns[col].phi), shifted_chambers[s][c], quad).value;
  });

  const ParamTangent rates = invariant_rates(arr, alpha_tangent);
  const double hd = h.get_d();
  GaussManinReport rep;
  rep.tolerance = tol;
  for (std::size_t col = 0; col < ncol; ++col) {
    std::vector<double> coeff(nk, 0.0);
    for (std::size_t k = 0; k < nk; ++k) coeff[k] = evaluate(columns[col].prediction.get(keys[k]), rates).get_d();
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t r = col * nc + c;
      const double d1 = (at_step[0][r] - at_step[1][r]) / (2 * hd);
      const double d2 = (at_step[2][r] - at_step[3][r]) / hd;
      GaussManinEntry e;
      e.column = columns[col].label;
      e.chamber = c;
      e.derivative = (4 * d2 - d1) / 3;
      const double scale = std::max(1.0, std::fabs(e.derivative));
      e.richardson_residual = std::fabs(e.derivative - d2) / scale;
      if (e.richardson_residual > tol) {
        throw Error(ErrorKind::StepTooLarge, "Richardson residual " + std::to_string(e.richardson_residual) +
                                                 " exceeds tolerance; reduce the step");
      }
      for (std::size_t k = 0; k < nk; ++k) e.predicted += coeff[k] * at_keys[k * nc + c];
      e.residual = std::fabs(e.derivative - e.predicted) / scale;
      e.pass = e.residual <= tol;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace

GaussManinReport verify_gauss_manin(const Arrangement& arr, const LambdaPoint& lambda,
                                    const std::vector<std::vector<Scalar>>& alpha_tangent, const Scalar& h,
                                    double tol) {
  const ConnectionMatrix M = gm_matrix(arr, lambda);
  std::vector<FiniteDifferenceColumn> columns;
  for (const auto& J : M.basis) columns.push_back({J, CohomClass::basis(Kind::F, J), M.columns.at(J)});
  return finite_difference_check(arr, lambda, alpha_tangent, h, tol, columns);
}

GaussManinReport verify_nabla_varpi(const Arrangement& arr, const LambdaPoint& lambda,
                                    const std::vector<std::vector<Scalar>>& alpha_tangent, const Scalar& h,
                                    double tol) {
  std::vector<FiniteDifferenceColumn> columns;
  columns.push_back({IndexSet{}, CohomClass::basis(Kind::F, IndexSet{}), nabla_b_varpi_class(arr, lambda)});
  return finite_difference_check(arr, lambda, alpha_tangent, h, tol, columns);
}

namespace {

double eval_f2(const Arrangement& arr, int j, double x, double y) {
  return x * x + y * y + 2 * arr.alpha(j, 1).get_d() * x + 2 * arr.alpha(j, 2).get_d() * y + arr.alpha(j, 0).get_d();
}

struct Box {
  double x0, x1, y0, y1;
};

Box disk_box(const Arrangement& arr, int j) {
  const double cx = -arr.alpha(j, 1).get_d(), cy = -arr.alpha(j, 2).get_d();
  const double r = std::sqrt(arr.r2(j).get_d());
  return {cx - r, cx + r, cy - r, cy + r};
}

}  // namespace

QuadratureResult monte_carlo_2d(const Arrangement& arr, const std::vector<double>& lambda, const CohomClass& phi,
                                const SignRegion& region, std::size_t samples, std::uint64_t seed) {
  if (arr.n() != 2) throw Error(ErrorKind::InvalidArgument, "Monte Carlo integration is implemented for n = 2");
  if (static_cast<int>(region.signs.size()) != arr.m()) throw Error(ErrorKind::DimensionMismatch, "sign vector length");
  const Integrand integrand(arr, phi);
  const auto& terms = integrand.terms;
  for (int j = 1; j <= arr.m(); ++j) {
    if (lambda[static_cast<std::size_t>(j - 1)] - integrand.max_order(j) <= -1) {
      throw Error(ErrorKind::ConvergenceViolation, "exponent at f_" + std::to_string(j) + " is not above -1");
    }
  }
  Box box{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  bool bounded = false;
  for (int j = 1; j <= arr.m(); ++j) {
    if (region.signs[static_cast<std::size_t>(j - 1)] >= 0) continue;
    const Box d = disk_box(arr, j);
    box = {std::max(box.x0, d.x0), std::min(box.x1, d.x1), std::max(box.y0, d.y0), std::min(box.y1, d.y1)};
    bounded = true;
  }
  if (!bounded) throw Error(ErrorKind::InvalidArgument, "sign region must lie inside some sphere");
  QuadratureResult res;
  if (box.x1 <= box.x0 || box.y1 <= box.y0) return res;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.x0, box.x1), uy(box.y0, box.y1);
  double sum = 0, sum2 = 0;
  const int m = arr.m();
  std::vector<double> f(static_cast<std::size_t>(m));
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = ux(rng), y = uy(rng);
    bool inside = true;
    for (int j = 1; j <= m && inside; ++j) {
      f[static_cast<std::size_t>(j - 1)] = eval_f2(arr, j, x, y);
      inside = (f[static_cast<std::size_t>(j - 1)] < 0 ? -1 : 1) == region.signs[static_cast<std::size_t>(j - 1)];
    }
    double v = 0;
    if (inside) {
      for (const auto& t : terms) {
        double term = t.coeff;
        for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
          term *= std::pow(std::fabs(f[i]), lambda[i]);
          if (t.order[i] != 0) term *= std::pow(f[i], -t.order[i]);
        }
        v += term;
      }
    }
    sum += v;
    sum2 += v * v;
  }
  const double area = (box.x1 - box.x0) * (box.y1 - box.y0);
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum2 / static_cast<double>(samples) - mean * mean);
  res.value = area * mean;
  res.error_estimate = area * std::sqrt(var / static_cast<double>(samples));
  res.evaluations = samples;
  return res;
}

std::vector<SignRegion> sign_regions_2d(const Arrangement& arr) {
  if (arr.n() != 2) throw Error(ErrorKind::InvalidArgument, "sign regions are enumerated for n = 2");
  Box u = disk_box(arr, 1);
  for (int j = 2; j <= arr.m(); ++j) {
    const Box d = disk_box(arr, j);
    u = {std::min(u.x0, d.x0), std::max(u.x1, d.x1), std::min(u.y0, d.y0), std::max(u.y1, d.y1)};
  }
  std::set<std::vector<int>> seen;
  const int grid = 400;
  for (int i = 0; i <= grid; ++i) {
    for (int k = 0; k <= grid; ++k) {
      const double x = u.x0 + (u.x1 - u.x0) * i / grid, y = u.y0 + (u.y1 - u.y0) * k / grid;
      std::vector<int> s;
      bool any_inside = false;
      for (int j = 1; j <= arr.m(); ++j) {
        const double f = eval_f2(arr, j, x, y);
        s.push_back(f < 0 ? -1 : 1);
        any_inside = any_inside || f < 0;
      }
      if (any_inside) seen.insert(s);
    }
  }
  std::vector<SignRegion> out;
  for (const auto& s : seen) out.push_back({s});
  return out;
}

}  // namespace spherule
