#include "spherule/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "spherule/arrangement.hpp"
#include "spherule/cohomology.hpp"
#include "spherule/connection.hpp"
#include "spherule/contiguity.hpp"
#include "spherule/indices.hpp"
#include "spherule/verify.hpp"

namespace spherule {

namespace {

/// Counts cases and keeps the first few failure descriptions.
class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  void expect(bool ok, const std::function<std::string()>& what) {
    ++result_.cases;
    if (ok) return;
    fail(what());
  }

  /// Runs a case; an exception counts as a failure.
  void run(const std::function<std::string()>& what, const std::function<bool()>& body) {
    bool ok = false;
    std::string why;
    try {
      ok = body();
    } catch (const std::exception& e) {
      why = std::string(": ") + e.what();
    }
    ++result_.cases;
    if (!ok) fail(what() + why);
  }

  void note(const std::string& text) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += text;
  }

  CheckResult finish(std::chrono::steady_clock::time_point start) {
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (result_.pass) result_.detail = notes_;
    if (failures_ > shown_) result_.detail += " (+" + std::to_string(failures_ - shown_) + " more)";
    if (result_.cases == 0) {
      result_.pass = false;
      result_.detail = "no cases ran";
    }
    return result_;
  }

 private:
  void fail(const std::string& text) {
    result_.pass = false;
    ++failures_;
    if (shown_ >= 3) return;
    if (shown_ > 0) result_.detail += "; ";
    result_.detail += text;
    ++shown_;
  }

  CheckResult result_;
  std::string notes_;
  std::size_t failures_ = 0;
  std::size_t shown_ = 0;
};

using Clock = std::chrono::steady_clock;

std::string where(const Arrangement& arr) { return "n=" + std::to_string(arr.n()) + " m=" + std::to_string(arr.m()); }

std::string where(const Arrangement& arr, const LambdaPoint& lambda) {
  std::string s = where(arr) + " lambda=(";
  for (std::size_t i = 0; i < lambda.values().size(); ++i) {
    if (i) s += ",";
    s += to_string(lambda.values()[i]);
  }
  return s + ")";
}

Symbols concat(Symbols head, const OrderedSeq& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

OrderedSeq without(const OrderedSeq& seq, std::size_t s) {
  OrderedSeq out = seq;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(s));
  return out;
}

Matrix submatrix(const Arrangement& arr, const Symbols& rows, const Symbols& cols) {
  Matrix a(rows.size(), std::vector<Scalar>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) a[i][j] = arr.entry(rows[i], cols[j]);
  return a;
}

Symbols random_symbols(Rng& rng, int m, std::size_t size) {
  Symbols pool{kZero, kStar};
  for (int j = 1; j <= m; ++j) pool.push_back(j);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(size);
  return pool;
}

Arrangement sample(Rng& rng, int n, int m, bool general = true, double gap = 0) {
  ArrangementRequest req;
  req.n = n;
  req.m = m;
  req.general_position = general;
  req.min_root_gap = gap;
  return random_arrangement(rng, req);
}

CohomClass reduced(const Arrangement& arr, const CohomClass& cls, const LambdaPoint& lambda) {
  return reduce_to_nbc(arr, cls.kind == Kind::W0 ? to_F(arr, cls) : cls, &lambda);
}

/// Equality of invariant-space forms as functions of the coefficients.
bool same_form(const Arrangement& arr, const ParamOneForm& a, const ParamOneForm& b) {
  return a == b || pullback_to_alpha(arr, a - b).empty();
}

bool same_form_class(const Arrangement& arr, const FormClass& a, const FormClass& b) {
  IndexSet none;
  std::vector<IndexSet> keys;
  for (const auto& [K, f] : a) keys.push_back(K);
  for (const auto& [K, f] : b) keys.push_back(K);
  for (const auto& K : keys)
    if (!same_form(arr, a.get(K), b.get(K))) return false;
  return true;
}

bool adjacent(const IndexSet& J, const IndexSet& K) {
  const std::size_t common = set_intersection(J, K).size();
  return J.size() - common <= 1 && K.size() - common <= 1;
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(digits) << v;
  return out.str();
}

Rng seeded(const CheckOptions& opt, std::uint64_t salt) { return Rng(opt.seed * 1000003u + salt); }

}  // namespace

CheckResult check_determinant_layer(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("determinant layer");
  Rng rng = seeded(opt, 1);
  for (int i = 0; i < opt.arrangements; ++i) {
    const int n = 1 + i % 4;
    const int m = 1 + (i / 4) % 6;
    const Arrangement a = sample(rng, n, m, false);
    const std::string at = where(a);

    for (int trial = 0; trial < 12; ++trial) {
      std::uniform_int_distribution<int> pick(1, std::min(m + 2, 6));
      const std::size_t size = static_cast<std::size_t>(pick(rng));
      const Symbols rows = random_symbols(rng, m, size);
      const Symbols cols = random_symbols(rng, m, size);
      const Matrix sub = submatrix(a, rows, cols);
      const Scalar via_cache = a.minor(rows, cols);
      t.expect(via_cache == det_bareiss(sub) && via_cache == det_cofactor(sub),
               [&] { return at + ": Bareiss and cofactor disagree"; });
      if (size >= 2) {
        Symbols swapped = rows;
        std::swap(swapped[0], swapped[1]);
        t.expect(a.minor(swapped, cols) == -via_cache, [&] { return at + ": row swap does not negate the minor"; });
      }
    }

    for (int j = 1; j <= m; ++j) {
      for (int k = j + 1; k <= m; ++k) {
        const IndexSet jk{j, k};
        t.expect(a_principal_minor(a, jk) * 4 * a.r2(j) * a.r2(k) == -a.b0s(jk),
                 [&] { return at + ": A(jk) identity fails at " + format_set(jk); });
      }
    }
    for (const auto& J : admissible_sets(m, n)) {
      Scalar lhs = pow(Scalar(2), static_cast<unsigned>(J.size())) * a_principal_minor(a, J);
      for (int j : J) lhs *= a.r2(j);
      const Scalar rhs = (J.size() % 2 == 1 ? 1 : -1) * a.b0s(J);
      t.expect(lhs == rhs, [&] { return at + ": A(J) identity fails at " + format_set(J); });
    }

    for (std::size_t k = 1; k <= static_cast<std::size_t>(std::min(n, m)); ++k) {
      for_each_ordered(range_set(1, m), k, [&](const OrderedSeq& mu) {
        Scalar first(0);
        for (std::size_t s = 0; s < k; ++s) {
          const OrderedSeq rest = without(mu, s);
          first += a.minor(concat({kZero, kStar}, rest), concat({kZero, mu[s]}, rest));
        }
        t.expect(first == a.minor(concat({kZero}, mu)), [&] { return at + ": deletion expansion of B(0 mu) fails"; });
        for (int h = 1; h <= m; ++h) {
          if (contains(as_set(mu), h)) continue;
          Scalar second = a.minor(concat({kZero, h}, mu), concat({kZero, kStar}, mu));
          for (std::size_t s = 0; s < k; ++s) {
            const OrderedSeq rest = without(mu, s);
            second += a.minor(concat({kZero, h, kStar}, rest), concat({kZero, mu[s], kStar}, rest));
          }
          t.expect(second == a.minor(concat({kZero, kStar}, mu)),
                   [&] { return at + ": deletion expansion of B(0 star mu) fails"; });
        }
      });
    }

    if (m >= n + 2) {
      for (const auto& J : subsets_of_size(range_set(1, m), static_cast<std::size_t>(n + 2))) {
        for (int mu : J) {
          for (int nu : J) {
            if (mu >= nu) continue;
            const IndexSet inner = remove(remove(J, mu), nu);
            const Scalar off = a.minor(sym({kZero, mu}, inner), sym({kZero, nu}, inner));
            t.expect(a.b0(remove(J, mu)) * a.b0(remove(J, nu)) == off * off,
                     [&] { return at + ": Jacobi identity fails at " + format_set(J); });
          }
        }
      }
    }
  }
  return t.finish(start);
}

CheckResult check_eta(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("eta identity");
  Rng rng = seeded(opt, 2);
  const int count = std::max(20, opt.arrangements / 2);
  for (int i = 0; i < count; ++i) {
    const int n = 1 + i % 4;
    const int m = n + 1 + (i / 4) % 2;
    const Arrangement a = sample(rng, n, m, false);
    for (const auto& J : admissible_sets(m, n)) {
      for (int h = 1; h <= m; ++h) {
        if (J.size() == 1 && contains(J, h)) continue;
        t.run([&] { return where(a) + ": eta_" + format_set(J) + "(" + std::to_string(h) + ") != 1"; },
              [&] { return eta(a, h, J) == 1; });
      }
    }
  }
  return t.finish(start);
}

CheckResult check_beta_roundtrip(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("beta round trip");
  Rng rng = seeded(opt, 3);
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 5; ++m) {
      const Arrangement a = sample(rng, n, m);
      const std::string at = where(a);
      for (const auto& J : admissible_sets(m, n)) {
        for (const auto& K : subsets(J)) {
          if (K.empty()) continue;
          t.run([&] { return at + ": beta recurrence and chain sum differ at " + format_set(K) + "," + format_set(J); },
                [&] { return beta(a, K, J) == beta_closed(a, K, J); });
        }
        t.run([&] { return at + ": W0 -> F -> W0 fails at " + format_set(J); }, [&] {
          const CohomClass w = CohomClass::basis(Kind::W0, J);
          return to_W0(a, to_F(a, w)) == w;
        });
        t.run([&] { return at + ": F -> W0 -> F fails at " + format_set(J); }, [&] {
          const CohomClass f = CohomClass::basis(Kind::F, J, a.b0s(J));
          return to_F(a, to_W0(a, f)) == f;
        });
      }
    }
  }
  return t.finish(start);
}

CheckResult check_negative_dual_path(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("negative contiguity dual path");
  Rng rng = seeded(opt, 4);
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= n + 2; ++m) {
      const Arrangement a = sample(rng, n, m);
      for (int p = 0; p < opt.lambda_points; ++p) {
        const LambdaPoint lam = random_lambda(rng, {m});
        const LambdaPoint other = random_lambda(rng, {m});
        std::vector<Scalar> mid_values;
        for (int j = 1; j <= m; ++j) mid_values.push_back((lam[j] + other[j]) / 2);
        const LambdaPoint mid(mid_values);
        const std::string at = where(a, lam);
        for (const auto& J : admissible_sets(m, n)) {
          for (int j = 1; j <= m; ++j) {
            const std::string label = " at j=" + std::to_string(j) + " J=" + format_set(J);
            t.run([&] { return at + ": closed form and recurrence differ" + label; }, [&] {
              return reduced(a, gamma_tilde_raw(a, lam, j, J), lam) == reduced(a, negative_recurrence(a, lam, j, J), lam);
            });
            t.run([&] { return at + ": reduced and partial-fraction forms differ" + label; }, [&] {
              return gamma_tilde(a, lam, j, J, GammaForm::Reduced) == gamma_tilde(a, lam, j, J, GammaForm::PartialFraction);
            });
            t.run([&] { return at + ": coefficients not linear in lambda" + label; }, [&] {
              const CohomClass g0 = gamma_tilde(a, lam, j, J);
              const CohomClass g1 = gamma_tilde(a, other, j, J);
              const CohomClass gm = gamma_tilde(a, mid, j, J);
              return Scalar(2) * gm == g0 + g1;
            });
          }
        }
      }
    }
  }
  return t.finish(start);
}

CheckResult check_positive_contiguity(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("positive contiguity consistency");
  Rng rng = seeded(opt, 5);
  for (int n = 1; n <= 3; ++n) {
    for (int m = n + 1; m <= n + 2; ++m) {
      const Arrangement a = sample(rng, n, m);
      const LambdaPoint lam = random_lambda(rng, {m});
      const std::string at = where(a, lam);
      const IndexSet N = range_set(1, n + 1);
      for (const auto& L : subsets(N)) {
        if (L.size() == N.size()) continue;
        t.run([&] { return at + ": chain sum and recursion differ for f_L, L=" + format_set(L); }, [&] {
          return reduced(a, mult_fJ_w0(a, lam, N, L), lam) == reduced(a, mult_fJ_w0_recursive(a, lam, N, L), lam);
        });
      }
      for (const auto& J : admissible_sets(m, n)) {
        for (int j = 1; j <= m; ++j) {
          if (contains(J, j) || J.size() > static_cast<std::size_t>(n)) continue;
          const CohomClass ref = mult_fj(a, lam, j, J);
          const IndexSet base = insert(J, j);
          for (const auto& extra : subsets_of_size(complement(base, m), static_cast<std::size_t>(n + 1) - base.size())) {
            const IndexSet aux = set_union(base, extra);
            t.run([&] { return at + ": f_j F_J depends on the auxiliary set " + format_set(aux); },
                  [&] { return reduced(a, mult_fj_raw(a, lam, j, J, aux), lam) == ref; });
          }
        }
      }
      for (int j = 1; j <= m; ++j) {
        for (int k = 1; k <= m; ++k) {
          if (j == k) continue;
          t.run([&] { return at + ": (f_j - f_k)F_k differs from f_j F_k - varpi"; }, [&] {
            const CohomClass rhs = mult_fj(a, lam, j, {k}) - CohomClass::basis(Kind::F, IndexSet{});
            return reduced(a, mult_diff(a, lam, j, k), lam) == reduced(a, rhs, lam);
          });
        }
      }
    }
  }
  return t.finish(start);
}

CheckResult check_quadrature_identities(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("quadrature identities");
  Rng rng = seeded(opt, 6);
  std::size_t positive = 0, diff = 0, negative = 0, skew = 0, standard = 0;
  double worst = 0;
  auto verify = [&](const std::string& label, const Arrangement& a, const LambdaPoint& lam, const Integrand& lhs,
                    const Integrand& rhs, std::size_t& counter) {
    t.run([&] { return where(a, lam) + ": " + label; }, [&] {
      const IdentityReport rep = verify_identity(a, lam.as_double(), lhs, rhs, chambers_1d(a), opt.quadrature_tol);
      worst = std::max(worst, rep.max_residual());
      if (rep.pass()) ++counter;
      return rep.pass();
    });
  };
  const int rounds = std::max(1, opt.lambda_points / 2);
  for (int m = 2; m <= 4; ++m) {
    for (int round = 0; round < rounds; ++round) {
      const Arrangement a = sample(rng, 1, m, true, 0.05);
      const LambdaPoint lam = random_lambda(rng, {m});
      const Integrand varpi(a, CohomClass::basis(Kind::F, IndexSet{}));

      Integrand scaled = varpi;
      scaled *= Scalar(2 * lam.infinity() + 1).get_d();
      verify("standard form expansion", a, lam, scaled, Integrand(a, standard_form(a, lam)), standard);

      for (const auto& J : admissible_sets(m, 1)) {
        for (int j = 1; j <= m; ++j) {
          if (contains(J, j)) continue;
          Integrand lhs(a, CohomClass::basis(Kind::F, J));
          lhs.multiply(j, 1);
          verify("f_j F_J at j=" + std::to_string(j) + " J=" + format_set(J), a, lam, lhs,
                 Integrand(a, mult_fj(a, lam, j, J)), positive);
        }
      }
      for (int j = 1; j <= m; ++j) {
        for (int k = 1; k <= m; ++k) {
          if (j == k) continue;
          Integrand lhs(a, CohomClass::basis(Kind::F, {k}));
          lhs.multiply(j, 1);
          Integrand minus = varpi;
          minus *= -1.0;
          lhs += minus;
          verify("(f_j - f_k)F_k at j=" + std::to_string(j) + " k=" + std::to_string(k), a, lam, lhs,
                 Integrand(a, mult_diff(a, lam, j, k)), diff);
        }
      }
      for (int j = 1; j <= m; ++j) {
        for (int k = j + 1; k <= m; ++k) {
          for (int l = k + 1; l <= m; ++l) {
            const CohomClass rel = skew_relation(a, j, k, l);
            CohomClass pairs, singles;
            for (const auto& [K, c] : rel.coeffs) (K.size() == 2 ? pairs : singles).coeffs.add(K, c);
            verify("skew relation " + std::to_string(j) + std::to_string(k) + std::to_string(l), a, lam,
                   Integrand(a, pairs), Integrand(a, Scalar(-1) * singles), skew);
          }
        }
      }

      const LambdaPoint high = random_lambda(rng, {m, Scalar(21, 20), Scalar(39, 20), 20});
      for (const auto& J : admissible_sets(m, 1)) {
        for (int j = 1; j <= m; ++j) {
          Integrand lhs(a, CohomClass::basis(Kind::F, J));
          lhs.multiply(j, -1);
          lhs *= Scalar(high[j] - 1).get_d();
          verify("negative shift at j=" + std::to_string(j) + " J=" + format_set(J), a, high, lhs,
                 Integrand(a, gamma_tilde(a, high, j, J)), negative);
        }
      }
    }
  }
  t.expect(standard >= 1 && positive >= 10 && diff >= 5 && negative >= 10 && skew >= 1, [&] {
    return "too few passing cases: standard " + std::to_string(standard) + ", positive " + std::to_string(positive) +
           ", difference " + std::to_string(diff) + ", negative " + std::to_string(negative) + ", skew " +
           std::to_string(skew);
  });
  t.note("standard " + std::to_string(standard) + ", positive " + std::to_string(positive) + ", difference " +
         std::to_string(diff) + ", negative " + std::to_string(negative) + ", skew " + std::to_string(skew) +
         ", max residual " + fixed(worst, 2));
  return t.finish(start);
}

CheckResult check_gauss_manin(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("Gauss-Manin finite differences");
  Rng rng = seeded(opt, 7);
  double worst = 0;
  std::size_t entries = 0;
  const int rounds = std::max(1, opt.lambda_points / 2);
  for (int m = 2; m <= 3; ++m) {
    for (int round = 0; round < rounds; ++round) {
      const Arrangement a = sample(rng, 1, m, true, 0.05);
      const LambdaPoint lam = random_lambda(rng, {m});
      std::vector<std::vector<std::vector<Scalar>>> tangents(3, std::vector<std::vector<Scalar>>(m, std::vector<Scalar>(2)));
      tangents[0][1][0] = 1;
      tangents[1][0][1] = 1;
      for (auto& row : tangents[2])
        for (auto& v : row) v = random_rational(rng, Scalar(-1), Scalar(1), 5);
      for (std::size_t i = 0; i < tangents.size(); ++i) {
        const std::string label = where(a, lam) + " tangent " + std::to_string(i);
        t.run([&] { return label + ": connection matrix"; }, [&] {
          const GaussManinReport rep = verify_gauss_manin(a, lam, tangents[i], Scalar(1, 1000), opt.gauss_manin_tol);
          worst = std::max(worst, rep.max_residual());
          entries += rep.entries.size();
          return rep.pass();
        });
        t.run([&] { return label + ": covariant derivative of varpi"; }, [&] {
          const GaussManinReport rep = verify_nabla_varpi(a, lam, tangents[i], Scalar(1, 1000), opt.gauss_manin_tol);
          worst = std::max(worst, rep.max_residual());
          entries += rep.entries.size();
          return rep.pass();
        });
      }
    }
  }
  t.note(std::to_string(entries) + " entries, max residual " + fixed(worst, 2));
  return t.finish(start);
}

CheckResult check_closed_forms(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("closed forms");
  Rng rng = seeded(opt, 8);
  for (int p = 0; p < opt.closed_form_points; ++p) {
    for (int n = 1; n <= 2; ++n) {
      const Arrangement a = sample(rng, n, 2);
      const LambdaPoint lam = random_lambda(rng, {2});
      for (const auto& J : nbc_basis(2, n)) {
        t.run([&] { return where(a, lam) + ": m=2 column " + format_set(J); },
              [&] { return reduce_form_class(a, closed_form_m2(a, lam, J)) == gm_column(a, lam, J); });
      }
    }
    const Arrangement a = sample(rng, 1, 3);
    const LambdaPoint lam = random_lambda(rng, {3});
    for (const auto& J : nbc_basis(3, 1)) {
      t.run([&] { return where(a, lam) + ": n=1 column " + format_set(J); },
            [&] { return same_form_class(a, reduce_form_class(a, closed_form_n1(a, lam, J)), gm_column(a, lam, J)); });
    }
  }
  for (int m = 3; m <= 4; ++m) {
    for (int p = 0; p < 5; ++p) {
      const Arrangement a = sample(rng, 1, m);
      for (int j = 1; j <= m; ++j)
        for (int k = j + 1; k <= m; ++k)
          for (int l = k + 1; l <= m; ++l)
            t.run([&] { return where(a) + ": zeta_" + std::to_string(j) + std::to_string(k) + std::to_string(l) + " != 0"; },
                  [&] { return pullback_to_alpha(a, zeta_triple(a, j, k, l)).empty(); });
    }
  }
  for (int n = 1; n <= 3; ++n) {
    for (int p = 0; p < 5; ++p) {
      const Arrangement a = sample(rng, n, 2);
      const LambdaPoint lam = random_lambda(rng, {2});
      t.run([&] { return where(a, lam) + ": Wronskian trace"; }, [&] { return wronskian_trace(a, lam).equal(); });
    }
  }
  return t.finish(start);
}

CheckResult check_structure(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("structure");
  Rng rng = seeded(opt, 9);
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= n + 4; ++m) {
      t.expect(nbc_basis(m, n).size() == dimension(m, n), [&] {
        return "NBC count " + std::to_string(nbc_basis(m, n).size()) + " != dimension " + std::to_string(dimension(m, n)) +
               " at n=" + std::to_string(n) + " m=" + std::to_string(m);
      });
    }
  }
  for (int i = 0; i < opt.arrangements; ++i) {
    const int m = 1 + i % 6;
    const Arrangement a = sample(rng, 1, m, false);
    t.run([&] { return where(a) + ": chamber count differs from 2m-1"; },
          [&] { return static_cast<int>(chambers_1d(a).size()) == 2 * m - 1 && dimension(m, 1) == static_cast<std::uint64_t>(2 * m - 1); });
  }
  for (int n = 1; n <= 3; ++n) {
    for (int m = 2; m <= n + 3; ++m) {
      const Arrangement a = sample(rng, n, m);
      const LambdaPoint lam = random_lambda(rng, {m});
      std::vector<IndexSet> keys = admissible_sets(m, n);
      const auto wide = subsets_of_size(range_set(1, m), static_cast<std::size_t>(n + 2));
      keys.insert(keys.end(), wide.begin(), wide.end());
      for (int trial = 0; trial < 5; ++trial) {
        CohomClass cls;
        cls.coeffs.add(IndexSet{}, random_rational(rng, RationalGrid{}));
        for (const auto& K : keys)
          if (rng() % 3 == 0) cls.coeffs.add(K, random_rational(rng, RationalGrid{}));
        t.run([&] { return where(a) + ": NBC reduction is not idempotent"; }, [&] {
          const CohomClass once = reduce_to_nbc(a, cls, &lam);
          for (const auto& [K, c] : once.coeffs)
            if (!is_nbc(K, m, n)) return false;
          return reduce_to_nbc(a, once, &lam) == once;
        });
      }
      if (m > n + 2) continue;
      for (const auto& J : admissible_sets(m, n)) {
        for (int j = 1; j <= m; ++j) {
          t.run([&] { return where(a) + ": gamma support not adjacent at j=" + std::to_string(j) + " J=" + format_set(J); },
                [&] {
                  for (const auto& [K, c] : gamma_raw(a, lam, j, J).coeffs)
                    if (!adjacent(J, K)) return false;
                  return true;
                });
        }
      }
    }
  }
  return t.finish(start);
}

CheckResult check_connection_consistency(const CheckOptions& opt) {
  const auto start = Clock::now();
  Tally t("connection consistency");
  Rng rng = seeded(opt, 10);
  for (int n = 1; n <= 3; ++n) {
    for (int m = 2; m <= n + 2; ++m) {
      const Arrangement a = sample(rng, n, m);
      const LambdaPoint lam = random_lambda(rng, {m});
      const std::string at = where(a, lam);
      for (int j = 1; j <= m; ++j) {
        t.run([&] { return at + ": singleton column " + std::to_string(j); },
              [&] { return same_form_class(a, gm_singleton_column(a, lam, j), gm_column(a, lam, {j})); });
      }
      for (const auto& J : nbc_basis(m, n)) {
        if (J.size() < 2) continue;
        const FormClass first = gm_column(a, lam, J);
        for (int anchor : J) {
          t.run([&] { return at + ": anchor " + std::to_string(anchor) + " changes column " + format_set(J); },
                [&] { return same_form_class(a, gm_column(a, lam, J, anchor), first); });
        }
      }
      if (m != n + 1) continue;
      const Invariants inv = invariants_of(a);
      for (int j = 1; j <= n; ++j) {
        for (int k = j; k <= std::min(j + 1, n); ++k) {
          t.run([&] { return at + ": theta chain " + std::to_string(j) + "," + std::to_string(k); }, [&] {
            const ParamOneForm exact = theta_chain_exact(a, j, k);
            const FloatOneForm approx = theta_chain(inv, n, j, k);
            double scale = 1, err = 0;
            for (const auto& [key, v] : exact) scale = std::max(scale, std::abs(v.get_d()));
            for (const auto& [key, v] : exact) {
              auto it = approx.find(key);
              err = std::max(err, std::abs(v.get_d() - (it == approx.end() ? 0.0 : it->second)));
            }
            for (const auto& [key, v] : approx)
              if (!exact.contains(key)) err = std::max(err, std::abs(v));
            return err <= 1e-9 * scale;
          });
        }
      }
    }
  }
  return t.finish(start);
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

SuiteReport run_suite(const std::string& name, const CheckOptions& opt) {
  SuiteReport report;
  report.suite = name;
  report.seed = opt.seed;
  const bool all = name == "all";
  if (!all && name != "exact" && name != "quadrature" && name != "gauss-manin") {
    throw Error(ErrorKind::InvalidArgument, "unknown suite '" + name + "' (expected exact, quadrature, gauss-manin or all)");
  }
  if (all || name == "exact") {
    report.checks.push_back(check_determinant_layer(opt));
    report.checks.push_back(check_eta(opt));
    report.checks.push_back(check_beta_roundtrip(opt));
    report.checks.push_back(check_negative_dual_path(opt));
    report.checks.push_back(check_positive_contiguity(opt));
    report.checks.push_back(check_closed_forms(opt));
    report.checks.push_back(check_structure(opt));
    report.checks.push_back(check_connection_consistency(opt));
  }
  if (all || name == "quadrature") report.checks.push_back(check_quadrature_identities(opt));
  if (all || name == "gauss-manin") report.checks.push_back(check_gauss_manin(opt));
  return report;
}

std::string format_check(const CheckResult& r) {
  std::ostringstream out;
  out << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(34) << r.name << std::right << std::setw(7) << r.cases
      << " cases";
  if (!r.detail.empty()) out << "  " << r.detail;
  return out.str();
}

std::string format_report(const SuiteReport& report) {
  std::ostringstream out;
  out << "suite " << report.suite << " seed " << report.seed << "\n";
  for (const auto& c : report.checks) out << format_check(c) << "\n";
  out << (report.pass() ? "PASS" : "FAIL") << "  " << report.checks.size() << " checks\n";
  return out.str();
}

}  // namespace spherule
