#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spherule/arrangement.hpp"
#include "spherule/arrangement_file.hpp"
#include "spherule/cohomology.hpp"
#include "spherule/connection.hpp"
#include "spherule/contiguity.hpp"
#include "spherule/indices.hpp"
#include "spherule/random.hpp"
#include "spherule/suites.hpp"
#include "spherule/verify.hpp"

using namespace spherule;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

/// Rows of (key, entry, value) printed as an aligned table and optionally mirrored to CSV.
class Table {
 public:
  void add(std::string key, std::string entry, std::string value) {
    rows_.push_back({std::move(key), std::move(entry), std::move(value)});
  }
  void add(const std::string& key, const std::string& entry, const Scalar& value) { add(key, entry, to_string(value)); }
  void add(const std::string& key, const std::string& entry, double value) {
    std::ostringstream out;
    out << std::setprecision(15) << value;
    add(key, entry, out.str());
  }

  void add_class(const CohomClass& cls, const std::string& prefix = "") {
    const char* name = cls.kind == Kind::F ? "F" : "W0";
    if (cls.is_zero()) add(prefix + "0", "", "0");
    for (const auto& [K, c] : cls.coeffs) add(prefix + (K.empty() ? std::string("varpi") : name + format_set(K)), "", c);
  }

  void add_form(const std::string& key, const ParamOneForm& form) {
    if (form.empty()) add(key, "", "0");
    for (const auto& [k, c] : form) add(key, format_param_key(k), c);
  }

  void add_form_class(const FormClass& cls, const std::string& column) {
    if (cls.empty()) add("Theta[-," + column + "]", "", "0");
    for (const auto& [K, f] : cls) add_form("Theta[" + format_set(K) + "," + column + "]", f);
  }

  void print(std::ostream& out) const {
    std::size_t wk = 3, we = 5;
    for (const auto& r : rows_) {
      wk = std::max(wk, r[0].size());
      we = std::max(we, r[1].size());
    }
    out << std::left << std::setw(static_cast<int>(wk)) << "key" << "  " << std::setw(static_cast<int>(we)) << "entry"
        << "  value\n";
    for (const auto& r : rows_)
      out << std::left << std::setw(static_cast<int>(wk)) << r[0] << "  " << std::setw(static_cast<int>(we)) << r[1] << "  "
          << r[2] << "\n";
  }

  void write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write CSV file '" + path + "'");
    out << "key,entry,value\n";
    for (const auto& r : rows_) out << csv_field(r[0]) << "," << csv_field(r[1]) << "," << csv_field(r[2]) << "\n";
  }

 private:
  static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

  std::vector<std::array<std::string, 3>> rows_;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](char c) { return c == ' ' || c == '{' || c == '}'; }), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_index(const std::string& s, const char* what) {
  Scalar v;
  try {
    v = parse_scalar(s);
  } catch (const Error&) {
    throw Error(ErrorKind::ParseError, std::string("expected an integer for ") + what + ", found '" + s + "'");
  }
  if (v.get_den() != 1 || v < 0 || v > 1000) throw Error(ErrorKind::ParseError, std::string("bad ") + what + " '" + s + "'");
  return static_cast<int>(v.get_num().get_si());
}

Symbols parse_symbols(const std::string& text) {
  Symbols out;
  for (const auto& s : split_list(text)) out.push_back(s == "*" ? kStar : parse_index(s, "symbol"));
  return out;
}

IndexSet parse_set(const std::string& text, const Arrangement& arr) {
  std::vector<int> elems;
  for (const auto& s : split_list(text)) {
    const int j = parse_index(s, "sphere index");
    if (j < 1 || j > arr.m()) throw Error(ErrorKind::InvalidArgument, "sphere index " + s + " outside 1.." + std::to_string(arr.m()));
    elems.push_back(j);
  }
  const IndexSet J = make_set(elems);
  if (J.size() != elems.size()) throw Error(ErrorKind::InvalidArgument, "repeated index in '" + text + "'");
  return J;
}

LambdaPoint parse_lambda(const std::string& text, const Arrangement& arr) {
  std::vector<Scalar> v;
  for (const auto& s : split_list(text)) v.push_back(parse_scalar(s));
  if (static_cast<int>(v.size()) != arr.m()) {
    throw Error(ErrorKind::DimensionMismatch,
                "--lambda needs " + std::to_string(arr.m()) + " exponents, got " + std::to_string(v.size()));
  }
  return LambdaPoint(std::move(v));
}

int require_sphere_index(int j, const Arrangement& arr, const char* flag) {
  if (j < 1 || j > arr.m()) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " must lie in 1.." + std::to_string(arr.m()));
  return j;
}

std::vector<std::vector<Scalar>> parse_tangent(const std::string& text, const Arrangement& arr) {
  std::vector<std::vector<Scalar>> rows;
  std::istringstream in(text);
  std::string row;
  while (std::getline(in, row, ';')) {
    std::vector<Scalar> r;
    for (const auto& s : split_list(row)) r.push_back(parse_scalar(s));
    if (static_cast<int>(r.size()) != arr.n() + 1) {
      throw Error(ErrorKind::DimensionMismatch, "each tangent row needs n+1 = " + std::to_string(arr.n() + 1) + " entries");
    }
    rows.push_back(std::move(r));
  }
  if (static_cast<int>(rows.size()) != arr.m()) {
    throw Error(ErrorKind::DimensionMismatch, "--tangent needs m = " + std::to_string(arr.m()) + " rows separated by ';'");
  }
  return rows;
}

GammaForm parse_gamma_form(const std::string& s) {
  if (s == "reduced") return GammaForm::Reduced;
  if (s == "partial-fraction") return GammaForm::PartialFraction;
  throw Error(ErrorKind::InvalidArgument, "--form must be 'reduced' or 'partial-fraction'");
}

std::string chamber_label(const Chamber& c) {
  std::ostringstream out;
  out << std::setprecision(12) << "(" << static_cast<double>(c.a) << "," << static_cast<double>(c.b) << ")";
  return out.str();
}

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::ToleranceNotMet:
    case ErrorKind::StepTooLarge:
      return false;
    default:
      return true;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley-Menger minors, twisted cohomology and Gauss-Manin connections of hypersphere arrangements"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string file, csv;
  app.add_option("-f,--file", file, "Arrangement file")->check(CLI::ExistingFile);
  app.add_option("--csv", csv, "Also write rows to this CSV file");

  Table table;
  std::function<int()> action;
  std::optional<Arrangement> loaded;
  auto arr = [&]() -> const Arrangement& {
    if (!loaded) {
      if (file.empty()) throw Error(ErrorKind::InvalidArgument, "this subcommand needs --file");
      loaded = load_arrangement(file);
    }
    return *loaded;
  };

  std::string rows_opt, cols_opt, set_opt, lambda_opt, lambda2_opt, k_set, j_set, dir_opt = "pos", form_opt = "reduced";
  std::string suite = "all", tangent_opt, kind_opt = "f";
  int j_opt = 0, k_opt = 0, l_opt = 0, h_opt = 0, anchor = 0, chamber = -1, n_opt = 1, m_opt = 2;
  bool nbc = false, raw = false, varpi = false, recursive = false, alpha = false, closed = false, exact = false, at = false;
  std::uint64_t seed = 7;
  std::size_t samples = 100000;
  double tol = 1e-6, gm_tol = 1e-5;
  CheckOptions check_opt;

  auto* check = app.add_subcommand("check", "Report the hypotheses H1, H2 and general position");
  check->callback([&] {
    action = [&] {
      const HypothesisReport rep = check_hypotheses(arr());
      table.add("H1", "", rep.h1() ? "pass" : "fail");
      for (const auto& J : rep.h1_violations) table.add("H1", format_set(J), "B(0J) or B(0*J) vanishes");
      table.add("H2", "", rep.h2() ? "pass" : "fail");
      for (const auto& J : rep.h2_violations) table.add("H2", format_set(J), "(-1)^(p-1) B(0*J) <= 0");
      const bool gp = arr().m() <= arr().n() + 1 || general_position(arr());
      table.add("general-position", "", gp ? "pass" : "fail");
      return rep.h1() && rep.h2() ? kOk : kCheckFailed;
    };
  });

  auto* minor = app.add_subcommand("minor", "Signed Cayley-Menger minor; '0' and '*' name the special rows");
  minor->add_option("--rows", rows_opt)->required();
  minor->add_option("--cols", cols_opt)->required();
  minor->callback([&] {
    action = [&] {
      const Symbols r = parse_symbols(rows_opt), c = parse_symbols(cols_opt);
      table.add("B(" + rows_opt + "/" + cols_opt + ")", "", arr().minor(r, c));
      return kOk;
    };
  });

  auto* a_minor = app.add_subcommand("a-minor", "Principal minor A(J) of the configuration matrix");
  a_minor->add_option("--set", set_opt)->required();
  a_minor->callback([&] {
    action = [&] {
      const IndexSet J = parse_set(set_opt, arr());
      table.add("A" + format_set(J), "", a_principal_minor(arr(), J));
      table.add("B(0*J)", "", arr().b0s(J));
      return kOk;
    };
  });

  auto* normalize = app.add_subcommand("normalize", "Triangular normal-form coefficients from the invariants");
  normalize->callback([&] {
    action = [&] {
      const NormalizedAlphas na = derive_normalized_alphas(invariants_of(arr()), arr().n());
      for (std::size_t j = 0; j < na.alpha.size(); ++j)
        for (std::size_t nu = 0; nu < na.alpha[j].size(); ++nu)
          table.add("alpha_" + std::to_string(j + 1), std::to_string(nu), na.alpha[j][nu]);
      return kOk;
    };
  });

  auto* basis = app.add_subcommand("basis", "Admissible sets or the NBC basis");
  basis->add_flag("--nbc", nbc);
  basis->callback([&] {
    action = [&] {
      const int m = arr().m(), n = arr().n();
      const auto sets = nbc ? nbc_basis(m, n) : admissible_sets(m, n);
      for (std::size_t i = 0; i < sets.size(); ++i) table.add(std::to_string(i + 1), "", format_set(sets[i]));
      table.add("dimension", "", std::to_string(dimension(m, n)));
      return kOk;
    };
  });

  auto* standard = app.add_subcommand("standard-form", "W0 coefficients of (2 lambda_inf + n) varpi");
  standard->add_option("--lambda", lambda_opt)->required();
  standard->add_flag("--varpi", varpi, "Coefficients of varpi itself");
  standard->add_flag("--nbc", nbc, "varpi in the NBC F basis");
  standard->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      table.add_class(nbc ? varpi_in_nbc(arr(), lam) : varpi ? varpi_in_w0(arr(), lam) : standard_form(arr(), lam));
      return kOk;
    };
  });

  auto* theta_cmd = app.add_subcommand("theta", "Invariant one-form theta_J");
  theta_cmd->add_option("--set", set_opt)->required();
  theta_cmd->add_flag("--alpha", alpha, "Pull back to coefficient space");
  theta_cmd->callback([&] {
    action = [&] {
      const IndexSet J = parse_set(set_opt, arr());
      const ParamOneForm f = theta(arr(), J);
      if (!alpha) {
        table.add_form("theta" + format_set(J), f);
        return kOk;
      }
      const AlphaOneForm p = pullback_to_alpha(arr(), f);
      if (p.empty()) table.add("theta" + format_set(J), "", "0");
      for (const auto& [k, c] : p)
        table.add("theta" + format_set(J), "dalpha_" + std::to_string(k.first) + "_" + std::to_string(k.second), c);
      return kOk;
    };
  });

  auto* chain = app.add_subcommand("theta-chain", "theta_k^j from the normal form (m = n+1)");
  chain->add_option("--j", j_opt)->required();
  chain->add_option("--k", k_opt)->required();
  chain->add_flag("--exact", exact, "Minor expression, k in {j, j+1}");
  chain->callback([&] {
    action = [&] {
      const std::string key = "theta_" + std::to_string(k_opt) + "^" + std::to_string(j_opt);
      if (exact) {
        table.add_form(key, theta_chain_exact(arr(), j_opt, k_opt));
      } else {
        for (const auto& [pk, v] : theta_chain(invariants_of(arr()), arr().n(), j_opt, k_opt)) table.add(key, format_param_key(pk), v);
      }
      return kOk;
    };
  });

  auto* contiguity = app.add_subcommand("contiguity", "Class of f_j F_J (pos) or (lambda_j - 1) f_j^-1 F_J (neg)");
  contiguity->add_option("--dir", dir_opt)->check(CLI::IsMember({"pos", "neg"}));
  contiguity->add_option("--j", j_opt)->required();
  contiguity->add_option("--set", set_opt)->required();
  contiguity->add_option("--lambda", lambda_opt)->required();
  contiguity->add_option("--form", form_opt, "reduced or partial-fraction (neg)");
  contiguity->add_flag("--raw", raw, "Skip the NBC reduction");
  contiguity->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      const int j = require_sphere_index(j_opt, arr(), "--j");
      const IndexSet J = parse_set(set_opt, arr());
      if (dir_opt == "pos") {
        table.add_class(raw ? mult_fj_raw(arr(), lam, j, J, default_auxiliary_set(arr(), j, J)) : mult_fj(arr(), lam, j, J));
      } else {
        const GammaForm g = parse_gamma_form(form_opt);
        table.add_class(raw ? gamma_tilde_raw(arr(), lam, j, J, g) : gamma_tilde(arr(), lam, j, J, g));
      }
      return kOk;
    };
  });

  auto* gamma_cmd = app.add_subcommand("gamma", "Coefficients of W0^(j)(J) varpi");
  gamma_cmd->add_option("--j", j_opt)->required();
  gamma_cmd->add_option("--set", set_opt)->required();
  gamma_cmd->add_option("--lambda", lambda_opt)->required();
  gamma_cmd->add_option("--form", form_opt, "reduced or partial-fraction");
  gamma_cmd->add_flag("--raw", raw, "Skip the NBC reduction");
  gamma_cmd->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      const int j = require_sphere_index(j_opt, arr(), "--j");
      const IndexSet J = parse_set(set_opt, arr());
      const GammaForm g = parse_gamma_form(form_opt);
      table.add_class(raw ? gamma_raw(arr(), lam, j, J, g) : gamma(arr(), lam, j, J, g));
      return kOk;
    };
  });

  auto* recurrence = app.add_subcommand("recurrence", "(lambda_j - 1) f_j^-1 F_J by the three-part recurrence");
  recurrence->add_option("--j", j_opt)->required();
  recurrence->add_option("--set", set_opt)->required();
  recurrence->add_option("--lambda", lambda_opt)->required();
  recurrence->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      table.add_class(negative_recurrence(arr(), lam, require_sphere_index(j_opt, arr(), "--j"), parse_set(set_opt, arr())));
      return kOk;
    };
  });

  auto* diff = app.add_subcommand("mult-diff", "Class of (f_j - f_k) F_k");
  diff->add_option("--j", j_opt)->required();
  diff->add_option("--k", k_opt)->required();
  diff->add_option("--lambda", lambda_opt)->required();
  diff->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      table.add_class(mult_diff(arr(), lam, require_sphere_index(j_opt, arr(), "--j"), require_sphere_index(k_opt, arr(), "--k")));
      return kOk;
    };
  });

  auto* mult_w0 = app.add_subcommand("mult-w0", "Class of f_L W0(N) varpi, N = {1..n+1}");
  mult_w0->add_option("--set", set_opt, "L, a proper subset of N")->required();
  mult_w0->add_option("--lambda", lambda_opt)->required();
  mult_w0->add_flag("--recursive", recursive, "Peel one factor at a time");
  mult_w0->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      const IndexSet L = parse_set(set_opt, arr());
      const IndexSet N = range_set(1, arr().n() + 1);
      table.add_class(recursive ? mult_fJ_w0_recursive(arr(), lam, N, L) : mult_fJ_w0(arr(), lam, N, L));
      return kOk;
    };
  });

  auto* eta_cmd = app.add_subcommand("eta", "Chain sum eta_J(h)");
  eta_cmd->add_option("--aux", h_opt, "Auxiliary index h")->required();
  eta_cmd->add_option("--set", set_opt)->required();
  eta_cmd->callback([&] {
    action = [&] {
      const Scalar v = eta(arr(), require_sphere_index(h_opt, arr(), "--aux"), parse_set(set_opt, arr()));
      table.add("eta", set_opt, v);
      return v == 1 ? kOk : kCheckFailed;
    };
  });

  auto* beta_cmd = app.add_subcommand("beta", "Transition coefficients beta_{K,J}");
  beta_cmd->add_option("--K", k_set);
  beta_cmd->add_option("--J", j_set);
  beta_cmd->callback([&] {
    action = [&] {
      if (k_set.empty() != j_set.empty()) throw Error(ErrorKind::InvalidArgument, "give both --K and --J or neither");
      if (k_set.empty()) {
        for (const auto& e : beta_matrix(arr())) table.add("beta", format_set(e.K) + " " + format_set(e.J), e.value);
        return kOk;
      }
      const IndexSet K = parse_set(k_set, arr()), J = parse_set(j_set, arr());
      const Scalar rec = beta(arr(), K, J), chain_sum = beta_closed(arr(), K, J);
      table.add("beta", "recurrence", rec);
      table.add("beta", "chain-sum", chain_sum);
      table.add("beta-tilde", "", beta_tilde(arr(), K, J));
      return rec == chain_sum ? kOk : kCheckFailed;
    };
  });

  auto* transition = app.add_subcommand("transition", "W0(J) varpi in F coordinates, or F_J in W0 coordinates");
  transition->add_option("--set", set_opt)->required();
  transition->add_option("--kind", kind_opt, "w0 (W0 -> F) or f (F -> W0)")->check(CLI::IsMember({"f", "w0"}));
  transition->callback([&] {
    action = [&] {
      const IndexSet J = parse_set(set_opt, arr());
      table.add_class(kind_opt == "w0" ? w0_in_F(arr(), J) : to_W0(arr(), CohomClass::basis(Kind::F, J)));
      return kOk;
    };
  });

  auto* expand = app.add_subcommand("nbc-expand", "Expansion of F_K or W0(K) in the NBC basis");
  expand->add_option("--set", set_opt)->required();
  expand->add_option("--kind", kind_opt)->check(CLI::IsMember({"f", "w0"}));
  expand->callback([&] {
    action = [&] {
      const IndexSet K = parse_set(set_opt, arr());
      const bool f = kind_opt == "f";
      table.add_class(CohomClass(f ? Kind::F : Kind::W0, f ? nbc_expansion_F(arr(), K) : nbc_expansion_W0(arr(), K)));
      return kOk;
    };
  });

  auto* relation = app.add_subcommand("relation", "Linear relation among W0(J - nu), or partial fractions of F_J, |J| = n+2");
  relation->add_option("--set", set_opt)->required();
  relation->add_option("--kind", kind_opt, "w0 or f")->check(CLI::IsMember({"f", "w0"}));
  relation->callback([&] {
    action = [&] {
      const IndexSet J = parse_set(set_opt, arr());
      if (kind_opt == "w0") {
        for (const auto& [nu, c] : w0_relation(arr(), J)) table.add("c_" + format_set(nu), "", c);
      } else {
        table.add_class(CohomClass(Kind::F, partial_fraction(arr(), J)));
      }
      return kOk;
    };
  });

  auto* skew = app.add_subcommand("skew", "Skew relation among F_j, F_k, F_l and their pairs (n = 1)");
  skew->add_option("--j", j_opt)->required();
  skew->add_option("--k", k_opt)->required();
  skew->add_option("--l", l_opt)->required();
  skew->callback([&] {
    action = [&] {
      table.add_class(skew_relation(arr(), require_sphere_index(j_opt, arr(), "--j"), require_sphere_index(k_opt, arr(), "--k"),
                                    require_sphere_index(l_opt, arr(), "--l")));
      return kOk;
    };
  });

  auto* gm = app.add_subcommand("gm", "Gauss-Manin connection matrix over the NBC basis");
  gm->add_option("--K", k_set);
  gm->add_option("--J", j_set);
  gm->add_option("--lambda", lambda_opt)->required();
  gm->add_option("--anchor", anchor, "Element of J used by the recursion");
  gm->add_flag("--closed", closed, "Closed-form columns (m = 2 or n = 1)");
  gm->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      auto column = [&](const IndexSet& J) {
        if (!closed) return gm_column(arr(), lam, J, anchor);
        return reduce_form_class(arr(), arr().m() == 2 ? closed_form_m2(arr(), lam, J) : closed_form_n1(arr(), lam, J));
      };
      if (!k_set.empty() && j_set.empty()) throw Error(ErrorKind::InvalidArgument, "--K needs --J");
      if (!j_set.empty()) {
        const IndexSet J = parse_set(j_set, arr());
        const FormClass col = column(J);
        if (k_set.empty()) {
          table.add_form_class(col, format_set(J));
        } else {
          const IndexSet K = parse_set(k_set, arr());
          table.add_form("Theta[" + format_set(K) + "," + format_set(J) + "]", col.get(K));
        }
        return kOk;
      }
      for (const auto& J : nbc_basis(arr().m(), arr().n())) table.add_form_class(column(J), format_set(J));
      return kOk;
    };
  });

  auto* nabla = app.add_subcommand("nabla-varpi", "Covariant derivative of varpi");
  nabla->add_option("--lambda", lambda_opt)->required();
  nabla->add_flag("--nbc", nbc, "In the NBC F basis instead of W0 coordinates");
  nabla->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      if (nbc) {
        for (const auto& [K, f] : nabla_b_varpi_class(arr(), lam)) table.add_form("F" + format_set(K), f);
      } else {
        for (const auto& [J, f] : nabla_b_varpi(arr(), lam)) table.add_form("W0" + format_set(J), f);
      }
      return kOk;
    };
  });

  auto* wronskian = app.add_subcommand("wronskian", "Trace of the connection matrix against d log W (m = 2)");
  wronskian->add_option("--lambda", lambda_opt)->required();
  wronskian->callback([&] {
    action = [&] {
      const WronskianReport rep = wronskian_trace(arr(), parse_lambda(lambda_opt, arr()));
      table.add_form("trace", rep.trace);
      table.add_form("dlogW", rep.closed);
      table.add("equal", "", rep.equal() ? "yes" : "no");
      return rep.equal() ? kOk : kCheckFailed;
    };
  });

  auto* conjecture = app.add_subcommand("conjecture", "Exploratory: lambda-independence of the trace residual (m <= n+1)");
  conjecture->add_option("--lambda", lambda_opt)->required();
  conjecture->add_option("--lambda2", lambda2_opt)->required();
  conjecture->callback([&] {
    action = [&] {
      const ConjectureReport rep = conjecture_check(arr(), parse_lambda(lambda_opt, arr()), parse_lambda(lambda2_opt, arr()));
      table.add_form("residual-1", rep.residual_first);
      table.add_form("residual-2", rep.residual_second);
      table.add("lambda-independent", "", rep.lambda_independent() ? "yes" : "no");
      return kOk;
    };
  });

  auto* zeta = app.add_subcommand("zeta", "zeta forms for n = 1: two indices (pair) or three (triple)");
  zeta->add_option("--set", set_opt, "Ordered indices j,k or j,k,l")->required();
  zeta->add_flag("--at", at, "The second pair form");
  zeta->callback([&] {
    action = [&] {
      std::vector<int> idx;
      for (const auto& s : split_list(set_opt)) idx.push_back(require_sphere_index(parse_index(s, "index"), arr(), "--set"));
      ParamOneForm f;
      if (idx.size() == 2) {
        f = at ? zeta_pair_at(arr(), idx[0], idx[1]) : zeta_pair(arr(), idx[0], idx[1]);
      } else if (idx.size() == 3) {
        f = zeta_triple(arr(), idx[0], idx[1], idx[2]);
      } else {
        throw Error(ErrorKind::InvalidArgument, "--set takes two or three indices");
      }
      table.add_form("zeta", f);
      table.add("pullback-zero", "", pullback_to_alpha(arr(), f).empty() ? "yes" : "no");
      return kOk;
    };
  });

  auto* cycle = app.add_subcommand("infinity-cycle", "Unbounded cycle through the bounded ones (m = n+1)");
  cycle->add_option("--lambda", lambda_opt)->required();
  cycle->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      for (const auto& [J, c] : infinity_cycle_coeffs(lam.as_double(), arr().n())) table.add("c" + format_set(J), "", c);
      return kOk;
    };
  });

  auto* chambers = app.add_subcommand("chambers", "Bounded chambers (n = 1)");
  chambers->callback([&] {
    action = [&] {
      const auto cs = chambers_1d(arr());
      for (std::size_t i = 0; i < cs.size(); ++i)
        table.add(std::to_string(i), std::to_string(cs[i].sphere_a) + "-" + std::to_string(cs[i].sphere_b), chamber_label(cs[i]));
      return kOk;
    };
  });

  auto* integrate_cmd = app.add_subcommand("integrate", "Chamber integrals of F_J (n = 1); empty set is varpi");
  integrate_cmd->add_option("--set", set_opt);
  integrate_cmd->add_option("--lambda", lambda_opt)->required();
  integrate_cmd->add_option("--chamber", chamber, "Chamber number; all by default");
  integrate_cmd->add_option("--tol", tol);
  integrate_cmd->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      const IndexSet J = parse_set(set_opt, arr());
      const auto cs = chambers_1d(arr());
      QuadratureOptions q;
      q.tolerance = tol;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (chamber >= 0 && static_cast<std::size_t>(chamber) != i) continue;
        const QuadratureResult r = integrate(arr(), lam.as_double(), J, cs[i], q);
        table.add(std::to_string(i), "value", r.value);
        table.add(std::to_string(i), "error", r.error_estimate);
      }
      return kOk;
    };
  });

  auto* gm_check = app.add_subcommand("gm-check", "Finite-difference check of the connection along an alpha tangent (n = 1)");
  gm_check->add_option("--lambda", lambda_opt)->required();
  gm_check->add_option("--tangent", tangent_opt, "Rows 'a_j1,...,a_j0' separated by ';'")->required();
  gm_check->add_option("--tol", gm_tol);
  gm_check->add_flag("--varpi", varpi, "Check the covariant derivative of varpi");
  gm_check->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      const auto t = parse_tangent(tangent_opt, arr());
      const GaussManinReport rep = varpi ? verify_nabla_varpi(arr(), lam, t, Scalar(1, 1000), gm_tol)
                                         : verify_gauss_manin(arr(), lam, t, Scalar(1, 1000), gm_tol);
      for (const auto& e : rep.entries) {
        const std::string key = (e.column.empty() ? std::string("varpi") : "F" + format_set(e.column)) + "@" + std::to_string(e.chamber);
        table.add(key, "derivative", e.derivative);
        table.add(key, "predicted", e.predicted);
        table.add(key, "residual", e.residual);
      }
      table.add("pass", "", rep.pass() ? "yes" : "no");
      return rep.pass() ? kOk : kCheckFailed;
    };
  });

  auto* mc = app.add_subcommand("monte-carlo", "Exploratory n = 2 integrals over sign regions");
  mc->add_option("--set", set_opt);
  mc->add_option("--lambda", lambda_opt)->required();
  mc->add_option("--samples", samples);
  mc->add_option("--seed", seed);
  mc->callback([&] {
    action = [&] {
      const LambdaPoint lam = parse_lambda(lambda_opt, arr());
      const CohomClass phi = CohomClass::basis(Kind::F, parse_set(set_opt, arr()));
      for (const auto& region : sign_regions_2d(arr())) {
        std::string label;
        for (int s : region.signs) label += s < 0 ? '-' : '+';
        const QuadratureResult r = monte_carlo_2d(arr(), lam.as_double(), phi, region, samples, seed);
        table.add(label, "value", r.value);
        table.add(label, "error", r.error_estimate);
      }
      return kOk;
    };
  });

  auto* random_cmd = app.add_subcommand("random", "Print a random arrangement file satisfying H1 and H2");
  random_cmd->add_option("--n", n_opt);
  random_cmd->add_option("--m", m_opt);
  random_cmd->add_option("--seed", seed);
  random_cmd->callback([&] {
    action = [&] {
      Rng rng(seed);
      ArrangementRequest req;
      req.n = n_opt;
      req.m = m_opt;
      std::cout << serialize_arrangement(random_arrangement(rng, req));
      return kOk;
    };
  });

  auto* verify_cmd = app.add_subcommand("verify", "Seeded verification suites");
  verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"exact", "quadrature", "gauss-manin", "all"}));
  verify_cmd->add_option("--seed", check_opt.seed);
  verify_cmd->add_option("--tol", check_opt.quadrature_tol, "Quadrature identity tolerance");
  verify_cmd->add_option("--gm-tol", check_opt.gauss_manin_tol, "Finite-difference tolerance");
  verify_cmd->add_option("--arrangements", check_opt.arrangements);
  verify_cmd->callback([&] {
    action = [&] {
      const SuiteReport rep = run_suite(suite, check_opt);
      std::cout << format_report(rep);
      for (const auto& c : rep.checks) {
        table.add(c.name, "pass", c.pass ? "yes" : "no");
        table.add(c.name, "cases", std::to_string(c.cases));
      }
      return rep.pass() ? kOk : kCheckFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const int code = action();
    if (!app.got_subcommand("verify") && !app.got_subcommand("random")) table.print(std::cout);
    if (!csv.empty()) table.write_csv(csv);
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kInputError : kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
