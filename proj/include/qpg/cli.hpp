#pragma once

// ============================================================================
// cli.hpp -- the qpg command-line surface
//
//   qpg verify algebra  --k K --m M --alpha A [--seed S]
//   qpg verify identity --k K --m M
//   qpg verify trace    --k K --m M --trials N [--seed S] [--op "EXPR"]
//   qpg thermo single   --k K --eps E (--beta B | --t-min A --t-max B
//                       --points P) [--observable z|energy|cv] [--prime]
//                       [--format csv|json] [--out FILE]
//   qpg thermo grand    --k K --levels FILE --mu MU --beta B [--occupation]
//   qpg figures         --which 1|2|3 --out DIR
//
// Exit codes: 0 on success / all checks passing, 1 when a verification ran
// and failed, 2 for usage, parse or input errors.  Curve output is CSV
// (RFC 4180: CRLF line endings, no quoting needed for numeric fields) or a
// single top-level JSON array; floating-point values are printed with 12
// significant digits.
// ============================================================================

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qpg/berezin.hpp"
#include "qpg/coherent.hpp"
#include "qpg/fock.hpp"
#include "qpg/op_parser.hpp"
#include "qpg/pg_algebra.hpp"
#include "qpg/qnum.hpp"
#include "qpg/thermo.hpp"
#include "qpg/trace.hpp"

namespace qpg::cli {

namespace detail {

inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Rounds through a 12-significant-digit decimal so JSON numbers print the
/// same digits the CSV writer emits.
inline double round12(double v) {
  return std::strtod(fmt12(v).c_str(), nullptr);
}

/// Inclusive linear grid.
inline std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(points - 1);
  return grid;
}

/// Tracks a batch of named checks and renders one PASS/FAIL line each.
class CheckList {
 public:
  explicit CheckList(std::ostream& out) : out_(out) {}

  void check(const std::string& name, double residual, double tol) {
    const bool ok = residual <= tol;
    all_ok_ = all_ok_ && ok;
    out_ << (ok ? "PASS  " : "FAIL  ") << name << "  (max residual "
         << fmt12(residual) << ", tolerance " << fmt12(tol) << ")\n";
  }

  void check_flag(const std::string& name, bool ok,
                  const std::string& detail = {}) {
    all_ok_ = all_ok_ && ok;
    out_ << (ok ? "PASS  " : "FAIL  ") << name;
    if (!detail.empty()) out_ << "  (" << detail << ")";
    out_ << "\n";
  }

  [[nodiscard]] int exit_code() const { return all_ok_ ? 0 : 1; }

 private:
  std::ostream& out_;
  bool all_ok_ = true;
};

inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline PGElement random_pg(const QContext& ctx, std::mt19937_64& rng,
                           int nterms) {
  PGElement e(ctx);
  for (int t = 0; t < nterms; ++t) {
    std::vector<int> n(ctx.modes()), nb(ctx.modes());
    for (int i = 0; i < ctx.modes(); ++i) {
      n[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(ctx.k()));
      nb[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(ctx.k()));
    }
    e = add(e, monomial(ctx, n, nb, {u01(rng), u01(rng)}));
  }
  return e;
}

/// Coefficient-wise max difference; elements must share a context.
inline double pg_max_diff(const PGElement& f, const PGElement& g) {
  double worst = 0.0;
  auto it = f.packed_terms().begin();
  auto jt = g.packed_terms().begin();
  const auto fe = f.packed_terms().end();
  const auto ge = g.packed_terms().end();
  while (it != fe || jt != ge) {
    if (jt == ge || (it != fe && it->first < jt->first)) {
      worst = std::max(worst, std::abs(it->second));
      ++it;
    } else if (it == fe || jt->first < it->first) {
      worst = std::max(worst, std::abs(jt->second));
      ++jt;
    } else {
      worst = std::max(worst, std::abs(it->second - jt->second));
      ++it;
      ++jt;
    }
  }
  return worst;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// verify algebra
// ---------------------------------------------------------------------------

inline int run_verify_algebra(int k, int m, double alpha, std::uint64_t seed,
                              std::ostream& out) {
  QContext ctx(k, m, alpha);
  detail::CheckList checks(out);
  const double tol = ctx.tol();

  // -- matrix side: the deformed oscillator relations per mode
  double r_comm = 0.0, r_conj = 0.0, r_number = 0.0, r_shift = 0.0;
  double r_nilp = 0.0, r_cross = 0.0;
  for (int mode = 1; mode <= m; ++mode) {
    const FockOp a = annihilation(ctx, mode);
    const FockOp ad = creation(ctx, mode);
    const FockOp n = number_op(ctx, mode);
    const auto qpow = [&ctx, &n](int sign) {
      return func_of_diagonal(n, [&ctx, sign](Complex x) {
        return ctx.q_power(sign * static_cast<int>(x.real() + 0.5));
      });
    };
    r_comm = std::max(
        r_comm, max_abs(sub(sub(compose(a, ad), scale(compose(ad, a), ctx.q())),
                            qpow(-1))));
    r_conj = std::max(
        r_conj,
        max_abs(sub(sub(compose(a, ad), scale(compose(ad, a), ctx.q_power(-1))),
                    qpow(+1))));
    const Complex denom = ctx.q() - ctx.q_power(-1);
    const FockOp qn = func_of_diagonal(n, [&ctx, denom](Complex x) {
      const int nn = static_cast<int>(x.real() + 0.5);
      return (ctx.q_power(nn) - ctx.q_power(-nn)) / denom;
    });
    r_number = std::max(r_number, max_abs(sub(compose(ad, a), qn)));
    r_shift = std::max(
        r_shift, max_abs(add(sub(compose(n, a), compose(a, n)), a)));
    r_shift = std::max(
        r_shift, max_abs(sub(sub(compose(n, ad), compose(ad, n)), ad)));
    FockOp ak = a, adk = ad;
    for (int j = 1; j < k; ++j) {
      ak = compose(ak, a);
      adk = compose(adk, ad);
    }
    r_nilp = std::max(r_nilp, std::max(max_abs(ak), max_abs(adk)));
    for (int other = mode + 1; other <= m; ++other) {
      const FockOp b = annihilation(ctx, other);
      const FockOp bd = creation(ctx, other);
      r_cross = std::max(
          r_cross, max_abs(sub(compose(a, b), compose(b, a))));
      r_cross = std::max(
          r_cross, max_abs(sub(compose(a, bd), compose(bd, a))));
      r_cross = std::max(
          r_cross, max_abs(sub(compose(ad, bd), compose(bd, ad))));
    }
  }
  checks.check("q-commutator  a a+ - q a+ a = q^-N", r_comm, tol);
  checks.check("conjugate relation  a a+ - q^-1 a+ a = q^N", r_conj, tol);
  checks.check("number relation  a+ a = (q^N - q^-N)/(q - q^-1)", r_number,
               tol);
  checks.check("ladder shifts  [N, a] = -a, [N, a+] = a+", r_shift, tol);
  checks.check_flag("nilpotency  a^k = (a+)^k = 0 exactly", r_nilp == 0.0);
  if (m >= 2) checks.check("cross-mode commutators vanish", r_cross, tol);

  // -- symbol side: structural properties of the para-Grassmann product
  std::mt19937_64 rng(seed);
  double r_assoc = 0.0, r_star = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const PGElement f = detail::random_pg(ctx, rng, 5);
    const PGElement g = detail::random_pg(ctx, rng, 5);
    const PGElement h = detail::random_pg(ctx, rng, 5);
    r_assoc = std::max(
        r_assoc, detail::pg_max_diff(mul(mul(f, g), h), mul(f, mul(g, h))));
    r_assoc = std::max(r_assoc,
                       detail::pg_max_diff(antiwick_mul(antiwick_mul(f, g), h),
                                           antiwick_mul(f, antiwick_mul(g, h))));
    r_star = std::max(r_star,
                      detail::pg_max_diff(conjugate(mul(f, g)),
                                          mul(conjugate(g), conjugate(f))));
  }
  checks.check("products associate on random triples", r_assoc, tol);
  checks.check("conjugation reverses products, (f g)* = g* f*", r_star, tol);

  // the alpha = 1 coincidence is a statement about a sibling context
  {
    QContext unit(k, m, 1.0);
    std::mt19937_64 rng1(seed);
    bool same = true;
    for (int trial = 0; trial < 10 && same; ++trial) {
      const PGElement f = detail::random_pg(unit, rng1, 5);
      const PGElement g = detail::random_pg(unit, rng1, 5);
      same = mul(f, g).packed_terms() == antiwick_mul(f, g).packed_terms();
    }
    checks.check_flag("mul = antiwick_mul bitwise at alpha = 1", same);
  }

  // generator-level cross-mode commutativity under the full product
  if (m >= 2) {
    std::vector<int> zero(m, 0);
    double r = 0.0;
    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j <= m; ++j) {
        if (i == j) continue;
        std::vector<int> ni = zero, nj = zero;
        ni[i - 1] = 1;
        nj[j - 1] = 1;
        const PGElement ti = monomial(ctx, ni, zero, {1.0, 0.0});
        const PGElement bj = monomial(ctx, zero, nj, {1.0, 0.0});
        r = std::max(r, detail::pg_max_diff(mul(ti, bj), mul(bj, ti)));
      }
    }
    checks.check("distinct-mode generators commute", r, tol);
  }

  return checks.exit_code();
}

// ---------------------------------------------------------------------------
// verify identity
// ---------------------------------------------------------------------------

inline int run_verify_identity(int k, int m, std::ostream& out) {
  QContext ctx(k, m);
  detail::CheckList checks(out);
  const double tol = ctx.tol();

  const FockOp t1 = toeplitz(PGElement::constant(ctx, {1.0, 0.0}));
  checks.check("resolution of unity: quantised 1 equals the identity",
               max_abs(sub(t1, identity_op(ctx))), tol);

  // orthonormality deltas over every basis pair
  const PGElement mu = measure_weight(ctx);
  const int dim = fock_dimension(ctx);
  double worst = 0.0;
  for (int r = 0; r < dim; ++r) {
    const auto occ_r = occupation_of_index(ctx, r);
    std::vector<int> zero(m, 0);
    double fact_r = 1.0;
    for (int i = 0; i < m; ++i) fact_r *= q_factorial(ctx, occ_r[i]);
    const PGElement bra =
        monomial(ctx, occ_r, zero, {1.0 / std::sqrt(fact_r), 0.0});
    for (int c = 0; c < dim; ++c) {
      const auto occ_c = occupation_of_index(ctx, c);
      double fact_c = 1.0;
      for (int i = 0; i < m; ++i) fact_c *= q_factorial(ctx, occ_c[i]);
      const PGElement ket =
          monomial(ctx, zero, occ_c, {1.0 / std::sqrt(fact_c), 0.0});
      const Complex val =
          integrate_full(antiwick_mul(bra, antiwick_mul(mu, ket)));
      const double expect = (r == c) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(val - Complex{expect, 0.0}));
    }
  }
  checks.check("coherent basis orthonormality deltas", worst, tol);

  return checks.exit_code();
}

// ---------------------------------------------------------------------------
// verify trace
// ---------------------------------------------------------------------------

inline int run_verify_trace(int k, int m, int trials, std::uint64_t seed,
                            const std::optional<std::string>& op_text,
                            std::ostream& out) {
  QContext ctx(k, m);
  detail::CheckList checks(out);

  const auto deviation = [&](const FockOp& op) {
    const Complex sym = symbolic_trace(op);
    const Complex mat = matrix_trace(op);
    return std::abs(sym - mat) / (1.0 + std::abs(mat));
  };

  if (op_text) {
    const OpExpr expr = parse_op(*op_text);
    const double dev = deviation(eval_op(expr, ctx));
    checks.check("symbolic vs matrix trace of " + render_op(expr), dev, 1e-8);
    return checks.exit_code();
  }

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  std::string worst_op;
  for (int t = 0; t < trials; ++t) {
    const OpExpr expr = random_poly_op(ctx, rng);
    const double dev = deviation(eval_op(expr, ctx));
    if (dev > worst) {
      worst = dev;
      worst_op = render_op(expr);
    }
  }
  checks.check("symbolic vs matrix trace, " + std::to_string(trials) +
                   " random operators",
               worst, 1e-8);
  if (checks.exit_code() != 0) out << "worst operator: " << worst_op << "\n";
  return checks.exit_code();
}

// ---------------------------------------------------------------------------
// thermo output helpers
// ---------------------------------------------------------------------------

namespace detail {

struct CurveRow {
  double abscissa;
  double value;
  std::string k_label;
};

/// Writes rows as RFC 4180 CSV (CRLF) or as a single top-level JSON array.
inline void write_rows(std::ostream& os, const std::string& abscissa_name,
                       const std::vector<CurveRow>& rows, bool as_json) {
  if (as_json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj;
      obj[abscissa_name] = round12(row.abscissa);
      obj["value"] = round12(row.value);
      obj["k"] = row.k_label;
      arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << "\n";
    return;
  }
  os << abscissa_name << ",value,k\r\n";
  for (const auto& row : rows)
    os << fmt12(row.abscissa) << "," << fmt12(row.value) << ","
       << row.k_label << "\r\n";
}

/// Opens --out for writing, or hands back the default stream.
class OutputTarget {
 public:
  OutputTarget(const std::optional<std::string>& path, std::ostream& fallback)
      : fallback_(fallback) {
    if (path) {
      file_.open(*path, std::ios::binary);
      if (!file_)
        throw std::invalid_argument("cannot open output file: " + *path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// thermo single
// ---------------------------------------------------------------------------

struct ThermoSingleOptions {
  int k = 2;
  double eps = 1.0;
  std::optional<double> beta;
  std::optional<double> t_min, t_max;
  int points = 0;
  std::string observable = "z";
  bool prime = false;
  std::string format = "csv";
  std::optional<std::string> out_path;
};

inline int run_thermo_single(const ThermoSingleOptions& opt,
                             std::ostream& out) {
  QContext ctx(opt.k);
  const auto sample = [&](double beta) {
    if (opt.prime) {
      const auto levels = thermo::prime_spectrum(ctx, opt.eps);
      if (opt.observable == "z") return thermo::spectral_partition(levels, beta);
      if (opt.observable == "energy")
        return thermo::spectral_mean_energy(levels, beta);
      return thermo::spectral_specific_heat(levels, beta);
    }
    if (opt.observable == "z") return thermo::partition_single(ctx, opt.eps, beta);
    if (opt.observable == "energy")
      return thermo::mean_energy_single(ctx, opt.eps, beta);
    return thermo::specific_heat_single(ctx, opt.eps, beta);
  };

  if (opt.beta) {
    out << detail::fmt12(sample(*opt.beta)) << "\n";
    return 0;
  }

  if (!opt.t_min || !opt.t_max || opt.points < 2)
    throw std::invalid_argument(
        "thermo single: provide --beta or --t-min/--t-max/--points (>= 2)");
  if (!(*opt.t_min > 0.0) || !(*opt.t_max > *opt.t_min))
    throw std::invalid_argument(
        "thermo single: need 0 < t-min < t-max");

  std::vector<detail::CurveRow> rows;
  for (double t : detail::linspace(*opt.t_min, *opt.t_max, opt.points))
    rows.push_back({t, sample(1.0 / t), std::to_string(opt.k)});

  detail::OutputTarget target(opt.out_path, out);
  detail::write_rows(target.stream(), "T", rows, opt.format == "json");
  return 0;
}

// ---------------------------------------------------------------------------
// thermo grand
// ---------------------------------------------------------------------------

struct ThermoGrandOptions {
  int k = 2;
  std::string levels_path;
  double mu = 0.0;
  double beta = 1.0;
  bool occupation = false;
};

inline int run_thermo_grand(const ThermoGrandOptions& opt, std::ostream& out) {
  std::ifstream in(opt.levels_path);
  if (!in)
    throw std::invalid_argument("cannot open levels file: " + opt.levels_path);
  std::vector<double> levels;
  double value;
  while (in >> value) levels.push_back(value);
  if (!in.eof())
    throw std::invalid_argument("levels file has a non-numeric entry: " +
                                opt.levels_path);
  if (levels.empty())
    throw std::invalid_argument("levels file is empty: " + opt.levels_path);

  QContext ctx(opt.k);
  out << detail::fmt12(thermo::grand_partition(ctx, levels, opt.mu, opt.beta))
      << "\n";
  if (opt.occupation) {
    out << "level,eps,occupation\r\n";
    for (std::size_t j = 0; j < levels.size(); ++j)
      out << (j + 1) << "," << detail::fmt12(levels[j]) << ","
          << detail::fmt12(
                 thermo::mean_occupation(ctx, levels[j], opt.mu, opt.beta))
          << "\r\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// figures
// ---------------------------------------------------------------------------

inline int run_figures(int which, const std::string& out_dir,
                       std::ostream& out) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw std::invalid_argument("cannot create output directory: " + out_dir);

  const std::vector<int> ks{2, 3, 4, 5, 10};
  std::vector<detail::CurveRow> rows;
  std::string name, abscissa;

  if (which == 1 || which == 2) {
    const thermo::CurveKind kind = which == 1
                                       ? thermo::CurveKind::mean_energy
                                       : thermo::CurveKind::specific_heat;
    name = which == 1 ? "fig1_mean_energy.csv" : "fig2_specific_heat.csv";
    abscissa = "T";
    const std::vector<double> temps = detail::linspace(0.05, 20.0, 400);
    thermo::CurveParams params;
    params.eps = 1.0;
    for (int k : ks) {
      QContext ctx(k);
      const auto pts = thermo::emit_curve(ctx, kind, params, temps);
      for (std::size_t i = 0; i < pts.size(); ++i)
        rows.push_back({temps[i], pts[i].value, std::to_string(k)});
    }
    params.bose = true;
    QContext any(2);
    const auto pts = thermo::emit_curve(any, kind, params, temps);
    for (std::size_t i = 0; i < pts.size(); ++i)
      rows.push_back({temps[i], pts[i].value, "inf"});
  } else {
    name = "fig3_occupation.csv";
    abscissa = "eps";
    const std::vector<double> eps_grid = detail::linspace(0.0, 2.0, 201);
    thermo::CurveParams params;
    params.mu = 1.0;
    params.beta = 10.0;
    for (int k : ks) {
      QContext ctx(k);
      const auto pts =
          thermo::emit_curve(ctx, thermo::CurveKind::occupation, params,
                             eps_grid);
      for (std::size_t i = 0; i < pts.size(); ++i)
        rows.push_back({eps_grid[i], pts[i].value, std::to_string(k)});
    }
    // the Bose reference diverges at eps -> mu+; emit only the safe tail
    std::vector<double> bose_grid;
    for (double e : eps_grid)
      if (e - params.mu > 0.01) bose_grid.push_back(e);
    params.bose = true;
    QContext any(2);
    const auto pts = thermo::emit_curve(
        any, thermo::CurveKind::occupation, params, bose_grid);
    for (std::size_t i = 0; i < pts.size(); ++i)
      rows.push_back({bose_grid[i], pts[i].value, "inf"});
  }

  const fs::path path = fs::path(out_dir) / name;
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw std::invalid_argument("cannot write " + path.string());
  detail::write_rows(file, abscissa, rows, false);
  out << path.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// argument wiring
// ---------------------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"symbolic calculus for k-nilpotent deformed modes"};
  app.name("qpg");
  app.require_subcommand(1);

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "cross-validate the calculus");
  verify->require_subcommand(1);

  int k = 2, m = 1, trials = 100, which = 1;
  double alpha = 1.0;
  std::uint64_t seed = 1;
  std::string op_text, out_dir;

  auto* v_algebra =
      verify->add_subcommand("algebra", "operator and product relations");
  v_algebra->add_option("--k", k, "nilpotency order")->required();
  v_algebra->add_option("--m", m, "mode count")->required();
  v_algebra->add_option("--alpha", alpha, "commutation coefficient")
      ->required();
  v_algebra->add_option("--seed", seed, "random seed");

  auto* v_identity = verify->add_subcommand(
      "identity", "resolution of unity and orthonormality");
  v_identity->add_option("--k", k, "nilpotency order")->required();
  v_identity->add_option("--m", m, "mode count")->required();

  auto* v_trace =
      verify->add_subcommand("trace", "symbolic against matrix traces");
  v_trace->add_option("--k", k, "nilpotency order")->required();
  v_trace->add_option("--m", m, "mode count")->required();
  v_trace->add_option("--trials", trials, "number of random operators")
      ->required();
  v_trace->add_option("--seed", seed, "random seed");
  auto* op_opt = v_trace->add_option("--op", op_text,
                                     "verify this operator expression "
                                     "instead of random ones");

  // thermo ------------------------------------------------------------------
  auto* thermo_cmd =
      app.add_subcommand("thermo", "thermodynamic observables");
  thermo_cmd->require_subcommand(1);

  ThermoSingleOptions single;
  auto* t_single = thermo_cmd->add_subcommand(
      "single", "single-mode canonical observables");
  t_single->add_option("--k", single.k, "nilpotency order")->required();
  t_single->add_option("--eps", single.eps, "level energy")->required();
  double beta_opt = 0.0, t_min = 0.0, t_max = 0.0;
  auto* beta_flag =
      t_single->add_option("--beta", beta_opt, "inverse temperature");
  auto* tmin_flag =
      t_single->add_option("--t-min", t_min, "grid start temperature");
  auto* tmax_flag =
      t_single->add_option("--t-max", t_max, "grid end temperature");
  auto* pts_flag =
      t_single->add_option("--points", single.points, "grid size");
  beta_flag->excludes(tmin_flag)->excludes(tmax_flag)->excludes(pts_flag);
  t_single->add_option("--observable", single.observable, "z, energy or cv")
      ->check(CLI::IsMember({"z", "energy", "cv"}));
  t_single->add_flag("--prime", single.prime,
                     "use the q-integer spectrum instead of the linear one");
  t_single->add_option("--format", single.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  std::string single_out;
  auto* single_out_opt =
      t_single->add_option("--out", single_out, "write to this file");

  ThermoGrandOptions grand;
  auto* t_grand = thermo_cmd->add_subcommand(
      "grand", "grand-canonical partition function over a level file");
  t_grand->add_option("--k", grand.k, "nilpotency order")->required();
  t_grand->add_option("--levels", grand.levels_path,
                      "file with one level energy per line")
      ->required();
  t_grand->add_option("--mu", grand.mu, "chemical potential")->required();
  t_grand->add_option("--beta", grand.beta, "inverse temperature")
      ->required();
  t_grand->add_flag("--occupation", grand.occupation,
                    "also print per-level occupations");

  // figures -----------------------------------------------------------------
  auto* figures =
      app.add_subcommand("figures", "emit figure-reproduction data");
  figures->add_option("--which", which, "figure number")
      ->required()
      ->check(CLI::Range(1, 3));
  figures->add_option("--out", out_dir, "output directory")->required();

  // parse and dispatch ------------------------------------------------------
  std::vector<const char*> argv;
  argv.push_back("qpg");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (v_algebra->parsed()) return run_verify_algebra(k, m, alpha, seed, out);
    if (v_identity->parsed()) return run_verify_identity(k, m, out);
    if (v_trace->parsed()) {
      std::optional<std::string> op;
      if (op_opt->count() > 0) op = op_text;
      return run_verify_trace(k, m, trials, seed, op, out);
    }
    if (t_single->parsed()) {
      if (beta_flag->count() > 0) single.beta = beta_opt;
      if (tmin_flag->count() > 0) single.t_min = t_min;
      if (tmax_flag->count() > 0) single.t_max = t_max;
      if (single_out_opt->count() > 0) single.out_path = single_out;
      return run_thermo_single(single, out);
    }
    if (t_grand->parsed()) return run_thermo_grand(grand, out);
    if (figures->parsed()) return run_figures(which, out_dir, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

inline int run_cli(int argc, char** argv, std::ostream& out,
                   std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(std::move(args), out, err);
}

}  // namespace qpg::cli
