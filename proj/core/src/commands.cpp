#include "rumin/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include "CLI11.hpp"
#include "rumin/chain_io.hpp"
#include "rumin/errors.hpp"
#include "rumin/form_parser.hpp"
#include "rumin/slicing.hpp"
#include "rumin/verify.hpp"

namespace rumin {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

AffineFunction parse_function(const std::string& text, const HeisParams& h) {
  PolyForm f = parse_form(text, h);
  if (f.grade() != 0) throw ParameterError("--f must be a function, got a " + std::to_string(f.grade()) + "-form");
  return AffineFunction::from_poly(h, f.coefficient(Blade()));
}

bool report_battery(std::ostream& out, const std::string& prefix, const BatteryResult& r) {
  out << prefix << r.summary() << (r.ok() ? "" : "  FAIL") << '\n';
  return r.ok();
}

struct VerifyComplexArgs {
  int n = 1;
  unsigned seed = 7;
  int count = 100;
};

int verify_complex(const VerifyComplexArgs& a, std::ostream& out) {
  RuminComplex rc{HeisParams(a.n)};
  bool ok = true;
  out << "Rumin complex on H^" << a.n << ", seed " << a.seed << ", " << a.count << " classes per degree\n";
  for (int k = 0; k + 2 <= rc.params().dim(); ++k)
    ok &= report_battery(out, "k=" + std::to_string(k) + "  ", battery_dc_squared(rc, k, a.seed + k, a.count));
  for (int k = 0; k <= a.n; ++k)
    ok &= report_battery(out, "k=" + std::to_string(k) + "  ", battery_quotient(rc, k, a.seed + 100 + k, a.count));
  out << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

int verify_lemmas(const VerifyComplexArgs& a, std::ostream& out) {
  RuminComplex rc{HeisParams(a.n)};
  bool ok = true;
  out << "Identity batteries on H^" << a.n << ", seed " << a.seed << ", " << a.count << " cases each\n";
  for (int k = 0; k + 1 <= 2 * a.n; ++k)
    ok &= report_battery(out, "k=" + std::to_string(k) + "  ", battery_leibniz(rc, k, a.seed + k, a.count));
  ok &= report_battery(out, "k=" + std::to_string(a.n) + "  ", battery_script_L_commutator(rc, a.seed + 20, a.count));
  ok &= report_battery(out, "k=" + std::to_string(a.n) + "  ", battery_membership_theta_free(rc, a.seed + 21, a.count));
  ok &= report_battery(out, "k=" + std::to_string(a.n) + "  ", battery_membership_theta_branch(rc, a.seed + 22, a.count));
  auto literal = battery_membership_theta_branch_literal(rc, a.seed + 22, a.count);
  out << "k=" << a.n << "  " << literal.summary() << "  (info)\n";
  ok &= report_battery(out, "k=" + std::to_string(a.n) + "  ", battery_two_pieces(rc, a.seed + 23, a.count));
  ok &= report_battery(out, "k=" + std::to_string(a.n) + "  ", battery_D_invariance(rc, a.seed + 24, a.count, 20));
  out << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

struct SliceArgs {
  std::string chain, f, t, output;
  bool minus = false;
  unsigned seed = 20240611;
};

int slice_command(const SliceArgs& a, std::ostream& out) {
  SimplicialCurrent T = load_chain(a.chain);
  AffineFunction f = parse_function(a.f, T.params());
  Rational t = parse_constant(a.t);
  SliceOptions opt;
  opt.seed = a.seed;
  SliceResult r = a.minus ? slice_minus(T, f, t, opt) : slice_plus(T, f, t, opt);
  if (a.output.empty())
    out << chain_to_json(r.slice) << '\n';
  else
    save_chain(a.output, r.slice);
  out << "# side: " << (a.minus ? "minus" : "plus") << ", t = " << to_string(t) << '\n';
  out << "# simplices: " << r.slice.size() << '\n';
  out << "# mass: " << fmt(r.mass) << '\n';
  out << "# residual: " << fmt(r.residual) << '\n';
  out << "# defining formula chain matches: " << (r.formula_chain_matches ? "yes" : "no") << '\n';
  if (r.middle_dimension) out << "# note: slice degree k = n, outside the range of the mass bounds\n";
  return r.formula_chain_matches && r.residual <= 1e-9 ? kExitOk : kExitFailure;
}

struct CoareaArgs {
  std::string chain, f, a, b;
  int grid = 100;
  unsigned threads = 0;
  double tolerance = 1e-2;
};

int coarea_command(const CoareaArgs& a, std::ostream& out) {
  SimplicialCurrent T = load_chain(a.chain);
  AffineFunction f = parse_function(a.f, T.params());
  auto sweep = coarea_sweep(T, f, parse_constant(a.a), parse_constant(a.b), a.grid, a.threads);
  out << sweep.csv();
  out << "# integral " << fmt(sweep.integral) << ", Lip " << fmt(sweep.lipschitz) << ", mu " << fmt(sweep.band_measure)
      << ", ratio " << fmt(sweep.ratio) << '\n';
  return sweep.ratio <= 1 + a.tolerance ? kExitOk : kExitFailure;
}

struct ReportArgs {
  std::string chain, f;
  ReportOptions options;
};

int report_command(const ReportArgs& a, std::ostream& out) {
  SimplicialCurrent T = load_chain(a.chain);
  AffineFunction f = parse_function(a.f, T.params());
  out << "chain: " << T.degree() << "-current in H^" << T.params().n() << ", " << T.size() << " simplices\n";
  out << "f = " << f.to_string() << '\n';
  auto report = property_report(T, f, a.options);
  out << report.text();
  return report.all_pass() ? kExitOk : kExitFailure;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rumin complex and slicing of polyhedral currents in the Heisenberg group", "rumin-slice"};
  app.require_subcommand(1);

  VerifyComplexArgs vc;
  auto* c_vc = app.add_subcommand("verify-complex", "check d_c o d_c = 0 and quotient well-definedness");
  c_vc->add_option("--n", vc.n, "Heisenberg dimension")->check(CLI::Range(1, 2));
  c_vc->add_option("--seed", vc.seed, "random seed");
  c_vc->add_option("--count", vc.count, "classes per degree")->check(CLI::PositiveNumber);

  VerifyComplexArgs vl;
  vl.count = 50;
  auto* c_vl = app.add_subcommand("verify-lemmas", "Leibniz, script-L and middle-degree identity batteries");
  c_vl->add_option("--n", vl.n, "Heisenberg dimension")->check(CLI::Range(1, 2));
  c_vl->add_option("--seed", vl.seed, "random seed");
  c_vl->add_option("--count", vl.count, "cases per battery")->check(CLI::PositiveNumber);

  SliceArgs sl;
  auto* c_sl = app.add_subcommand("slice", "slice a chain by {f = t}");
  c_sl->add_option("--chain", sl.chain, "chain file (JSON)")->required();
  c_sl->add_option("--f", sl.f, "affine function, e.g. \"x1 - t/2\"")->required();
  c_sl->add_option("--t", sl.t, "level, e.g. 1/2")->required();
  c_sl->add_flag("--minus", sl.minus, "compute <T,f,t-> instead of <T,f,t+>");
  c_sl->add_option("--output", sl.output, "write the slice chain here instead of stdout");
  c_sl->add_option("--seed", sl.seed, "seed of the test-form battery");

  CoareaArgs co;
  auto* c_co = app.add_subcommand("coarea", "slice masses over a grid of levels, as CSV");
  c_co->add_option("--chain", co.chain, "chain file (JSON)")->required();
  c_co->add_option("--f", co.f, "horizontal affine function")->required();
  c_co->add_option("--a", co.a, "lower end of the level interval")->required();
  c_co->add_option("--b", co.b, "upper end of the level interval")->required();
  c_co->add_option("--grid", co.grid, "number of cells")->check(CLI::PositiveNumber);
  c_co->add_option("--threads", co.threads, "worker threads (0 = hardware)");
  c_co->add_option("--tolerance", co.tolerance, "allowed excess of the ratio over 1");

  ReportArgs rp;
  auto* c_rp = app.add_subcommand("report", "slicing properties P0..P6");
  c_rp->add_option("--chain", rp.chain, "chain file (JSON)")->required();
  c_rp->add_option("--f", rp.f, "horizontal affine function")->required();
  c_rp->add_option("--levels", rp.options.levels, "number of generic levels")->check(CLI::PositiveNumber);
  c_rp->add_option("--grid", rp.options.coarea_grid, "coarea grid cells")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  try {
    if (c_vc->parsed()) return verify_complex(vc, out);
    if (c_vl->parsed()) return verify_lemmas(vl, out);
    if (c_sl->parsed()) return slice_command(sl, out);
    if (c_co->parsed()) return coarea_command(co, out);
    if (c_rp->parsed()) return report_command(rp, out);
  } catch (const ScopeError& e) {
    err << "scope error: " << e.what() << '\n';
    return kExitScope;
  } catch (const DegenerateLevelError& e) {
    err << "degenerate level: " << e.what() << '\n';
    return kExitScope;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace rumin
