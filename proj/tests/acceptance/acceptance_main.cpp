// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rumin/chain_io.hpp"
#include "rumin/commands.hpp"
#include "rumin/errors.hpp"
#include "rumin/exterior.hpp"
#include "rumin/form_parser.hpp"
#include "rumin/heisenberg.hpp"
#include "rumin/rumin_complex.hpp"
#include "rumin/slicing.hpp"
#include "rumin/verify.hpp"

using namespace rumin;

namespace {

const std::string kData = RUMIN_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& note) {
    pass = pass && ok;
    notes.push_back(note + (ok ? "" : "  <-- FAIL"));
  }
  void info(const std::string& note) { notes.push_back("(info) " + note); }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

void battery(Outcome& o, const std::string& where, const BatteryResult& r) { o.check(r.ok(), where + " " + r.summary()); }

Outcome complex_exactness() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    auto start = std::chrono::steady_clock::now();
    auto r = cli({"verify-complex", "--n", std::to_string(n), "--seed", "7", "--count", "100"});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t lines = 0, exact = 0;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);)
      if (line.find("dc∘dc = 0") != std::string::npos) {
        ++lines;
        exact += line.find(": 100/100 exact") != std::string::npos;
      }
    const std::size_t degrees = static_cast<std::size_t>(2 * n);
    o.check(r.code == 0 && lines == degrees && exact == degrees,
            "n=" + std::to_string(n) + ": " + std::to_string(exact) + "/" + std::to_string(degrees) +
                " degrees with dc∘dc = 0 on 100/100 classes, exit " + std::to_string(r.code));
    o.check(secs <= 60, "n=" + std::to_string(n) + " runtime " + fmt(secs) + " s");
  }
  return o;
}

Outcome leibniz() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    RuminComplex rc{HeisParams(n)};
    for (int k = 0; k <= 2 * n; ++k) {
      battery(o, "n=" + std::to_string(n) + " k=" + std::to_string(k), battery_leibniz(rc, k, 300 + 10 * n + k, 50));
    }
  }
  return o;
}

Outcome script_L_identity() {
  Outcome o;
  for (int n = 1; n <= 2; ++n)
    battery(o, "n=" + std::to_string(n), battery_script_L_commutator(RuminComplex{HeisParams(n)}, 400 + n, 50));
  return o;
}

Outcome membership() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    RuminComplex rc{HeisParams(n)};
    const std::string where = "n=" + std::to_string(n);
    battery(o, where, battery_membership_theta_free(rc, 500 + n, 50));
    battery(o, where, battery_membership_theta_branch(rc, 510 + n, 50));
    o.info(where + " " + battery_membership_theta_branch_literal(rc, 510 + n, 50).summary());
  }
  return o;
}

Outcome D_invariance() {
  Outcome o;
  for (int n = 1; n <= 2; ++n)
    battery(o, "n=" + std::to_string(n), battery_D_invariance(RuminComplex{HeisParams(n)}, 600 + n, 50, 20));
  return o;
}

Outcome slicing_exactness() {
  Outcome o;
  auto cube = load_chain(kData + "/cube.json");
  AffineFunction f(cube.params(), {Rational(1), Rational(0), Rational(0)});
  ReportOptions opt;
  opt.levels = 20;
  auto report = property_report(cube, f, opt);
  for (const auto& line : report.lines)
    if (line.key == "P1" || line.key == "P2" || line.key == "P3") o.check(line.pass, line.key + " " + line.detail);
  return o;
}

Outcome coarea() {
  Outcome o;
  auto cube = load_chain(kData + "/cube.json");
  const HeisParams& h = cube.params();
  auto x = coarea_sweep(cube, AffineFunction(h, {Rational(1), Rational(0), Rational(0)}), Rational(0), Rational(1), 100);
  o.check(std::abs(x.integral - 1) <= 1e-3 && std::abs(x.ratio - 1) <= 1e-3,
          "f = x: integral " + fmt(x.integral) + ", Lip*mu " + fmt(x.lipschitz * x.band_measure) + ", ratio " +
              fmt(x.ratio));
  const Rational inv = 1 / parse_constant("sqrt(2)");
  AffineFunction diag(h, {inv, inv, Rational(0)});
  auto lo = parse_constant("0"), hi = parse_constant("sqrt(2)");
  auto d = coarea_sweep(cube, diag, lo, hi, 100);
  o.check(d.ratio <= 1 + 1e-2, "f = (x+y)/sqrt 2: ratio " + fmt(d.ratio) + " (bound 1.01)");
  return o;
}

Outcome band_trend() {
  Outcome o;
  auto check = [&](const std::string& name, const SimplicialCurrent& T, const AffineFunction& f) {
    auto trend = band_bound_trend(T, f, generic_levels(T, f, 20));
    std::string eps;
    for (const auto& [hh, e] : trend.epsilon) eps += " " + fmt(e);
    o.check(trend.epsilon.size() == 7 && trend.monotone && trend.last <= 1e-3,
            name + ": eps(2^-2..2^-8) =" + eps + (trend.monotone ? ", non-increasing" : ", NOT monotone"));
  };
  auto cube = load_chain(kData + "/cube.json");
  check("cube, f = x", cube, AffineFunction(cube.params(), {Rational(1), Rational(0), Rational(0)}));
  auto sq = load_chain(kData + "/h2_square.json");
  std::vector<Rational> c(5, Rational(0));
  c[0] = 1;
  check("H^2 horizontal square, f = x1", sq, AffineFunction(sq.params(), c));
  return o;
}

Outcome metric() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    HeisParams h(n);
    std::mt19937_64 rng(900 + n);
    std::uniform_real_distribution<double> u(-5, 5), ur(0.01, 10);
    auto point = [&] {
      std::vector<double> c(h.dim());
      for (auto& v : c) v = u(rng);
      return Point<double>(h, c);
    };
    double worst_inv = 0, worst_hom = 0, worst_sym = 0, worst_tri = 0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
      auto p = point(), q = point(), r = point();
      const double s = ur(rng);
      const double dqr = koranyi_dist(q, r);
      worst_inv = std::max(worst_inv, std::abs(koranyi_dist(group_mul(p, q), group_mul(p, r)) - dqr) / (1 + dqr));
      worst_hom = std::max(worst_hom, std::abs(koranyi_dist(dilate(s, q), dilate(s, r)) - s * dqr) / (s * (1 + dqr)));
      worst_sym = std::max(worst_sym, std::abs(koranyi_dist(r, q) - dqr) / (1 + dqr));
      worst_tri = std::max(worst_tri, dqr - koranyi_dist(q, p) - koranyi_dist(p, r));
    }
    o.check(worst_inv <= 1e-12 && worst_hom <= 1e-12 && worst_sym <= 1e-12 && worst_tri <= 1e-12,
            "n=" + std::to_string(n) + ", " + std::to_string(samples) + " samples: invariance " + fmt(worst_inv) +
                ", homogeneity " + fmt(worst_hom) + ", symmetry " + fmt(worst_sym) + ", triangle excess " +
                fmt(std::max(0.0, worst_tri)));
  }
  HeisParams h1(1);
  Point<Rational> t1(h1, {Rational(0), Rational(0), Rational(1)});
  o.check(koranyi_norm_pow4(t1) == 16, "||(0,0,1)||^4 = " + to_string(koranyi_norm_pow4(t1)));
  return o;
}

Outcome algebra() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    HeisParams h(n);
    int total = 0, ok = 0;
    for (int k = 0; k <= h.dim(); ++k)
      for (Blade b : blades_of_grade(h.dim(), k)) {
        auto v = Multivector<Rational>::blade(h, b, Rational(1));
        ++total;
        ok += hodge_star(hodge_star(v)) == v;
      }
    o.check(ok == total, "n=" + std::to_string(n) + ": ** = id on " + std::to_string(ok) + "/" +
                             std::to_string(total) + " blades");
  }
  // Shuffle bound: ||sum_j dw_j ^ w||* <= 1 whenever ||w||* <= 1, k != n.
  for (int n = 1; n <= 2; ++n) {
    HeisParams h(n);
    std::mt19937_64 rng(1000 + n);
    std::normal_distribution<double> g;
    Covector<double> sum_dw(h, 1);
    for (int j = 1; j <= 2 * n; ++j) sum_dw.add(Blade::single(j), 1.0);
    for (int k = 0; k + 1 <= h.dim(); ++k) {
      if (k == n) continue;
      double worst = 0;
      for (int i = 0; i < 200; ++i) {
        Covector<double> w(h, k);
        for (Blade b : blades_of_grade(h.dim(), k)) w.add(b, g(rng));
        const double c = comass(w, 400, rng);
        Covector<double> unit(h, k);
        for (const auto& [b, v] : w.terms()) unit.add(b, v / c);
        worst = std::max(worst, comass(wedge(sum_dw, unit), 400, rng));
      }
      o.check(worst <= 1 + 1e-6, "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                     ": max ||sum dw_j ^ w||* = " + fmt(worst) + " over 200 unit-comass w");
    }
  }
  return o;
}

Outcome scope_guard() {
  Outcome o;
  const std::string tri = kData + "/h1_triangle.json";
  auto co = cli({"coarea", "--chain", tri, "--f", "x1", "--a", "0", "--b", "1"});
  o.check(co.code == kExitScope && co.err.find("scope error") != std::string::npos,
          "coarea on an H^1 2-current: exit " + std::to_string(co.code));
  auto rep = cli({"report", "--chain", tri, "--f", "x1"});
  o.check(rep.code == kExitScope && rep.err.find("scope error") != std::string::npos,
          "report (property 4) on an H^1 2-current: exit " + std::to_string(rep.code));
  auto T = load_chain(tri);
  bool thrown = false;
  try {
    band_bound_trend(T, AffineFunction(T.params(), {Rational(1), Rational(0), Rational(0)}), {Rational(1, 3)});
  } catch (const ScopeError&) {
    thrown = true;
  }
  o.check(thrown, "band_bound_trend raises ScopeError");
  return o;
}

Outcome parser_io() {
  Outcome o;
  std::ifstream in(kData + "/form_corpus.txt");
  HeisParams h(2);
  int total = 0, ok = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    ++total;
    try {
      PolyForm w = parse_form(line, h);
      ok += parse_form(print_form(w), h) == w;
    } catch (const std::exception&) {
    }
  }
  o.check(total == 50 && ok == total, "corpus round trip " + std::to_string(ok) + "/" + std::to_string(total));
  auto cube = load_chain(kData + "/cube.json");
  auto m = mass_exact(cube);
  o.check(m && *m == 1, "cube fixture mass " + (m ? to_string(*m) : std::string("not exact")));
  for (const char* chain : {"cube.json", "h2_square.json"}) {
    std::vector<std::string> args{"report", "--chain", kData + "/" + chain, "--f", "x1"};
    auto a = cli(args), b = cli(args);
    o.check(a.code == 0 && a.out == b.out,
            std::string("report on ") + chain + " byte-identical across two runs (" + std::to_string(a.out.size()) +
                " bytes, exit " + std::to_string(a.code) + ")");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Rumin complex exactness", complex_exactness},
      {"Leibniz defect closed forms", leibniz},
      {"script-L commutator identity", script_L_identity},
      {"J^{n+1} membership, both branches", membership},
      {"D invariant under I^n", D_invariance},
      {"slicing exactness P1-P3 on the cube", slicing_exactness},
      {"coarea equality and strict cases", coarea},
      {"band bound trend", band_trend},
      {"Koranyi metric suite", metric},
      {"algebra suite (** and shuffle comass bound)", algebra},
      {"k = n scope guard", scope_guard},
      {"parser and chain IO", parser_io},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%-4s criterion %2zu  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const auto& note : o.notes) std::printf("         %s\n", note.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
