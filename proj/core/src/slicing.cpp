#include "rumin/slicing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <mutex>
#include <sstream>
#include <thread>

#include "rumin/errors.hpp"
#include "rumin/linalg.hpp"
#include "rumin/quadrature.hpp"

namespace rumin {

// ---------------------------------------------------------------- affine functions

AffineFunction::AffineFunction(HeisParams params, std::vector<Rational> coeffs, Rational constant)
    : params_(params), coeffs_(std::move(coeffs)), constant_(std::move(constant)) {
  if (static_cast<int>(coeffs_.size()) != params_.dim()) throw ParameterError("affine function needs 2n+1 coefficients");
}

AffineFunction AffineFunction::from_poly(HeisParams params, const Poly& p) {
  if (p.degree() > 1) throw ParameterError("slicing function must be affine, got degree " + std::to_string(p.degree()));
  std::vector<Rational> coeffs(params.dim());
  Rational constant = 0;
  for (const auto& [m, c] : p.terms()) {
    auto it = std::find(m.begin(), m.end(), 1);
    if (it == m.end())
      constant = c;
    else
      coeffs.at(static_cast<std::size_t>(it - m.begin())) = c;
  }
  return AffineFunction(params, std::move(coeffs), std::move(constant));
}

Rational AffineFunction::operator()(const Point<Rational>& p) const {
  Rational v = constant_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) v += coeffs_[i] * p[i];
  return v;
}

double AffineFunction::operator()(const Point<double>& p) const {
  double v = to_double(constant_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v += to_double(coeffs_[i]) * p[i];
  return v;
}

bool AffineFunction::is_horizontal() const { return sgn(coeffs_.back()) == 0; }

bool AffineFunction::is_constant() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

std::optional<double> AffineFunction::lipschitz_closed_form() const {
  if (!is_horizontal()) return std::nullopt;
  Rational s = 0;
  for (const auto& c : coeffs_) s += c * c;
  return std::sqrt(to_double(s));
}

HalfSpace AffineFunction::above(const Rational& t, bool strict) const {
  return HalfSpace{coeffs_, constant_ - t, strict};
}

HalfSpace AffineFunction::below(const Rational& t, bool strict) const {
  return above(t, !strict).complement();
}

std::string AffineFunction::to_string() const {
  Poly p(params_.dim(), constant_);
  for (int i = 0; i < params_.dim(); ++i) p += Poly::variable(params_.dim(), i) * coeffs_[i];
  return rumin::to_string(p, params_);
}

// ---------------------------------------------------------------- slices

void require_generic_level(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t) {
  for (const auto& s : T.simplices())
    for (const auto& v : s.vertices)
      if (f(v) == t)
        throw DegenerateLevelError("level t = " + to_string(t) + " passes through a vertex of the chain; " +
                                   "perturb t to a generic value");
}

SimplicialCurrent slice_direct(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t, Side side) {
  if (T.degree() < 1) throw ParameterError("cannot slice a 0-chain");
  require_generic_level(T, f, t);
  const HalfSpace level = f.above(t);
  SimplicialCurrent out(T.params(), T.degree() - 1);
  for (const auto& s : T.simplices()) {
    const std::size_t m = s.vertices.size();
    // A vertex on the side the piece is coned from.
    std::size_t apex = m;
    for (std::size_t i = 0; i < m && apex == m; ++i) {
      int sg = sgn(level.eval(s.vertices[i]));
      if ((side == Side::Plus && sg > 0) || (side == Side::Minus && sg < 0)) apex = i;
    }
    if (apex == m) continue;
    for (auto& piece : cross_section(s, level)) {
      Matrix bm(m, m);
      bm(0, apex) = 1;
      for (std::size_t r = 0; r + 1 < m; ++r)
        for (std::size_t c = 0; c < m; ++c) bm(r + 1, c) = piece.barycentric[r][c];
      const int orientation = sgn(determinant(bm));
      if (orientation == 0) continue;
      // The cone [apex, piece] carries the orientation of s when positive; the
      // slice is minus its level face on the plus side, plus it on the minus side.
      const bool flip = (side == Side::Plus) == (orientation > 0);
      out.add_unchecked(Simplex{std::move(piece.points), flip ? Rational(-s.multiplicity) : s.multiplicity,
                                s.quadrature_order});
    }
  }
  return out.canonical();
}

SimplicialCurrent slice_formula(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t, Side side) {
  if (T.degree() < 1) throw ParameterError("cannot slice a 0-chain");
  require_generic_level(T, f, t);
  const SimplicialCurrent dT = boundary(T);
  if (side == Side::Plus) {
    const HalfSpace A = f.above(t, true);
    return (restrict_to_set(dT, A) - boundary(restrict_to_set(T, A))).canonical();
  }
  const HalfSpace B = f.below(t, false);
  return (boundary(restrict_to_set(T, B)) - restrict_to_set(dT, B)).canonical();
}

namespace {

SliceResult make_slice(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t, Side side,
                       const SliceOptions& options) {
  SliceResult r{slice_direct(T, f, t, side)};
  const SimplicialCurrent formula = slice_formula(T, f, t, side);
  r.formula_chain_matches = r.slice.same_chain(formula);
  std::mt19937_64 rng(options.seed);
  Rational worst = 0;
  for (int i = 0; i < options.battery; ++i) {
    auto w = random_form(T.params(), r.slice.degree(), rng);
    Rational diff = abs(pair_form(r.slice, w) - pair_form(formula, w));
    if (diff > worst) worst = diff;
  }
  r.residual = to_double(worst);
  r.mass = mass(r.slice);
  r.middle_dimension = r.slice.degree() == T.params().n();
  return r;
}

}  // namespace

SliceResult slice_plus(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t,
                       const SliceOptions& options) {
  return make_slice(T, f, t, Side::Plus, options);
}

SliceResult slice_minus(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t,
                        const SliceOptions& options) {
  return make_slice(T, f, t, Side::Minus, options);
}

// ---------------------------------------------------------------- gamma_h and Lipschitz

double gamma_h_eval(double s, double t, double h) {
  if (!(h > 0)) throw ParameterError("band width h must be positive");
  // Same function as the absolute-value form, without its rounding at the breakpoints.
  return std::clamp((s - t) / h, 0.0, 1.0);
}

Rational gamma_h_eval(const Rational& s, const Rational& t, const Rational& h) {
  if (sgn(h) <= 0) throw ParameterError("band width h must be positive");
  return (abs(s - t) - abs(s - (t + h)) + h) / (2 * h);
}

double lipschitz_sampled(const std::function<double(const Point<double>&)>& f,
                         const std::vector<std::pair<Point<double>, Point<double>>>& pairs) {
  double best = 0;
  for (const auto& [p, q] : pairs) {
    double d = koranyi_dist(p, q);
    if (d == 0) continue;
    best = std::max(best, std::abs(f(p) - f(q)) / d);
  }
  return best;
}

LipschitzEstimate lipschitz_estimate(const AffineFunction& f,
                                     const std::vector<std::pair<Point<double>, Point<double>>>& pairs) {
  LipschitzEstimate e;
  e.sampled = lipschitz_sampled([&](const Point<double>& p) { return f(p); }, pairs);
  e.closed_form = f.lipschitz_closed_form();
  if (e.closed_form && e.sampled > *e.closed_form + 1e-9)
    throw InvariantViolation("sampled Lipschitz quotient exceeds the closed form");
  return e;
}

// ---------------------------------------------------------------- levels

std::vector<Rational> atom_levels(const SimplicialCurrent& T, const AffineFunction& f) {
  std::set<Rational> out;
  for (const auto& s : T.simplices()) {
    Rational v = f(s.vertices.front());
    bool flat = std::all_of(s.vertices.begin(), s.vertices.end(), [&](const auto& p) { return f(p) == v; });
    if (flat) out.insert(v);
  }
  return {out.begin(), out.end()};
}

std::vector<Rational> vertex_levels(const SimplicialCurrent& T, const AffineFunction& f) {
  std::set<Rational> out;
  for (const auto& s : T.simplices())
    for (const auto& v : s.vertices) out.insert(f(v));
  return {out.begin(), out.end()};
}

std::pair<Rational, Rational> level_range(const SimplicialCurrent& T, const AffineFunction& f) {
  auto levels = vertex_levels(T, f);
  if (levels.empty()) throw ParameterError("empty chain has no level range");
  return {levels.front(), levels.back()};
}

std::vector<Rational> generic_levels(const SimplicialCurrent& T, const AffineFunction& f, int m) {
  auto [lo, hi] = level_range(T, f);
  std::vector<Rational> out;
  if (lo == hi || m <= 0) return out;
  auto vertex = vertex_levels(T, f);
  const std::set<Rational> forbidden(vertex.begin(), vertex.end());
  const Rational span = hi - lo;
  const Rational nudge = span / Rational(7919 * (m + 1));
  for (int j = 0; j < m; ++j) {
    Rational q(3 * j + 1, 3 * m + 1);  // (j + 1/3) / (m + 1/3)
    q.canonicalize();
    Rational t = lo + span * q;
    while (forbidden.count(t)) t += nudge;
    out.push_back(t);
  }
  return out;
}

double band_measure(const SimplicialCurrent& T, const AffineFunction& f, const Rational& lo, const Rational& hi) {
  return measure_of(T, Region{f.above(lo, true), f.below(hi, true)});
}

// ---------------------------------------------------------------- coarea

std::string CoareaResult::csv() const {
  std::ostringstream os;
  os << "t,mass,band_bound,ratio\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", to_double(r.t), r.mass, r.band_bound, r.ratio);
    os << buf;
  }
  return os.str();
}

namespace {

void require_metric_scope(const SimplicialCurrent& T, const AffineFunction& f) {
  if (T.degree() - 1 == T.params().n())
    throw ScopeError("slices of degree k = n = " + std::to_string(T.params().n()) +
                     ": the mass and coarea bounds are only established for k != n, the middle degree is an open case");
  if (!f.is_horizontal())
    throw ParameterError("mass bounds need a horizontal-affine f (no t term) for the closed-form Lipschitz constant");
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

CoareaResult coarea_sweep(const SimplicialCurrent& T, const AffineFunction& f, const Rational& a, const Rational& b,
                          int m, unsigned threads) {
  require_metric_scope(T, f);
  if (m < 1) throw ParameterError("coarea grid needs at least one cell");
  if (!(a < b)) throw ParameterError("coarea interval needs a < b");
  CoareaResult r;
  r.lipschitz = *f.lipschitz_closed_form();
  const Rational delta = (b - a) / m;
  r.rows.resize(static_cast<std::size_t>(m));
  parallel_for(r.rows.size(), threads, [&](std::size_t i) {
    CoareaRow& row = r.rows[i];
    const Rational lo = a + delta * static_cast<long>(i);
    row.t = lo + delta / 2;
    row.mass = mass(slice_direct(T, f, row.t));
    row.band_bound = r.lipschitz * band_measure(T, f, lo, lo + delta) / to_double(delta);
    row.ratio = row.band_bound > 0 ? row.mass / row.band_bound : 0.0;
  });
  r.integral = to_double(r.rows.front().t - a) * r.rows.front().mass +
               to_double(b - r.rows.back().t) * r.rows.back().mass;
  for (std::size_t i = 0; i + 1 < r.rows.size(); ++i)
    r.integral += to_double(r.rows[i + 1].t - r.rows[i].t) * (r.rows[i].mass + r.rows[i + 1].mass) / 2;
  r.band_measure = band_measure(T, f, a, b);
  const double denom = r.lipschitz * r.band_measure;
  r.ratio = denom > 0 ? r.integral / denom : 0.0;
  return r;
}

// ---------------------------------------------------------------- band bound and gamma_h

BandTrend band_bound_trend(const SimplicialCurrent& T, const AffineFunction& f, const std::vector<Rational>& levels) {
  require_metric_scope(T, f);
  const double lip = *f.lipschitz_closed_form();
  std::vector<double> masses(levels.size());
  parallel_for(levels.size(), 0, [&](std::size_t i) { masses[i] = mass(slice_direct(T, f, levels[i])); });
  BandTrend trend;
  for (int e = 2; e <= 8; ++e) {
    const Rational h(1, 1 << e);
    std::vector<double> eps(levels.size());
    parallel_for(levels.size(), 0, [&](std::size_t i) {
      double bound = lip * band_measure(T, f, levels[i], levels[i] + h) / to_double(h);
      eps[i] = std::max(0.0, masses[i] - bound);
    });
    trend.epsilon.emplace_back(to_double(h), eps.empty() ? 0.0 : *std::max_element(eps.begin(), eps.end()));
  }
  trend.monotone = true;
  for (std::size_t i = 1; i < trend.epsilon.size(); ++i)
    if (trend.epsilon[i].second > trend.epsilon[i - 1].second + 1e-12) trend.monotone = false;
  trend.last = trend.epsilon.back().second;
  return trend;
}

GammaCheck gamma_convergence(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t, int forms,
                             unsigned seed) {
  const SimplicialCurrent slice = slice_direct(T, f, t);
  const SimplicialCurrent dT = boundary(T);
  std::mt19937_64 rng(seed);
  std::vector<PolyForm> tests;
  std::vector<double> exact;
  for (int i = 0; i < forms; ++i) {
    tests.push_back(random_form(T.params(), slice.degree(), rng, 2, 1.0));
    exact.push_back(to_double(pair_form(slice, tests.back())));
  }
  GammaCheck check;
  for (int e = 2; e <= 8; ++e) {
    const Rational h(1, 1 << e);
    const double td = to_double(t), hd = to_double(h);
    auto g = [&](const Point<double>& p) { return gamma_h_eval(f(p), td, hd); };
    const std::vector<HalfSpace> cuts{f.above(t, false), f.above(t + h, false)};
    auto on_boundary = restrict_by_fn(dT, g, cuts);
    auto on_body = restrict_by_fn(T, g, cuts);
    double worst = 0;
    for (std::size_t i = 0; i < tests.size(); ++i) {
      double s_h = on_boundary.pair(tests[i]) - on_body.pair(exterior_d(tests[i]));
      worst = std::max(worst, std::abs(s_h - exact[i]));
    }
    check.error.emplace_back(hd, worst);
  }
  check.decreasing = true;
  for (std::size_t i = 1; i < check.error.size(); ++i)
    if (check.error[i].second > check.error[i - 1].second + 1e-9) check.decreasing = false;
  return check;
}

// ---------------------------------------------------------------- property report

bool PropertyReport::all_pass() const {
  return std::all_of(lines.begin(), lines.end(), [](const PropertyLine& l) { return l.pass; });
}

std::string PropertyReport::text() const {
  std::ostringstream os;
  for (const auto& l : lines) os << l.key << ' ' << (l.pass ? "PASS" : "FAIL") << "  " << l.detail << '\n';
  return os.str();
}

namespace {

bool in_simplex(const Simplex& s, const Point<Rational>& p) {
  const auto edges = s.edges();
  const std::size_t dim = p.coords().size();
  Matrix m(dim, edges.size());
  std::vector<Rational> rhs(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < edges.size(); ++c) m(r, c) = edges[c][r];
    rhs[r] = p[r] - s.vertices[0][r];
  }
  auto lambda = LinearSolver(m).solve(rhs);
  if (!lambda) return false;
  Rational total = 0;
  for (const auto& l : *lambda) {
    if (sgn(l) < 0) return false;
    total += l;
  }
  return total <= 1;
}

bool in_support(const SimplicialCurrent& T, const Point<Rational>& p) {
  return std::any_of(T.simplices().begin(), T.simplices().end(), [&](const Simplex& s) { return in_simplex(s, p); });
}

Rational augmentation(const SimplicialCurrent& c) {
  Rational total = 0;
  for (const auto& s : c.simplices()) total += s.multiplicity;
  return total;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

PropertyReport property_report(const SimplicialCurrent& T, const AffineFunction& f, const ReportOptions& options) {
  if (T.degree() < 1) throw ParameterError("slicing needs a chain of degree >= 1");
  require_metric_scope(T, f);
  PropertyReport report;
  const auto levels = generic_levels(T, f, options.levels);
  const int k = T.degree() - 1;

  {
    auto atoms = atom_levels(T, f);
    std::string list;
    for (const auto& a : atoms) list += (list.empty() ? "" : ", ") + to_string(a);
    report.lines.push_back({"P0", true,
                            std::to_string(atoms.size()) + " atom level(s) {" + list + "}, " +
                                std::to_string(vertex_levels(T, f).size()) + " vertex level(s)"});
  }

  std::vector<SimplicialCurrent> plus(levels.size(), SimplicialCurrent(T.params(), k));
  std::vector<char> agree(levels.size(), 0);
  parallel_for(levels.size(), 0, [&](std::size_t i) {
    plus[i] = slice_direct(T, f, levels[i], Side::Plus);
    SimplicialCurrent minus = slice_direct(T, f, levels[i], Side::Minus);
    agree[i] = plus[i].same_chain(minus) && plus[i].same_chain(slice_formula(T, f, levels[i], Side::Plus));
  });
  {
    auto ok = static_cast<std::size_t>(std::count(agree.begin(), agree.end(), 1));
    report.lines.push_back({"P1", ok == levels.size(),
                            std::to_string(ok) + "/" + std::to_string(levels.size()) +
                                " levels with slice_plus = slice_minus = defining formula"});
  }

  {
    std::size_t points = 0, bad = 0;
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (const auto& s : plus[i].simplices())
        for (const auto& q : simplex_rule(s.degree(), s.quadrature_order)) {
          auto p = s.at(q.barycentric);
          ++points;
          if (f(p) != levels[i] || !in_support(T, p)) ++bad;
        }
    report.lines.push_back({"P2", bad == 0,
                            std::to_string(points - bad) + "/" + std::to_string(points) +
                                " quadrature points on {f = t} and in spt T (exact)"});
  }

  {
    const SimplicialCurrent dT = boundary(T);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (k == 0) {
        // Boundary of a 0-chain is its augmentation; the slice of the
        // 0-chain dT is then -aug((dT)|{f>t}).
        ok += augmentation(plus[i]) == augmentation(restrict_to_set(dT, f.above(levels[i])));
      } else {
        ok += boundary(plus[i]).same_chain(-slice_direct(dT, f, levels[i]));
      }
    }
    report.lines.push_back({"P3", ok == levels.size(),
                            std::to_string(ok) + "/" + std::to_string(levels.size()) +
                                " levels with d<T,f,t+> = -<dT,f,t+> (exact)"});
  }

  {
    auto trend = band_bound_trend(T, f, levels);
    std::string detail = "eps(h):";
    for (const auto& [h, e] : trend.epsilon) detail += " " + fmt(e);
    detail += trend.monotone ? "; non-increasing" : "; NOT monotone";
    report.lines.push_back({"P4", trend.monotone && trend.last <= options.band_tolerance, detail});
  }

  {
    auto [lo, hi] = level_range(T, f);
    auto sweep = coarea_sweep(T, f, lo, hi, options.coarea_grid);
    report.lines.push_back({"P5", sweep.ratio <= 1 + options.coarea_tolerance,
                            "integral " + fmt(sweep.integral) + " / (Lip " + fmt(sweep.lipschitz) + " * mu " +
                                fmt(sweep.band_measure) + ") = ratio " + fmt(sweep.ratio)});
  }

  {
    const std::size_t mid = levels.size() / 2;
    double m = levels.empty() ? 0.0 : mass(plus[mid]);
    double dm = 0;
    if (!levels.empty()) dm = k == 0 ? std::abs(to_double(augmentation(plus[mid]))) : mass(boundary(plus[mid]));
    bool finite = std::isfinite(m) && std::isfinite(dm);
    report.lines.push_back({"P6", finite,
                            "at t = " + (levels.empty() ? std::string("-") : to_string(levels[mid])) + ": M(slice) " +
                                fmt(m) + ", M(d slice) " + fmt(dm)});
  }
  return report;
}

}  // namespace rumin
