#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rumin/current.hpp"
#include "rumin/poly.hpp"

namespace rumin {

/// f(p) = sum_i coeffs[i] * p_i + constant, exact.
class AffineFunction {
 public:
  AffineFunction(HeisParams params, std::vector<Rational> coeffs, Rational constant = 0);
  /// Throws ParameterError unless p has total degree <= 1.
  static AffineFunction from_poly(HeisParams params, const Poly& p);

  const HeisParams& params() const noexcept { return params_; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  const Rational& constant() const noexcept { return constant_; }

  Rational operator()(const Point<Rational>& p) const;
  double operator()(const Point<double>& p) const;

  /// No t-dependence.
  bool is_horizontal() const;
  bool is_constant() const;
  /// |(a, b)| for horizontal f, nullopt otherwise.
  std::optional<double> lipschitz_closed_form() const;

  /// {f > t} (strict) or {f >= t}.
  HalfSpace above(const Rational& t, bool strict = true) const;
  /// {f < t} (strict) or {f <= t}.
  HalfSpace below(const Rational& t, bool strict = true) const;

  std::string to_string() const;

 private:
  HeisParams params_;
  std::vector<Rational> coeffs_;
  Rational constant_;
};

enum class Side { Plus, Minus };

struct SliceOptions {
  /// Number of random test forms pairing the direct chain against the defining formula.
  int battery = 20;
  unsigned seed = 20240611;
};

struct SliceResult {
  SimplicialCurrent slice;
  double mass = 0;
  /// max over test forms of |direct(w) - formula(w)|.
  double residual = 0;
  /// The direct chain equals the formula chain after canonicalization.
  bool formula_chain_matches = false;
  /// Slice degree equals n, where the metric properties are not claimed.
  bool middle_dimension = false;
};

/// Throws DegenerateLevelError if some vertex of T sits on {f = t}.
void require_generic_level(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t);

/// Slice built simplex by simplex from the cross-sections {f = t}.
SimplicialCurrent slice_direct(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t,
                               Side side = Side::Plus);
/// (dT)|{f>t} - d(T|{f>t}) for Plus, d(T|{f<=t}) - (dT)|{f<=t} for Minus.
SimplicialCurrent slice_formula(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t,
                                Side side = Side::Plus);

SliceResult slice_plus(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t,
                       const SliceOptions& options = {});
SliceResult slice_minus(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t,
                        const SliceOptions& options = {});

/// (|s - t| - |s - (t + h)| + h) / (2h).
double gamma_h_eval(double s, double t, double h);
Rational gamma_h_eval(const Rational& s, const Rational& t, const Rational& h);

struct LipschitzEstimate {
  double sampled = 0;
  std::optional<double> closed_form;
};

/// max |f(p) - f(q)| / d(p, q) over the pairs, coincident pairs skipped.
double lipschitz_sampled(const std::function<double(const Point<double>&)>& f,
                         const std::vector<std::pair<Point<double>, Point<double>>>& pairs);
/// Sampled estimate plus the closed form when f is horizontal; throws
/// InvariantViolation if the sample exceeds the closed form.
LipschitzEstimate lipschitz_estimate(const AffineFunction& f,
                                     const std::vector<std::pair<Point<double>, Point<double>>>& pairs);

/// Levels c such that f == c on a whole simplex of T (the atoms of mu_T o f^-1).
std::vector<Rational> atom_levels(const SimplicialCurrent& T, const AffineFunction& f);
/// Distinct values of f at the vertices of T, sorted.
std::vector<Rational> vertex_levels(const SimplicialCurrent& T, const AffineFunction& f);
/// [min, max] of f over spt T.
std::pair<Rational, Rational> level_range(const SimplicialCurrent& T, const AffineFunction& f);
/// m levels strictly inside the range of f, avoiding vertex levels.
std::vector<Rational> generic_levels(const SimplicialCurrent& T, const AffineFunction& f, int m);

/// mu_T({lo < f < hi}).
double band_measure(const SimplicialCurrent& T, const AffineFunction& f, const Rational& lo, const Rational& hi);

struct CoareaRow {
  Rational t;
  double mass = 0;
  /// Lip * mu_T(cell around t) / cell width.
  double band_bound = 0;
  double ratio = 0;
};

struct CoareaResult {
  std::vector<CoareaRow> rows;
  double lipschitz = 0;
  double integral = 0;
  double band_measure = 0;
  /// integral / (Lip * mu_T({a < f < b})).
  double ratio = 0;

  std::string csv() const;
};

/// Slice masses at the cell centres t_i = a + (i + 1/2)(b - a)/m, integrated
/// with the trapezoid rule (end values held constant out to a and b).
/// Evaluated on `threads` workers; rows are always in grid order.
CoareaResult coarea_sweep(const SimplicialCurrent& T, const AffineFunction& f, const Rational& a,
                          const Rational& b, int m, unsigned threads = 0);

struct BandTrend {
  std::vector<std::pair<double, double>> epsilon;  // (h, eps(h))
  bool monotone = false;
  double last = 0;
};

/// eps(h) = max over t of max(0, M(slice_t) - Lip * mu_T({t < f < t+h}) / h)
/// for h = 2^-2 .. 2^-8.
BandTrend band_bound_trend(const SimplicialCurrent& T, const AffineFunction& f, const std::vector<Rational>& levels);

struct GammaCheck {
  std::vector<std::pair<double, double>> error;  // (h, max_w |S_h(w) - slice(w)|)
  bool decreasing = false;
};

/// S_h = (dT)|(gamma_h o f) - d(T|(gamma_h o f)) against test forms, compared
/// with the slice at t for h = 2^-2 .. 2^-8.
GammaCheck gamma_convergence(const SimplicialCurrent& T, const AffineFunction& f, const Rational& t,
                             int forms = 5, unsigned seed = 7);

struct PropertyLine {
  std::string key;
  bool pass = false;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyLine> lines;
  bool all_pass() const;
  std::string text() const;
};

struct ReportOptions {
  int levels = 20;
  int coarea_grid = 100;
  double coarea_tolerance = 1e-2;
  double band_tolerance = 1e-3;
};

/// P0..P6 for the slices of T by f. Throws ScopeError if the slices have
/// degree n and the metric properties are requested.
PropertyReport property_report(const SimplicialCurrent& T, const AffineFunction& f, const ReportOptions& options = {});

}  // namespace rumin
