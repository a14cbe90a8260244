#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rumin/exterior.hpp"
#include "rumin/poly.hpp"

namespace rumin {

/// Differential form with polynomial coefficients in the coframe
/// dx_1..dx_n, dy_1..dy_n, theta (theta is blade index 2n+1).
class PolyForm {
 public:
  PolyForm(HeisParams params, int grade);

  static PolyForm function(HeisParams params, Poly f);
  static PolyForm blade(HeisParams params, Blade b, Poly coefficient);
  static PolyForm blade(HeisParams params, Blade b, const Rational& coefficient = Rational(1));
  static PolyForm theta(HeisParams params);
  /// -sum_j dx_j ^ dy_j.
  static PolyForm dtheta(HeisParams params);
  /// dw_index (1-based).
  static PolyForm coframe(HeisParams params, int index);

  const HeisParams& params() const noexcept { return params_; }
  int grade() const noexcept { return grade_; }
  int nvars() const noexcept { return params_.dim(); }
  const std::map<Blade, Poly>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Poly coefficient(Blade b) const;
  /// Highest total degree among the coefficients, -1 for zero.
  int coefficient_degree() const;

  void add(Blade b, const Poly& p);

  PolyForm& operator+=(const PolyForm& other);
  PolyForm& operator-=(const PolyForm& other);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator-(const PolyForm& a) { return PolyForm(a.params_, a.grade_) - a; }
  friend PolyForm operator*(const Poly& f, const PolyForm& a);
  friend PolyForm operator*(const Rational& s, const PolyForm& a);

  bool operator==(const PolyForm& other) const;

  /// Drops every blade containing theta.
  PolyForm strip_theta() const;
  /// Keeps only the theta-containing blades.
  PolyForm theta_part() const;
  bool is_theta_free() const;

 private:
  void require_compatible(const PolyForm& other) const;

  HeisParams params_;
  int grade_;
  std::map<Blade, Poly> terms_;
};

/// X_j (j <= n), Y_{j-n} (n < j <= 2n) or T (j = 2n+1) applied to f.
Poly derive_W(const HeisParams& params, int j, const Poly& f);

PolyForm wedge_forms(const PolyForm& a, const PolyForm& b);

/// Cartan rule in the coframe, with d(theta) = -sum dx_j ^ dy_j.
PolyForm exterior_d(const PolyForm& w);

/// Frame coefficients (X_1 f, .., X_n f, Y_1 f, .., Y_n f).
std::vector<Poly> horizontal_gradient(const HeisParams& params, const Poly& f);

template <HeisScalar S>
Covector<S> evaluate_form_at(const PolyForm& w, const Point<S>& p) {
  if (!(w.params() == p.params())) throw ParameterError("form and point over different groups");
  Covector<S> out(w.params(), w.grade());
  for (const auto& [b, c] : w.terms()) out.add(b, c.evaluate(p));
  return out;
}

/// Constant-coefficient form from a covector.
PolyForm form_from_covector(const Covector<Rational>& c);

/// Random form of the given grade: each blade gets a random polynomial with
/// probability `density`.
PolyForm random_form(const HeisParams& params, int grade, std::mt19937_64& rng, int max_degree = 3,
                     double density = 0.5);

/// Round-trippable text, e.g. "(t)*dx1 - (1/2*x1)*theta".
std::string to_string(const PolyForm& w);

}  // namespace rumin
