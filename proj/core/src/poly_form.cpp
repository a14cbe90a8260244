#include "rumin/poly_form.hpp"

#include <algorithm>

#include "rumin/errors.hpp"

namespace rumin {

PolyForm::PolyForm(HeisParams params, int grade) : params_(params), grade_(grade) {
  if (grade < 0) throw ParameterError("negative form degree");
}

PolyForm PolyForm::function(HeisParams params, Poly f) {
  return blade(params, Blade(), std::move(f));
}

PolyForm PolyForm::blade(HeisParams params, Blade b, Poly coefficient) {
  PolyForm w(params, b.grade());
  w.add(b, coefficient);
  return w;
}

PolyForm PolyForm::blade(HeisParams params, Blade b, const Rational& coefficient) {
  return blade(params, b, Poly(params.dim(), coefficient));
}

PolyForm PolyForm::theta(HeisParams params) { return coframe(params, params.vertical_index()); }

PolyForm PolyForm::dtheta(HeisParams params) {
  PolyForm w(params, 2);
  const int n = params.n();
  for (int j = 1; j <= n; ++j) w.add(Blade::from_indices({j, j + n}), Poly(params.dim(), Rational(-1)));
  return w;
}

PolyForm PolyForm::coframe(HeisParams params, int index) {
  if (index < 1 || index > params.dim()) throw ParameterError("coframe index out of range");
  return blade(params, Blade::single(index));
}

Poly PolyForm::coefficient(Blade b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Poly(nvars()) : it->second;
}

int PolyForm::coefficient_degree() const {
  int deg = -1;
  for (const auto& [b, c] : terms_) deg = std::max(deg, c.degree());
  return deg;
}

void PolyForm::add(Blade b, const Poly& p) {
  if (b.grade() != grade_)
    throw ParameterError("blade of degree " + std::to_string(b.grade()) + " added to a " +
                         std::to_string(grade_) + "-form");
  if (b.mask() >> params_.dim()) throw ParameterError("blade index exceeds 2n+1");
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(b, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PolyForm::require_compatible(const PolyForm& other) const {
  if (!(params_ == other.params_)) throw ParameterError("forms over different groups");
  if (grade_ != other.grade_)
    throw ParameterError("degree mismatch: " + std::to_string(grade_) + " vs " +
                         std::to_string(other.grade_));
}

PolyForm& PolyForm::operator+=(const PolyForm& other) {
  require_compatible(other);
  for (const auto& [b, c] : other.terms_) add(b, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& other) {
  require_compatible(other);
  for (const auto& [b, c] : other.terms_) add(b, -c);
  return *this;
}

PolyForm operator*(const Poly& f, const PolyForm& a) {
  PolyForm out(a.params_, a.grade_);
  for (const auto& [b, c] : a.terms_) out.add(b, f * c);
  return out;
}

PolyForm operator*(const Rational& s, const PolyForm& a) {
  PolyForm out(a.params_, a.grade_);
  for (const auto& [b, c] : a.terms_) out.add(b, c * s);
  return out;
}

bool PolyForm::operator==(const PolyForm& other) const {
  return params_ == other.params_ && grade_ == other.grade_ && terms_ == other.terms_;
}

PolyForm PolyForm::strip_theta() const {
  PolyForm out(params_, grade_);
  for (const auto& [b, c] : terms_)
    if (!b.contains(params_.vertical_index())) out.add(b, c);
  return out;
}

PolyForm PolyForm::theta_part() const {
  PolyForm out(params_, grade_);
  for (const auto& [b, c] : terms_)
    if (b.contains(params_.vertical_index())) out.add(b, c);
  return out;
}

bool PolyForm::is_theta_free() const {
  for (const auto& [b, c] : terms_)
    if (b.contains(params_.vertical_index())) return false;
  return true;
}

Poly derive_W(const HeisParams& params, int j, const Poly& f) {
  const int n = params.n();
  const int nv = params.dim();
  const int tvar = nv - 1;
  if (j < 1 || j > nv) throw ParameterError("frame index out of range");
  if (j == nv) return f.derivative(tvar);
  Poly dt = f.derivative(tvar);
  if (j <= n) {
    // X_j = d/dx_j - 1/2 y_j d/dt
    return f.derivative(j - 1) - Poly::variable(nv, n + j - 1) * dt * Rational(1, 2);
  }
  // Y_j = d/dy_j + 1/2 x_j d/dt
  const int jj = j - n;
  return f.derivative(n + jj - 1) + Poly::variable(nv, jj - 1) * dt * Rational(1, 2);
}

PolyForm wedge_forms(const PolyForm& a, const PolyForm& b) {
  if (!(a.params() == b.params())) throw ParameterError("wedge of forms over different groups");
  PolyForm out(a.params(), a.grade() + b.grade());
  if (a.grade() + b.grade() > a.params().dim()) return out;
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      int s = wedge_sign(ba, bb);
      if (s == 0) continue;
      Poly prod = ca * cb;
      if (s < 0) prod *= Rational(-1);
      out.add(Blade::from_mask(ba.mask() | bb.mask()), prod);
    }
  }
  return out;
}

namespace {

PolyForm d_function(const HeisParams& params, const Poly& f) {
  PolyForm out(params, 1);
  for (int j = 1; j <= params.dim(); ++j) out.add(Blade::single(j), derive_W(params, j, f));
  return out;
}

}  // namespace

PolyForm exterior_d(const PolyForm& w) {
  const HeisParams& params = w.params();
  PolyForm out(params, w.grade() + 1);
  if (w.grade() + 1 > params.dim()) return out;
  const int vert = params.vertical_index();
  const PolyForm dth = PolyForm::dtheta(params);
  for (const auto& [b, c] : w.terms()) {
    PolyForm basis = PolyForm::blade(params, b);
    out += wedge_forms(d_function(params, c), basis);
    if (b.contains(vert)) {
      // e_I = dw_J ^ theta, d(e_I) = (-1)^|J| dw_J ^ dtheta
      Blade j = Blade::from_mask(b.mask() & ~Blade::single(vert).mask());
      PolyForm de = wedge_forms(PolyForm::blade(params, j, c), dth);
      if (j.grade() % 2) de = -de;
      out += de;
    }
  }
  return out;
}

std::vector<Poly> horizontal_gradient(const HeisParams& params, const Poly& f) {
  std::vector<Poly> out;
  for (int j = 1; j <= 2 * params.n(); ++j) out.push_back(derive_W(params, j, f));
  return out;
}

PolyForm form_from_covector(const Covector<Rational>& c) {
  PolyForm out(c.params(), c.grade());
  for (const auto& [b, v] : c.terms()) out.add(b, Poly(c.params().dim(), v));
  return out;
}

PolyForm random_form(const HeisParams& params, int grade, std::mt19937_64& rng, int max_degree,
                     double density) {
  PolyForm out(params, grade);
  std::bernoulli_distribution keep(density);
  for (Blade b : blades_of_grade(params.dim(), grade))
    if (keep(rng)) out.add(b, random_poly(params, rng, max_degree));
  return out;
}

std::string to_string(const PolyForm& w) {
  const HeisParams& params = w.params();
  if (w.is_zero()) {
    if (w.grade() == 0) return "0";
    // A zero k-form keeps its degree through the printer.
    std::string zero = "0*";
    for (int i = 1; i <= w.grade(); ++i) {
      if (i > 1) zero += '^';
      zero += blade_name(params, Blade::single(i), Kind::Covector);
    }
    return zero;
  }
  std::string out;
  for (const auto& [b, c] : w.terms()) {
    if (!out.empty()) out += " + ";
    std::string coef = to_string(c, params);
    if (b.empty())
      out += "(" + coef + ")";
    else
      out += "(" + coef + ")*" + blade_name(params, b, Kind::Covector);
  }
  return out;
}

}  // namespace rumin
