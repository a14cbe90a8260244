#include "rumin/rumin_complex.hpp"

#include <algorithm>

#include "rumin/errors.hpp"

namespace rumin {

namespace {

std::size_t index_of(const std::vector<Blade>& blades, Blade b) {
  auto it = std::lower_bound(blades.begin(), blades.end(), b);
  if (it == blades.end() || !(*it == b)) throw InvariantViolation("blade missing from basis");
  return static_cast<std::size_t>(it - blades.begin());
}

// Matrix of the constant-coefficient map e_I -> dtheta ^ e_I (or theta ^ e_I)
// between two blade lists.
Matrix wedge_matrix(const HeisParams& params, const Covector<Rational>& factor,
                    const std::vector<Blade>& from, const std::vector<Blade>& to) {
  Matrix m(to.size(), from.size());
  for (std::size_t c = 0; c < from.size(); ++c) {
    auto image = wedge(factor, Covector<Rational>::blade(params, from[c]));
    for (const auto& [b, v] : image.terms()) m(index_of(to, b), c) = v;
  }
  return m;
}

Covector<Rational> theta_covector(const HeisParams& params) {
  return Covector<Rational>::blade(params, Blade::single(params.vertical_index()));
}

Covector<Rational> dtheta_covector(const HeisParams& params) {
  Covector<Rational> w(params, 2);
  for (int j = 1; j <= params.n(); ++j) w.add(Blade::from_indices({j, j + params.n()}), Rational(-1));
  return w;
}

bool poly_is_zero(const Poly& p) { return p.is_zero(); }

}  // namespace

RuminComplex::RuminComplex(HeisParams params) : params_(params) {
  const int n = params.n();
  const int dim = params.dim();
  for (int k = 0; k <= 2 * n; ++k) horizontal_.push_back(blades_of_grade(2 * n, k));
  for (int k = 0; k <= dim; ++k) full_.push_back(blades_of_grade(dim, k));

  const auto dth = dtheta_covector(params);
  const auto th = theta_covector(params);
  for (int a = 0; a + 2 <= 2 * n; ++a) {
    lefschetz_.push_back(wedge_matrix(params, dth, horizontal_[a], horizontal_[a + 2]));
    lefschetz_solver_.emplace_back(lefschetz_.back());
  }
  if (rank(lefschetz_[n - 1]) != horizontal_[n - 1].size() ||
      horizontal_[n - 1].size() != horizontal_[n + 1].size())
    throw InvariantViolation("Lefschetz map in the middle degree is not invertible");

  for (int k = 0; k <= 2 * n; ++k) {
    const std::size_t size = horizontal_[k].size();
    if (k < 2) {
      primitive_projector_.push_back(Matrix::identity(size));
      continue;
    }
    Matrix image = orthogonal_projector(lefschetz_[k - 2]);
    Matrix proj = Matrix::identity(size);
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) proj(r, c) -= image(r, c);
    primitive_projector_.push_back(std::move(proj));
  }

  for (int k = 0; k <= dim; ++k) {
    const std::size_t cols = full_[k].size();
    std::size_t rows = 0;
    if (k + 1 <= dim) rows += full_[k + 1].size();
    if (k + 2 <= dim) rows += full_[k + 2].size();
    Matrix constraints(rows, cols);
    std::size_t offset = 0;
    if (k + 1 <= dim) {
      Matrix a = wedge_matrix(params, th, full_[k], full_[k + 1]);
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < cols; ++c) constraints(offset + r, c) = a(r, c);
      offset += a.rows();
    }
    if (k + 2 <= dim) {
      Matrix a = wedge_matrix(params, dth, full_[k], full_[k + 2]);
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < cols; ++c) constraints(offset + r, c) = a(r, c);
    }
    j_projector_.push_back(orthogonal_projector(null_space(constraints)));
  }
}

void RuminComplex::require_params(const PolyForm& w) const {
  if (!(w.params() == params_)) throw ParameterError("form lives over a different Heisenberg group");
}

std::vector<Poly> RuminComplex::horizontal_vector(const PolyForm& w, int k) const {
  std::vector<Poly> v(horizontal_[k].size(), Poly(params_.dim()));
  for (const auto& [b, c] : w.terms()) {
    if (b.contains(params_.vertical_index())) continue;
    v[index_of(horizontal_[k], b)] = c;
  }
  return v;
}

PolyForm RuminComplex::horizontal_form(const std::vector<Poly>& v, int k) const {
  PolyForm w(params_, k);
  for (std::size_t i = 0; i < v.size(); ++i) w.add(horizontal_[k][i], v[i]);
  return w;
}

std::vector<Poly> RuminComplex::full_vector(const PolyForm& w) const {
  std::vector<Poly> v(full_[w.grade()].size(), Poly(params_.dim()));
  for (const auto& [b, c] : w.terms()) v[index_of(full_[w.grade()], b)] = c;
  return v;
}

PolyForm RuminComplex::full_form(const std::vector<Poly>& v, int k) const {
  PolyForm w(params_, k);
  for (std::size_t i = 0; i < v.size(); ++i) w.add(full_[k][i], v[i]);
  return w;
}

std::optional<IdealWitness> RuminComplex::ideal_witness(const PolyForm& w) const {
  require_params(w);
  const int k = w.grade();
  const int vert = params_.vertical_index();
  if (k > params_.dim()) return std::nullopt;
  // Degrees of alpha and beta are clamped at 0 for k < 2.
  PolyForm alpha(params_, std::max(k - 1, 0));
  PolyForm beta(params_, std::max(k - 2, 0));
  if (k == 0) {
    if (!w.is_zero()) return std::nullopt;
    return IdealWitness{alpha, beta};
  }
  for (const auto& [b, c] : w.terms()) {
    if (!b.contains(vert)) continue;
    alpha.add(Blade::from_mask(b.mask() & ~Blade::single(vert).mask()), c);
  }
  PolyForm horizontal = w.strip_theta();
  if (horizontal.is_zero()) return IdealWitness{alpha, beta};
  if (k < 2) return std::nullopt;
  auto sol = lefschetz_solver_[k - 2].solve_module(horizontal_vector(horizontal, k), Poly(params_.dim()),
                                                  poly_is_zero);
  if (!sol) return std::nullopt;
  beta = horizontal_form(*sol, k - 2);
  return IdealWitness{alpha, beta};
}

bool RuminComplex::is_in_J(const PolyForm& w) const {
  require_params(w);
  return wedge_forms(w, PolyForm::theta(params_)).is_zero() &&
         wedge_forms(w, PolyForm::dtheta(params_)).is_zero();
}

PolyForm RuminComplex::restrict_to_J(const PolyForm& w) const {
  require_params(w);
  if (w.grade() > params_.dim()) return w;
  return full_form(j_projector_[w.grade()].apply_to(full_vector(w), Poly(params_.dim())), w.grade());
}

PolyForm RuminComplex::canonical_rep(const PolyForm& w) const {
  require_params(w);
  const int k = w.grade();
  if (k > n())
    throw ParameterError("canonical representative requested in degree " + std::to_string(k) +
                         " > n = " + std::to_string(n()));
  auto v = horizontal_vector(w, k);
  return horizontal_form(primitive_projector_[k].apply_to(v, Poly(params_.dim())), k);
}

PolyForm RuminComplex::L_apply(const PolyForm& beta) const {
  require_params(beta);
  if (!beta.is_theta_free()) throw ParameterError("L is applied to horizontal forms only");
  return wedge_forms(PolyForm::dtheta(params_), beta);
}

PolyForm RuminComplex::L_inv(const PolyForm& w) const {
  require_params(w);
  if (w.grade() != n() + 1) throw ParameterError("L_inv expects a form of degree n+1");
  if (!w.is_theta_free()) throw ParameterError("L_inv expects a horizontal form");
  auto sol = lefschetz_solver_[n() - 1].solve_module(horizontal_vector(w, n() + 1), Poly(params_.dim()),
                                                     poly_is_zero);
  if (!sol) throw InvariantViolation("L u = w has no solution in the middle degree");
  return horizontal_form(*sol, n() - 1);
}

PolyForm RuminComplex::script_L_literal(const PolyForm& alpha) const {
  require_params(alpha);
  if (alpha.grade() != n()) throw ParameterError("script L expects a form of degree n");
  return L_inv(-exterior_d(alpha).strip_theta());
}

PolyForm RuminComplex::script_L(const PolyForm& alpha) const {
  if (!alpha.is_theta_free())
    throw ParameterError("script L expects a theta-free representative; strip theta first");
  return script_L_literal(alpha);
}

PolyForm RuminComplex::script_L_stripped(const PolyForm& alpha) const {
  return script_L(alpha.strip_theta());
}

PolyForm RuminComplex::contact_lift(const PolyForm& beta) const {
  return wedge_forms(PolyForm::theta(params_), beta);
}

PolyForm RuminComplex::D(const PolyForm& alpha) const {
  return exterior_d(alpha + contact_lift(script_L(alpha)));
}

PolyForm RuminComplex::D_right_lift(const PolyForm& alpha) const {
  return exterior_d(alpha + wedge_forms(script_L(alpha), PolyForm::theta(params_)));
}

RuminClass RuminComplex::make_class(const PolyForm& w) const {
  return w.grade() <= n() ? low_class(w) : high_class(w);
}

RuminClass RuminComplex::low_class(const PolyForm& w) const {
  return RuminClass(Regime::Low, canonical_rep(w));
}

RuminClass RuminComplex::high_class(const PolyForm& w) const {
  require_params(w);
  if (w.grade() <= n()) throw ParameterError("J-classes live in degrees k >= n+1");
  if (!is_in_J(w)) throw ParameterError("form is not in J^" + std::to_string(w.grade()));
  return RuminClass(Regime::High, w);
}

RuminClass RuminComplex::scale(const Poly& g, const RuminClass& c) const {
  if (c.regime() == Regime::Low) return low_class(g * c.payload());
  return high_class(g * c.payload());
}

RuminClass RuminComplex::d_c(const RuminClass& c) const {
  const int k = c.degree();
  if (k >= params_.dim()) throw ParameterError("d_c is not defined in the top degree 2n+1");
  if (k < n()) return low_class(exterior_d(c.payload()));
  PolyForm out = k == n() ? D(c.payload()) : exterior_d(c.payload());
  if (!is_in_J(out))
    throw InvariantViolation("d_c output is not in J^" + std::to_string(k + 1));
  return RuminClass(Regime::High, std::move(out));
}

PolyForm RuminComplex::leibniz_defect(const Poly& g, const RuminClass& c) const {
  return d_c(scale(g, c)).payload() - g * d_c(c).payload();
}

PolyForm RuminComplex::leibniz_closed_form(const Poly& g, const RuminClass& c) const {
  const int k = c.degree();
  const PolyForm& w = c.payload();
  PolyForm dg_w = wedge_forms(exterior_d(PolyForm::function(params_, g)), w);
  if (k < n()) return canonical_rep(dg_w);
  if (k > n()) return restrict_to_J(dg_w);
  return middle_defect_expression(g, w);
}

PolyForm RuminComplex::script_L_commutator(const Poly& g, const PolyForm& w) const {
  return script_L_stripped(g * w) - g * script_L_stripped(w);
}

PolyForm RuminComplex::script_L_commutator_closed(const Poly& g, const PolyForm& w) const {
  PolyForm dg_w = wedge_forms(exterior_d(PolyForm::function(params_, g)), w.strip_theta());
  return L_inv(-dg_w.strip_theta());
}

PolyForm RuminComplex::middle_defect_expression(const Poly& g, const PolyForm& w) const {
  PolyForm dg = exterior_d(PolyForm::function(params_, g));
  return wedge_forms(dg, w + contact_lift(script_L_stripped(w))) +
         exterior_d(contact_lift(script_L_commutator(g, w)));
}

PolyForm RuminComplex::middle_defect_two_pieces(const Poly& g, const PolyForm& w) const {
  PolyForm dg = exterior_d(PolyForm::function(params_, g));
  return wedge_forms(dg, w + contact_lift(script_L_stripped(w))) +
         exterior_d(contact_lift(script_L_commutator_closed(g, w)));
}

PolyForm RuminComplex::middle_defect_literal(const Poly& g, const PolyForm& w) const {
  PolyForm dg = exterior_d(PolyForm::function(params_, g));
  PolyForm comm = script_L_literal(g * w) - g * script_L_literal(w);
  return wedge_forms(dg, w + contact_lift(script_L_literal(w))) + exterior_d(contact_lift(comm));
}

std::vector<Covector<Rational>> RuminComplex::ideal_generators(int k) const {
  std::vector<Covector<Rational>> out;
  if (k < 1 || k > params_.dim()) return out;
  const auto th = theta_covector(params_);
  const auto dth = dtheta_covector(params_);
  for (Blade b : full_[k - 1]) {
    auto g = wedge(th, Covector<Rational>::blade(params_, b));
    if (!g.is_zero()) out.push_back(std::move(g));
  }
  if (k >= 2) {
    for (Blade b : full_[k - 2]) {
      auto g = wedge(dth, Covector<Rational>::blade(params_, b));
      if (!g.is_zero()) out.push_back(std::move(g));
    }
  }
  return out;
}

RuminClass RuminComplex::random_class(int k, std::mt19937_64& rng) const {
  PolyForm w = random_form(params_, k, rng);
  if (k <= n()) return low_class(w);
  return high_class(restrict_to_J(w));
}

PolyForm RuminComplex::random_ideal_element(int k, std::mt19937_64& rng) const {
  PolyForm out(params_, k);
  if (k >= 1) out += wedge_forms(random_form(params_, k - 1, rng), PolyForm::theta(params_));
  if (k >= 2) out += wedge_forms(random_form(params_, k - 2, rng), PolyForm::dtheta(params_));
  return out;
}

PolyForm RuminComplex::random_theta_free(int k, std::mt19937_64& rng) const {
  return random_form(params_, k, rng).strip_theta();
}

}  // namespace rumin
