#pragma once

#include <optional>
#include <random>
#include <vector>

#include "rumin/exterior.hpp"
#include "rumin/linalg.hpp"
#include "rumin/poly_form.hpp"

namespace rumin {

enum class Regime { Low, High };

/// Element of the Rumin complex in degree k: a quotient class in
/// Omega^k / I^k (k <= n), held by its primitive horizontal representative,
/// or a form in J^k (k >= n+1).
class RuminClass {
 public:
  int degree() const noexcept { return payload_.grade(); }
  Regime regime() const noexcept { return regime_; }
  const PolyForm& payload() const noexcept { return payload_; }
  const HeisParams& params() const noexcept { return payload_.params(); }

  bool operator==(const RuminClass& other) const {
    return regime_ == other.regime_ && payload_ == other.payload_;
  }

 private:
  friend class RuminComplex;
  RuminClass(Regime regime, PolyForm payload) : regime_(regime), payload_(std::move(payload)) {}
  Regime regime_;
  PolyForm payload_;
};

/// omega = alpha ^ theta + beta ^ dtheta.
struct IdealWitness {
  PolyForm alpha;
  PolyForm beta;
};

/// The Rumin complex of H^n with its exact linear-algebra caches. All
/// matrices are built in the constructor; the object is read-only afterwards
/// and can be shared between threads.
class RuminComplex {
 public:
  explicit RuminComplex(HeisParams params);

  const HeisParams& params() const noexcept { return params_; }
  int n() const noexcept { return params_.n(); }

  // Ideals and J-spaces.
  std::optional<IdealWitness> ideal_witness(const PolyForm& w) const;
  bool is_in_I(const PolyForm& w) const { return ideal_witness(w).has_value(); }
  bool is_in_J(const PolyForm& w) const;
  /// Pointwise orthogonal projection onto J^k.
  PolyForm restrict_to_J(const PolyForm& w) const;

  /// Primitive horizontal representative of [w] in Omega^k / I^k, k <= n.
  PolyForm canonical_rep(const PolyForm& w) const;

  /// dtheta ^ beta for horizontal beta.
  PolyForm L_apply(const PolyForm& beta) const;
  /// The unique horizontal u of degree n-1 with dtheta ^ u = w, w horizontal of degree n+1.
  PolyForm L_inv(const PolyForm& w) const;

  /// L^{-1}(-(d alpha) horizontal part) for a theta-free alpha of degree n.
  PolyForm script_L(const PolyForm& alpha) const;
  /// script_L applied to the theta-stripped representative of alpha.
  PolyForm script_L_stripped(const PolyForm& alpha) const;
  /// L^{-1}(-(d alpha) horizontal part) for any alpha of degree n, theta blades included.
  PolyForm script_L_literal(const PolyForm& alpha) const;

  /// theta ^ beta. This is the lift used by D; for even n it differs from
  /// beta ^ theta by a sign, and only theta ^ beta lands D in J^{n+1}.
  PolyForm contact_lift(const PolyForm& beta) const;

  /// d(alpha + theta ^ script_L(alpha)) for theta-free alpha of degree n.
  PolyForm D(const PolyForm& alpha) const;
  /// Same with beta ^ theta in place of theta ^ beta (kept for comparison).
  PolyForm D_right_lift(const PolyForm& alpha) const;

  // Classes.
  RuminClass make_class(const PolyForm& w) const;
  /// Low regime: canonical representative; throws for k > n.
  RuminClass low_class(const PolyForm& w) const;
  /// High regime: certifies w in J^k; throws ParameterError otherwise.
  RuminClass high_class(const PolyForm& w) const;
  RuminClass scale(const Poly& g, const RuminClass& c) const;
  RuminClass d_c(const RuminClass& c) const;

  /// d_c(g c) - g d_c(c).
  PolyForm leibniz_defect(const Poly& g, const RuminClass& c) const;
  /// Closed forms of the Leibniz defect in the three regimes.
  PolyForm leibniz_closed_form(const Poly& g, const RuminClass& c) const;
  /// script_L(g w) - g script_L(w) computed directly.
  PolyForm script_L_commutator(const Poly& g, const PolyForm& w) const;
  /// L^{-1}(-(dg ^ w) horizontal part).
  PolyForm script_L_commutator_closed(const Poly& g, const PolyForm& w) const;
  /// dg ^ (w + theta ^ S(w)) + d(theta ^ (S(g w) - g S(w))), S = script_L_stripped.
  PolyForm middle_defect_expression(const Poly& g, const PolyForm& w) const;
  /// Same with S(g w) - g S(w) replaced by its closed form.
  PolyForm middle_defect_two_pieces(const Poly& g, const PolyForm& w) const;
  /// middle_defect_expression with script_L_literal in place of S.
  PolyForm middle_defect_literal(const Poly& g, const PolyForm& w) const;

  /// Constant covectors generating I^k as a module: theta ^ dw_J and dtheta ^ dw_J.
  std::vector<Covector<Rational>> ideal_generators(int k) const;

  // Random inputs for the verification batteries.
  RuminClass random_class(int k, std::mt19937_64& rng) const;
  PolyForm random_ideal_element(int k, std::mt19937_64& rng) const;
  PolyForm random_theta_free(int k, std::mt19937_64& rng) const;

 private:
  std::vector<Poly> horizontal_vector(const PolyForm& w, int k) const;
  PolyForm horizontal_form(const std::vector<Poly>& v, int k) const;
  std::vector<Poly> full_vector(const PolyForm& w) const;
  PolyForm full_form(const std::vector<Poly>& v, int k) const;
  void require_params(const PolyForm& w) const;

  HeisParams params_;
  std::vector<std::vector<Blade>> horizontal_;  // by grade 0..2n
  std::vector<std::vector<Blade>> full_;        // by grade 0..2n+1
  std::vector<Matrix> lefschetz_;               // L: grade a -> a+2, index a
  std::vector<LinearSolver> lefschetz_solver_;
  std::vector<Matrix> primitive_projector_;     // per horizontal grade
  std::vector<Matrix> j_projector_;             // per full grade
};

}  // namespace rumin
