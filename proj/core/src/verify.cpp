#include "rumin/verify.hpp"

#include <random>

#include "rumin/poly_form.hpp"

namespace rumin {

std::string BatteryResult::summary() const {
  return name + ": " + std::to_string(passed) + "/" + std::to_string(total) + " exact";
}

namespace {

template <class Case>
BatteryResult run(std::string name, int count, Case&& one) {
  BatteryResult r{std::move(name)};
  for (int i = 0; i < count; ++i) {
    ++r.total;
    if (one()) ++r.passed;
  }
  return r;
}

// theta ^ beta for a random theta-free beta of degree n - 1.
PolyForm random_theta_multiple(const RuminComplex& rc, std::mt19937_64& rng) {
  const int n = rc.n();
  PolyForm beta = n == 1 ? PolyForm::function(rc.params(), random_poly(rc.params(), rng))
                         : rc.random_theta_free(n - 1, rng);
  return wedge_forms(PolyForm::theta(rc.params()), beta);
}

}  // namespace

BatteryResult battery_dc_squared(const RuminComplex& rc, int k, unsigned seed, int count) {
  std::mt19937_64 rng(seed);
  return run("dc∘dc = 0", count,
             [&] { return rc.d_c(rc.d_c(rc.random_class(k, rng))).payload().is_zero(); });
}

BatteryResult battery_quotient(const RuminComplex& rc, int k, unsigned seed, int count) {
  std::mt19937_64 rng(seed);
  const auto& h = rc.params();
  return run("quotient well-defined", count, [&] {
    PolyForm w = random_form(h, k, rng);
    PolyForm phi = rc.random_ideal_element(k, rng);
    if (k < rc.n()) return rc.canonical_rep(exterior_d(w + phi)) == rc.canonical_rep(exterior_d(w));
    return rc.D(rc.canonical_rep(w + phi)) == rc.D(rc.canonical_rep(w));
  });
}

BatteryResult battery_D_invariance(const RuminComplex& rc, unsigned seed, int count, int shifts) {
  std::mt19937_64 rng(seed);
  const int n = rc.n();
  return run("D invariant under I^n", count, [&] {
    PolyForm w = random_form(rc.params(), n, rng);
    PolyForm base = rc.d_c(rc.make_class(w)).payload();
    for (int s = 0; s < shifts; ++s)
      if (!(rc.d_c(rc.make_class(w + rc.random_ideal_element(n, rng))).payload() == base)) return false;
    return true;
  });
}

BatteryResult battery_leibniz(const RuminComplex& rc, int k, unsigned seed, int count) {
  std::mt19937_64 rng(seed);
  return run("Leibniz defect closed form", count, [&] {
    Poly g = random_poly(rc.params(), rng);
    auto c = rc.random_class(k, rng);
    return rc.leibniz_defect(g, c) == rc.leibniz_closed_form(g, c);
  });
}

BatteryResult battery_script_L_commutator(const RuminComplex& rc, unsigned seed, int count) {
  std::mt19937_64 rng(seed);
  return run("script-L commutator", count, [&] {
    Poly g = random_poly(rc.params(), rng);
    PolyForm w = rc.random_theta_free(rc.n(), rng);
    return rc.script_L_commutator(g, w) == rc.script_L_commutator_closed(g, w);
  });
}

BatteryResult battery_membership_theta_free(const RuminComplex& rc, unsigned seed, int count) {
  std::mt19937_64 rng(seed);
  return run("J^{n+1} membership, theta-free w", count, [&] {
    Poly g = random_poly(rc.params(), rng);
    return rc.is_in_J(rc.middle_defect_expression(g, rc.random_theta_free(rc.n(), rng)));
  });
}

BatteryResult battery_membership_theta_branch(const RuminComplex& rc, unsigned seed, int count) {
  std::mt19937_64 rng(seed);
  return run("J^{n+1} membership, w = theta^beta", count, [&] {
    Poly g = random_poly(rc.params(), rng);
    return rc.is_in_J(rc.middle_defect_expression(g, random_theta_multiple(rc, rng)));
  });
}

BatteryResult battery_membership_theta_branch_literal(const RuminComplex& rc, unsigned seed, int count) {
  std::mt19937_64 rng(seed);
  return run("J^{n+1} membership, w = theta^beta, full-form script-L", count, [&] {
    Poly g = random_poly(rc.params(), rng);
    return rc.is_in_J(rc.middle_defect_literal(g, random_theta_multiple(rc, rng)));
  });
}

BatteryResult battery_two_pieces(const RuminComplex& rc, unsigned seed, int count) {
  std::mt19937_64 rng(seed);
  return run("two-piece decomposition", count, [&] {
    Poly g = random_poly(rc.params(), rng);
    PolyForm w = rc.random_theta_free(rc.n(), rng);
    return rc.middle_defect_two_pieces(g, w) == rc.middle_defect_expression(g, w);
  });
}

}  // namespace rumin
