#pragma once

#include <string>
#include <vector>

#include "rumin/rumin_complex.hpp"

namespace rumin {

/// Outcome of one seeded battery: `passed` of `total` cases held exactly.
struct BatteryResult {
  std::string name;
  int passed = 0;
  int total = 0;
  bool ok() const { return passed == total; }
  std::string summary() const;
};

/// d_c(d_c(c)) == 0 for `count` random classes of degree k (k + 2 <= 2n+1).
BatteryResult battery_dc_squared(const RuminComplex& rc, int k, unsigned seed, int count);
/// The class of d(w + phi) does not depend on phi in I^k (k < n), and
/// D(w + phi) = D(w) for phi in I^n.
BatteryResult battery_quotient(const RuminComplex& rc, int k, unsigned seed, int count);
/// D output unchanged under `shifts` random elements of I^n, for `count` classes.
BatteryResult battery_D_invariance(const RuminComplex& rc, unsigned seed, int count, int shifts);
/// leibniz_defect == leibniz_closed_form on random (g, c) of degree k.
BatteryResult battery_leibniz(const RuminComplex& rc, int k, unsigned seed, int count);
/// script_L(g w) - g script_L(w) against its closed form, theta-free w of degree n.
BatteryResult battery_script_L_commutator(const RuminComplex& rc, unsigned seed, int count);
/// The middle defect expression lies in J^{n+1}: theta-free w of degree n.
BatteryResult battery_membership_theta_free(const RuminComplex& rc, unsigned seed, int count);
/// Same for w = theta ^ beta, with the theta-stripped script_L.
BatteryResult battery_membership_theta_branch(const RuminComplex& rc, unsigned seed, int count);
/// Same for w = theta ^ beta, with script_L applied to the full form.
BatteryResult battery_membership_theta_branch_literal(const RuminComplex& rc, unsigned seed, int count);
/// Expression equals its two-piece closed form.
BatteryResult battery_two_pieces(const RuminComplex& rc, unsigned seed, int count);

}  // namespace rumin
