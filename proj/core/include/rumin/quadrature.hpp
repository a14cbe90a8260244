#pragma once

#include <vector>

#include "rumin/rational.hpp"

namespace rumin {

/// Quadrature point on a simplex: barycentric coordinates and a weight.
/// Weights of a rule sum to 1, so a rule computes the mean value.
struct QuadraturePoint {
  std::vector<Rational> barycentric;
  Rational weight;
};

/// Grundmann-Moller rule on the m-simplex exact for polynomials of total
/// degree <= `degree` (rounded up to the next odd degree). Rational nodes and
/// weights; some weights are negative. Rules are cached, the call is thread-safe.
const std::vector<QuadraturePoint>& simplex_rule(int m, int degree);

}  // namespace rumin
