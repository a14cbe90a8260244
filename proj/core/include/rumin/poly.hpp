#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rumin/heisenberg.hpp"
#include "rumin/rational.hpp"

namespace rumin {

/// Exponent vector over the variables (x_1..x_n, y_1..y_n, t).
using Monomial = std::vector<std::uint8_t>;

/// Sparse polynomial over Q in a fixed number of variables. Zero
/// coefficients are never stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  Poly(int nvars, const Rational& constant);

  static Poly variable(int nvars, int index);
  static Poly monomial(Monomial exponents, const Rational& coefficient);

  int nvars() const noexcept { return nvars_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Constant term.
  Rational constant() const;
  bool is_constant() const { return degree() <= 0; }

  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);

  bool operator==(const Poly& other) const;

  /// Partial derivative in variable `index` (0-based).
  Poly derivative(int index) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;
  template <HeisScalar S>
  S evaluate(const Point<S>& p) const {
    return evaluate(p.coords());
  }

  /// f o delta_r for the Heisenberg dilation on (x, y, t) (t is the last variable).
  Poly compose_dilation(const Rational& r) const;

 private:
  void merge_nvars(const Poly& other);

  int nvars_ = 0;
  std::map<Monomial, Rational> terms_;
};

/// Variable names x1..xn, y1..yn, t for H^n.
std::string variable_name(const HeisParams& params, int index);

/// Products of variables ("3/2*x1*x1*t"), using only '*' so the output
/// is valid input for the form grammar.
std::string to_string(const Poly& p, const HeisParams& params);

/// Random polynomial of total degree <= max_degree with `terms` monomials and
/// integer coefficients in [-9, 9].
Poly random_poly(const HeisParams& params, std::mt19937_64& rng, int max_degree = 3, int terms = 3);

}  // namespace rumin
