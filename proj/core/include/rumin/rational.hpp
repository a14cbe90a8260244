#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace rumin {

using Rational = mpq_class;

/// Parses "p", "p/q" or a finite decimal "-1.25" into an exact rational.
/// Throws ParameterError on anything else.
Rational parse_rational(std::string_view text);

/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

/// The exact binary value of a finite double.
Rational exact_from_double(double value);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

// Scalar traits used by the geometry templates, so that the same code runs on
// exact rationals and on doubles.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double half() { return 0.5; }
  static bool is_zero(double v) { return v == 0.0; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational half() { return Rational(1, 2); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
};

template <class S>
concept HeisScalar = requires { ScalarTraits<S>::exact; };

}  // namespace rumin
