#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rumin/errors.hpp"
#include "rumin/heisenberg.hpp"
#include "rumin/rational.hpp"

namespace rumin {

/// A wedge monomial W_{i_1} ^ ... ^ W_{i_k} (or dw_{i_1} ^ ... ^ dw_{i_k}) with
/// strictly increasing 1-based indices, stored as a bit mask (bit i-1 <-> index i).
class Blade {
 public:
  constexpr Blade() = default;
  static constexpr Blade from_mask(std::uint32_t mask) { return Blade(mask); }
  /// Throws ParameterError unless the indices are strictly increasing and >= 1.
  static Blade from_indices(std::span<const int> indices);
  static Blade from_indices(std::initializer_list<int> indices) {
    return from_indices(std::span<const int>(indices.begin(), indices.size()));
  }
  static constexpr Blade single(int index) { return Blade(std::uint32_t{1} << (index - 1)); }
  /// W_1 ^ ... ^ W_dim.
  static constexpr Blade top(int dim) { return Blade((std::uint32_t{1} << dim) - 1); }

  constexpr std::uint32_t mask() const noexcept { return mask_; }
  constexpr int grade() const noexcept { return std::popcount(mask_); }
  constexpr bool contains(int index) const noexcept { return (mask_ >> (index - 1)) & 1u; }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  std::vector<int> indices() const;

  constexpr bool operator==(const Blade&) const = default;
  /// Lexicographic order on the sorted index lists.
  constexpr bool operator<(const Blade& other) const noexcept {
    if (mask_ == other.mask_) return false;
    if (grade() != other.grade()) return grade() < other.grade();
    std::uint32_t diff = mask_ ^ other.mask_;
    std::uint32_t low = diff & (~diff + 1);
    return (mask_ & low) != 0;
  }

 private:
  constexpr explicit Blade(std::uint32_t mask) : mask_(mask) {}
  std::uint32_t mask_ = 0;
};

/// Sign of B_a ^ B_b rewritten in increasing order; 0 if they share an index.
constexpr int wedge_sign(Blade a, Blade b) noexcept {
  if (a.mask() & b.mask()) return 0;
  int swaps = 0;
  std::uint32_t rest = b.mask();
  while (rest) {
    int j = std::countr_zero(rest);
    // number of indices of a greater than j
    swaps += std::popcount(a.mask() >> (j + 1));
    rest &= rest - 1;
  }
  return (swaps & 1) ? -1 : 1;
}

/// All blades of a given grade over indices 1..dim, in lexicographic order.
std::vector<Blade> blades_of_grade(int dim, int grade);

/// Blades of a given grade avoiding index dim (horizontal blades).
std::vector<Blade> horizontal_blades(const HeisParams& params, int grade);

enum class Kind { Vector, Covector };

/// Constant-coefficient graded element of the exterior algebra over the
/// frame W_1..W_{2n+1} (Kind::Vector) or the coframe dw_1..dw_{2n+1}
/// (Kind::Covector, dw_{2n+1} = theta). Zero coefficients are never stored.
template <HeisScalar S, Kind K>
class Graded {
 public:
  using Scalar = S;
  static constexpr Kind kind = K;

  Graded(HeisParams params, int grade) : params_(params), grade_(grade) {
    if (grade < 0) throw ParameterError("negative grade");
  }

  static Graded blade(HeisParams params, Blade b, S coefficient = S(1)) {
    Graded g(params, b.grade());
    g.add(b, std::move(coefficient));
    return g;
  }
  static Graded scalar(HeisParams params, S value) { return blade(params, Blade(), std::move(value)); }

  const HeisParams& params() const noexcept { return params_; }
  int grade() const noexcept { return grade_; }
  const std::map<Blade, S>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  S coefficient(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add(Blade b, const S& value) {
    if (b.grade() != grade_)
      throw ParameterError("blade of grade " + std::to_string(b.grade()) + " added to grade " +
                           std::to_string(grade_) + " element");
    if (ScalarTraits<S>::is_zero(value)) return;
    auto [it, inserted] = terms_.try_emplace(b, value);
    if (!inserted) {
      it->second += value;
      if (ScalarTraits<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  Graded& operator+=(const Graded& other) {
    require_compatible(other);
    for (const auto& [b, c] : other.terms_) add(b, c);
    return *this;
  }
  Graded& operator-=(const Graded& other) {
    require_compatible(other);
    for (const auto& [b, c] : other.terms_) add(b, -c);
    return *this;
  }
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  friend Graded operator-(const Graded& a) { return Graded(a.params_, a.grade_) - a; }
  friend Graded operator*(const S& s, const Graded& a) {
    Graded out(a.params_, a.grade_);
    for (const auto& [b, c] : a.terms_) out.add(b, s * c);
    return out;
  }

  bool operator==(const Graded& other) const {
    return params_ == other.params_ && grade_ == other.grade_ && terms_ == other.terms_;
  }

  /// Frame l2 norm of the coefficients (the frame is orthonormal).
  double norm() const {
    double s = 0.0;
    for (const auto& [b, c] : terms_) s += to_double(c) * to_double(c);
    return std::sqrt(s);
  }

 private:
  void require_compatible(const Graded& other) const {
    if (!(params_ == other.params_)) throw ParameterError("elements over different groups");
    if (grade_ != other.grade_)
      throw ParameterError("grade mismatch: " + std::to_string(grade_) + " vs " +
                           std::to_string(other.grade_));
  }

  HeisParams params_;
  int grade_;
  std::map<Blade, S> terms_;
};

template <HeisScalar S>
using Multivector = Graded<S, Kind::Vector>;
template <HeisScalar S>
using Covector = Graded<S, Kind::Covector>;

/// Bilinear, associative, graded-anticommutative wedge. Grades beyond 2n+1
/// give the zero element of that grade.
template <HeisScalar S, Kind K>
Graded<S, K> wedge(const Graded<S, K>& a, const Graded<S, K>& b) {
  if (!(a.params() == b.params())) throw ParameterError("wedge of elements over different groups");
  Graded<S, K> out(a.params(), a.grade() + b.grade());
  if (a.grade() + b.grade() > a.params().dim()) return out;
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      int s = wedge_sign(ba, bb);
      if (s == 0) continue;
      Blade prod = Blade::from_mask(ba.mask() | bb.mask());
      if (s > 0)
        out.add(prod, ca * cb);
      else
        out.add(prod, -(ca * cb));
    }
  }
  return out;
}

/// <w | v> with <dw_I | W_J> = delta_IJ on increasing index lists.
template <HeisScalar S>
S pair(const Covector<S>& w, const Multivector<S>& v) {
  if (w.grade() != v.grade())
    throw ParameterError("pairing grade mismatch: covector grade " + std::to_string(w.grade()) +
                         ", vector grade " + std::to_string(v.grade()));
  S total(0);
  const auto& small = w.terms().size() <= v.terms().size() ? w.terms() : v.terms();
  for (const auto& [b, c] : small) {
    S other = (&small == &w.terms()) ? v.coefficient(b) : w.coefficient(b);
    total += c * other;
  }
  return total;
}

/// sigma(I): number of couples (i in I, j in I*) with i > j.
int hodge_sign_exponent(Blade blade, int dim);

/// *V_I = (-1)^sigma(I) V_{I*}, extended to grades 0 and 2n+1.
template <HeisScalar S>
Multivector<S> hodge_star(const Multivector<S>& v) {
  const int dim = v.params().dim();
  Multivector<S> out(v.params(), dim - v.grade());
  const Blade top = Blade::top(dim);
  for (const auto& [b, c] : v.terms()) {
    Blade comp = Blade::from_mask(top.mask() & ~b.mask());
    out.add(comp, (hodge_sign_exponent(b, dim) & 1) ? S(-c) : c);
  }
  return out;
}

/// omega^*: the vector with <omega^*, V> = <omega | V> for all V.
template <HeisScalar S>
Multivector<S> dual_star(const Covector<S>& w) {
  Multivector<S> out(w.params(), w.grade());
  for (const auto& [b, c] : w.terms()) out.add(b, c);
  return out;
}

/// True iff no stored blade contains the vertical index 2n+1.
template <HeisScalar S>
bool is_horizontal(const Multivector<S>& v) {
  const int vert = v.params().vertical_index();
  for (const auto& [b, c] : v.terms())
    if (b.contains(vert)) return false;
  return true;
}

/// Unit simple k-vector given by k orthonormal columns of frame coefficients.
class SimpleVectorSample {
 public:
  /// Gram-Schmidt of a random Gaussian frame.
  static SimpleVectorSample random(HeisParams params, int k, std::mt19937_64& rng);
  /// Orthonormalizes the given columns; throws if they are dependent.
  static SimpleVectorSample from_columns(HeisParams params, std::vector<std::vector<double>> cols);

  const std::vector<std::vector<double>>& columns() const noexcept { return columns_; }
  /// The k-vector col_1 ^ ... ^ col_k.
  Multivector<double> to_multivector() const;

 private:
  SimpleVectorSample(HeisParams params, std::vector<std::vector<double>> cols)
      : params_(params), columns_(std::move(cols)) {}
  HeisParams params_;
  std::vector<std::vector<double>> columns_;
};

/// Monte-Carlo lower estimate of the comass sup{<w|v> : v unit simple}: the
/// maximum over all coordinate blades and `samples` random unit simple vectors.
double comass(const Covector<double>& w, int samples, std::mt19937_64& rng);
double comass(const Covector<Rational>& w, int samples, std::mt19937_64& rng);

template <HeisScalar S, Kind K>
Graded<double, K> to_double(const Graded<S, K>& g) {
  Graded<double, K> out(g.params(), g.grade());
  for (const auto& [b, c] : g.terms()) out.add(b, rumin::to_double(c));
  return out;
}

/// Vector (grade 1) from frame coefficients.
template <HeisScalar S>
Multivector<S> vector_from_frame(HeisParams params, std::span<const S> coeffs) {
  Multivector<S> v(params, 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) v.add(Blade::single(static_cast<int>(i) + 1), coeffs[i]);
  return v;
}

/// Wedge of grade-1 vectors given by their frame coefficients.
template <HeisScalar S>
Multivector<S> wedge_vectors(HeisParams params, const std::vector<std::vector<S>>& vectors) {
  Multivector<S> acc = Multivector<S>::scalar(params, S(1));
  for (const auto& v : vectors) acc = wedge(acc, vector_from_frame<S>(params, v));
  return acc;
}

/// Human-readable blade name over the frame ("X1^T") or coframe ("dx1^theta").
std::string blade_name(const HeisParams& params, Blade b, Kind kind);

}  // namespace rumin
