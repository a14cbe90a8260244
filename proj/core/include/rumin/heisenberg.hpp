#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "rumin/errors.hpp"
#include "rumin/rational.hpp"

namespace rumin {

/// Index n of the Heisenberg group H^n.
class HeisParams {
 public:
  explicit HeisParams(int n) : n_(n) {
    if (n < 1) throw ParameterError("Heisenberg index must be >= 1");
  }
  int n() const noexcept { return n_; }
  /// Topological dimension 2n+1.
  int dim() const noexcept { return 2 * n_ + 1; }
  /// Homogeneous dimension 2n+2.
  int homogeneous_dim() const noexcept { return 2 * n_ + 2; }
  /// 1-based frame index of T (and of theta in the coframe).
  int vertical_index() const noexcept { return 2 * n_ + 1; }

  bool operator==(const HeisParams&) const = default;

 private:
  int n_;
};

/// A point (x, y, t) of H^n stored as w = (x_1..x_n, y_1..y_n, t).
template <HeisScalar S>
class Point {
 public:
  explicit Point(HeisParams params) : params_(params), w_(params.dim(), S(0)) {}
  Point(HeisParams params, std::vector<S> coords) : params_(params), w_(std::move(coords)) {
    if (static_cast<int>(w_.size()) != params.dim())
      throw ParameterError("point has " + std::to_string(w_.size()) + " coordinates, expected " +
                           std::to_string(params.dim()));
  }

  const HeisParams& params() const noexcept { return params_; }
  int n() const noexcept { return params_.n(); }

  const S& x(int j) const { return w_[j]; }
  const S& y(int j) const { return w_[params_.n() + j]; }
  const S& t() const { return w_.back(); }
  S& x(int j) { return w_[j]; }
  S& y(int j) { return w_[params_.n() + j]; }
  S& t() { return w_.back(); }

  /// Coordinate by 0-based index into (x, y, t).
  const S& operator[](std::size_t i) const { return w_[i]; }
  S& operator[](std::size_t i) { return w_[i]; }
  std::span<const S> coords() const noexcept { return w_; }

  bool operator==(const Point& other) const { return params_ == other.params_ && w_ == other.w_; }
  /// Lexicographic order on coordinates; used as a canonical vertex order.
  bool operator<(const Point& other) const {
    return std::lexicographical_compare(w_.begin(), w_.end(), other.w_.begin(), other.w_.end());
  }

 private:
  HeisParams params_;
  std::vector<S> w_;
};

namespace detail {
template <class S>
void require_same(const Point<S>& p, const Point<S>& q) {
  if (!(p.params() == q.params())) throw ParameterError("points live in different Heisenberg groups");
}
}  // namespace detail

template <HeisScalar S>
Point<S> origin(HeisParams params) {
  return Point<S>(params);
}

/// (x+x', y+y', t+t' + 1/2 sum_j (x_j y'_j - y_j x'_j)).
template <HeisScalar S>
Point<S> group_mul(const Point<S>& p, const Point<S>& q) {
  detail::require_same(p, q);
  Point<S> out(p.params());
  const int n = p.n();
  S skew(0);
  for (int j = 0; j < n; ++j) {
    out.x(j) = p.x(j) + q.x(j);
    out.y(j) = p.y(j) + q.y(j);
    skew += p.x(j) * q.y(j) - p.y(j) * q.x(j);
  }
  out.t() = p.t() + q.t() + ScalarTraits<S>::half() * skew;
  return out;
}

/// Left translation by q: p -> q * p.
template <HeisScalar S>
Point<S> left_translate(const Point<S>& q, const Point<S>& p) {
  return group_mul(q, p);
}

template <HeisScalar S>
Point<S> group_inv(const Point<S>& p) {
  Point<S> out(p.params());
  for (std::size_t i = 0; i < static_cast<std::size_t>(p.params().dim()); ++i) out[i] = -p[i];
  return out;
}

/// delta_r(x, y, t) = (r x, r y, r^2 t).
template <HeisScalar S>
Point<S> dilate(const S& r, const Point<S>& p) {
  if (!(r > 0)) throw ParameterError("dilation factor must be positive");
  Point<S> out(p.params());
  const int n = p.n();
  for (int j = 0; j < n; ++j) {
    out.x(j) = r * p.x(j);
    out.y(j) = r * p.y(j);
  }
  out.t() = r * r * p.t();
  return out;
}

/// |(x,y)|^4 + 16 t^2, the fourth power of the Koranyi norm (exact for rationals).
template <HeisScalar S>
S koranyi_norm_pow4(const Point<S>& p) {
  S horizontal(0);
  for (int j = 0; j < p.n(); ++j) horizontal += p.x(j) * p.x(j) + p.y(j) * p.y(j);
  return horizontal * horizontal + 16 * p.t() * p.t();
}

template <HeisScalar S>
double koranyi_norm(const Point<S>& p) {
  if constexpr (ScalarTraits<S>::exact) {
    return std::sqrt(std::sqrt(to_double(koranyi_norm_pow4(p))));
  } else {
    // Evaluate as |z|^4 + 16t^2 = (|z|^2)^2 + (4t)^2 through hypot to keep
    // relative accuracy when one term dominates.
    double horizontal = 0.0;
    for (int j = 0; j < p.n(); ++j) horizontal += p.x(j) * p.x(j) + p.y(j) * p.y(j);
    return std::sqrt(std::hypot(horizontal, 4.0 * p.t()));
  }
}

/// d(p, q) = || q^{-1} * p ||.
template <HeisScalar S>
double koranyi_dist(const Point<S>& p, const Point<S>& q) {
  return koranyi_norm(group_mul(group_inv(q), p));
}

/// Coefficients of a coordinate vector v (components along d/dx, d/dy, d/dt)
/// in the left-invariant frame X_1..X_n, Y_1..Y_n, T at p.
template <HeisScalar S>
std::vector<S> frame_change(const Point<S>& p, std::span<const S> v) {
  const int n = p.n();
  if (static_cast<int>(v.size()) != p.params().dim())
    throw ParameterError("vector dimension does not match the point");
  std::vector<S> out(v.begin(), v.end());
  S correction(0);
  for (int j = 0; j < n; ++j) correction += v[j] * p.y(j) - v[n + j] * p.x(j);
  out[2 * n] = v[2 * n] + ScalarTraits<S>::half() * correction;
  return out;
}

/// Inverse of frame_change: frame coefficients back to coordinate components.
template <HeisScalar S>
std::vector<S> frame_to_coordinates(const Point<S>& p, std::span<const S> a) {
  const int n = p.n();
  if (static_cast<int>(a.size()) != p.params().dim())
    throw ParameterError("vector dimension does not match the point");
  std::vector<S> out(a.begin(), a.end());
  S correction(0);
  for (int j = 0; j < n; ++j) correction += a[j] * p.y(j) - a[n + j] * p.x(j);
  out[2 * n] = a[2 * n] - ScalarTraits<S>::half() * correction;
  return out;
}

template <HeisScalar S>
Point<double> to_double_point(const Point<S>& p) {
  std::vector<double> c;
  c.reserve(p.coords().size());
  for (const auto& v : p.coords()) c.push_back(to_double(v));
  return Point<double>(p.params(), std::move(c));
}

}  // namespace rumin
