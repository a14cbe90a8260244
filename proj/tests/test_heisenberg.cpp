#include <gtest/gtest.h>

#include <random>

#include "rumin/heisenberg.hpp"
#include "rumin/linalg.hpp"

using namespace rumin;

namespace {

using Q = Rational;

Point<Q> qp(std::initializer_list<Q> c) { return Point<Q>(HeisParams(1), std::vector<Q>(c)); }

Point<double> random_point(HeisParams params, std::mt19937_64& rng, double scale = 5.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> c(params.dim());
  for (auto& v : c) v = u(rng);
  return Point<double>(params, c);
}

}  // namespace

TEST(HeisParams, Dimensions) {
  HeisParams h(2);
  EXPECT_EQ(h.dim(), 5);
  EXPECT_EQ(h.homogeneous_dim(), 6);
  EXPECT_THROW(HeisParams(0), ParameterError);
}

TEST(Point, CoordinateCountChecked) {
  EXPECT_THROW(Point<Q>(HeisParams(1), std::vector<Q>{1, 2}), ParameterError);
}

TEST(GroupMul, HandValues) {
  EXPECT_EQ(group_mul(qp({1, 0, 0}), qp({0, 1, 0})), qp({1, 1, Q(1, 2)}));
  EXPECT_EQ(group_mul(qp({0, 1, 0}), qp({1, 0, 0})), qp({1, 1, Q(-1, 2)}));
  EXPECT_EQ(group_mul(qp({3, 4, 5}), origin<Q>(HeisParams(1))), qp({3, 4, 5}));
}

TEST(GroupMul, DimensionMismatch) {
  Point<Q> a(HeisParams(1));
  Point<Q> b(HeisParams(2));
  EXPECT_THROW(group_mul(a, b), ParameterError);
}

TEST(GroupInv, HandValueAndDefiningProperty) {
  EXPECT_EQ(group_inv(qp({1, 2, 3})), qp({-1, -2, -3}));
  auto p = qp({Q(2, 3), Q(-5, 7), Q(1, 9)});
  EXPECT_EQ(group_mul(p, group_inv(p)), origin<Q>(HeisParams(1)));
  EXPECT_EQ(group_mul(group_inv(p), p), origin<Q>(HeisParams(1)));
}

TEST(GroupMul, Associative) {
  HeisParams h(2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int i = 0; i < 50; ++i) {
    auto draw = [&] {
      std::vector<Q> c(h.dim());
      for (auto& v : c) {
        v = Q(u(rng), 1 + std::abs(u(rng)));
        v.canonicalize();
      }
      return Point<Q>(h, c);
    };
    auto a = draw(), b = draw(), c = draw();
    EXPECT_EQ(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c)));
  }
}

TEST(Dilate, Values) {
  EXPECT_EQ(dilate(Q(2), qp({1, 1, 1})), qp({2, 2, 4}));
  auto p = qp({Q(1, 3), 2, Q(-7, 5)});
  EXPECT_EQ(dilate(Q(1), p), p);
  EXPECT_EQ(dilate(Q(3), dilate(Q(1, 2), p)), dilate(Q(3, 2), p));
  EXPECT_THROW(dilate(Q(0), p), ParameterError);
  EXPECT_THROW(dilate(Q(-1), p), ParameterError);
}

TEST(Koranyi, Values) {
  EXPECT_EQ(koranyi_norm_pow4(qp({0, 0, 1})), Q(16));
  EXPECT_DOUBLE_EQ(koranyi_norm(qp({0, 0, 1})), 2.0);
  EXPECT_DOUBLE_EQ(koranyi_norm(qp({3, 4, 0})), 5.0);
  auto p = qp({1, 2, 3});
  EXPECT_EQ(koranyi_dist(p, p), 0.0);
}

TEST(Koranyi, MetricProperties) {
  HeisParams h(2);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(0.01, 10.0);
  for (int i = 0; i < 2000; ++i) {
    auto p = random_point(h, rng), q = random_point(h, rng), r = random_point(h, rng);
    double dqr = koranyi_dist(q, r);
    EXPECT_LE(std::abs(koranyi_dist(group_mul(p, q), group_mul(p, r)) - dqr), 1e-12 * (1 + dqr));
    double s = ur(rng);
    EXPECT_LE(std::abs(koranyi_dist(dilate(s, q), dilate(s, r)) - s * dqr), 1e-12 * s * (1 + dqr));
    EXPECT_LE(std::abs(koranyi_dist(r, q) - dqr), 1e-12 * (1 + dqr));
    EXPECT_LE(dqr, koranyi_dist(q, p) + koranyi_dist(p, r) + 1e-12);
  }
}

TEST(FrameChange, Examples) {
  HeisParams h(1);
  Q y0(3, 4);
  Point<Q> p(h, {0, y0, 0});
  std::vector<Q> dx{1, 0, 0};
  auto c = frame_change(p, std::span<const Q>(dx));
  EXPECT_EQ(c, (std::vector<Q>{1, 0, y0 / 2}));
  std::vector<Q> dt{0, 0, 1};
  EXPECT_EQ(frame_change(qp({5, -2, 7}), std::span<const Q>(dt)), dt);
}

TEST(FrameChange, RoundTripAndUnitDeterminant) {
  HeisParams h(2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int i = 0; i < 20; ++i) {
    std::vector<Q> pc(h.dim()), v(h.dim());
    for (auto& c : pc) {
      c = Q(u(rng), 1 + std::abs(u(rng)));
      c.canonicalize();
    }
    for (auto& c : v) c = u(rng);
    Point<Q> p(h, pc);
    auto a = frame_change(p, std::span<const Q>(v));
    EXPECT_EQ(frame_to_coordinates(p, std::span<const Q>(a)), v);
    Matrix m(h.dim(), h.dim());
    for (int col = 0; col < h.dim(); ++col) {
      std::vector<Q> e(h.dim());
      e[col] = 1;
      auto img = frame_change(p, std::span<const Q>(e));
      for (int r = 0; r < h.dim(); ++r) m(r, col) = img[r];
    }
    EXPECT_EQ(determinant(m), Q(1));
  }
}
