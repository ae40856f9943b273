#include "toricpb/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace toricpb;

namespace {

QMatrix rows(std::initializer_list<std::initializer_list<int>> entries) {
  const auto r = static_cast<Eigen::Index>(entries.size());
  const auto c = r ? static_cast<Eigen::Index>(entries.begin()->size()) : 0;
  QMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : entries) {
    Eigen::Index j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

QSubspace spanOf(std::initializer_list<std::initializer_list<int>> entries) { return QSubspace::span(rows(entries)); }

QSubspace randomSubspace(std::mt19937& rng, Eigen::Index ambient) {
  std::uniform_int_distribution<int> count(0, static_cast<int>(ambient));
  std::uniform_int_distribution<int> entry(-2, 2);
  QMatrix m(count(rng), ambient);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < ambient; ++j) m(i, j) = entry(rng);
  return QSubspace::span(m, ambient);
}

}  // namespace

TEST(Rational, CanonicalText) {
  EXPECT_EQ(formatRational(parseRational("4/6")), "2/3");
  EXPECT_EQ(formatRational(parseRational("-3/1")), "-3");
  EXPECT_EQ(formatRational(parseRational("-2/4")), "-1/2");
  EXPECT_THROW(parseRational("1/0"), std::invalid_argument);
  EXPECT_THROW(parseRational("x"), std::invalid_argument);
  EXPECT_THROW(parseRational(""), std::invalid_argument);
}

TEST(Rational, RejectsSignedDenominator) { EXPECT_THROW(parseRational("1/-2"), std::invalid_argument); }

TEST(SpanCanonical, ScalingInvariance) {
  EXPECT_EQ(spanOf({{2, 0}, {0, 2}}).basis(), rows({{1, 0}, {0, 1}}));
}

TEST(SpanCanonical, DependentRowsCollapse) {
  const QSubspace s = spanOf({{1, 1}, {2, 2}});
  EXPECT_EQ(s.dim(), 1);
  EXPECT_EQ(s.basis(), rows({{1, 1}}));
}

TEST(SpanCanonical, EmptySpan) {
  const QSubspace s = QSubspace::span(QMatrix(0, 3));
  EXPECT_EQ(s.ambientDim(), 3);
  EXPECT_EQ(s.dim(), 0);
  EXPECT_EQ(s.basis().rows(), 0);
}

TEST(SpanCanonical, DimensionMismatch) {
  EXPECT_THROW(QSubspace::span(rows({{1, 0}}), 3), DimensionMismatch);
}

TEST(Sum, Examples) {
  EXPECT_EQ(sum(spanOf({{1, 0}}), spanOf({{0, 1}})), QSubspace::full(2));
  const QSubspace a = spanOf({{1, 2, 3}});
  EXPECT_EQ(sum(a, a), a);
  EXPECT_EQ(sum(spanOf({{1, 1}}), spanOf({{1, -1}})), QSubspace::full(2));
  EXPECT_THROW(sum(QSubspace::zero(2), QSubspace::zero(3)), DimensionMismatch);
}

TEST(Intersect, Examples) {
  EXPECT_EQ(intersect(spanOf({{1, 0}, {0, 1}}), spanOf({{1, 1}})), spanOf({{1, 1}}));
  EXPECT_TRUE(intersect(spanOf({{1, 0}}), spanOf({{0, 1}})).isZero());
  EXPECT_THROW(intersect(QSubspace::zero(2), QSubspace::zero(3)), DimensionMismatch);
}

TEST(Complement, Examples) {
  const QSubspace v = spanOf({{1, 2, 0}, {0, 1, 1}});
  EXPECT_EQ(complementIn(QSubspace::zero(3), v), v);
  EXPECT_TRUE(complementIn(v, v).isZero());
  // Greedy over the canonical basis (1,0),(0,1) of Q²: (1,0) is independent of (1,1).
  EXPECT_EQ(complementIn(spanOf({{1, 1}}), QSubspace::full(2)), spanOf({{1, 0}}));
  EXPECT_THROW(complementIn(spanOf({{1, 0}}), spanOf({{0, 1}})), PreconditionError);
}

TEST(Annihilator, Examples) {
  EXPECT_EQ(annihilator(QSubspace::zero(2)), QSubspace::full(2));
  EXPECT_TRUE(annihilator(QSubspace::full(2)).isZero());
  EXPECT_EQ(annihilator(spanOf({{1, 1}})), spanOf({{1, -1}}));
}

TEST(Determinant, SmallCases) {
  EXPECT_EQ(determinant(rows({{1, 1}, {0, 1}})), 1);
  EXPECT_EQ(determinant(rows({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(determinant(rows({{1, 2}, {2, 4}})), 0);
  const QMatrix m = rows({{2, 1, 0}, {1, 1, 0}, {0, 3, 1}});
  EXPECT_EQ(QMatrix(m * inverse(m)), QMatrix(QMatrix::Identity(3, 3)));
  EXPECT_THROW(inverse(rows({{1, 2}, {2, 4}})), PreconditionError);
}

TEST(LinalgProperties, RandomizedInvariants) {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    const QSubspace a = randomSubspace(rng, n);
    const QSubspace b = randomSubspace(rng, n);
    // Canonicality: re-spanning a canonical basis (or a rescaled one) is a fixed point.
    EXPECT_EQ(QSubspace::span(QMatrix(a.basis() * Rational(3))), a);
    // Modular law for dimensions.
    EXPECT_EQ(a.dim() + b.dim(), sum(a, b).dim() + intersect(a, b).dim());
    // Double annihilator.
    EXPECT_EQ(annihilator(annihilator(a)), a);
    EXPECT_EQ(annihilator(a).dim(), n - a.dim());
    // Complements.
    const QSubspace outer = sum(a, b);
    const QSubspace c = complementIn(a, outer);
    EXPECT_TRUE(intersect(c, a).isZero());
    EXPECT_EQ(sum(c, a), outer);
    EXPECT_TRUE(outer.contains(intersect(a, b)));
  }
}
