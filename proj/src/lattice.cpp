#include "toricpb/lattice.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace toricpb {

Int checkedAdd(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("lattice arithmetic overflow");
  return out;
}

Int checkedMul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("lattice arithmetic overflow");
  return out;
}

Int dot(const IntVector& a, const IntVector& b) {
  detail::requireSameAmbient(a.size(), b.size(), "pairing");
  Int s = 0;
  for (Eigen::Index k = 0; k < a.size(); ++k) s = checkedAdd(s, checkedMul(a(k), b(k)));
  return s;
}

Int gcdOf(const IntVector& v) {
  Int g = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k) g = std::gcd(g, v(k));
  return g;
}

bool isPrimitive(const IntVector& v) { return gcdOf(v) == 1; }

IntVector primitiveMultiple(const QVector& v) {
  BigInt lcm = 1;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const BigInt d = boost::multiprecision::denominator(v(k));
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<BigInt> scaled(static_cast<std::size_t>(v.size()));
  BigInt g = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const Rational s = v(k) * Rational(lcm);
    scaled[static_cast<std::size_t>(k)] = boost::multiprecision::numerator(s);
    g = boost::multiprecision::gcd(g, scaled[static_cast<std::size_t>(k)]);
  }
  if (g == 0) throw PreconditionError("primitive multiple of the zero vector");
  IntVector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const BigInt e = scaled[static_cast<std::size_t>(k)] / g;
    if (e > BigInt(std::numeric_limits<Int>::max()) || e < BigInt(std::numeric_limits<Int>::min()))
      throw std::overflow_error("primitive vector entry exceeds 64 bits");
    out(k) = e.convert_to<Int>();
  }
  return out;
}

QVector toRational(const IntVector& v) {
  QVector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out(k) = Rational(v(k));
  return out;
}

bool LexLess::operator()(const IntVector& a, const IntVector& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index k = 0; k < a.size(); ++k)
    if (a(k) != b(k)) return a(k) < b(k);
  return false;
}

namespace {

struct ExtGcd {
  Int g, s, t;
};

ExtGcd extendedGcd(Int a, Int b) {
  Int oldR = a, r = b, oldS = 1, s = 0, oldT = 0, t = 1;
  while (r != 0) {
    const Int q = oldR / r;
    oldR = std::exchange(r, oldR - q * r);
    oldS = std::exchange(s, oldS - q * s);
    oldT = std::exchange(t, oldT - q * t);
  }
  if (oldR < 0) return {-oldR, -oldS, -oldT};
  return {oldR, oldS, oldT};
}

// Columns a, b ← (s·a + t·b, -(y/g)·a + (x/g)·b); the 2×2 block has det 1.
void combineColumns(IntMatrix& m, Eigen::Index a, Eigen::Index b, Int s, Int t, Int xg, Int yg) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Int ca = m(r, a), cb = m(r, b);
    m(r, a) = checkedAdd(checkedMul(s, ca), checkedMul(t, cb));
    m(r, b) = checkedAdd(checkedMul(-yg, ca), checkedMul(xg, cb));
  }
}

// Inverse block acting on rows: a ← (x/g)·a + (y/g)·b, b ← -t·a + s·b.
void combineRows(IntMatrix& m, Eigen::Index a, Eigen::Index b, Int s, Int t, Int xg, Int yg) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const Int ra = m(a, c), rb = m(b, c);
    m(a, c) = checkedAdd(checkedMul(xg, ra), checkedMul(yg, rb));
    m(b, c) = checkedAdd(checkedMul(-t, ra), checkedMul(s, rb));
  }
}

void swapColumns(ColumnReduction& cr, Eigen::Index a, Eigen::Index b) {
  cr.reduced.col(a).swap(cr.reduced.col(b));
  cr.unimodular.col(a).swap(cr.unimodular.col(b));
  cr.inverse.row(a).swap(cr.inverse.row(b));
}

}  // namespace

ColumnReduction columnReduce(const IntMatrix& pairing) {
  const Eigen::Index n = pairing.cols();
  ColumnReduction cr;
  cr.reduced = pairing;
  cr.unimodular = IntMatrix::Identity(n, n);
  cr.inverse = IntMatrix::Identity(n, n);
  Eigen::Index pivotCol = 0;
  for (Eigen::Index row = 0; row < pairing.rows() && pivotCol < n; ++row) {
    for (Eigen::Index c = pivotCol + 1; c < n; ++c) {
      const Int x = cr.reduced(row, pivotCol), y = cr.reduced(row, c);
      if (y == 0) continue;
      if (x == 0) {
        swapColumns(cr, pivotCol, c);
        continue;
      }
      const auto [g, s, t] = extendedGcd(x, y);
      const Int xg = x / g, yg = y / g;
      combineColumns(cr.reduced, pivotCol, c, s, t, xg, yg);
      combineColumns(cr.unimodular, pivotCol, c, s, t, xg, yg);
      combineRows(cr.inverse, pivotCol, c, s, t, xg, yg);
    }
    if (cr.reduced(row, pivotCol) == 0) continue;
    if (cr.reduced(row, pivotCol) < 0) {
      cr.reduced.col(pivotCol) *= -1;
      cr.unimodular.col(pivotCol) *= -1;
      cr.inverse.row(pivotCol) *= -1;
    }
    ++pivotCol;
  }
  cr.rank = pivotCol;
  return cr;
}

std::optional<IntVector> ColumnReduction::solve(const IntVector& t) const {
  detail::requireSameAmbient(t.size(), reduced.rows(), "lattice solve");
  IntVector y = IntVector::Zero(unimodular.cols());
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < rank; ++c) {
    while (reduced(row, c) == 0) ++row;
    Int rhs = t(row);
    for (Eigen::Index k = 0; k < c; ++k) rhs = checkedAdd(rhs, -checkedMul(reduced(row, k), y(k)));
    if (rhs % reduced(row, c) != 0) return std::nullopt;
    y(c) = rhs / reduced(row, c);
  }
  for (Eigen::Index r = 0; r < reduced.rows(); ++r) {
    Int lhs = 0;
    for (Eigen::Index c = 0; c < rank; ++c) lhs = checkedAdd(lhs, checkedMul(reduced(r, c), y(c)));
    if (lhs != t(r)) return std::nullopt;
  }
  IntVector u = IntVector::Zero(unimodular.rows());
  for (Eigen::Index c = 0; c < rank; ++c)
    for (Eigen::Index r = 0; r < u.size(); ++r) u(r) = checkedAdd(u(r), checkedMul(unimodular(r, c), y(c)));
  return u;
}

}  // namespace toricpb
