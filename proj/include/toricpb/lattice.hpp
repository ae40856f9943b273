#pragma once

#include "toricpb/linalg.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>

namespace toricpb {

using Int = std::int64_t;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

Int checkedAdd(Int a, Int b);
Int checkedMul(Int a, Int b);
Int dot(const IntVector& a, const IntVector& b);

Int gcdOf(const IntVector& v);
bool isPrimitive(const IntVector& v);

/// Smallest positive integer multiple of a nonzero rational vector with
/// coprime entries.
IntVector primitiveMultiple(const QVector& v);

QVector toRational(const IntVector& v);

/// Lexicographic order on integer vectors (for use as map keys).
struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const;
};

/// P·U = [H | 0] with U unimodular and H of full column rank in column
/// echelon form. The trailing columns of U are a lattice basis of ker P ∩ Z^n,
/// and the leading coordinates of U^{-1}·u give u's class modulo that kernel.
struct ColumnReduction {
  IntMatrix reduced;     // P·U
  IntMatrix unimodular;  // U
  IntMatrix inverse;     // U^{-1}
  Eigen::Index rank = 0;

  IntMatrix kernelBasis() const { return unimodular.rightCols(unimodular.cols() - rank); }
  IntVector quotientCoordinates(const IntVector& u) const { return (inverse * u).head(rank); }
  /// Integral u with P·u = t, if one exists.
  std::optional<IntVector> solve(const IntVector& t) const;
};

ColumnReduction columnReduce(const IntMatrix& pairing);

}  // namespace toricpb
