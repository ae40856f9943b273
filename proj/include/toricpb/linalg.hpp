#pragma once

#include "toricpb/errors.hpp"
#include "toricpb/rational.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace toricpb {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using QMatrix = MatrixX<Rational>;
using QVector = VectorX<Rational>;

namespace detail {

inline void requireSameAmbient(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b)
    throw DimensionMismatch(std::string(what) + ": ambient dimensions " + std::to_string(a) +
                            " and " + std::to_string(b) + " differ");
}

}  // namespace detail

/// Incrementally maintained reduced row-echelon basis. Rows are kept fully
/// reduced (pivot 1, zeros above and below every pivot) so that the final
/// matrix is the canonical RREF of the span once rows are sorted by pivot.
template <class Scalar>
class EchelonBuilder {
 public:
  explicit EchelonBuilder(Eigen::Index ambient) : ambient_(ambient) {}

  Eigen::Index ambient() const { return ambient_; }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(rows_.size()); }

  /// Reduces v against the current rows; the residue is zero iff v is in the span.
  RowVectorX<Scalar> reduce(RowVectorX<Scalar> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar& c = v(pivots_[k]);
      if (c != 0) v -= c * rows_[k];
    }
    return v;
  }

  bool inSpan(const RowVectorX<Scalar>& v) const { return isZero(reduce(v)); }

  /// Adds v; returns false when v was already in the span.
  bool insert(const RowVectorX<Scalar>& v) {
    detail::requireSameAmbient(v.size(), ambient_, "echelon insert");
    RowVectorX<Scalar> r = reduce(v);
    Eigen::Index pivot = 0;
    while (pivot < ambient_ && r(pivot) == 0) ++pivot;
    if (pivot == ambient_) return false;
    r /= Scalar(r(pivot));
    for (auto& row : rows_) {
      const Scalar c = row(pivot);
      if (c != 0) row -= c * r;
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
    auto offset = pos - pivots_.begin();
    pivots_.insert(pos, pivot);
    rows_.insert(rows_.begin() + offset, std::move(r));
    return true;
  }

  const std::vector<Eigen::Index>& pivots() const { return pivots_; }

  MatrixX<Scalar> matrix() const {
    MatrixX<Scalar> m(rank(), ambient_);
    for (Eigen::Index k = 0; k < rank(); ++k) m.row(k) = rows_[static_cast<std::size_t>(k)];
    return m;
  }

  static bool isZero(const RowVectorX<Scalar>& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k)
      if (v(k) != 0) return false;
    return true;
  }

 private:
  Eigen::Index ambient_;
  std::vector<RowVectorX<Scalar>> rows_;
  std::vector<Eigen::Index> pivots_;
};

/// Canonical RREF of the row space of m (zero rows dropped).
template <class Scalar>
MatrixX<Scalar> reducedRowEchelon(const MatrixX<Scalar>& m) {
  EchelonBuilder<Scalar> builder(m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) builder.insert(m.row(r));
  return builder.matrix();
}

template <class Scalar>
Eigen::Index rank(const MatrixX<Scalar>& m) {
  EchelonBuilder<Scalar> builder(m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) builder.insert(m.row(r));
  return builder.rank();
}

/// Basis (as rows) of {x : m x = 0}, read off the free variables of the RREF.
template <class Scalar>
MatrixX<Scalar> kernelRows(const MatrixX<Scalar>& m) {
  const MatrixX<Scalar> r = reducedRowEchelon(m);
  const Eigen::Index n = m.cols();
  std::vector<Eigen::Index> pivots;
  std::vector<bool> isPivot(static_cast<std::size_t>(n), false);
  for (Eigen::Index k = 0; k < r.rows(); ++k) {
    Eigen::Index p = 0;
    while (r(k, p) == 0) ++p;
    pivots.push_back(p);
    isPivot[static_cast<std::size_t>(p)] = true;
  }
  MatrixX<Scalar> kernel(n - r.rows(), n);
  kernel.setZero();
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (isPivot[static_cast<std::size_t>(free)]) continue;
    kernel(out, free) = 1;
    for (Eigen::Index k = 0; k < r.rows(); ++k) kernel(out, pivots[static_cast<std::size_t>(k)]) = -r(k, free);
    ++out;
  }
  return kernel;
}

/// A linear subspace of Scalar^n held as its canonical RREF basis. Equal
/// subspaces compare equal entry for entry.
template <class Scalar>
class Subspace {
 public:
  Subspace() : Subspace(0) {}
  explicit Subspace(Eigen::Index ambient) : ambient_(ambient), basis_(0, ambient) {}

  /// Row space of `rows`.
  static Subspace span(const MatrixX<Scalar>& rows) {
    Subspace s(rows.cols());
    s.basis_ = reducedRowEchelon(rows);
    return s;
  }
  static Subspace span(const MatrixX<Scalar>& rows, Eigen::Index ambient) {
    detail::requireSameAmbient(rows.cols(), ambient, "span");
    return span(rows);
  }
  static Subspace zero(Eigen::Index ambient) { return Subspace(ambient); }
  static Subspace full(Eigen::Index ambient) {
    Subspace s(ambient);
    s.basis_ = MatrixX<Scalar>::Identity(ambient, ambient);
    return s;
  }
  static Subspace line(const RowVectorX<Scalar>& v) { return span(MatrixX<Scalar>(v)); }

  Eigen::Index ambientDim() const { return ambient_; }
  Eigen::Index dim() const { return basis_.rows(); }
  bool isZero() const { return dim() == 0; }
  bool isFull() const { return dim() == ambient_; }
  const MatrixX<Scalar>& basis() const { return basis_; }

  bool contains(const RowVectorX<Scalar>& v) const {
    detail::requireSameAmbient(v.size(), ambient_, "contains");
    return echelon().inSpan(v);
  }
  bool contains(const Subspace& other) const {
    detail::requireSameAmbient(other.ambient_, ambient_, "contains");
    auto e = echelon();
    for (Eigen::Index r = 0; r < other.dim(); ++r)
      if (!e.inSpan(other.basis_.row(r))) return false;
    return true;
  }

  EchelonBuilder<Scalar> echelon() const {
    EchelonBuilder<Scalar> e(ambient_);
    for (Eigen::Index r = 0; r < dim(); ++r) e.insert(basis_.row(r));
    return e;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  /// Strict weak order on canonical bases, for use as a map key.
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (Eigen::Index r = 0; r < a.dim(); ++r)
      for (Eigen::Index c = 0; c < a.ambient_; ++c)
        if (a.basis_(r, c) != b.basis_(r, c)) return a.basis_(r, c) < b.basis_(r, c);
    return false;
  }

 private:
  Eigen::Index ambient_;
  MatrixX<Scalar> basis_;
};

using QSubspace = Subspace<Rational>;

template <class Scalar>
Subspace<Scalar> sum(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  detail::requireSameAmbient(a.ambientDim(), b.ambientDim(), "sum");
  MatrixX<Scalar> stacked(a.dim() + b.dim(), a.ambientDim());
  stacked << a.basis(), b.basis();
  return Subspace<Scalar>::span(stacked);
}

/// Covectors vanishing on a, identified with Scalar^n via the standard pairing.
template <class Scalar>
Subspace<Scalar> annihilator(const Subspace<Scalar>& a) {
  if (a.isZero()) return Subspace<Scalar>::full(a.ambientDim());
  return Subspace<Scalar>::span(kernelRows(a.basis()), a.ambientDim());
}

/// a ∩ b as the common kernel of both annihilators.
template <class Scalar>
Subspace<Scalar> intersect(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  detail::requireSameAmbient(a.ambientDim(), b.ambientDim(), "intersect");
  const Eigen::Index n = a.ambientDim();
  const MatrixX<Scalar> annA = annihilator(a).basis();
  const MatrixX<Scalar> annB = annihilator(b).basis();
  if (annA.rows() + annB.rows() == 0) return Subspace<Scalar>::full(n);
  MatrixX<Scalar> conditions(annA.rows() + annB.rows(), n);
  conditions << annA, annB;
  return Subspace<Scalar>::span(kernelRows(conditions), n);
}

/// A complement C of inner in outer (inner ⊕ C = outer). Deterministic: walks
/// the canonical basis of outer and keeps each row independent of what has
/// been collected so far.
template <class Scalar>
Subspace<Scalar> complementIn(const Subspace<Scalar>& inner, const Subspace<Scalar>& outer) {
  detail::requireSameAmbient(inner.ambientDim(), outer.ambientDim(), "complement");
  if (!outer.contains(inner)) throw PreconditionError("complement: inner subspace is not contained in outer");
  auto collected = inner.echelon();
  MatrixX<Scalar> chosen(outer.dim() - inner.dim(), outer.ambientDim());
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < outer.dim() && k < chosen.rows(); ++r)
    if (collected.insert(outer.basis().row(r))) chosen.row(k++) = outer.basis().row(r);
  return Subspace<Scalar>::span(chosen, outer.ambientDim());
}

/// φ(a) for φ acting on column vectors (φ has a.ambientDim() columns).
template <class Scalar>
Subspace<Scalar> image(const MatrixX<Scalar>& map, const Subspace<Scalar>& a) {
  detail::requireSameAmbient(map.cols(), a.ambientDim(), "image");
  if (a.isZero()) return Subspace<Scalar>::zero(map.rows());
  return Subspace<Scalar>::span(MatrixX<Scalar>(a.basis() * map.transpose()), map.rows());
}

/// Kronecker product of row vectors: index i*|w| + j carries v_i w_j.
template <class Scalar>
RowVectorX<Scalar> kron(const RowVectorX<Scalar>& v, const RowVectorX<Scalar>& w) {
  RowVectorX<Scalar> out(v.size() * w.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    for (Eigen::Index j = 0; j < w.size(); ++j) out(i * w.size() + j) = v(i) * w(j);
  return out;
}

template <class Scalar>
Subspace<Scalar> tensorProduct(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  const Eigen::Index n = a.ambientDim() * b.ambientDim();
  MatrixX<Scalar> rows(a.dim() * b.dim(), n);
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    for (Eigen::Index j = 0; j < b.dim(); ++j)
      rows.row(i * b.dim() + j) = kron<Scalar>(a.basis().row(i), b.basis().row(j));
  return Subspace<Scalar>::span(rows, n);
}

/// a ⊕ b inside Scalar^(n+m), a on the leading coordinates.
template <class Scalar>
Subspace<Scalar> directSum(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  const Eigen::Index n = a.ambientDim() + b.ambientDim();
  MatrixX<Scalar> rows = MatrixX<Scalar>::Zero(a.dim() + b.dim(), n);
  rows.topLeftCorner(a.dim(), a.ambientDim()) = a.basis();
  rows.bottomRightCorner(b.dim(), b.ambientDim()) = b.basis();
  return Subspace<Scalar>::span(rows, n);
}

/// Determinant by exact elimination; requires a square matrix.
template <class Scalar>
Scalar determinant(MatrixX<Scalar> m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  Scalar det = 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      const Scalar f = m(r, c) / m(c, c);
      m.row(r) -= f * m.row(c);
    }
  }
  return det;
}

/// Exact inverse via Gauss-Jordan; throws PreconditionError when singular.
template <class Scalar>
MatrixX<Scalar> inverse(const MatrixX<Scalar>& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  MatrixX<Scalar> aug(n, 2 * n);
  aug << m, MatrixX<Scalar>::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && aug(p, c) == 0) ++p;
    if (p == n) throw PreconditionError("inverse of a singular matrix");
    if (p != c) aug.row(p).swap(aug.row(c));
    aug.row(c) /= Scalar(aug(c, c));
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || aug(r, c) == 0) continue;
      const Scalar f = aug(r, c);
      aug.row(r) -= f * aug.row(c);
    }
  }
  return aug.rightCols(n);
}

}  // namespace toricpb
