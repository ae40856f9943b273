#pragma once

#include "toricpb/bundle.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace toricpb {

/// Exponents of the n² generators x'_{ij}, stored row-major (index i*n + j).
using Monomial = IntVector;

std::string monomialText(const Monomial& m, Eigen::Index n);

enum class WeightConvention {
  Row,     // weight(x'_{ij}) = −u_i
  Column,  // weight(x'_{ij}) = −u_j
};

/// Polynomial functions of degree ≤ D on n×n matrices in the σ-frame
/// coordinates x' = g_σ^{-1} x g_σ, graded by the character of T acting by
/// left translation through ρ_σ.
class TruncatedAlgebra {
 public:
  Eigen::Index n() const { return n_; }
  int degree() const { return degree_; }
  std::size_t coneIndex() const { return cone_; }
  const Cone& cone() const { return coneData_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  const std::vector<IntVector>& weights() const { return weights_; }

  std::optional<std::size_t> indexOf(const Monomial& m) const;
  /// Basis index of the product, or nullopt when it leaves the truncation.
  std::optional<std::size_t> product(std::size_t a, std::size_t b) const;
  /// Basis indices spanning A^ρ(i) for the cone ray at position rayPosition.
  std::vector<std::size_t> filtration(std::size_t rayPosition, Int i) const;
  /// Monomials per weight class in M_σ.
  std::map<IntVector, std::vector<std::size_t>, LexLess> pieces() const;

  /// Replaces one stored weight; for building deliberately broken gradings.
  void overrideWeight(std::size_t basisIndex, const IntVector& weight);

  friend TruncatedAlgebra buildTruncation(const CocharBundleData&, std::size_t, int, WeightConvention);

 private:
  Eigen::Index n_ = 0;
  int degree_ = 0;
  std::size_t cone_ = 0;
  Cone coneData_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t, LexLess> index_;
  std::vector<IntVector> weights_;
};

/// Throws InputError unless the group is GL and degree >= 1.
TruncatedAlgebra buildTruncation(const CocharBundleData& data, std::size_t cone, int degree = 3,
                                 WeightConvention convention = WeightConvention::Row);

struct AlgebraWitness {
  std::vector<Monomial> monomials;  // the offending pair (or monomial and left factor)
  int ray = -1;                     // fan ray index for multiplicativity failures
  std::string message;
};

struct AlgebraCheck {
  bool passed = true;
  std::optional<AlgebraWitness> witness;
};

/// m(A^ρ(i) ⊗ A^ρ(j)) ⊆ A^ρ(i+j) for every ray of the cone, within the truncation.
AlgebraCheck checkMultiplicative(const TruncatedAlgebra& alg);
/// Products of graded pieces land in the piece of the summed class.
AlgebraCheck checkCompatibleAlgebra(const TruncatedAlgebra& alg);
/// Every left tensor factor of Δ(f) has the weight of f.
AlgebraCheck checkCoactionCommutes(const TruncatedAlgebra& alg);

}  // namespace toricpb
