#pragma once

#include "toricpb/lattice.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace toricpb {

/// A fan Σ in N ≅ Z^rank: primitive ray generators plus the maximal cones as
/// sets of ray indices. Ray order is significant; filtrations and bundle data
/// refer to rays and cones by index.
struct Fan {
  int rank = 0;
  std::vector<IntVector> rays;
  std::vector<std::vector<int>> maximalCones;

  /// Throws InputError on out-of-range indices or wrongly sized rays.
  void checkShape() const;

  friend bool operator==(const Fan& a, const Fan& b);
};

/// A rational polyhedral cone held in both descriptions: generators (primitive
/// vectors of N) and supporting inequalities (primitive covectors of M), plus
/// a lattice basis of σ^⊥ and the projection M → M_σ.
class Cone {
 public:
  /// Builds the cone generated by `generators` in Z^ambient. Generators that are
  /// not extreme are kept as given; use extremeRays() for the minimal set.
  static Cone generatedBy(int ambient, std::vector<IntVector> generators);
  /// Cone spanned by the given fan rays, remembering their indices.
  static Cone ofRays(const Fan& fan, const std::vector<int>& rayIndices);
  static Cone maximal(const Fan& fan, std::size_t coneIndex);

  int ambient() const { return ambient_; }
  int dim() const { return dim_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  /// Fan ray index of each generator, or -1 when the generator is not a fan ray.
  const std::vector<int>& rayIndices() const { return rayIndices_; }
  const std::vector<IntVector>& facetNormals() const { return facetNormals_; }
  /// Rows form a lattice basis of σ^⊥ ∩ M.
  IntMatrix perpBasis() const;

  bool contains(const IntVector& point) const;
  bool isPointed() const;
  /// Generators that span a one-dimensional face.
  std::vector<IntVector> extremeRays() const;
  bool isExtreme(const IntVector& generator) const;

  /// Deterministic coordinates of u's class in M_σ = M/σ^⊥.
  IntVector classOf(const IntVector& u) const;
  /// Canonical integral representative of u's class.
  IntVector classRepresentative(const IntVector& u) const;
  bool sameClass(const IntVector& u, const IntVector& v) const;
  /// Integral u ∈ M with u(generator_k) = pairings(k) for every generator, if any.
  std::optional<IntVector> characterWithPairings(const IntVector& pairings) const;

  /// Same cone: equal generator sets up to order.
  bool sameAs(const Cone& other) const;

 private:
  int ambient_ = 0;
  int dim_ = 0;
  std::vector<IntVector> generators_;
  std::vector<int> rayIndices_;
  std::vector<IntVector> facetNormals_;
  ColumnReduction pairing_;
};

struct FanViolation {
  std::string kind;
  std::string message;
};

struct FanReport {
  bool valid = true;
  bool allTopDimensional = true;
  std::vector<FanViolation> violations;
  std::vector<int> maximalConeDims;
};

FanReport validateFan(const Fan& fan);

/// a ∩ b by double description: both inequality systems are combined and the
/// extreme rays of the result recovered. Generators are primitive.
Cone coneIntersection(const Cone& a, const Cone& b);
/// Same, with generators matched back to `fan`'s ray indices where possible.
Cone coneIntersection(const Fan& fan, const Cone& a, const Cone& b);

/// True when `face` is a face of `cone` (cut out by the facets of `cone`
/// that vanish on it).
bool isFace(const Cone& face, const Cone& cone);

/// u ∈ c^∨: u pairs non-negatively with every generator.
bool dualMembership(const IntVector& u, const Cone& c);

struct PerpAndQuotient {
  IntMatrix perpBasis;           // rows: lattice basis of c^⊥
  IntMatrix quotientProjection;  // rows: M → M_c ≅ Z^dim(c)
};
PerpAndQuotient perpAndQuotient(const Cone& c);

/// Supporting data of the cone generated by a finite set of vectors: a
/// lattice basis of the orthogonal complement and the primitive facet
/// normals. Exposed for tests; enumerates (dim−1)-subsets.
struct InequalityDescription {
  int dim = 0;
  IntMatrix perp;
  std::vector<IntVector> facetNormals;
};
InequalityDescription inequalitiesOf(int ambient, const std::vector<IntVector>& generators);

}  // namespace toricpb
