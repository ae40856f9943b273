#pragma once

#include "toricpb/fan.hpp"
#include "toricpb/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace toricpb {

/// One step of a decreasing filtration: V(j) = space for prev.index < j <= index.
struct Jump {
  Int index = 0;
  QSubspace space;

  friend bool operator==(const Jump& a, const Jump& b) { return a.index == b.index && a.space == b.space; }
};

/// Filtration data exactly as read from input, before any checks.
struct RawFiltration {
  std::shared_ptr<const Fan> fan;
  Eigen::Index dim = 0;
  std::map<int, std::vector<Jump>> filtrations;  // keyed by ray index
};

struct FiltrationViolation {
  std::string kind;  // ambient_mismatch, unknown_ray, duplicate_index, not_nested, not_full
  int ray = -1;
  std::string message;
};

struct FiltrationReport {
  bool valid = true;
  std::vector<FiltrationViolation> violations;
};

FiltrationReport validate(const RawFiltration& raw);

/// A Σ-filtered vector space Q^dim: one full decreasing Z-filtration per ray
/// of the fan. Always valid and stored canonically: for each ray the list of
/// indices i with V(i) ≠ V(i+1), ascending, carrying V(i). V(i) is the space
/// of the first listed index ≥ i, and 0 past the last one.
class FiltrationData {
 public:
  /// Throws InputError when validate(raw) reports a violation. Rays absent
  /// from raw.filtrations carry the trivial filtration.
  static FiltrationData fromRaw(const RawFiltration& raw);
  /// The trivial filtration: Q^dim for i <= 0 and 0 for i > 0 on every ray.
  static FiltrationData trivial(std::shared_ptr<const Fan> fan, Eigen::Index dim);
  /// Rank-one data with V^ρ(i) = Q exactly when i <= jumps[ρ].
  static FiltrationData line(std::shared_ptr<const Fan> fan, const std::vector<Int>& jumps);

  const Fan& fan() const { return *fan_; }
  const std::shared_ptr<const Fan>& fanPtr() const { return fan_; }
  Eigen::Index dim() const { return dim_; }
  std::size_t rayCount() const { return jumps_.size(); }

  const std::vector<Jump>& jumps(int ray) const;
  std::vector<Int> jumpIndices(int ray) const;
  QSubspace at(int ray, Int i) const;

  RawFiltration toRaw() const;

  friend bool operator==(const FiltrationData& a, const FiltrationData& b);
  friend bool operator!=(const FiltrationData& a, const FiltrationData& b) { return !(a == b); }

 private:
  std::shared_ptr<const Fan> fan_;
  Eigen::Index dim_ = 0;
  std::vector<std::vector<Jump>> jumps_;
};

/// One summand F^σ_[u] of a compatible decomposition. `pairings` holds u(ρ)
/// for the rays of the cone in order; `character` is the canonical integral
/// representative of [u] in M_σ.
struct GradedPiece {
  IntVector character;
  IntVector pairings;
  QSubspace space;
};

/// Certificate of compatibility on one cone: F = ⊕ F^σ_[u] reconstructing
/// every ray filtration of the cone.
struct ConeDecomposition {
  int coneIndex = -1;     // maximal cone index, -1 for other cones
  std::vector<int> rays;  // fan ray indices of the cone's generators
  std::vector<GradedPiece> pieces;
};

/// ⊕_{u(ρ) >= i} F^σ_[u] for the ray at position `rayPosition` of the cone.
QSubspace reconstruct(const ConeDecomposition& decomposition, Eigen::Index ambient, std::size_t rayPosition, Int i);

/// Re-checks a certificate from scratch against the data: independence and
/// spanning, distinct classes, integral characters with the stated pairings,
/// and the reconstruction equation at every jump index and its neighbours.
bool verifyDecomposition(const FiltrationData& data, const ConeDecomposition& decomposition);

enum class Verdict { Compatible, Incompatible, Inconclusive };
const char* verdictName(Verdict v);

struct Refutation {
  std::string kind;  // distributivity, lattice_size, integrality, exhaustive
  std::vector<QSubspace> triple;  // lattice_size: all generating subspaces
  std::vector<std::string> tripleLabels;
  IntVector tuple;  // integrality: jump tuple with no integral character
  std::string message;
};

struct CompatibilityResult {
  Verdict verdict = Verdict::Inconclusive;
  std::string method;  // greedy, exhaustive, refutation
  std::optional<ConeDecomposition> certificate;
  std::optional<Refutation> refutation;
};

struct CompatibilityOptions {
  Eigen::Index exhaustiveDimCap = 4;
  std::size_t closureCap = 256;
  /// Look for distributivity and integrality witnesses when greedy fails.
  /// Turning this off exposes the exhaustive and inconclusive paths.
  bool searchRefutations = true;
};

/// Three-valued compatibility of `data` on the cone spanned by the given fan
/// rays. The rays must span a face of some maximal cone.
CompatibilityResult coneCompatibility(const FiltrationData& data, const std::vector<int>& coneRays,
                                      const CompatibilityOptions& options = {});
CompatibilityResult coneCompatibility(const FiltrationData& data, std::size_t maximalCone,
                                      const CompatibilityOptions& options = {});

struct GlobalCompatibility {
  Verdict verdict = Verdict::Compatible;
  std::vector<CompatibilityResult> cones;  // one per maximal cone
  int failingCone = -1;                    // first incompatible (or inconclusive) maximal cone
};

GlobalCompatibility globalCompatibility(const FiltrationData& data, const CompatibilityOptions& options = {});

/// Independent decision procedure used as an oracle: searches bases built
/// from the lattice generated by the cone's filtration subspaces for one
/// adapted to every filtration. A closure with more than 2^dim elements
/// proves incompatibility; nullopt only when the cap is below that bound and
/// is exceeded.
struct ExhaustiveResult {
  bool compatible = false;
  std::vector<RowVectorX<Rational>> basis;  // adapted basis when one exists
  std::vector<IntVector> tuples;            // its jump tuples
};
std::optional<ExhaustiveResult> exhaustiveCompatibility(const FiltrationData& data, const std::vector<int>& coneRays,
                                                        std::size_t closureCap = 256);

/// (V⊗W)^ρ(j) = Σ_{p+q=j} V^ρ(p)⊗W^ρ(q); basis e_i⊗f_j in lexicographic order.
FiltrationData tensor(const FiltrationData& a, const FiltrationData& b);
/// (V*)^ρ(i) = Ann(V^ρ(1−i)).
FiltrationData dual(const FiltrationData& a);
/// (V⊕W)^ρ(i) = V^ρ(i) ⊕ W^ρ(i), V on the leading coordinates.
FiltrationData directSum(const FiltrationData& a, const FiltrationData& b);
struct MorphismViolation {
  int ray = -1;
  Int index = 0;
};

/// The first (ray, i) with φ(V^ρ(i)) ⊄ W^ρ(i); φ is dim(b) × dim(a).
std::optional<MorphismViolation> morphismViolation(const QMatrix& phi, const FiltrationData& a, const FiltrationData& b);
bool checkMorphism(const QMatrix& phi, const FiltrationData& a, const FiltrationData& b);

/// Certificate for a ⊗ b on a cone from certificates of a and b on the same
/// cone: pieces ⊕_{[u1]+[u2]=[u]} F_[u1] ⊗ G_[u2].
ConeDecomposition tensorDecomposition(const Fan& fan, const ConeDecomposition& a, const ConeDecomposition& b);
/// Certificate for a ⊕ b from certificates of a and b on the same cone.
ConeDecomposition directSumDecomposition(const Fan& fan, const ConeDecomposition& a, const ConeDecomposition& b,
                                         Eigen::Index dimA, Eigen::Index dimB);

}  // namespace toricpb
