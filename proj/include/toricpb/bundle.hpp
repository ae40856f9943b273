#pragma once

#include "toricpb/fan.hpp"
#include "toricpb/klyachko.hpp"
#include "toricpb/linalg.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace toricpb {

enum class GroupKind { GL, SL, DiagTorus };

/// Short name used in files and reports: "GL", "SL", "DT".
const char* groupKindName(GroupKind kind);
/// Inverse of groupKindName; throws InputError on anything else.
GroupKind parseGroupKind(const std::string& name);

struct GroupSpec {
  GroupKind kind = GroupKind::GL;
  Eigen::Index n = 0;

  bool contains(const QMatrix& g) const;
  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.kind == b.kind && a.n == b.n; }
};

/// ρ_σ(t) = frame · diag(χ^{u_1}(t), …, χ^{u_n}(t)) · frame^{-1}.
struct ConeFrame {
  int cone = -1;
  QMatrix frame;
  std::vector<IntVector> characters;

  friend bool operator==(const ConeFrame& a, const ConeFrame& b) {
    return a.cone == b.cone && a.frame == b.frame && a.characters == b.characters;
  }
};

struct CocharBundleData {
  GroupSpec group;
  std::shared_ptr<const Fan> fan;
  std::vector<ConeFrame> cones;

  /// The entry for a maximal cone; throws InputError when absent.
  const ConeFrame& at(std::size_t cone) const;
  friend bool operator==(const CocharBundleData& a, const CocharBundleData& b);
};

struct BundleViolation {
  std::string kind;  // unknown_cone, duplicate_cone, missing_cone, frame_shape, character_shape,
                     // singular_frame, not_in_group, character_sum
  int cone = -1;
  std::string message;
};

struct BundleReport {
  bool valid = true;
  std::vector<BundleViolation> violations;
};

BundleReport validateBundle(const CocharBundleData& data);

/// n×n matrix of Laurent polynomials in the characters of T.
class LaurentMatrix {
 public:
  using Polynomial = std::map<IntVector, Rational, LexLess>;

  LaurentMatrix() = default;
  LaurentMatrix(Eigen::Index n, int rank);
  static LaurentMatrix identity(Eigen::Index n, int rank);

  Eigen::Index size() const { return n_; }
  int rank() const { return rank_; }
  const Polynomial& entry(Eigen::Index i, Eigen::Index j) const { return entries_[index(i, j)]; }
  /// Adds c·χ^u to entry (i, j), dropping the term if it cancels.
  void addTerm(Eigen::Index i, Eigen::Index j, const IntVector& u, const Rational& c);

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.n_ == b.n_ && a.rank_ == b.rank_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const LaurentMatrix& a, const LaurentMatrix& b) { return !(a == b); }

 private:
  std::size_t index(Eigen::Index i, Eigen::Index j) const { return static_cast<std::size_t>(i * n_ + j); }

  Eigen::Index n_ = 0;
  int rank_ = 0;
  std::vector<Polynomial> entries_;
};

/// ρ_σ ρ_τ^{-1} expanded in characters.
LaurentMatrix transition(const CocharBundleData& data, std::size_t sigma, std::size_t tau);

struct GluingFailure {
  std::array<std::size_t, 2> pair{};   // the unordered pair, smaller index first
  std::array<std::size_t, 2> from{};   // the transition ρ_from[0] ρ_from[1]^{-1} that fails
  std::array<Eigen::Index, 2> entry{};
  IntVector exponent;
  IntVector ray;  // generator of σ ∩ τ pairing negatively with the exponent
  Int pairing = 0;
};

struct GluingReport {
  bool glues = true;
  std::optional<GluingFailure> failure;
};

/// Every exponent of both transitions of every pair of maximal cones must be
/// regular on the overlap chart.
GluingReport checkGluing(const CocharBundleData& data);

struct CocycleReport {
  bool holds = true;
  std::optional<std::array<std::size_t, 3>> triple;
};

CocycleReport cocycleCheck(const CocharBundleData& data);

struct RayInconsistency {
  std::size_t coneA = 0, coneB = 0;
  int ray = -1;
  Int index = 0;
  QSubspace fromA, fromB;
};

struct AssociatedData {
  std::optional<FiltrationData> data;
  std::optional<RayInconsistency> inconsistency;
  /// Decompositions read off the frames, one per maximal cone.
  std::vector<ConeDecomposition> certificates;
};

/// V^ρ(i) = span{g_σ e_k : u_k^σ(ρ) >= i} for any maximal σ containing ρ;
/// rays in no maximal cone carry the trivial filtration.
AssociatedData associatedKlyachko(const CocharBundleData& data);

/// GL(n) data whose frame on each maximal cone is a basis through the
/// certificate's pieces, each vector carrying its piece's character.
/// Needs one certificate per maximal cone, in cone order.
CocharBundleData bundleFromDecompositions(const FiltrationData& data, const std::vector<ConeDecomposition>& certificates);

/// The GL(1) data det ∘ ρ_σ.
CocharBundleData determinantData(const CocharBundleData& data);

}  // namespace toricpb
