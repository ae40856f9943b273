#include "toricpb/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toricpb {

namespace {

QMatrix rowsToRational(const std::vector<IntVector>& rows, int ambient) {
  QMatrix m(static_cast<Eigen::Index>(rows.size()), ambient);
  for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = toRational(rows[r]).transpose();
  return m;
}

IntMatrix rowsToMatrix(const std::vector<IntVector>& rows, int ambient) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), ambient);
  for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return m;
}

// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void forEachSubset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool isFace(const Cone& face, const Cone& cone) {
  std::vector<IntVector> active;
  for (const auto& u : cone.facetNormals()) {
    bool vanishes = std::all_of(face.generators().begin(), face.generators().end(),
                                [&](const IntVector& g) { return dot(u, g) == 0; });
    if (vanishes) active.push_back(u);
  }
  for (const auto& g : cone.generators()) {
    bool onFace = std::all_of(active.begin(), active.end(), [&](const IntVector& u) { return dot(u, g) == 0; });
    if (onFace && !face.contains(g)) return false;
  }
  return true;
}

namespace {

std::string vecText(const IntVector& v) {
  std::string s = "(";
  for (Eigen::Index k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v(k));
  return s + ")";
}

}  // namespace

void Fan::checkShape() const {
  if (rank < 0) throw InputError("fan rank must be non-negative");
  for (std::size_t r = 0; r < rays.size(); ++r)
    if (rays[r].size() != rank)
      throw InputError("ray " + std::to_string(r) + " has length " + std::to_string(rays[r].size()) +
                       ", expected " + std::to_string(rank));
  for (std::size_t c = 0; c < maximalCones.size(); ++c) {
    std::set<int> seen;
    for (int idx : maximalCones[c]) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= rays.size())
        throw InputError("maximal cone " + std::to_string(c) + " refers to missing ray " + std::to_string(idx));
      if (!seen.insert(idx).second)
        throw InputError("maximal cone " + std::to_string(c) + " lists ray " + std::to_string(idx) + " twice");
    }
  }
}

bool operator==(const Fan& a, const Fan& b) {
  return a.rank == b.rank && a.rays == b.rays && a.maximalCones == b.maximalCones;
}

InequalityDescription inequalitiesOf(int ambient, const std::vector<IntVector>& generators) {
  InequalityDescription out;
  if (generators.empty()) {
    out.dim = 0;
    out.perp = IntMatrix::Identity(ambient, ambient);
    return out;
  }
  const IntMatrix pairing = rowsToMatrix(generators, ambient);
  const ColumnReduction cr = columnReduce(pairing);
  out.dim = static_cast<int>(cr.rank);
  out.perp = cr.kernelBasis().transpose();
  if (out.dim == 0) return out;

  const QMatrix gens = rowsToRational(generators, ambient);
  QMatrix perpRows(out.perp.rows(), ambient);
  for (Eigen::Index r = 0; r < out.perp.rows(); ++r) perpRows.row(r) = toRational(out.perp.row(r).transpose()).transpose();
  const QSubspace perpSpace = QSubspace::span(perpRows, ambient);

  std::set<std::vector<bool>> seenZeroSets;
  forEachSubset(generators.size(), static_cast<std::size_t>(out.dim - 1), [&](const std::vector<std::size_t>& subset) {
    QMatrix chosen(static_cast<Eigen::Index>(subset.size()), ambient);
    for (std::size_t k = 0; k < subset.size(); ++k) chosen.row(static_cast<Eigen::Index>(k)) = gens.row(static_cast<Eigen::Index>(subset[k]));
    if (rank(chosen) != out.dim - 1) return;
    const QSubspace vanishing =
        subset.empty() ? QSubspace::full(ambient) : QSubspace::span(kernelRows(chosen), ambient);
    const QSubspace normalLine = complementIn(perpSpace, vanishing);
    if (normalLine.dim() != 1) return;
    IntVector normal = primitiveMultiple(normalLine.basis().row(0).transpose());
    bool anyPositive = false, anyNegative = false;
    std::vector<bool> zeroSet(generators.size());
    for (std::size_t g = 0; g < generators.size(); ++g) {
      const Int p = dot(normal, generators[g]);
      anyPositive |= p > 0;
      anyNegative |= p < 0;
      zeroSet[g] = p == 0;
    }
    if (anyPositive && anyNegative) return;
    if (anyNegative) normal = -normal;
    if (seenZeroSets.insert(zeroSet).second) out.facetNormals.push_back(normal);
  });
  std::sort(out.facetNormals.begin(), out.facetNormals.end(), LexLess{});
  return out;
}

Cone Cone::generatedBy(int ambient, std::vector<IntVector> generators) {
  Cone c;
  c.ambient_ = ambient;
  for (const auto& g : generators)
    if (g.size() != ambient) throw DimensionMismatch("cone generator has wrong length");
  c.generators_ = std::move(generators);
  c.rayIndices_.assign(c.generators_.size(), -1);
  const InequalityDescription ineq = inequalitiesOf(ambient, c.generators_);
  c.dim_ = ineq.dim;
  c.facetNormals_ = ineq.facetNormals;
  c.pairing_ = columnReduce(rowsToMatrix(c.generators_, ambient));
  return c;
}

Cone Cone::ofRays(const Fan& fan, const std::vector<int>& rayIndices) {
  std::vector<IntVector> gens;
  for (int idx : rayIndices) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= fan.rays.size())
      throw InputError("cone refers to missing ray " + std::to_string(idx));
    gens.push_back(fan.rays[static_cast<std::size_t>(idx)]);
  }
  Cone c = generatedBy(fan.rank, std::move(gens));
  c.rayIndices_ = rayIndices;
  return c;
}

Cone Cone::maximal(const Fan& fan, std::size_t coneIndex) {
  if (coneIndex >= fan.maximalCones.size())
    throw InputError("no maximal cone with index " + std::to_string(coneIndex));
  return ofRays(fan, fan.maximalCones[coneIndex]);
}

IntMatrix Cone::perpBasis() const {
  if (generators_.empty()) return IntMatrix::Identity(ambient_, ambient_);
  return pairing_.kernelBasis().transpose();
}

bool Cone::contains(const IntVector& point) const {
  const IntMatrix perp = perpBasis();
  for (Eigen::Index r = 0; r < perp.rows(); ++r)
    if (dot(perp.row(r).transpose(), point) != 0) return false;
  return std::all_of(facetNormals_.begin(), facetNormals_.end(), [&](const IntVector& u) { return dot(u, point) >= 0; });
}

bool Cone::isPointed() const {
  const IntMatrix perp = perpBasis();
  std::vector<IntVector> rows(facetNormals_);
  for (Eigen::Index r = 0; r < perp.rows(); ++r) rows.push_back(perp.row(r).transpose());
  return rank(rowsToRational(rows, ambient_)) == ambient_;
}

bool Cone::isExtreme(const IntVector& generator) const {
  if (generator.isZero()) return false;
  const IntMatrix perp = perpBasis();
  std::vector<IntVector> active;
  for (Eigen::Index r = 0; r < perp.rows(); ++r) active.push_back(perp.row(r).transpose());
  for (const auto& u : facetNormals_)
    if (dot(u, generator) == 0) active.push_back(u);
  return rank(rowsToRational(active, ambient_)) == ambient_ - 1;
}

std::vector<IntVector> Cone::extremeRays() const {
  std::vector<IntVector> out;
  for (const auto& g : generators_) {
    if (!isExtreme(g)) continue;
    IntVector p = g / gcdOf(g);
    if (std::none_of(out.begin(), out.end(), [&](const IntVector& q) { return q == p; })) out.push_back(p);
  }
  return out;
}

IntVector Cone::classOf(const IntVector& u) const {
  if (generators_.empty()) return IntVector(0);
  return pairing_.quotientCoordinates(u);
}

IntVector Cone::classRepresentative(const IntVector& u) const {
  if (generators_.empty()) return IntVector::Zero(ambient_);
  return pairing_.unimodular.leftCols(pairing_.rank) * classOf(u);
}

bool Cone::sameClass(const IntVector& u, const IntVector& v) const { return classOf(u) == classOf(v); }

std::optional<IntVector> Cone::characterWithPairings(const IntVector& pairings) const {
  if (static_cast<std::size_t>(pairings.size()) != generators_.size())
    throw DimensionMismatch("one pairing per generator expected");
  if (generators_.empty()) return IntVector(IntVector::Zero(ambient_));
  return pairing_.solve(pairings);
}

bool Cone::sameAs(const Cone& other) const {
  auto sorted = [](std::vector<IntVector> v) {
    std::sort(v.begin(), v.end(), LexLess{});
    return v;
  };
  return ambient_ == other.ambient_ && sorted(extremeRays()) == sorted(other.extremeRays());
}

Cone coneIntersection(const Cone& a, const Cone& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("cones live in different lattices");
  const int n = a.ambient();
  std::vector<IntVector> dualGenerators;
  for (const Cone* c : {&a, &b}) {
    for (const auto& u : c->facetNormals()) dualGenerators.push_back(u);
    const IntMatrix perp = c->perpBasis();
    for (Eigen::Index r = 0; r < perp.rows(); ++r) {
      dualGenerators.push_back(perp.row(r).transpose());
      dualGenerators.push_back(-perp.row(r).transpose());
    }
  }
  const InequalityDescription dual = inequalitiesOf(n, dualGenerators);
  std::vector<IntVector> rays = dual.facetNormals;
  for (Eigen::Index r = 0; r < dual.perp.rows(); ++r) {
    rays.push_back(dual.perp.row(r).transpose());
    rays.push_back(-dual.perp.row(r).transpose());
  }
  return Cone::generatedBy(n, std::move(rays));
}

Cone coneIntersection(const Fan& fan, const Cone& a, const Cone& b) {
  const Cone raw = coneIntersection(a, b);
  std::vector<int> indices;
  bool allFanRays = true;
  for (const auto& g : raw.generators()) {
    auto it = std::find(fan.rays.begin(), fan.rays.end(), g);
    if (it == fan.rays.end()) {
      allFanRays = false;
      break;
    }
    indices.push_back(static_cast<int>(it - fan.rays.begin()));
  }
  if (!allFanRays) return raw;
  std::sort(indices.begin(), indices.end());
  return Cone::ofRays(fan, indices);
}

bool dualMembership(const IntVector& u, const Cone& c) {
  return std::all_of(c.generators().begin(), c.generators().end(), [&](const IntVector& g) { return dot(u, g) >= 0; });
}

PerpAndQuotient perpAndQuotient(const Cone& c) {
  PerpAndQuotient out;
  out.perpBasis = c.perpBasis();
  out.quotientProjection = IntMatrix(c.dim(), c.ambient());
  for (int k = 0; k < c.ambient(); ++k) {
    IntVector e = IntVector::Zero(c.ambient());
    e(k) = 1;
    out.quotientProjection.col(k) = c.classOf(e);
  }
  return out;
}

FanReport validateFan(const Fan& fan) {
  fan.checkShape();
  FanReport report;
  auto violate = [&](std::string kind, std::string message) {
    report.valid = false;
    report.violations.push_back({std::move(kind), std::move(message)});
  };

  bool geometryUsable = true;
  std::map<IntVector, std::size_t, LexLess> seen;
  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    const IntVector& v = fan.rays[r];
    if (v.isZero()) {
      violate("zero_ray", "ray " + std::to_string(r) + " is zero");
      geometryUsable = false;
      continue;
    }
    if (!isPrimitive(v)) violate("non_primitive", "ray " + std::to_string(r) + " " + vecText(v) + " is not primitive");
    auto [it, inserted] = seen.emplace(v, r);
    if (!inserted) {
      violate("duplicate_ray", "rays " + std::to_string(it->second) + " and " + std::to_string(r) + " coincide");
      geometryUsable = false;
    }
  }
  std::vector<bool> used(fan.rays.size(), false);
  for (const auto& cone : fan.maximalCones)
    for (int idx : cone) used[static_cast<std::size_t>(idx)] = true;
  for (std::size_t r = 0; r < fan.rays.size(); ++r)
    if (!used[r]) violate("unused_ray", "ray " + std::to_string(r) + " lies in no maximal cone");
  if (!geometryUsable) {
    // Cone geometry on zero or duplicate rays is meaningless.
    report.maximalConeDims.assign(fan.maximalCones.size(), -1);
    report.allTopDimensional = false;
    return report;
  }

  std::vector<Cone> cones;
  std::vector<bool> pointed;
  for (std::size_t c = 0; c < fan.maximalCones.size(); ++c) {
    cones.push_back(Cone::maximal(fan, c));
    const Cone& cone = cones.back();
    report.maximalConeDims.push_back(cone.dim());
    if (cone.dim() != fan.rank) report.allTopDimensional = false;
    pointed.push_back(cone.isPointed());
    if (!pointed.back()) {
      violate("not_strongly_convex", "maximal cone " + std::to_string(c) + " contains a line");
      continue;
    }
    for (std::size_t k = 0; k < cone.generators().size(); ++k)
      if (!cone.isExtreme(cone.generators()[k]))
        violate("non_extreme_ray", "ray " + std::to_string(fan.maximalCones[c][k]) + " is not an extreme ray of maximal cone " +
                                       std::to_string(c));
  }
  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = a + 1; b < cones.size(); ++b) {
      if (!pointed[a] || !pointed[b]) continue;
      const Cone meet = coneIntersection(cones[a], cones[b]);
      if (!isFace(meet, cones[a]) || !isFace(meet, cones[b]))
        violate("fan_condition", "maximal cones " + std::to_string(a) + " and " + std::to_string(b) +
                                     " meet in a cone that is not a common face");
    }
  return report;
}

}  // namespace toricpb
