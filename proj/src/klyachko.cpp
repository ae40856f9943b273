#include "toricpb/klyachko.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace toricpb {

namespace {

std::vector<Jump> canonicalJumps(std::vector<Jump> jumps) {
  std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.index < b.index; });
  std::vector<Jump> out;
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    if (jumps[k].space.isZero()) continue;
    if (k + 1 < jumps.size() && jumps[k + 1].space == jumps[k].space) continue;
    out.push_back(std::move(jumps[k]));
  }
  return out;
}

void requireSameFan(const FiltrationData& a, const FiltrationData& b, const char* what) {
  if (a.fanPtr() != b.fanPtr() && !(a.fan() == b.fan()))
    throw InputError(std::string(what) + ": filtration data live on different fans");
}

std::vector<Int> unionOfIndices(std::initializer_list<std::vector<Int>> lists) {
  std::set<Int> all;
  for (const auto& l : lists) all.insert(l.begin(), l.end());
  return {all.begin(), all.end()};
}

// Jump indices and their neighbours: every distinct value of a
// piecewise-constant chain is seen at one of these.
std::vector<Int> probeIndices(const std::vector<Int>& jumps) {
  std::set<Int> out;
  for (Int j : jumps) {
    out.insert(j - 1);
    out.insert(j);
    out.insert(j + 1);
  }
  return {out.begin(), out.end()};
}

std::string label(int ray, Int i) { return "V^" + std::to_string(ray) + "(" + std::to_string(i) + ")"; }

struct ResolvedCone {
  Cone cone;
  std::vector<int> rays;
  int maximalIndex = -1;
};

ResolvedCone resolveCone(const Fan& fan, const std::vector<int>& coneRays) {
  std::set<int> unique(coneRays.begin(), coneRays.end());
  if (unique.size() != coneRays.size()) throw InputError("cone lists a ray twice");
  ResolvedCone rc{Cone::ofRays(fan, coneRays), coneRays, -1};
  for (std::size_t m = 0; m < fan.maximalCones.size(); ++m) {
    const auto& mc = fan.maximalCones[m];
    std::set<int> maxRays(mc.begin(), mc.end());
    if (!std::includes(maxRays.begin(), maxRays.end(), unique.begin(), unique.end())) continue;
    if (maxRays == unique) rc.maximalIndex = static_cast<int>(m);
    if (rc.maximalIndex >= 0 || isFace(rc.cone, Cone::maximal(fan, m))) return rc;
  }
  throw InputError("cone is not a cone of the fan");
}

// Sublattice of subspaces generated under + and ∩, with index tables for
// join and meet. Stops once more than `cap` elements appear.
struct LatticeClosure {
  std::vector<QSubspace> elements;
  std::vector<std::vector<std::size_t>> join, meet;
  bool complete = false;
};

LatticeClosure closeLattice(const std::vector<QSubspace>& generators, std::size_t cap) {
  LatticeClosure lc;
  std::map<QSubspace, std::size_t> index;
  auto intern = [&](const QSubspace& s) {
    auto [it, inserted] = index.emplace(s, lc.elements.size());
    if (inserted) lc.elements.push_back(s);
    return it->second;
  };
  for (const auto& g : generators) intern(g);
  for (std::size_t i = 0; i < lc.elements.size(); ++i) {
    if (lc.elements.size() > cap) return lc;
    lc.join.resize(lc.elements.size());
    lc.meet.resize(lc.elements.size());
    for (std::size_t j = 0; j <= i; ++j) {
      const std::size_t jn = intern(sum(lc.elements[i], lc.elements[j]));
      const std::size_t mt = intern(intersect(lc.elements[i], lc.elements[j]));
      lc.join[i].push_back(jn);
      lc.meet[i].push_back(mt);
    }
  }
  lc.complete = lc.elements.size() <= cap;
  return lc;
}

std::size_t tableAt(const std::vector<std::vector<std::size_t>>& t, std::size_t a, std::size_t b) {
  return a >= b ? t[a][b] : t[b][a];
}

std::vector<QSubspace> coneGenerators(const FiltrationData& data, const std::vector<int>& rays,
                                      std::vector<std::string>* labels) {
  std::vector<QSubspace> gens;
  std::set<QSubspace> seen;
  for (int ray : rays)
    for (const auto& j : data.jumps(ray)) {
      if (j.space.isFull()) continue;
      if (seen.insert(j.space).second) {
        gens.push_back(j.space);
        if (labels) labels->push_back(label(ray, j.index));
      }
    }
  return gens;
}

std::optional<Refutation> distributivityWitness(const std::vector<QSubspace>& elems,
                                                const std::vector<std::string>& labels) {
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      for (std::size_t c = b + 1; c < elems.size(); ++c) {
        if (a == b || a == c) continue;
        const QSubspace lhs = intersect(elems[a], sum(elems[b], elems[c]));
        const QSubspace rhs = sum(intersect(elems[a], elems[b]), intersect(elems[a], elems[c]));
        if (lhs != rhs) {
          Refutation r;
          r.kind = "distributivity";
          r.triple = {elems[a], elems[b], elems[c]};
          r.tripleLabels = {labels[a], labels[b], labels[c]};
          r.message = "A∩(B+C) has dimension " + std::to_string(lhs.dim()) + " but (A∩B)+(A∩C) has dimension " +
                      std::to_string(rhs.dim());
          return r;
        }
      }
  return std::nullopt;
}

std::optional<Refutation> closureDistributivityWitness(const LatticeClosure& lc) {
  const std::size_t n = lc.elements.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const std::size_t lhs = tableAt(lc.meet, a, tableAt(lc.join, b, c));
        const std::size_t rhs = tableAt(lc.join, tableAt(lc.meet, a, b), tableAt(lc.meet, a, c));
        if (lhs != rhs) {
          Refutation r;
          r.kind = "distributivity";
          r.triple = {lc.elements[a], lc.elements[b], lc.elements[c]};
          r.tripleLabels = {"closure[" + std::to_string(a) + "]", "closure[" + std::to_string(b) + "]",
                            "closure[" + std::to_string(c) + "]"};
          r.message = "distributive law fails in the generated lattice";
          return r;
        }
      }
  return std::nullopt;
}

// Iterates over the grid of jump tuples in decreasing lexicographic order (a
// linear extension of componentwise dominance, largest first).
template <class Visit>
void forEachTupleDescending(const std::vector<std::vector<Int>>& levels, Visit&& visit) {
  const std::size_t k = levels.size();
  for (const auto& l : levels)
    if (l.empty()) return;
  std::vector<std::size_t> pos(k);
  for (std::size_t r = 0; r < k; ++r) pos[r] = levels[r].size() - 1;
  while (true) {
    visit(pos);
    std::size_t r = k;
    while (r > 0 && pos[r - 1] == 0) {
      pos[r - 1] = levels[r - 1].size() - 1;
      --r;
    }
    if (r == 0) return;
    --pos[r - 1];
  }
}

ConeDecomposition decompositionFromTuples(const ResolvedCone& rc, std::map<IntVector, QSubspace, LexLess> pieces,
                                          const std::map<IntVector, IntVector, LexLess>& characters) {
  ConeDecomposition d;
  d.coneIndex = rc.maximalIndex;
  d.rays = rc.rays;
  for (auto& [tuple, space] : pieces) {
    GradedPiece p;
    p.pairings = tuple;
    p.character = rc.cone.classRepresentative(characters.at(tuple));
    p.space = std::move(space);
    d.pieces.push_back(std::move(p));
  }
  return d;
}

}  // namespace

const char* verdictName(Verdict v) {
  switch (v) {
    case Verdict::Compatible: return "compatible";
    case Verdict::Incompatible: return "incompatible";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

FiltrationReport validate(const RawFiltration& raw) {
  FiltrationReport report;
  auto violate = [&](std::string kind, int ray, std::string message) {
    report.valid = false;
    report.violations.push_back({std::move(kind), ray, std::move(message)});
  };
  if (!raw.fan) throw InputError("filtration data has no fan");
  if (raw.dim < 0) throw InputError("negative dimension");
  const auto rayCount = static_cast<int>(raw.fan->rays.size());
  for (const auto& [ray, list] : raw.filtrations) {
    if (ray < 0 || ray >= rayCount) {
      violate("unknown_ray", ray, "ray " + std::to_string(ray) + " is not a ray of the fan");
      continue;
    }
    bool shapesOk = true;
    for (const auto& j : list)
      if (j.space.ambientDim() != raw.dim) {
        violate("ambient_mismatch", ray,
                "ray " + std::to_string(ray) + " index " + std::to_string(j.index) + " lives in dimension " +
                    std::to_string(j.space.ambientDim()) + ", expected " + std::to_string(raw.dim));
        shapesOk = false;
      }
    if (!shapesOk) continue;
    std::vector<Jump> sorted = list;
    std::sort(sorted.begin(), sorted.end(), [](const Jump& a, const Jump& b) { return a.index < b.index; });
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k)
      if (sorted[k].index == sorted[k + 1].index)
        violate("duplicate_index", ray, "ray " + std::to_string(ray) + " lists index " + std::to_string(sorted[k].index) + " twice");
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k)
      if (sorted[k].index != sorted[k + 1].index && !sorted[k].space.contains(sorted[k + 1].space))
        violate("not_nested", ray,
                "ray " + std::to_string(ray) + ": V(" + std::to_string(sorted[k].index) + ") does not contain V(" +
                    std::to_string(sorted[k + 1].index) + ")");
    if (raw.dim > 0 && (sorted.empty() || !sorted.front().space.isFull()))
      violate("not_full", ray, "ray " + std::to_string(ray) + ": the filtration never reaches the whole space");
  }
  return report;
}

FiltrationData FiltrationData::fromRaw(const RawFiltration& raw) {
  const FiltrationReport report = validate(raw);
  if (!report.valid) throw InputError("invalid filtration data: " + report.violations.front().message);
  FiltrationData d;
  d.fan_ = raw.fan;
  d.dim_ = raw.dim;
  d.jumps_.resize(raw.fan->rays.size());
  for (std::size_t ray = 0; ray < d.jumps_.size(); ++ray) {
    auto it = raw.filtrations.find(static_cast<int>(ray));
    if (it == raw.filtrations.end()) {
      if (raw.dim > 0) d.jumps_[ray] = {Jump{0, QSubspace::full(raw.dim)}};
    } else {
      d.jumps_[ray] = canonicalJumps(it->second);
    }
  }
  return d;
}

FiltrationData FiltrationData::trivial(std::shared_ptr<const Fan> fan, Eigen::Index dim) {
  RawFiltration raw{std::move(fan), dim, {}};
  return fromRaw(raw);
}

FiltrationData FiltrationData::line(std::shared_ptr<const Fan> fan, const std::vector<Int>& jumps) {
  if (jumps.size() != fan->rays.size()) throw DimensionMismatch("one jump per ray expected");
  RawFiltration raw{std::move(fan), 1, {}};
  for (std::size_t ray = 0; ray < jumps.size(); ++ray)
    raw.filtrations[static_cast<int>(ray)] = {Jump{jumps[ray], QSubspace::full(1)}};
  return fromRaw(raw);
}

const std::vector<Jump>& FiltrationData::jumps(int ray) const {
  if (ray < 0 || static_cast<std::size_t>(ray) >= jumps_.size()) throw InputError("no ray " + std::to_string(ray));
  return jumps_[static_cast<std::size_t>(ray)];
}

std::vector<Int> FiltrationData::jumpIndices(int ray) const {
  std::vector<Int> out;
  for (const auto& j : jumps(ray)) out.push_back(j.index);
  return out;
}

QSubspace FiltrationData::at(int ray, Int i) const {
  const auto& list = jumps(ray);
  auto it = std::lower_bound(list.begin(), list.end(), i, [](const Jump& j, Int v) { return j.index < v; });
  if (it == list.end()) return QSubspace::zero(dim_);
  return it->space;
}

RawFiltration FiltrationData::toRaw() const {
  RawFiltration raw{fan_, dim_, {}};
  for (std::size_t ray = 0; ray < jumps_.size(); ++ray) raw.filtrations[static_cast<int>(ray)] = jumps_[ray];
  return raw;
}

bool operator==(const FiltrationData& a, const FiltrationData& b) {
  return a.dim_ == b.dim_ && (a.fan_ == b.fan_ || *a.fan_ == *b.fan_) && a.jumps_ == b.jumps_;
}

QSubspace reconstruct(const ConeDecomposition& decomposition, Eigen::Index ambient, std::size_t rayPosition, Int i) {
  QSubspace out = QSubspace::zero(ambient);
  for (const auto& p : decomposition.pieces)
    if (p.pairings(static_cast<Eigen::Index>(rayPosition)) >= i) out = sum(out, p.space);
  return out;
}

bool verifyDecomposition(const FiltrationData& data, const ConeDecomposition& d) {
  const Fan& fan = data.fan();
  const Cone cone = Cone::ofRays(fan, d.rays);
  Eigen::Index total = 0;
  QSubspace span = QSubspace::zero(data.dim());
  std::set<IntVector, LexLess> classes;
  for (const auto& p : d.pieces) {
    if (p.space.ambientDim() != data.dim() || p.space.isZero()) return false;
    if (p.pairings.size() != static_cast<Eigen::Index>(d.rays.size())) return false;
    if (p.character.size() != fan.rank) return false;
    for (std::size_t k = 0; k < d.rays.size(); ++k)
      if (dot(p.character, fan.rays[static_cast<std::size_t>(d.rays[k])]) != p.pairings(static_cast<Eigen::Index>(k)))
        return false;
    if (!classes.insert(cone.classOf(p.character)).second) return false;
    total += p.space.dim();
    span = sum(span, p.space);
  }
  if (total != data.dim() || span.dim() != data.dim()) return false;
  for (std::size_t k = 0; k < d.rays.size(); ++k) {
    const int ray = d.rays[k];
    for (Int i : probeIndices(data.jumpIndices(ray)))
      if (reconstruct(d, data.dim(), k, i) != data.at(ray, i)) return false;
  }
  return true;
}

std::optional<ExhaustiveResult> exhaustiveCompatibility(const FiltrationData& data, const std::vector<int>& coneRays,
                                                        std::size_t closureCap) {
  const ResolvedCone rc = resolveCone(data.fan(), coneRays);
  const Eigen::Index r = data.dim();
  ExhaustiveResult result;
  if (r == 0) {
    result.compatible = true;
    return result;
  }
  std::vector<QSubspace> gens = coneGenerators(data, coneRays, nullptr);
  std::vector<QSubspace> seeds = gens;
  seeds.push_back(QSubspace::zero(r));
  seeds.push_back(QSubspace::full(r));
  // A compatible family generates a sublattice of the 2^r coordinate spans
  // of an adapted basis, so a larger closure settles the question.
  const std::size_t booleanBound = r < 63 ? (std::size_t{1} << r) : closureCap + 1;
  const LatticeClosure lc = closeLattice(seeds, std::min(closureCap, booleanBound));
  if (!lc.complete) {
    if (booleanBound > closureCap) return std::nullopt;
    result.compatible = false;
    return result;
  }

  std::vector<RowVectorX<Rational>> candidates;
  std::set<QSubspace> seenLines;
  for (const auto& e : lc.elements)
    for (Eigen::Index row = 0; row < e.dim(); ++row)
      if (seenLines.insert(QSubspace::line(e.basis().row(row))).second) candidates.push_back(e.basis().row(row));

  // membership[c][g]: candidate c lies in generator g.
  std::vector<std::vector<bool>> membership(candidates.size(), std::vector<bool>(gens.size()));
  for (std::size_t c = 0; c < candidates.size(); ++c)
    for (std::size_t g = 0; g < gens.size(); ++g) membership[c][g] = gens[g].contains(candidates[c]);

  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, const EchelonBuilder<Rational>&)> search =
      [&](std::size_t start, const EchelonBuilder<Rational>& echelon) -> bool {
    if (static_cast<Eigen::Index>(chosen.size()) == r) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Eigen::Index inside = 0;
        for (std::size_t c : chosen) inside += membership[c][g] ? 1 : 0;
        if (inside != gens[g].dim()) return false;
      }
      return true;
    }
    for (std::size_t c = start; c < candidates.size(); ++c) {
      EchelonBuilder<Rational> next = echelon;
      if (!next.insert(candidates[c])) continue;
      chosen.push_back(c);
      if (search(c + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(0, EchelonBuilder<Rational>(r))) {
    result.compatible = false;
    return result;
  }
  result.compatible = true;
  for (std::size_t c : chosen) {
    const auto& b = candidates[c];
    IntVector tuple(static_cast<Eigen::Index>(coneRays.size()));
    for (std::size_t k = 0; k < coneRays.size(); ++k) {
      Int best = 0;
      for (const auto& j : data.jumps(coneRays[k]))
        if (j.space.contains(b)) best = j.index;
      tuple(static_cast<Eigen::Index>(k)) = best;
    }
    if (!rc.cone.characterWithPairings(tuple)) result.compatible = false;
    result.basis.push_back(b);
    result.tuples.push_back(tuple);
  }
  return result;
}

CompatibilityResult coneCompatibility(const FiltrationData& data, const std::vector<int>& coneRays,
                                      const CompatibilityOptions& options) {
  const ResolvedCone rc = resolveCone(data.fan(), coneRays);
  const Eigen::Index r = data.dim();
  const std::size_t k = coneRays.size();
  CompatibilityResult result;

  std::vector<std::vector<Int>> levels(k);
  for (std::size_t p = 0; p < k; ++p) levels[p] = data.jumpIndices(coneRays[p]);

  // Greedy graded pieces S_t = complement of Σ_{t'⪈t} W(t') in W(t).
  std::map<std::vector<std::size_t>, QSubspace> wCache;
  std::function<QSubspace(const std::vector<std::size_t>&)> w = [&](const std::vector<std::size_t>& pos) {
    for (std::size_t p = 0; p < k; ++p)
      if (pos[p] >= levels[p].size()) return QSubspace::zero(r);
    auto it = wCache.find(pos);
    if (it != wCache.end()) return it->second;
    QSubspace out = QSubspace::full(r);
    for (std::size_t p = 0; p < k; ++p) out = intersect(out, data.jumps(coneRays[p])[pos[p]].space);
    wCache.emplace(pos, out);
    return out;
  };
  std::map<IntVector, QSubspace, LexLess> pieces;
  std::map<IntVector, IntVector, LexLess> characters;
  std::optional<IntVector> nonIntegral;
  Eigen::Index total = 0;
  QSubspace span = QSubspace::zero(r);
  auto visit = [&](const std::vector<std::size_t>& pos) {
    const QSubspace whole = w(pos);
    if (whole.isZero()) return;
    QSubspace above = QSubspace::zero(r);
    for (std::size_t p = 0; p < k; ++p) {
      auto up = pos;
      ++up[p];
      above = sum(above, w(up));
    }
    const QSubspace piece = complementIn(intersect(above, whole), whole);
    if (piece.isZero()) return;
    IntVector tuple(static_cast<Eigen::Index>(k));
    for (std::size_t p = 0; p < k; ++p) tuple(static_cast<Eigen::Index>(p)) = levels[p][pos[p]];
    total += piece.dim();
    span = sum(span, piece);
    auto character = rc.cone.characterWithPairings(tuple);
    if (!character) {
      if (!nonIntegral) nonIntegral = tuple;
    } else {
      characters.emplace(tuple, *character);
    }
    pieces.emplace(tuple, piece);
  };
  if (r > 0) {
    if (k == 0) {
      // Zero cone: a single class carrying everything.
      pieces.emplace(IntVector(0), QSubspace::full(r));
      characters.emplace(IntVector(0), IntVector::Zero(data.fan().rank));
      total = r;
      span = QSubspace::full(r);
    } else {
      forEachTupleDescending(levels, visit);
    }
  }

  if (total == r && span.dim() == r && !nonIntegral) {
    ConeDecomposition d = decompositionFromTuples(rc, pieces, characters);
    if (verifyDecomposition(data, d)) {
      result.verdict = Verdict::Compatible;
      result.method = "greedy";
      result.certificate = std::move(d);
      return result;
    }
  }

  if (options.searchRefutations) {
    std::vector<std::string> labels;
    const std::vector<QSubspace> gens = coneGenerators(data, coneRays, &labels);
    std::optional<Refutation> witness = distributivityWitness(gens, labels);
    if (!witness) {
      std::vector<QSubspace> seeds = gens;
      seeds.push_back(QSubspace::zero(r));
      seeds.push_back(QSubspace::full(r));
      const std::size_t booleanBound = r < 63 ? (std::size_t{1} << r) : options.closureCap + 1;
      const LatticeClosure lc = closeLattice(seeds, std::min(options.closureCap, booleanBound));
      if (lc.complete) {
        witness = closureDistributivityWitness(lc);
      } else if (booleanBound <= options.closureCap) {
        Refutation ref;
        ref.kind = "lattice_size";
        ref.triple = gens;
        ref.tripleLabels = labels;
        ref.message = "the subspaces generate a lattice with more than " + std::to_string(booleanBound) +
                      " elements, more than any family split by a basis";
        witness = std::move(ref);
      }
    }
    if (!witness && nonIntegral) {
      Refutation ref;
      ref.kind = "integrality";
      ref.tuple = *nonIntegral;
      ref.message = "a nonzero graded piece has a jump tuple realized by no integral character";
      witness = std::move(ref);
    }
    if (witness) {
      result.verdict = Verdict::Incompatible;
      result.method = "refutation";
      result.refutation = std::move(witness);
      return result;
    }
  }

  if (r <= options.exhaustiveDimCap) {
    const auto oracle = exhaustiveCompatibility(data, coneRays, options.closureCap);
    if (oracle && oracle->compatible) {
      std::map<IntVector, QSubspace, LexLess> found;
      std::map<IntVector, IntVector, LexLess> chars;
      for (std::size_t b = 0; b < oracle->basis.size(); ++b) {
        const IntVector& t = oracle->tuples[b];
        auto [it, inserted] = found.emplace(t, QSubspace::line(oracle->basis[b]));
        if (!inserted) it->second = sum(it->second, QSubspace::line(oracle->basis[b]));
        chars.emplace(t, *rc.cone.characterWithPairings(t));
      }
      ConeDecomposition d = decompositionFromTuples(rc, std::move(found), chars);
      if (verifyDecomposition(data, d)) {
        result.verdict = Verdict::Compatible;
        result.method = "exhaustive";
        result.certificate = std::move(d);
        return result;
      }
    } else if (oracle) {
      Refutation ref;
      ref.kind = "exhaustive";
      ref.message = oracle->basis.empty() ? "no basis from the generated lattice is adapted to every filtration"
                                          : "adapted bases exist but their jump tuples admit no integral characters";
      result.verdict = Verdict::Incompatible;
      result.method = "exhaustive";
      result.refutation = std::move(ref);
      return result;
    }
  }
  result.verdict = Verdict::Inconclusive;
  result.method = "inconclusive";
  return result;
}

CompatibilityResult coneCompatibility(const FiltrationData& data, std::size_t maximalCone,
                                      const CompatibilityOptions& options) {
  if (maximalCone >= data.fan().maximalCones.size())
    throw InputError("no maximal cone with index " + std::to_string(maximalCone));
  return coneCompatibility(data, data.fan().maximalCones[maximalCone], options);
}

GlobalCompatibility globalCompatibility(const FiltrationData& data, const CompatibilityOptions& options) {
  GlobalCompatibility g;
  for (std::size_t m = 0; m < data.fan().maximalCones.size(); ++m) {
    g.cones.push_back(coneCompatibility(data, m, options));
    const Verdict v = g.cones.back().verdict;
    if (v == Verdict::Incompatible && g.verdict != Verdict::Incompatible) {
      g.verdict = Verdict::Incompatible;
      g.failingCone = static_cast<int>(m);
    } else if (v == Verdict::Inconclusive && g.verdict == Verdict::Compatible) {
      g.verdict = Verdict::Inconclusive;
      g.failingCone = static_cast<int>(m);
    }
  }
  return g;
}

FiltrationData tensor(const FiltrationData& a, const FiltrationData& b) {
  requireSameFan(a, b, "tensor");
  RawFiltration raw{a.fanPtr(), a.dim() * b.dim(), {}};
  for (std::size_t ray = 0; ray < a.rayCount(); ++ray) {
    const int rho = static_cast<int>(ray);
    const auto& ja = a.jumps(rho);
    const auto& jb = b.jumps(rho);
    std::set<Int> candidates;
    for (const auto& p : ja)
      for (const auto& q : jb) candidates.insert(p.index + q.index);
    std::vector<Jump> list;
    for (Int j : candidates) {
      QSubspace space = QSubspace::zero(raw.dim);
      for (const auto& p : ja)
        for (const auto& q : jb)
          if (p.index + q.index >= j) space = sum(space, tensorProduct(p.space, q.space));
      list.push_back({j, std::move(space)});
    }
    raw.filtrations[rho] = std::move(list);
  }
  return FiltrationData::fromRaw(raw);
}

FiltrationData dual(const FiltrationData& a) {
  RawFiltration raw{a.fanPtr(), a.dim(), {}};
  for (std::size_t ray = 0; ray < a.rayCount(); ++ray) {
    const int rho = static_cast<int>(ray);
    std::vector<Jump> list;
    for (const auto& j : a.jumps(rho)) list.push_back({-j.index, annihilator(a.at(rho, j.index + 1))});
    raw.filtrations[rho] = std::move(list);
  }
  return FiltrationData::fromRaw(raw);
}

FiltrationData directSum(const FiltrationData& a, const FiltrationData& b) {
  requireSameFan(a, b, "direct sum");
  RawFiltration raw{a.fanPtr(), a.dim() + b.dim(), {}};
  for (std::size_t ray = 0; ray < a.rayCount(); ++ray) {
    const int rho = static_cast<int>(ray);
    std::vector<Jump> list;
    for (Int i : unionOfIndices({a.jumpIndices(rho), b.jumpIndices(rho)}))
      list.push_back({i, toricpb::directSum(a.at(rho, i), b.at(rho, i))});
    raw.filtrations[rho] = std::move(list);
  }
  return FiltrationData::fromRaw(raw);
}

std::optional<MorphismViolation> morphismViolation(const QMatrix& phi, const FiltrationData& a,
                                                  const FiltrationData& b) {
  requireSameFan(a, b, "morphism");
  if (phi.rows() != b.dim() || phi.cols() != a.dim())
    throw DimensionMismatch("morphism matrix must be " + std::to_string(b.dim()) + "x" + std::to_string(a.dim()));
  for (std::size_t ray = 0; ray < a.rayCount(); ++ray) {
    const int rho = static_cast<int>(ray);
    for (Int i : probeIndices(unionOfIndices({a.jumpIndices(rho), b.jumpIndices(rho)})))
      if (!b.at(rho, i).contains(image(phi, a.at(rho, i)))) return MorphismViolation{rho, i};
  }
  return std::nullopt;
}

bool checkMorphism(const QMatrix& phi, const FiltrationData& a, const FiltrationData& b) {
  return !morphismViolation(phi, a, b);
}

ConeDecomposition tensorDecomposition(const Fan& fan, const ConeDecomposition& a, const ConeDecomposition& b) {
  if (a.rays != b.rays) throw InputError("certificates belong to different cones");
  const Cone cone = Cone::ofRays(fan, a.rays);
  std::map<IntVector, GradedPiece, LexLess> merged;
  for (const auto& pa : a.pieces)
    for (const auto& pb : b.pieces) {
      const IntVector t = pa.pairings + pb.pairings;
      const QSubspace space = tensorProduct(pa.space, pb.space);
      auto it = merged.find(t);
      if (it == merged.end()) {
        merged.emplace(t, GradedPiece{cone.classRepresentative(IntVector(pa.character + pb.character)), t, space});
      } else {
        it->second.space = sum(it->second.space, space);
      }
    }
  ConeDecomposition out{a.coneIndex, a.rays, {}};
  for (auto& [t, piece] : merged) out.pieces.push_back(std::move(piece));
  return out;
}

ConeDecomposition directSumDecomposition(const Fan& fan, const ConeDecomposition& a, const ConeDecomposition& b,
                                         Eigen::Index dimA, Eigen::Index dimB) {
  if (a.rays != b.rays) throw InputError("certificates belong to different cones");
  const Cone cone = Cone::ofRays(fan, a.rays);
  std::map<IntVector, GradedPiece, LexLess> merged;
  auto add = [&](const GradedPiece& p, const QSubspace& embedded) {
    auto it = merged.find(p.pairings);
    if (it == merged.end())
      merged.emplace(p.pairings, GradedPiece{cone.classRepresentative(p.character), p.pairings, embedded});
    else
      it->second.space = sum(it->second.space, embedded);
  };
  for (const auto& p : a.pieces) add(p, toricpb::directSum(p.space, QSubspace::zero(dimB)));
  for (const auto& p : b.pieces) add(p, toricpb::directSum(QSubspace::zero(dimA), p.space));
  ConeDecomposition out{a.coneIndex, a.rays, {}};
  for (auto& [t, piece] : merged) out.pieces.push_back(std::move(piece));
  return out;
}

}  // namespace toricpb
