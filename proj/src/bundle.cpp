#include "toricpb/bundle.hpp"

#include "toricpb/errors.hpp"

#include <set>

namespace toricpb {

namespace {

bool isDiagonal(const QMatrix& g) {
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      if (i != j && g(i, j) != 0) return false;
  return true;
}

void requireValid(const CocharBundleData& data) {
  const BundleReport report = validateBundle(data);
  if (!report.valid) throw InputError("invalid bundle data: " + report.violations.front().message);
}

QSubspace chainAt(const ConeFrame& c, const IntVector& ray, Int i) {
  const Eigen::Index n = c.frame.cols();
  QMatrix rows(0, n);
  for (std::size_t k = 0; k < c.characters.size(); ++k)
    if (dot(c.characters[k], ray) >= i) {
      rows.conservativeResize(rows.rows() + 1, Eigen::NoChange);
      rows.row(rows.rows() - 1) = c.frame.col(static_cast<Eigen::Index>(k)).transpose();
    }
  return QSubspace::span(rows, n);
}

std::string coneName(std::size_t k) { return "cone " + std::to_string(k); }

}  // namespace

const char* groupKindName(GroupKind kind) {
  switch (kind) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::DiagTorus: return "DT";
  }
  return "?";
}

GroupKind parseGroupKind(const std::string& name) {
  if (name == "GL") return GroupKind::GL;
  if (name == "SL") return GroupKind::SL;
  if (name == "DT") return GroupKind::DiagTorus;
  throw InputError("unknown group kind '" + name + "'");
}

bool GroupSpec::contains(const QMatrix& g) const {
  if (g.rows() != n || g.cols() != n) return false;
  switch (kind) {
    case GroupKind::GL: return determinant(g) != 0;
    case GroupKind::SL: return determinant(g) == 1;
    case GroupKind::DiagTorus:
      if (!isDiagonal(g)) return false;
      for (Eigen::Index i = 0; i < n; ++i)
        if (g(i, i) == 0) return false;
      return true;
  }
  return false;
}

const ConeFrame& CocharBundleData::at(std::size_t cone) const {
  for (const auto& c : cones)
    if (c.cone == static_cast<int>(cone)) return c;
  throw InputError("no bundle data for " + coneName(cone));
}

bool operator==(const CocharBundleData& a, const CocharBundleData& b) {
  return a.group == b.group && (a.fan == b.fan || (a.fan && b.fan && *a.fan == *b.fan)) && a.cones == b.cones;
}

BundleReport validateBundle(const CocharBundleData& data) {
  BundleReport report;
  auto violate = [&](std::string kind, int cone, std::string message) {
    report.valid = false;
    report.violations.push_back({std::move(kind), cone, std::move(message)});
  };
  if (!data.fan) throw InputError("bundle data has no fan");
  if (data.group.n < 1) throw InputError("group size must be positive");
  const Eigen::Index n = data.group.n;
  const std::size_t coneCount = data.fan->maximalCones.size();
  std::set<int> seen;
  for (const auto& c : data.cones) {
    const std::string where = "cone " + std::to_string(c.cone);
    if (c.cone < 0 || static_cast<std::size_t>(c.cone) >= coneCount) {
      violate("unknown_cone", c.cone, where + " is not a maximal cone of the fan");
      continue;
    }
    if (!seen.insert(c.cone).second) violate("duplicate_cone", c.cone, where + " appears twice");
    if (c.frame.rows() != n || c.frame.cols() != n) {
      violate("frame_shape", c.cone, where + ": frame must be " + std::to_string(n) + "x" + std::to_string(n));
      continue;
    }
    bool shapes = c.characters.size() == static_cast<std::size_t>(n);
    for (const auto& u : c.characters) shapes = shapes && u.size() == data.fan->rank;
    if (!shapes) {
      violate("character_shape", c.cone,
              where + ": expected " + std::to_string(n) + " characters of length " + std::to_string(data.fan->rank));
      continue;
    }
    if (determinant(c.frame) == 0) {
      violate("singular_frame", c.cone, where + ": frame is singular");
      continue;
    }
    if (!data.group.contains(c.frame))
      violate("not_in_group", c.cone,
              where + ": frame is not in " + std::string(groupKindName(data.group.kind)) + "(" + std::to_string(n) + ")");
    if (data.group.kind == GroupKind::SL) {
      IntVector total = IntVector::Zero(data.fan->rank);
      for (const auto& u : c.characters) total += u;
      if (!total.isZero()) {
        std::string text;
        for (Eigen::Index k = 0; k < total.size(); ++k) text += (k ? "," : "") + std::to_string(total(k));
        violate("character_sum", c.cone, where + ": character sum (" + text + ") is not zero");
      }
    }
  }
  for (std::size_t k = 0; k < coneCount; ++k)
    if (!seen.count(static_cast<int>(k))) violate("missing_cone", static_cast<int>(k), coneName(k) + " has no data");
  return report;
}

LaurentMatrix::LaurentMatrix(Eigen::Index n, int rank) : n_(n), rank_(rank), entries_(static_cast<std::size_t>(n * n)) {}

LaurentMatrix LaurentMatrix::identity(Eigen::Index n, int rank) {
  LaurentMatrix m(n, rank);
  for (Eigen::Index i = 0; i < n; ++i) m.addTerm(i, i, IntVector::Zero(rank), Rational(1));
  return m;
}

void LaurentMatrix::addTerm(Eigen::Index i, Eigen::Index j, const IntVector& u, const Rational& c) {
  if (c == 0) return;
  Polynomial& p = entries_[index(i, j)];
  auto [it, inserted] = p.emplace(u, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) p.erase(it);
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.n_ != b.n_ || a.rank_ != b.rank_) throw DimensionMismatch("Laurent matrices of different shapes");
  LaurentMatrix out(a.n_, a.rank_);
  for (Eigen::Index i = 0; i < a.n_; ++i)
    for (Eigen::Index k = 0; k < a.n_; ++k)
      for (const auto& [u, c] : a.entry(i, k))
        for (Eigen::Index j = 0; j < a.n_; ++j)
          for (const auto& [v, d] : b.entry(k, j)) out.addTerm(i, j, IntVector(u + v), c * d);
  return out;
}

LaurentMatrix transition(const CocharBundleData& data, std::size_t sigma, std::size_t tau) {
  const ConeFrame& s = data.at(sigma);
  const ConeFrame& t = data.at(tau);
  const Eigen::Index n = data.group.n;
  const QMatrix sInv = inverse(s.frame);
  const QMatrix middle = sInv * t.frame;
  const QMatrix tInv = inverse(t.frame);
  LaurentMatrix out(n, data.fan->rank);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l) {
      if (middle(k, l) == 0) continue;
      const IntVector u = s.characters[static_cast<std::size_t>(k)] - t.characters[static_cast<std::size_t>(l)];
      for (Eigen::Index i = 0; i < n; ++i) {
        if (s.frame(i, k) == 0) continue;
        for (Eigen::Index j = 0; j < n; ++j) out.addTerm(i, j, u, s.frame(i, k) * middle(k, l) * tInv(l, j));
      }
    }
  return out;
}

GluingReport checkGluing(const CocharBundleData& data) {
  requireValid(data);
  const Fan& fan = *data.fan;
  for (std::size_t k = 0; k < fan.maximalCones.size(); ++k)
    if (Cone::maximal(fan, k).dim() != fan.rank)
      throw InputError("gluing check needs top-dimensional maximal cones; " + coneName(k) + " is not");
  GluingReport report;
  for (std::size_t s = 0; s < fan.maximalCones.size(); ++s)
    for (std::size_t t = s + 1; t < fan.maximalCones.size(); ++t) {
      const Cone overlap = coneIntersection(fan, Cone::maximal(fan, s), Cone::maximal(fan, t));
      for (const auto& [a, b] : {std::pair{s, t}, std::pair{t, s}}) {
        const LaurentMatrix m = transition(data, a, b);
        for (Eigen::Index i = 0; i < m.size(); ++i)
          for (Eigen::Index j = 0; j < m.size(); ++j)
            for (const auto& [u, c] : m.entry(i, j))
              for (const auto& g : overlap.generators()) {
                const Int p = dot(u, g);
                if (p >= 0) continue;
                report.glues = false;
                report.failure = GluingFailure{{s, t}, {a, b}, {i, j}, u, g, p};
                return report;
              }
      }
    }
  return report;
}

CocycleReport cocycleCheck(const CocharBundleData& data) {
  requireValid(data);
  const std::size_t m = data.fan->maximalCones.size();
  std::vector<std::vector<LaurentMatrix>> t(m, std::vector<LaurentMatrix>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = transition(data, a, b);
  CocycleReport report;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (t[a][b] * t[b][c] != t[a][c]) {
          report.holds = false;
          report.triple = {a, b, c};
          return report;
        }
  return report;
}

AssociatedData associatedKlyachko(const CocharBundleData& data) {
  requireValid(data);
  const Fan& fan = *data.fan;
  const Eigen::Index n = data.group.n;
  AssociatedData out;
  std::vector<int> owner(fan.rays.size(), -1);
  RawFiltration raw{data.fan, n, {}};
  for (std::size_t s = 0; s < fan.maximalCones.size(); ++s) {
    const ConeFrame& c = data.at(s);
    for (int ray : fan.maximalCones[s]) {
      const IntVector& v = fan.rays[static_cast<std::size_t>(ray)];
      if (owner[static_cast<std::size_t>(ray)] < 0) {
        owner[static_cast<std::size_t>(ray)] = static_cast<int>(s);
        std::set<Int> values;
        for (const auto& u : c.characters) values.insert(dot(u, v));
        std::vector<Jump> jumps;
        for (Int i : values) jumps.push_back({i, chainAt(c, v, i)});
        raw.filtrations[ray] = std::move(jumps);
        continue;
      }
      const auto first = static_cast<std::size_t>(owner[static_cast<std::size_t>(ray)]);
      const ConeFrame& prev = data.at(first);
      std::set<Int> values;
      for (const auto& u : c.characters) values.insert(dot(u, v));
      for (const auto& u : prev.characters) values.insert(dot(u, v));
      for (Int i : values) {
        QSubspace a = chainAt(prev, v, i);
        QSubspace b = chainAt(c, v, i);
        if (a != b) {
          out.inconsistency = RayInconsistency{first, s, ray, i, std::move(a), std::move(b)};
          return out;
        }
      }
    }
  }
  out.data = FiltrationData::fromRaw(raw);
  for (std::size_t s = 0; s < fan.maximalCones.size(); ++s) {
    const ConeFrame& c = data.at(s);
    const Cone cone = Cone::maximal(fan, s);
    ConeDecomposition d;
    d.coneIndex = static_cast<int>(s);
    d.rays = fan.maximalCones[s];
    std::map<IntVector, GradedPiece, LexLess> pieces;
    for (std::size_t k = 0; k < c.characters.size(); ++k) {
      IntVector pairings(static_cast<Eigen::Index>(d.rays.size()));
      for (std::size_t p = 0; p < d.rays.size(); ++p)
        pairings(static_cast<Eigen::Index>(p)) = dot(c.characters[k], fan.rays[static_cast<std::size_t>(d.rays[p])]);
      const QSubspace line = QSubspace::line(c.frame.col(static_cast<Eigen::Index>(k)).transpose());
      auto it = pieces.find(pairings);
      if (it == pieces.end())
        pieces.emplace(pairings, GradedPiece{cone.classRepresentative(c.characters[k]), pairings, line});
      else
        it->second.space = sum(it->second.space, line);
    }
    for (auto& [key, piece] : pieces) d.pieces.push_back(std::move(piece));
    out.certificates.push_back(std::move(d));
  }
  return out;
}

CocharBundleData bundleFromDecompositions(const FiltrationData& data,
                                          const std::vector<ConeDecomposition>& certificates) {
  const Fan& fan = data.fan();
  if (certificates.size() != fan.maximalCones.size()) throw InputError("one certificate per maximal cone expected");
  CocharBundleData out{{GroupKind::GL, data.dim()}, data.fanPtr(), {}};
  for (std::size_t k = 0; k < certificates.size(); ++k) {
    if (certificates[k].rays != fan.maximalCones[k]) throw InputError("certificate " + std::to_string(k) + " is for another cone");
    ConeFrame c{static_cast<int>(k), QMatrix(data.dim(), data.dim()), {}};
    Eigen::Index col = 0;
    for (const auto& piece : certificates[k].pieces)
      for (Eigen::Index r = 0; r < piece.space.dim(); ++r) {
        if (col == data.dim()) throw InputError("certificate pieces exceed the dimension");
        c.frame.col(col++) = piece.space.basis().row(r).transpose();
        c.characters.push_back(piece.character);
      }
    if (col != data.dim()) throw InputError("certificate pieces do not fill the space");
    out.cones.push_back(std::move(c));
  }
  return out;
}

CocharBundleData determinantData(const CocharBundleData& data) {
  if (data.group.kind != GroupKind::GL) throw InputError("determinant data needs a GL bundle");
  requireValid(data);
  CocharBundleData out{{GroupKind::GL, 1}, data.fan, {}};
  for (const auto& c : data.cones) {
    IntVector total = IntVector::Zero(data.fan->rank);
    for (const auto& u : c.characters) total += u;
    QMatrix det(1, 1);
    det(0, 0) = determinant(c.frame);
    out.cones.push_back({c.cone, det, {total}});
  }
  std::sort(out.cones.begin(), out.cones.end(), [](const ConeFrame& a, const ConeFrame& b) { return a.cone < b.cone; });
  return out;
}

}  // namespace toricpb
