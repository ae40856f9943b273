#include "toricpb/reduction.hpp"

#include "toricpb/errors.hpp"

#include <functional>
#include <set>

namespace toricpb {

namespace {

void requireGL(const CocharBundleData& data) {
  if (data.group.kind != GroupKind::GL) throw InputError("reduction checks start from GL(n) data");
}

FiltrationData lineData(const FiltrationData& data, const RowVectorX<Rational>& line) {
  std::vector<Int> jumps;
  for (std::size_t ray = 0; ray < data.rayCount(); ++ray) {
    Int best = 0;
    bool seen = false;
    for (const auto& j : data.jumps(static_cast<int>(ray)))
      if (j.space.contains(line)) {
        best = j.index;
        seen = true;
      }
    jumps.push_back(seen ? best : 0);
  }
  return FiltrationData::line(data.fanPtr(), jumps);
}

}  // namespace

SlReduction checkSlReduction(const CocharBundleData& data) {
  requireGL(data);
  const BundleReport report = validateBundle(data);
  if (!report.valid) throw InputError("invalid bundle data: " + report.violations.front().message);
  SlReduction out;
  CocharBundleData sl{{GroupKind::SL, data.group.n}, data.fan, {}};
  for (std::size_t k = 0; k < data.fan->maximalCones.size(); ++k) {
    const ConeFrame& c = data.at(k);
    IntVector total = IntVector::Zero(data.fan->rank);
    for (const auto& u : c.characters) total += u;
    if (!total.isZero()) {
      out.failingCone = static_cast<int>(k);
      out.characterSum = total;
      return out;
    }
    // Scaling one frame column leaves ρ_σ unchanged.
    ConeFrame scaled = c;
    scaled.frame.col(0) /= determinant(c.frame);
    sl.cones.push_back(std::move(scaled));
  }
  out.reduces = true;
  out.presentation = std::move(sl);
  return out;
}

TorusReduction checkTorusReduction(const CocharBundleData& data) {
  requireGL(data);
  const GluingReport glue = checkGluing(data);
  if (!glue.glues) throw InputError("torus reduction needs data that glues");
  const AssociatedData assoc = associatedKlyachko(data);
  const FiltrationData& f = *assoc.data;
  const Eigen::Index n = f.dim();

  std::vector<QSubspace> subspaces;
  {
    std::set<QSubspace> seen;
    for (std::size_t ray = 0; ray < f.rayCount(); ++ray)
      for (const auto& j : f.jumps(static_cast<int>(ray)))
        if (seen.insert(j.space).second) subspaces.push_back(j.space);
  }
  std::vector<RowVectorX<Rational>> candidates;
  std::set<QSubspace> seenLines;
  auto offer = [&](const QSubspace& s) {
    if (s.dim() == 1 && seenLines.insert(s).second) candidates.push_back(s.basis().row(0));
  };
  for (std::size_t a = 0; a < subspaces.size(); ++a)
    for (std::size_t b = a; b < subspaces.size(); ++b) offer(intersect(subspaces[a], subspaces[b]));
  for (const auto& c : data.cones)
    for (Eigen::Index k = 0; k < n; ++k) offer(QSubspace::line(c.frame.col(k).transpose()));

  TorusReduction out;
  out.candidateCount = candidates.size();
  std::vector<std::vector<bool>> inside(candidates.size(), std::vector<bool>(subspaces.size()));
  for (std::size_t c = 0; c < candidates.size(); ++c)
    for (std::size_t s = 0; s < subspaces.size(); ++s) inside[c][s] = subspaces[s].contains(candidates[c]);

  std::vector<std::size_t> chosen;
  std::vector<Eigen::Index> counts(subspaces.size(), 0);
  std::function<bool(std::size_t, const EchelonBuilder<Rational>&)> search =
      [&](std::size_t start, const EchelonBuilder<Rational>& echelon) -> bool {
    if (static_cast<Eigen::Index>(chosen.size()) == n) {
      for (std::size_t s = 0; s < subspaces.size(); ++s)
        if (counts[s] != subspaces[s].dim()) return false;
      return true;
    }
    for (std::size_t c = start; c < candidates.size(); ++c) {
      EchelonBuilder<Rational> next = echelon;
      if (!next.insert(candidates[c])) continue;
      bool over = false;
      for (std::size_t s = 0; s < subspaces.size(); ++s) {
        counts[s] += inside[c][s] ? 1 : 0;
        over = over || counts[s] > subspaces[s].dim();
      }
      chosen.push_back(c);
      if (!over && search(c + 1, next)) return true;
      chosen.pop_back();
      for (std::size_t s = 0; s < subspaces.size(); ++s) counts[s] -= inside[c][s] ? 1 : 0;
    }
    return false;
  };
  if (!search(0, EchelonBuilder<Rational>(n))) return out;

  for (std::size_t c : chosen) {
    out.lines.push_back(candidates[c]);
    out.summands.push_back(lineData(f, candidates[c]));
  }
  out.found = verifySplitting(f, out);
  if (!out.found) throw std::logic_error("adapted basis failed to re-verify as a splitting");
  return out;
}

bool verifySplitting(const FiltrationData& data, const TorusReduction& splitting) {
  const auto n = static_cast<std::size_t>(data.dim());
  if (splitting.lines.size() != n || splitting.summands.size() != n) return false;
  QMatrix frame(data.dim(), data.dim());
  for (std::size_t k = 0; k < n; ++k) {
    if (splitting.summands[k].dim() != 1) return false;
    if (globalCompatibility(splitting.summands[k]).verdict != Verdict::Compatible) return false;
    frame.col(static_cast<Eigen::Index>(k)) = splitting.lines[k].transpose();
  }
  if (determinant(frame) == 0) return false;
  FiltrationData sum = splitting.summands[0];
  for (std::size_t k = 1; k < n; ++k) sum = directSum(sum, splitting.summands[k]);
  for (std::size_t ray = 0; ray < data.rayCount(); ++ray) {
    const int r = static_cast<int>(ray);
    std::set<Int> probes;
    for (Int i : data.jumpIndices(r)) probes.insert({i, i + 1});
    for (Int i : sum.jumpIndices(r)) probes.insert({i, i + 1});
    for (Int i : probes)
      if (image(frame, sum.at(r, i)) != data.at(r, i)) return false;
  }
  return true;
}

}  // namespace toricpb
