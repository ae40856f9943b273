// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "toricpb/bundle.hpp"
#include "toricpb/filtered_algebra.hpp"
#include "toricpb/io.hpp"
#include "toricpb/klyachko.hpp"
#include "toricpb/reduction.hpp"
#include "toricpb/samples.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace toricpb;
using namespace toricpb::samples;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<ConeDecomposition> certificatesOf(const FiltrationData& f) {
  std::vector<ConeDecomposition> out;
  for (std::size_t m = 0; m < f.fan().maximalCones.size(); ++m) out.push_back(*coneCompatibility(f, m).certificate);
  return out;
}

void perturb(std::mt19937& rng, CocharBundleData& d) {
  std::uniform_int_distribution<std::size_t> cone(0, d.cones.size() - 1);
  auto& c = d.cones[cone(rng)];
  std::uniform_int_distribution<std::size_t> which(0, c.characters.size() - 1);
  std::uniform_int_distribution<Eigen::Index> coord(0, c.characters[0].size() - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  c.characters[which(rng)](coord(rng)) += sign(rng) ? 1 : -1;
}

Outcome equivalenceOfCategories() {
  Stopwatch clock;
  std::mt19937 rng(1001);
  int instances = 0, glued = 0, disagreements = 0;
  for (int k = 0; k < 240; ++k) {
    auto fan = k % 2 ? p2Fan() : p1Fan();
    const Eigen::Index n = 2 + (k / 2) % 2;
    CocharBundleData d;
    switch (k % 4) {
      case 0:  // independent frames and characters per cone
        d = randomBundle(rng, fan, n, 3, 2);
        break;
      case 1: {  // one frame and character set on every cone
        std::vector<IntVector> chars;
        for (Eigen::Index i = 0; i < n; ++i) chars.push_back(randomCharacter(rng, fan->rank, 3));
        const QMatrix g = randomInvertible(rng, n, 2);
        d = bundleOf(fan, GroupKind::GL, std::vector<QMatrix>(fan->maximalCones.size(), g),
                     std::vector<std::vector<IntVector>>(fan->maximalCones.size(), chars));
        if (k % 8 == 5) perturb(rng, d);
        break;
      }
      default: {  // frames adapted to random flags, perturbed half the time
        const FiltrationData flags = randomFlags(rng, fan, n, 2);
        d = bundleFromDecompositions(flags, certificatesOf(flags));
        if (k % 4 == 3) perturb(rng, d);
        break;
      }
    }
    ++instances;
    const bool glues = checkGluing(d).glues;
    const AssociatedData a = associatedKlyachko(d);
    const bool consistent = a.data.has_value();
    const bool compatible = consistent && globalCompatibility(*a.data).verdict == Verdict::Compatible;
    glued += glues;
    if (glues != consistent || glues != compatible) ++disagreements;
  }
  const double t = clock.seconds();
  std::ostringstream s;
  s << instances << " instances, " << glued << " glue, " << instances - glued << " do not, " << disagreements
    << " disagreements, " << t << " s";
  return {disagreements == 0 && instances >= 200 && glued > 0 && glued < instances && t < 60, s.str()};
}

Outcome tensorFormula() {
  std::mt19937 rng(1002);
  int pairs = 0, failures = 0;
  for (int k = 0; k < 120; ++k) {
    FiltrationData a, b;
    if (k % 3 == 2) {
      auto fan = squareConeFan();
      auto split = [&](Eigen::Index n) {
        std::vector<IntVector> chars;
        for (Eigen::Index i = 0; i < n; ++i) chars.push_back(randomCharacter(rng, 3, 2));
        return splitData(fan, randomInvertible(rng, n), chars);
      };
      a = split(1 + k % 2);
      b = split(2);
    } else {
      auto fan = k % 3 ? p2Fan() : p1Fan();
      a = randomFlags(rng, fan, 1 + k % 2);
      b = randomFlags(rng, fan, 2);
    }
    ++pairs;
    const FiltrationData t = tensor(a, b);
    for (std::size_t m = 0; m < a.fan().maximalCones.size(); ++m) {
      const auto ca = coneCompatibility(a, m), cb = coneCompatibility(b, m);
      if (!ca.certificate || !cb.certificate) {
        ++failures;
        continue;
      }
      const ConeDecomposition merged = tensorDecomposition(a.fan(), *ca.certificate, *cb.certificate);
      bool ok = verifyDecomposition(t, merged);
      const auto& rays = merged.rays;
      for (std::size_t p = 0; p < rays.size(); ++p)
        for (const auto& j : t.jumps(rays[p]))
          for (Int i : {j.index, j.index + 1})
            ok = ok && reconstruct(merged, t.dim(), p, i) == t.at(rays[p], i);
      failures += !ok;
    }
  }
  return {failures == 0 && pairs >= 100,
          std::to_string(pairs) + " pairs, " + std::to_string(failures) + " cone mismatches"};
}

Outcome checkerVersusOracle() {
  std::mt19937 rng(1003);
  int instances = 0, mismatches = 0, incompatible = 0, undecided = 0;
  for (int k = 0; k < 600; ++k) {
    auto fan = k % 3 == 2 ? p2Fan() : squareConeFan();
    const FiltrationData d = randomFlags(rng, fan, 1 + k % 3, 1);
    for (std::size_t m = 0; m < fan->maximalCones.size(); ++m) {
      ++instances;
      const auto r = coneCompatibility(d, m);
      const auto o = exhaustiveCompatibility(d, fan->maximalCones[m]);
      if (!o || r.verdict == Verdict::Inconclusive) {
        ++undecided;
        ++mismatches;
        continue;
      }
      incompatible += r.verdict == Verdict::Incompatible;
      if ((r.verdict == Verdict::Compatible) != o->compatible) ++mismatches;
      if (r.certificate && !verifyDecomposition(d, *r.certificate)) ++mismatches;
    }
  }
  const FiltrationData fourLines = [] {
    RawFiltration raw{squareConeFan(), 2, {}};
    const std::vector<std::vector<int>> lines = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    for (int ray = 0; ray < 4; ++ray)
      raw.filtrations[ray] = {{0, QSubspace::full(2)}, {1, QSubspace::line(matrix({{lines[ray][0], lines[ray][1]}}).row(0))}};
    return FiltrationData::fromRaw(raw);
  }();
  const bool refuted = coneCompatibility(fourLines, std::size_t{0}).verdict == Verdict::Incompatible;
  const AssociatedData tangent = associatedKlyachko(tangentBundleP2());
  bool tangentOk = tangent.data.has_value();
  if (tangentOk)
    for (const auto& c : globalCompatibility(*tangent.data).cones)
      tangentOk = tangentOk && c.verdict == Verdict::Compatible && verifyDecomposition(*tangent.data, *c.certificate);
  std::ostringstream s;
  s << instances << " cone instances (" << incompatible << " incompatible), " << mismatches << " mismatches, "
    << undecided << " undecided; four lines " << (refuted ? "refuted" : "NOT refuted") << "; tangent bundle "
    << (tangentOk ? "certified on every cone" : "NOT certified");
  return {mismatches == 0 && refuted && tangentOk && incompatible > 0, s.str()};
}

Outcome gluingMicro() {
  auto fan = p2Fan();
  std::vector<IntVector> box;
  for (Int a = -2; a <= 2; ++a)
    for (Int b = -2; b <= 2; ++b) box.push_back(vec({a, b}));
  int instances = 0, mismatches = 0, glued = 0;
  const QMatrix one = QMatrix::Identity(1, 1);
  for (const auto& u0 : box)
    for (const auto& u1 : box)
      for (const auto& u2 : box) {
        const std::vector<IntVector> u{u0, u1, u2};
        bool perp = true;
        for (std::size_t s = 0; s < 3; ++s)
          for (std::size_t t = s + 1; t < 3; ++t)
            for (int r : fan->maximalCones[s])
              for (int q : fan->maximalCones[t])
                if (r == q) perp = perp && dot(IntVector(u[s] - u[t]), fan->rays[static_cast<std::size_t>(r)]) == 0;
        const bool glues = checkGluing(bundleOf(fan, GroupKind::GL, {one, one, one}, {{u0}, {u1}, {u2}})).glues;
        ++instances;
        glued += glues;
        mismatches += glues != perp;
      }
  return {mismatches == 0, std::to_string(instances) + " character triples, " + std::to_string(glued) + " glue, " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome filteredAlgebra() {
  Stopwatch clock;
  std::mt19937 rng(1005);
  int cones = 0, failures = 0;
  for (int k = 0; k < 50; ++k) {
    auto fan = k % 2 ? p2Fan() : p1Fan();
    const CocharBundleData d = randomBundle(rng, fan, 2, 3, 2);
    for (std::size_t m = 0; m < fan->maximalCones.size(); ++m) {
      const TruncatedAlgebra alg = buildTruncation(d, m, 3);
      ++cones;
      failures += !(checkMultiplicative(alg).passed && checkCompatibleAlgebra(alg).passed &&
                    checkCoactionCommutes(alg).passed);
    }
  }
  const CocharBundleData distinct = bundleOf(p2Fan(), GroupKind::GL, std::vector<QMatrix>(3, QMatrix::Identity(2, 2)),
                                             std::vector<std::vector<IntVector>>(3, {vec({1, 0}), vec({0, 1})}));
  TruncatedAlgebra flipped = buildTruncation(distinct, 0, 3);
  for (std::size_t k = 0; k < flipped.basis().size(); ++k)
    if (flipped.basis()[k].sum() == 1 && !flipped.weights()[k].isZero()) {
      flipped.overrideWeight(k, IntVector(-flipped.weights()[k]));
      break;
    }
  const bool flippedFails = !checkCompatibleAlgebra(flipped).passed;
  const bool columnFails = !checkCoactionCommutes(buildTruncation(distinct, 0, 3, WeightConvention::Column)).passed;
  const double t = clock.seconds();
  std::ostringstream s;
  s << "50 instances (" << cones << " cones), " << failures << " axiom failures; flipped weight "
    << (flippedFails ? "rejected" : "ACCEPTED") << ", column convention " << (columnFails ? "rejected" : "ACCEPTED")
    << ", " << t << " s";
  return {failures == 0 && flippedFails && columnFails && t < 120, s.str()};
}

Outcome reduction() {
  std::mt19937 rng(1006);
  int sweep = 0, slMismatches = 0, zeroSum = 0;
  for (int k = 0; k < 500; ++k) {
    auto fan = k % 2 ? p2Fan() : p1Fan();
    CocharBundleData d = randomBundle(rng, fan, 2 + k % 2, 2, 2);
    if (k % 3 == 0)
      for (auto& c : d.cones) {
        IntVector total = IntVector::Zero(fan->rank);
        for (std::size_t i = 0; i + 1 < c.characters.size(); ++i) total += c.characters[i];
        c.characters.back() = -total;
      }
    bool zero = true;
    for (const auto& c : d.cones) {
      IntVector total = IntVector::Zero(fan->rank);
      for (const auto& u : c.characters) total += u;
      zero = zero && total.isZero();
    }
    ++sweep;
    zeroSum += zero;
    const SlReduction r = checkSlReduction(d);
    bool ok = r.reduces == zero;
    if (r.reduces) {
      ok = ok && validateBundle(*r.presentation).valid;
      for (const auto& c : determinantData(d).cones) ok = ok && c.characters[0].isZero();
    }
    slMismatches += !ok;
  }
  int common = 0, unsplit = 0;
  for (int k = 0; k < 100; ++k) {
    auto fan = k % 2 ? p2Fan() : p1Fan();
    const Eigen::Index n = 1 + k % 3;
    std::vector<IntVector> chars;
    for (Eigen::Index i = 0; i < n; ++i) chars.push_back(randomCharacter(rng, fan->rank, 3));
    const CocharBundleData d =
        bundleOf(fan, GroupKind::GL, std::vector<QMatrix>(fan->maximalCones.size(), randomInvertible(rng, n)),
                 std::vector<std::vector<IntVector>>(fan->maximalCones.size(), chars));
    ++common;
    const TorusReduction t = checkTorusReduction(d);
    unsplit += !(t.found && verifySplitting(*associatedKlyachko(d).data, t));
  }
  const bool tangentNone = !checkTorusReduction(tangentBundleP2()).found;
  std::ostringstream s;
  s << "SL sweep " << sweep << " (" << zeroSum << " zero-sum), " << slMismatches << " mismatches; " << common
    << " common-frame instances, " << unsplit << " without a verified splitting; tangent bundle "
    << (tangentNone ? "NONE-FOUND" : "SPLIT");
  return {slMismatches == 0 && unsplit == 0 && tangentNone && zeroSum > 0, s.str()};
}

Outcome exactHygiene() {
  std::mt19937 rng(1007);
  int checks = 0, failures = 0;
  auto expect = [&](bool ok) {
    ++checks;
    failures += !ok;
  };
  for (int k = 0; k < 300; ++k) {
    const Eigen::Index n = 1 + k % 5;
    const QSubspace a = randomSubspace(rng, n, n), b = randomSubspace(rng, n, n);
    expect(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
    expect(annihilator(annihilator(a)) == a);
  }
  for (int k = 0; k < 100; ++k) {
    auto fan = k % 3 == 0 ? squareConeFan() : p2Fan();
    const FiltrationData d = randomFlags(rng, fan, 1 + k % 3);
    expect(dual(dual(d)) == d);
    const std::string text = dumpJson(toJson(d));
    const FiltrationData back = filtrationFromJson(parseJson(text));
    expect(back == d && dumpJson(toJson(back)) == text);
  }
  for (int k = 0; k < 60; ++k) {
    const CocharBundleData b = randomBundle(rng, p2Fan(), 1 + k % 3);
    expect(cocycleCheck(b).holds);
    expect(bundleFromJson(parseJson(dumpJson(toJson(b)))) == b);
    const LaurentMatrix m = transition(b, 0, 1);
    expect(laurentFromJson(parseJson(dumpJson(toJson(m)))) == m);
  }
  return {failures == 0, std::to_string(checks) + " exact checks, " + std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 equivalence of categories (gluing, ray consistency, compatibility agree)", equivalenceOfCategories},
      {"2 tensor product formula from merged certificates", tensorFormula},
      {"3 compatibility checker against exhaustive oracle", checkerVersusOracle},
      {"4 gluing of diagonal GL(1) data on P2", gluingMicro},
      {"5 filtered algebra axioms and negative controls", filteredAlgebra},
      {"6 reduction to SL(n) and to the diagonal torus", reduction},
      {"7 exact arithmetic hygiene", exactHygiene},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
