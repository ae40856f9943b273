#include "toricpb/klyachko.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace toricpb;
using namespace toricpb::testing;

namespace {

// The tangent bundle of P^2: V^ρ(1) is the line through the ray.
FiltrationData tangentP2() {
  auto fan = p2Fan();
  RawFiltration raw{fan, 2, {}};
  for (int ray = 0; ray < 3; ++ray) {
    const IntVector& v = fan->rays[static_cast<std::size_t>(ray)];
    raw.filtrations[ray] = {{0, QSubspace::full(2)}, {1, QSubspace::line(toRational(v).transpose())}};
  }
  return FiltrationData::fromRaw(raw);
}

FiltrationData fourLines() {
  RawFiltration raw{squareConeFan(), 2, {}};
  const std::vector<RowVectorX<Rational>> lines = {qv({1, 0}), qv({0, 1}), qv({1, 1}), qv({1, -1})};
  for (int ray = 0; ray < 4; ++ray) raw.filtrations[ray] = {{0, QSubspace::full(2)}, {1, QSubspace::line(lines[ray])}};
  return FiltrationData::fromRaw(raw);
}

QMatrix transposeOf(const QMatrix& m) { return m.transpose(); }

}  // namespace

TEST(Filtration, ValidateReportsEachKind) {
  auto fan = p1Fan();
  RawFiltration raw{fan, 2, {}};
  raw.filtrations[0] = {{0, spanOf({{1, 0}})}, {1, QSubspace::full(2)}};
  raw.filtrations[1] = {{0, QSubspace::full(2)}, {0, spanOf({{1, 0}})}};
  raw.filtrations[5] = {{0, QSubspace::full(2)}};
  const FiltrationReport report = validate(raw);
  EXPECT_FALSE(report.valid);
  std::set<std::string> kinds;
  for (const auto& v : report.violations) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.count("not_nested"));
  EXPECT_TRUE(kinds.count("not_full"));
  EXPECT_TRUE(kinds.count("duplicate_index"));
  EXPECT_TRUE(kinds.count("unknown_ray"));
  EXPECT_THROW(FiltrationData::fromRaw(raw), InputError);

  RawFiltration wrongAmbient{fan, 2, {}};
  wrongAmbient.filtrations[0] = {{0, QSubspace::full(3)}};
  EXPECT_EQ(validate(wrongAmbient).violations.front().kind, "ambient_mismatch");
}

TEST(Filtration, CanonicalFormAndEvaluation) {
  auto fan = p1Fan();
  RawFiltration raw{fan, 2, {}};
  raw.filtrations[0] = {{3, spanOf({{1, 1}})}, {-1, QSubspace::full(2)}, {1, QSubspace::full(2)}, {7, QSubspace::zero(2)}};
  const FiltrationData d = FiltrationData::fromRaw(raw);
  ASSERT_EQ(d.jumpIndices(0), (std::vector<Int>{1, 3}));
  EXPECT_TRUE(d.at(0, -50).isFull());
  EXPECT_TRUE(d.at(0, 1).isFull());
  EXPECT_EQ(d.at(0, 2), spanOf({{1, 1}}));
  EXPECT_EQ(d.at(0, 3), spanOf({{1, 1}}));
  EXPECT_TRUE(d.at(0, 4).isZero());
  // The missing ray is trivial.
  EXPECT_EQ(d.jumpIndices(1), (std::vector<Int>{0}));
  EXPECT_EQ(FiltrationData::fromRaw(d.toRaw()), d);
}

TEST(Compatibility, TrivialDataHasOnePiece) {
  const auto d = FiltrationData::trivial(p2Fan(), 3);
  for (std::size_t m = 0; m < 3; ++m) {
    const auto res = coneCompatibility(d, m);
    ASSERT_EQ(res.verdict, Verdict::Compatible);
    ASSERT_EQ(res.certificate->pieces.size(), 1u);
    EXPECT_EQ(res.certificate->pieces[0].character, iv({0, 0}));
    EXPECT_TRUE(res.certificate->pieces[0].space.isFull());
  }
}

TEST(Compatibility, TwoLinesInThePlane) {
  auto fan = p2Fan();
  RawFiltration raw{fan, 2, {}};
  raw.filtrations[0] = {{0, QSubspace::full(2)}, {1, spanOf({{1, 0}})}};
  raw.filtrations[1] = {{0, QSubspace::full(2)}, {1, spanOf({{1, 1}})}};
  const auto d = FiltrationData::fromRaw(raw);
  const auto res = coneCompatibility(d, std::size_t{0});
  ASSERT_EQ(res.verdict, Verdict::Compatible);
  ASSERT_EQ(res.certificate->pieces.size(), 2u);
  std::map<IntVector, QSubspace, LexLess> byCharacter;
  for (const auto& p : res.certificate->pieces) byCharacter.emplace(p.character, p.space);
  EXPECT_EQ(byCharacter.at(iv({1, 0})), spanOf({{1, 0}}));
  EXPECT_EQ(byCharacter.at(iv({0, 1})), spanOf({{1, 1}}));
  EXPECT_TRUE(verifyDecomposition(d, *res.certificate));
}

TEST(Compatibility, TangentBundleOfP2) {
  const auto d = tangentP2();
  const auto g = globalCompatibility(d);
  EXPECT_EQ(g.verdict, Verdict::Compatible);
  for (const auto& c : g.cones) {
    ASSERT_TRUE(c.certificate);
    EXPECT_TRUE(verifyDecomposition(d, *c.certificate));
  }
}

TEST(Compatibility, FourLinesRefutedByDistributivity) {
  const auto d = fourLines();
  const auto res = coneCompatibility(d, std::size_t{0});
  ASSERT_EQ(res.verdict, Verdict::Incompatible);
  ASSERT_TRUE(res.refutation);
  EXPECT_EQ(res.refutation->kind, "distributivity");
  ASSERT_EQ(res.refutation->triple.size(), 3u);
  const auto& t = res.refutation->triple;
  EXPECT_NE(intersect(t[0], sum(t[1], t[2])), sum(intersect(t[0], t[1]), intersect(t[0], t[2])));
}

TEST(Compatibility, ExhaustiveAndInconclusivePaths) {
  const auto d = fourLines();
  CompatibilityOptions noRefute;
  noRefute.searchRefutations = false;
  noRefute.exhaustiveDimCap = 1;
  EXPECT_EQ(coneCompatibility(d, std::size_t{0}, noRefute).verdict, Verdict::Inconclusive);
  noRefute.exhaustiveDimCap = 4;
  const auto res = coneCompatibility(d, std::size_t{0}, noRefute);
  EXPECT_EQ(res.verdict, Verdict::Incompatible);
  EXPECT_EQ(res.method, "exhaustive");
}

TEST(Compatibility, NonSimplicialIntegrality) {
  auto fan = squareConeFan();
  EXPECT_EQ(coneCompatibility(FiltrationData::line(fan, {1, 0, 0, 0}), std::size_t{0}).refutation->kind,
            "integrality");
  // u = (1, 1, 0) pairs to (0, 1, 1, 2).
  const auto ok = coneCompatibility(FiltrationData::line(fan, {0, 1, 1, 2}), std::size_t{0});
  ASSERT_EQ(ok.verdict, Verdict::Compatible);
  EXPECT_EQ(ok.certificate->pieces[0].character, iv({1, 1, 0}));
}

TEST(Compatibility, FacesOfMaximalCones) {
  const auto d = tangentP2();
  EXPECT_EQ(coneCompatibility(d, std::vector<int>{1}).verdict, Verdict::Compatible);
  EXPECT_EQ(coneCompatibility(d, std::vector<int>{}).verdict, Verdict::Compatible);
  EXPECT_THROW(coneCompatibility(d, std::vector<int>{0, 1, 2}), InputError);
  EXPECT_THROW(coneCompatibility(d, std::size_t{7}), InputError);
  // Two rays of the square cone not spanning a face.
  EXPECT_THROW(coneCompatibility(fourLines(), std::vector<int>{0, 3}), InputError);
}

TEST(Operations, TensorDualAndSumExamples) {
  auto fan = p1Fan();
  const auto a = FiltrationData::line(fan, {2, -1});
  const auto b = FiltrationData::line(fan, {1, 3});
  EXPECT_EQ(tensor(a, b), FiltrationData::line(fan, {3, 2}));
  EXPECT_EQ(dual(a), FiltrationData::line(fan, {-2, 1}));
  const auto s = directSum(a, b);
  EXPECT_EQ(s.at(0, 2), spanOf({{1, 0}}));
  EXPECT_TRUE(s.at(0, 1).isFull());
  EXPECT_EQ(s.at(1, 2), spanOf({{0, 1}}));

  const auto t = tangentP2();
  const auto td = dual(t);
  // The annihilator of the ray line sits at index 0, the whole space at -1.
  EXPECT_EQ(td.jumpIndices(0), (std::vector<Int>{-1, 0}));
  EXPECT_EQ(td.at(0, 0), spanOf({{0, 1}}));
}

TEST(Operations, MorphismExamples) {
  auto fan = p1Fan();
  const auto a = FiltrationData::line(fan, {2, 0});
  const auto b = FiltrationData::line(fan, {1, 0});
  EXPECT_TRUE(checkMorphism(qm({{3}}), b, a));
  EXPECT_FALSE(checkMorphism(qm({{3}}), a, b));
  EXPECT_TRUE(checkMorphism(qm({{0}}), a, b));
  const auto v = morphismViolation(qm({{3}}), a, b);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->ray, 0);
  EXPECT_EQ(v->index, 2);
  EXPECT_THROW(checkMorphism(qm({{1, 0}}), a, b), DimensionMismatch);
}

TEST(Property, DualIsAnInvolutionAndTensorUnit) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = randomFlags(rng, p2Fan(), 1 + trial % 3);
    EXPECT_EQ(dual(dual(d)), d);
    EXPECT_EQ(tensor(d, FiltrationData::trivial(d.fanPtr(), 1)), d);
    EXPECT_EQ(dual(directSum(d, d)), directSum(dual(d), dual(d)));
  }
}

TEST(Property, MorphismsDualizeToTransposes) {
  std::mt19937 rng(12);
  int positives = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto a = randomFlags(rng, p1Fan(), 2, 1);
    const auto b = randomFlags(rng, p1Fan(), 2, 1);
    std::uniform_int_distribution<int> e(-1, 1);
    QMatrix phi(2, 2);
    for (Eigen::Index i = 0; i < 4; ++i) phi(i) = e(rng);
    const bool forward = checkMorphism(phi, a, b);
    positives += forward ? 1 : 0;
    EXPECT_EQ(forward, checkMorphism(transposeOf(phi), dual(b), dual(a)));
  }
  EXPECT_GT(positives, 0);
}

TEST(Property, TwoRayConesNeverRefute) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 80; ++trial) {
    const auto d = randomFlags(rng, p2Fan(), 1 + trial % 4);
    for (std::size_t m = 0; m < 3; ++m) {
      const auto res = coneCompatibility(d, m);
      ASSERT_EQ(res.verdict, Verdict::Compatible);
      EXPECT_TRUE(verifyDecomposition(d, *res.certificate));
    }
  }
}

TEST(Property, SplitDataIsCompatibleEverywhere) {
  std::mt19937 rng(14);
  for (auto fan : {p2Fan(), squareConeFan()}) {
    for (int trial = 0; trial < 30; ++trial) {
      const Eigen::Index dim = 1 + trial % 3;
      std::vector<IntVector> chars;
      for (Eigen::Index k = 0; k < dim; ++k) chars.push_back(randomCharacter(rng, fan->rank));
      const auto d = splitData(fan, randomInvertible(rng, dim), chars);
      EXPECT_EQ(globalCompatibility(d).verdict, Verdict::Compatible);
    }
  }
}

TEST(Property, VerdictsAgreeWithExhaustiveOracle) {
  std::mt19937 rng(15);
  int compatible = 0, incompatible = 0, skipped = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto fan = squareConeFan();
    const Eigen::Index dim = 1 + trial % 4;
    const auto d = randomFlags(rng, fan, dim, 1);
    const auto res = coneCompatibility(d, std::size_t{0});
    const auto oracle = exhaustiveCompatibility(d, fan->maximalCones[0]);
    if (!oracle) {
      ++skipped;
      continue;
    }
    ASSERT_NE(res.verdict, Verdict::Inconclusive);
    EXPECT_EQ(res.verdict == Verdict::Compatible, oracle->compatible) << "trial " << trial;
    if (res.certificate) EXPECT_TRUE(verifyDecomposition(d, *res.certificate));
    (res.verdict == Verdict::Compatible ? compatible : incompatible)++;
  }
  EXPECT_GT(compatible, 0);
  EXPECT_GT(incompatible, 0);
  EXPECT_EQ(skipped, 0);
}

TEST(Property, TensorAndSumOfCertificates) {
  std::mt19937 rng(16);
  for (int trial = 0; trial < 40; ++trial) {
    auto fan = p2Fan();
    const auto a = randomFlags(rng, fan, 1 + trial % 2);
    const auto b = randomFlags(rng, fan, 2);
    const auto ca = coneCompatibility(a, std::size_t{1});
    const auto cb = coneCompatibility(b, std::size_t{1});
    const auto ct = tensorDecomposition(*fan, *ca.certificate, *cb.certificate);
    EXPECT_TRUE(verifyDecomposition(tensor(a, b), ct));
    const auto cs = directSumDecomposition(*fan, *ca.certificate, *cb.certificate, a.dim(), b.dim());
    EXPECT_TRUE(verifyDecomposition(directSum(a, b), cs));
  }
}
