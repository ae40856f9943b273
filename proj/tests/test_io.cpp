#include "toricpb/io.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace toricpb;
using namespace toricpb::testing;

namespace fs = std::filesystem;

namespace {

fs::path scratchDir() {
  const fs::path dir = fs::temp_directory_path() / "toricpb_test_io";
  fs::create_directories(dir / "nested");
  return dir;
}

void writeFile(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Io, RationalsAndMatrices) {
  EXPECT_EQ(toJson(Rational(-3) / 6), "-1/2");
  EXPECT_EQ(rationalFromJson(Json(4)), 4);
  EXPECT_EQ(rationalFromJson(Json("6/4")), Rational(3) / 2);
  EXPECT_THROW(rationalFromJson(Json(0.5)), InputError);
  EXPECT_THROW(rationalFromJson(Json("1/0")), InputError);
  const QMatrix m = qm({{1, 2}, {3, 4}});
  EXPECT_EQ(matrixFromJson(toJson(m)), m);
  EXPECT_THROW(matrixFromJson(parseJson("[[1,2],[3]]")), DimensionMismatch);
  EXPECT_THROW(intVectorFromJson(parseJson("[1, 2.5]")), InputError);
}

TEST(Io, MalformedText) {
  EXPECT_THROW(parseJson("{\"rank\": 2,"), InputError);
  EXPECT_THROW(fanFromJson(parseJson("{\"rank\": 1, \"rays\": [[1]]}")), InputError);
  EXPECT_THROW(fanFromJson(parseJson("{\"rank\": 1, \"rays\": [[1]], \"maximal_cones\": [[3]]}")), InputError);
  EXPECT_THROW(readJsonFile("/nonexistent/fan.json"), InputError);
  const std::string filt = R"({"fan": {"rank": 1, "rays": [[1], [-1]], "maximal_cones": [[0], [1]]},
                               "dim": 1, "filtrations": {"x": []}})";
  EXPECT_THROW(rawFiltrationFromJson(parseJson(filt)), InputError);
  EXPECT_THROW(bundleFromJson(parseJson(R"({"group": {"kind": "SO", "n": 2}, "fan": {}, "cones": []})")), InputError);
}

TEST(Io, FanPathsResolveAgainstTheReferencingFile) {
  const fs::path dir = scratchDir();
  writeFile(dir / "nested" / "p1.json", dumpJson(toJson(*p1Fan())));
  const std::string text = R"({"fan": "nested/p1.json", "dim": 1, "filtrations": {"0": [{"i": 2, "basis": [["1"]]}]}})";
  const auto d = filtrationFromJson(parseJson(text), dir);
  EXPECT_EQ(d, FiltrationData::line(p1Fan(), {2, 0}));
  EXPECT_THROW(filtrationFromJson(parseJson(text), dir / "nested"), InputError);
}

TEST(Io, AmbientMismatchReachesValidation) {
  const std::string text = R"({"fan": {"rank": 1, "rays": [[1], [-1]], "maximal_cones": [[0], [1]]},
                               "dim": 2, "filtrations": {"0": [{"i": 0, "basis": [["1", "0", "0"]]}]}})";
  const auto raw = rawFiltrationFromJson(parseJson(text));
  EXPECT_EQ(validate(raw).violations.front().kind, "ambient_mismatch");
}

TEST(Io, LaurentAndWitnessShapes) {
  const auto d = tangentBundleP2();
  const auto t = transition(d, 0, 1);
  EXPECT_EQ(laurentFromJson(toJson(t)), t);
  GluingFailure f{{0, 1}, {1, 0}, {0, 0}, iv({0, -1}), iv({0, 1}), -1};
  const Json j = toJson(f);
  EXPECT_EQ(j["pair"], parseJson("[0, 1]"));
  EXPECT_EQ(j["exponent"], parseJson("[0, -1]"));
  EXPECT_EQ(j["ray"], parseJson("[0, 1]"));
}

TEST(Property, RoundTripsAreExact) {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    auto fan = trial % 3 == 0 ? squareConeFan() : p2Fan();
    EXPECT_EQ(fanFromJson(parseJson(dumpJson(toJson(*fan)))), *fan);

    const auto d = randomFlags(rng, fan, 1 + trial % 3);
    const std::string text = dumpJson(toJson(d));
    const auto back = filtrationFromJson(parseJson(text));
    EXPECT_EQ(back, d);
    EXPECT_EQ(dumpJson(toJson(back)), text);

    const auto res = coneCompatibility(d, std::size_t{0});
    if (res.certificate) {
      const auto cert = decompositionFromJson(parseJson(dumpJson(toJson(*res.certificate))));
      EXPECT_EQ(cert.rays, res.certificate->rays);
      ASSERT_EQ(cert.pieces.size(), res.certificate->pieces.size());
      for (std::size_t k = 0; k < cert.pieces.size(); ++k) {
        EXPECT_EQ(cert.pieces[k].character, res.certificate->pieces[k].character);
        EXPECT_EQ(cert.pieces[k].space, res.certificate->pieces[k].space);
      }
      EXPECT_TRUE(verifyDecomposition(d, cert));
    }

    const auto b = randomBundle(rng, p2Fan(), 1 + trial % 3);
    EXPECT_EQ(bundleFromJson(parseJson(dumpJson(toJson(b)))), b);
    const auto lm = transition(b, 0, 2);
    EXPECT_EQ(laurentFromJson(parseJson(dumpJson(toJson(lm)))), lm);
  }
}
