// Command-line front end: JSON report on stdout, one-line summary on stderr.
//
// Exit codes: 0 check passed, 1 negative verdict (with witness),
// 2 malformed input, 3 inconclusive compatibility, 4 internal error.

#include "toricpb/bundle.hpp"
#include "toricpb/errors.hpp"
#include "toricpb/filtered_algebra.hpp"
#include "toricpb/io.hpp"
#include "toricpb/klyachko.hpp"
#include "toricpb/reduction.hpp"
#include "toricpb/samples.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <random>

using namespace toricpb;
namespace fs = std::filesystem;

namespace {

enum ExitCode { Ok = 0, Negative = 1, Malformed = 2, Inconclusive = 3, Internal = 4 };

struct Outcome {
  Json report;
  int code = Ok;
  std::string summary;
};

fs::path baseOf(const std::string& file) { return fs::path(file).parent_path(); }

FiltrationData loadFiltration(const std::string& file) { return filtrationFromJson(readJsonFile(file), baseOf(file)); }

CocharBundleData loadBundle(const std::string& file) {
  CocharBundleData data = bundleFromJson(readJsonFile(file), baseOf(file));
  const BundleReport report = validateBundle(data);
  if (!report.valid) throw InputError("invalid bundle data: " + report.violations.front().message);
  return data;
}

int verdictCode(Verdict v) {
  switch (v) {
    case Verdict::Compatible: return Ok;
    case Verdict::Incompatible: return Negative;
    case Verdict::Inconclusive: return Inconclusive;
  }
  return Internal;
}

Outcome validateFanCommand(const std::string& file) {
  const Fan fan = fanFromJson(readJsonFile(file));
  const FanReport r = validateFan(fan);
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back({{"kind", v.kind}, {"message", v.message}});
  Json report = {{"valid", r.valid},
                 {"all_top_dimensional", r.allTopDimensional},
                 {"maximal_cone_dims", r.maximalConeDims},
                 {"violations", violations}};
  return {report, r.valid ? Ok : Negative,
          r.valid ? "fan is valid" : "fan is invalid: " + r.violations.front().message};
}

Outcome validateFiltCommand(const std::string& file) {
  const RawFiltration raw = rawFiltrationFromJson(readJsonFile(file), baseOf(file));
  const FiltrationReport r = validate(raw);
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back({{"kind", v.kind}, {"ray", v.ray}, {"message", v.message}});
  return {{{"valid", r.valid}, {"violations", violations}}, r.valid ? Ok : Negative,
          r.valid ? "filtration data is valid" : "filtration data is invalid: " + r.violations.front().message};
}

Outcome compatCommand(const std::string& file, std::optional<int> cone, const CompatibilityOptions& options) {
  const FiltrationData data = loadFiltration(file);
  if (cone) {
    if (*cone < 0) throw InputError("cone index must be non-negative");
    CompatibilityResult r = coneCompatibility(data, static_cast<std::size_t>(*cone), options);
    Json report = toJson(r);
    report["cone"] = *cone;
    return {report, verdictCode(r.verdict), std::string("cone ") + std::to_string(*cone) + ": " + verdictName(r.verdict)};
  }
  const GlobalCompatibility g = globalCompatibility(data, options);
  Json cones = Json::array();
  for (std::size_t k = 0; k < g.cones.size(); ++k) {
    Json c = toJson(g.cones[k]);
    c["cone"] = k;
    cones.push_back(std::move(c));
  }
  Json report = {{"verdict", verdictName(g.verdict)}, {"cones", cones}};
  std::string summary = std::string(verdictName(g.verdict)) + " on all " + std::to_string(g.cones.size()) + " maximal cones";
  if (g.failingCone >= 0) {
    report["failing_cone"] = g.failingCone;
    summary = std::string(verdictName(g.verdict)) + " (cone " + std::to_string(g.failingCone) + ")";
  }
  return {report, verdictCode(g.verdict), summary};
}

Outcome morphismCommand(const std::string& matrixFile, const std::string& a, const std::string& b) {
  const Json m = readJsonFile(matrixFile);
  const QMatrix phi = matrixFromJson(m.is_object() && m.contains("matrix") ? m["matrix"] : m);
  const auto violation = morphismViolation(phi, loadFiltration(a), loadFiltration(b));
  if (!violation) return {{{"morphism", true}}, Ok, "the matrix is a morphism of filtered spaces"};
  return {{{"morphism", false}, {"witness", {{"ray", violation->ray}, {"i", violation->index}}}},
          Negative,
          "not a morphism: ray " + std::to_string(violation->ray) + " at index " + std::to_string(violation->index)};
}

Outcome validateBundleCommand(const std::string& file) {
  const CocharBundleData data = bundleFromJson(readJsonFile(file), baseOf(file));
  const BundleReport r = validateBundle(data);
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back({{"kind", v.kind}, {"cone", v.cone}, {"message", v.message}});
  return {{{"valid", r.valid}, {"violations", violations}}, r.valid ? Ok : Negative,
          r.valid ? "bundle data is valid" : "bundle data is invalid: " + r.violations.front().message};
}

Outcome glueCommand(const std::string& file) {
  const GluingReport r = checkGluing(loadBundle(file));
  if (r.glues) return {{{"glues", true}}, Ok, "transitions are regular on every overlap"};
  const auto& f = *r.failure;
  return {{{"glues", false}, {"witness", toJson(f)}}, Negative,
          "cones " + std::to_string(f.pair[0]) + " and " + std::to_string(f.pair[1]) + " do not glue"};
}

Outcome cocycleCommand(const std::string& file) {
  const CocycleReport r = cocycleCheck(loadBundle(file));
  if (r.holds) return {{{"holds", true}}, Ok, "cocycle identity holds"};
  const auto& t = *r.triple;
  return {{{"holds", false}, {"witness", {t[0], t[1], t[2]}}}, Negative, "cocycle identity fails"};
}

Outcome assocCommand(const std::string& file) {
  const AssociatedData a = associatedKlyachko(loadBundle(file));
  if (a.inconsistency) {
    const auto& w = *a.inconsistency;
    return {{{"consistent", false}, {"witness", toJson(w)}}, Negative,
            "cones " + std::to_string(w.coneA) + " and " + std::to_string(w.coneB) + " disagree on ray " +
                std::to_string(w.ray) + " at index " + std::to_string(w.index)};
  }
  Json certs = Json::array();
  for (const auto& c : a.certificates) certs.push_back(toJson(c));
  return {{{"consistent", true}, {"filtration", toJson(*a.data)}, {"certificates", certs}}, Ok,
          "associated filtration data of dimension " + std::to_string(a.data->dim())};
}

Json algebraResult(const AlgebraCheck& c, Eigen::Index n) {
  Json out = {{"passed", c.passed}};
  if (c.witness) {
    Json monomials = Json::array();
    for (const auto& m : c.witness->monomials) monomials.push_back(monomialText(m, n));
    out["witness"] = {{"monomials", monomials}, {"message", c.witness->message}};
    if (c.witness->ray >= 0) out["witness"]["ray"] = c.witness->ray;
  }
  return out;
}

Outcome algebraCommand(const std::string& file, int degree, std::optional<int> cone) {
  const CocharBundleData data = loadBundle(file);
  std::vector<std::size_t> cones;
  if (cone) {
    if (*cone < 0 || static_cast<std::size_t>(*cone) >= data.fan->maximalCones.size())
      throw InputError("no maximal cone with index " + std::to_string(*cone));
    cones.push_back(static_cast<std::size_t>(*cone));
  } else {
    for (std::size_t k = 0; k < data.fan->maximalCones.size(); ++k) cones.push_back(k);
  }
  Json reports = Json::array();
  bool all = true;
  for (std::size_t k : cones) {
    const TruncatedAlgebra alg = buildTruncation(data, k, degree);
    Json pieces = Json::array();
    for (const auto& [cls, members] : alg.pieces()) pieces.push_back({{"class", toJson(cls)}, {"dim", members.size()}});
    const AlgebraCheck m = checkMultiplicative(alg), c = checkCompatibleAlgebra(alg), d = checkCoactionCommutes(alg);
    all = all && m.passed && c.passed && d.passed;
    reports.push_back({{"cone", k},
                       {"basis_size", alg.basis().size()},
                       {"pieces", pieces},
                       {"multiplicative", algebraResult(m, alg.n())},
                       {"compatible", algebraResult(c, alg.n())},
                       {"coaction_commutes", algebraResult(d, alg.n())}});
  }
  return {{{"degree", degree}, {"passed", all}, {"cones", reports}}, all ? Ok : Negative,
          all ? "filtered algebra axioms hold up to degree " + std::to_string(degree) : "a filtered algebra axiom fails"};
}

Outcome reduceCommand(const std::string& file, const std::string& target) {
  const CocharBundleData data = loadBundle(file);
  if (target == "sl") {
    const SlReduction r = checkSlReduction(data);
    if (r.reduces)
      return {{{"target", "sl"}, {"verdict", "REDUCES"}, {"presentation", toJson(*r.presentation)}}, Ok,
              "reduces to SL: every character sum vanishes"};
    return {{{"target", "sl"},
             {"verdict", "NO-IN-PRESENTATION"},
             {"witness", {{"cone", r.failingCone}, {"character_sum", toJson(r.characterSum)}}}},
            Negative, "no SL reduction in this presentation (cone " + std::to_string(r.failingCone) + ")"};
  }
  const TorusReduction r = checkTorusReduction(data);
  Json report = toJson(r);
  report["target"] = "torus";
  report["verdict"] = r.found ? "REDUCES" : "NONE-FOUND";
  report["search"] = "exhaustive over lines cut out by pairs of filtration subspaces and frame columns";
  return {report, r.found ? Ok : Negative,
          r.found ? "splits into line bundles"
                  : "no splitting among " + std::to_string(r.candidateCount) + " candidate lines"};
}

Outcome binaryFiltration(const std::string& a, const std::string& b,
                         const std::function<FiltrationData(const FiltrationData&, const FiltrationData&)>& op,
                         const char* what) {
  const FiltrationData out = op(loadFiltration(a), loadFiltration(b));
  return {toJson(out), Ok, std::string(what) + " of dimension " + std::to_string(out.dim())};
}

// A quick randomized battery over the sample fans.
Outcome selftestCommand(unsigned seed) {
  std::mt19937 rng(seed);
  Json checks = Json::array();
  bool all = true;
  auto record = [&](const char* name, int instances, int failures) {
    checks.push_back({{"name", name}, {"instances", instances}, {"failures", failures}});
    all = all && failures == 0;
  };
  {
    int failures = 0;
    for (int k = 0; k < 20; ++k) {
      const auto d = samples::randomFlags(rng, samples::p2Fan(), 1 + k % 3);
      failures += !(dual(dual(d)) == d && filtrationFromJson(parseJson(dumpJson(toJson(d)))) == d);
    }
    record("dual_involution_and_round_trip", 20, failures);
  }
  {
    int failures = 0;
    for (int k = 0; k < 30; ++k) {
      auto fan = samples::squareConeFan();
      const auto d = samples::randomFlags(rng, fan, 1 + k % 3, 1);
      const auto r = coneCompatibility(d, std::size_t{0});
      const auto o = exhaustiveCompatibility(d, fan->maximalCones[0]);
      failures += !(o && r.verdict != Verdict::Inconclusive && (r.verdict == Verdict::Compatible) == o->compatible);
    }
    record("checker_matches_oracle", 30, failures);
  }
  {
    int failures = 0;
    for (int k = 0; k < 30; ++k) {
      const auto b = samples::randomBundle(rng, k % 2 ? samples::p2Fan() : samples::p1Fan(), 2, 2, 1);
      const bool glues = checkGluing(b).glues;
      const auto a = associatedKlyachko(b);
      const bool compatible = a.data && globalCompatibility(*a.data).verdict == Verdict::Compatible;
      failures += !(glues == a.data.has_value() && glues == compatible && cocycleCheck(b).holds);
    }
    record("gluing_consistency_compatibility_agree", 30, failures);
  }
  return {{{"seed", seed}, {"passed", all}, {"checks", checks}}, all ? Ok : Negative,
          all ? "selftest passed" : "selftest found a failure"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric principal bundles through filtration data"};
  app.require_subcommand(1);

  std::string f1, f2, f3, target;
  std::optional<int> cone;
  int degree = 3;
  unsigned seed = 1;
  CompatibilityOptions compatOptions;
  bool noRefutations = false;
  std::function<Outcome()> run;

  auto one = [&](const char* name, const char* help, std::function<Outcome(const std::string&)> fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", f1)->required();
    sub->callback([&, fn] { run = [&, fn] { return fn(f1); }; });
    return sub;
  };
  auto two = [&](const char* name, const char* help, std::function<Outcome(const std::string&, const std::string&)> fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("a", f1)->required();
    sub->add_option("b", f2)->required();
    sub->callback([&, fn] { run = [&, fn] { return fn(f1, f2); }; });
  };

  one("validate-fan", "Check a fan", validateFanCommand);
  one("validate-filt", "Check filtration data", validateFiltCommand);
  {
    auto* sub = one("compat", "Compatibility on every maximal cone, or one with --cone", [&](const std::string& f) {
      compatOptions.searchRefutations = !noRefutations;
      return compatCommand(f, cone, compatOptions);
    });
    sub->add_option("--cone", cone, "maximal cone index");
    sub->add_option("--exhaustive-dim-cap", compatOptions.exhaustiveDimCap, "largest dimension for exhaustive search");
    sub->add_option("--closure-cap", compatOptions.closureCap, "largest subspace lattice to generate");
    sub->add_flag("--no-refutations", noRefutations, "skip the witness search");
  }
  two("tensor", "Tensor product of filtration data", [](const std::string& a, const std::string& b) {
    return binaryFiltration(a, b, [](const auto& x, const auto& y) { return tensor(x, y); }, "tensor product");
  });
  one("dual", "Dual filtration data", [](const std::string& f) {
    const FiltrationData out = dual(loadFiltration(f));
    return Outcome{toJson(out), Ok, "dual of dimension " + std::to_string(out.dim())};
  });
  two("dsum", "Direct sum of filtration data", [](const std::string& a, const std::string& b) {
    return binaryFiltration(a, b, [](const auto& x, const auto& y) { return directSum(x, y); }, "direct sum");
  });
  {
    auto* sub = app.add_subcommand("morphism", "Check that a matrix respects the filtrations");
    sub->add_option("matrix", f1)->required();
    sub->add_option("a", f2)->required();
    sub->add_option("b", f3)->required();
    sub->callback([&] { run = [&] { return morphismCommand(f1, f2, f3); }; });
  }
  one("validate-bundle", "Check bundle data", validateBundleCommand);
  one("glue", "Regularity of the transition functions", glueCommand);
  one("cocycle", "Cocycle identity of the transition functions", cocycleCommand);
  one("assoc", "Associated filtration data of the standard representation", assocCommand);
  {
    auto* sub = one("algebra-check", "Filtered algebra axioms up to a degree", [&](const std::string& f) {
      return algebraCommand(f, degree, cone);
    });
    sub->add_option("--degree", degree, "truncation degree")->check(CLI::PositiveNumber);
    sub->add_option("--cone", cone, "maximal cone index");
  }
  one("reduce", "Reduction of structure group", [&](const std::string& f) { return reduceCommand(f, target); })
      ->add_option("--to", target, "sl or torus")
      ->required()
      ->check(CLI::IsMember({"sl", "torus"}));
  {
    auto* sub = app.add_subcommand("selftest", "Randomized consistency checks");
    sub->add_option("--seed", seed, "random seed");
    sub->callback([&] { run = [&] { return selftestCommand(seed); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Malformed;
  }

  Outcome out;
  try {
    out = run();
  } catch (const InputError& e) {
    out = {{{"error", {{"kind", "input"}, {"message", e.what()}}}}, Malformed, std::string("malformed input: ") + e.what()};
  } catch (const PreconditionError& e) {
    out = {{{"error", {{"kind", "precondition"}, {"message", e.what()}}}}, Malformed, std::string("precondition: ") + e.what()};
  } catch (const std::overflow_error& e) {
    out = {{{"error", {{"kind", "overflow"}, {"message", e.what()}}}}, Malformed, std::string("overflow: ") + e.what()};
  } catch (const std::exception& e) {
    out = {{{"error", {{"kind", "internal"}, {"message", e.what()}}}}, Internal, std::string("internal error: ") + e.what()};
  }
  std::cout << dumpJson(out.report);
  std::cerr << out.summary << "\n";
  return out.code;
}
