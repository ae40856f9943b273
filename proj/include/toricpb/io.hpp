#pragma once

#include "toricpb/bundle.hpp"
#include "toricpb/fan.hpp"
#include "toricpb/klyachko.hpp"
#include "toricpb/reduction.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace toricpb {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become InputError.
Json parseJson(const std::string& text);
/// Reads and parses a file; unreadable files become InputError.
Json readJsonFile(const std::filesystem::path& path);
/// Canonical text: two-space indentation, sorted keys, trailing newline.
std::string dumpJson(const Json& j);

Json toJson(const Rational& q);
Rational rationalFromJson(const Json& j);
Json toJson(const QMatrix& m);
QMatrix matrixFromJson(const Json& j);
Json toJson(const IntVector& v);
IntVector intVectorFromJson(const Json& j);

Json toJson(const Fan& fan);
Fan fanFromJson(const Json& j);
/// A "fan" field: a path relative to baseDir, or an inline fan object.
std::shared_ptr<const Fan> fanFromReference(const Json& j, const std::filesystem::path& baseDir);

/// Canonical form: the fan inline, each ray's jumps with canonical bases.
Json toJson(const FiltrationData& data);
RawFiltration rawFiltrationFromJson(const Json& j, const std::filesystem::path& baseDir = {});
FiltrationData filtrationFromJson(const Json& j, const std::filesystem::path& baseDir = {});

Json toJson(const CocharBundleData& data);
CocharBundleData bundleFromJson(const Json& j, const std::filesystem::path& baseDir = {});

Json toJson(const ConeDecomposition& d);
ConeDecomposition decompositionFromJson(const Json& j);
Json toJson(const Refutation& r);
Json toJson(const CompatibilityResult& r);

Json toJson(const LaurentMatrix& m);
LaurentMatrix laurentFromJson(const Json& j);

Json toJson(const GluingFailure& f);
Json toJson(const RayInconsistency& r);
Json toJson(const TorusReduction& t);

}  // namespace toricpb
