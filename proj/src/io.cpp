#include "toricpb/io.hpp"

#include "toricpb/errors.hpp"

#include <fstream>
#include <sstream>

namespace toricpb {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

Int intFromJson(const Json& j) {
  if (!j.is_number_integer()) throw InputError("expected an integer, got " + j.dump());
  return j.get<Int>();
}

int indexFromJson(const Json& j) {
  const Int v = intFromJson(j);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw InputError("index out of range: " + j.dump());
  return static_cast<int>(v);
}

const Json& arrayField(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  return a;
}

QMatrix rowsFromJson(const Json& j, Eigen::Index cols) {
  if (!j.is_array()) throw InputError("expected an array of rows");
  QMatrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw DimensionMismatch("row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rationalFromJson(j[r][c]);
  }
  return m;
}

Json subspaceToJson(const QSubspace& s) { return toJson(QMatrix(s.basis())); }

}  // namespace

Json parseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json readJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parseJson(buffer.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string dumpJson(const Json& j) { return j.dump(2) + "\n"; }

Json toJson(const Rational& q) { return formatRational(q); }

Rational rationalFromJson(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<Int>());
  if (j.is_string()) return parseRational(j.get<std::string>());
  throw InputError("expected a rational \"p/q\" string, got " + j.dump());
}

Json toJson(const QMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(toJson(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMatrix matrixFromJson(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("expected a non-empty array of rows");
  return rowsFromJson(j, static_cast<Eigen::Index>(j[0].size()));
}

Json toJson(const IntVector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

IntVector intVectorFromJson(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer array, got " + j.dump());
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = intFromJson(j[k]);
  return v;
}

Json toJson(const Fan& fan) {
  Json rays = Json::array();
  for (const auto& r : fan.rays) rays.push_back(toJson(r));
  return {{"rank", fan.rank}, {"rays", rays}, {"maximal_cones", fan.maximalCones}};
}

Fan fanFromJson(const Json& j) {
  Fan fan;
  fan.rank = indexFromJson(field(j, "rank"));
  for (const auto& r : arrayField(j, "rays")) fan.rays.push_back(intVectorFromJson(r));
  for (const auto& c : arrayField(j, "maximal_cones")) {
    if (!c.is_array()) throw InputError("each maximal cone must be an array of ray indices");
    std::vector<int> cone;
    for (const auto& idx : c) cone.push_back(indexFromJson(idx));
    fan.maximalCones.push_back(std::move(cone));
  }
  fan.checkShape();
  return fan;
}

std::shared_ptr<const Fan> fanFromReference(const Json& j, const std::filesystem::path& baseDir) {
  if (j.is_string()) {
    const std::filesystem::path path = baseDir / j.get<std::string>();
    return std::make_shared<const Fan>(fanFromJson(readJsonFile(path)));
  }
  if (j.is_object()) return std::make_shared<const Fan>(fanFromJson(j));
  throw InputError("a fan must be a path or an inline object");
}

Json toJson(const FiltrationData& data) {
  Json filtrations = Json::object();
  for (std::size_t ray = 0; ray < data.rayCount(); ++ray) {
    Json jumps = Json::array();
    for (const auto& jmp : data.jumps(static_cast<int>(ray)))
      jumps.push_back({{"i", jmp.index}, {"basis", subspaceToJson(jmp.space)}});
    filtrations[std::to_string(ray)] = std::move(jumps);
  }
  return {{"fan", toJson(data.fan())}, {"dim", data.dim()}, {"filtrations", filtrations}};
}

RawFiltration rawFiltrationFromJson(const Json& j, const std::filesystem::path& baseDir) {
  RawFiltration raw;
  raw.fan = fanFromReference(field(j, "fan"), baseDir);
  raw.dim = intFromJson(field(j, "dim"));
  if (raw.dim < 0) throw InputError("dim must be non-negative");
  const Json& filtrations = field(j, "filtrations");
  if (!filtrations.is_object()) throw InputError("'filtrations' must be an object keyed by ray index");
  for (const auto& [key, list] : filtrations.items()) {
    int ray = 0;
    try {
      std::size_t used = 0;
      ray = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::logic_error&) {
      throw InputError("ray key '" + key + "' is not an integer");
    }
    if (!list.is_array()) throw InputError("filtration of ray " + key + " must be an array");
    std::vector<Jump> jumps;
    for (const auto& entry : list) {
      const Json& basis = field(entry, "basis");
      // Rows are read at their own length so that ambient mismatches reach
      // validation instead of failing here.
      const Eigen::Index cols =
          basis.is_array() && !basis.empty() && basis[0].is_array() ? static_cast<Eigen::Index>(basis[0].size()) : raw.dim;
      jumps.push_back({intFromJson(field(entry, "i")), QSubspace::span(rowsFromJson(basis, cols), cols)});
    }
    raw.filtrations[ray] = std::move(jumps);
  }
  return raw;
}

FiltrationData filtrationFromJson(const Json& j, const std::filesystem::path& baseDir) {
  return FiltrationData::fromRaw(rawFiltrationFromJson(j, baseDir));
}

Json toJson(const CocharBundleData& data) {
  Json cones = Json::array();
  for (const auto& c : data.cones) {
    Json chars = Json::array();
    for (const auto& u : c.characters) chars.push_back(toJson(u));
    cones.push_back({{"cone", c.cone}, {"frame", toJson(c.frame)}, {"chars", chars}});
  }
  return {{"group", {{"kind", groupKindName(data.group.kind)}, {"n", data.group.n}}},
          {"fan", toJson(*data.fan)},
          {"cones", cones}};
}

CocharBundleData bundleFromJson(const Json& j, const std::filesystem::path& baseDir) {
  CocharBundleData data;
  const Json& group = field(j, "group");
  const Json& kind = field(group, "kind");
  if (!kind.is_string()) throw InputError("group kind must be a string");
  data.group.kind = parseGroupKind(kind.get<std::string>());
  data.group.n = intFromJson(field(group, "n"));
  if (data.group.n < 1) throw InputError("group size must be positive");
  data.fan = fanFromReference(field(j, "fan"), baseDir);
  for (const auto& c : arrayField(j, "cones")) {
    ConeFrame frame;
    frame.cone = indexFromJson(field(c, "cone"));
    frame.frame = rowsFromJson(field(c, "frame"), data.group.n);
    for (const auto& u : arrayField(c, "chars")) frame.characters.push_back(intVectorFromJson(u));
    data.cones.push_back(std::move(frame));
  }
  return data;
}

Json toJson(const ConeDecomposition& d) {
  Json pieces = Json::array();
  for (const auto& p : d.pieces)
    pieces.push_back({{"class", toJson(p.character)}, {"pairings", toJson(p.pairings)}, {"basis", subspaceToJson(p.space)}});
  Json out = {{"rays", d.rays}, {"pieces", pieces}};
  if (d.coneIndex >= 0) out["cone"] = d.coneIndex;
  return out;
}

ConeDecomposition decompositionFromJson(const Json& j) {
  ConeDecomposition d;
  if (j.contains("cone")) d.coneIndex = indexFromJson(j["cone"]);
  for (const auto& r : arrayField(j, "rays")) d.rays.push_back(indexFromJson(r));
  for (const auto& p : arrayField(j, "pieces")) {
    GradedPiece piece;
    piece.character = intVectorFromJson(field(p, "class"));
    piece.pairings = intVectorFromJson(field(p, "pairings"));
    const QMatrix basis = matrixFromJson(field(p, "basis"));
    piece.space = QSubspace::span(basis, basis.cols());
    d.pieces.push_back(std::move(piece));
  }
  return d;
}

Json toJson(const Refutation& r) {
  Json out = {{"kind", r.kind}, {"message", r.message}};
  if (!r.triple.empty()) {
    Json subspaces = Json::array();
    for (const auto& s : r.triple) subspaces.push_back(subspaceToJson(s));
    out["subspaces"] = subspaces;
    out["labels"] = r.tripleLabels;
  }
  if (r.tuple.size() > 0) out["tuple"] = toJson(r.tuple);
  return out;
}

Json toJson(const CompatibilityResult& r) {
  Json out = {{"verdict", verdictName(r.verdict)}, {"method", r.method}};
  if (r.certificate) out["certificate"] = toJson(*r.certificate);
  if (r.refutation) out["refutation"] = toJson(*r.refutation);
  return out;
}

Json toJson(const LaurentMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.size(); ++j) {
      Json terms = Json::array();
      for (const auto& [u, c] : m.entry(i, j)) terms.push_back({{"exp", toJson(u)}, {"coef", toJson(c)}});
      row.push_back(std::move(terms));
    }
    rows.push_back(std::move(row));
  }
  return {{"rank", m.rank()}, {"entries", rows}};
}

LaurentMatrix laurentFromJson(const Json& j) {
  const int rank = indexFromJson(field(j, "rank"));
  const Json& rows = arrayField(j, "entries");
  const auto n = static_cast<Eigen::Index>(rows.size());
  LaurentMatrix m(n, rank);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw DimensionMismatch("Laurent matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k)
      for (const auto& term : row[static_cast<std::size_t>(k)]) {
        const IntVector u = intVectorFromJson(field(term, "exp"));
        if (u.size() != rank) throw DimensionMismatch("exponent of the wrong length");
        m.addTerm(i, k, u, rationalFromJson(field(term, "coef")));
      }
  }
  return m;
}

Json toJson(const GluingFailure& f) {
  return {{"pair", {f.pair[0], f.pair[1]}},
          {"transition", {f.from[0], f.from[1]}},
          {"entry", {f.entry[0], f.entry[1]}},
          {"exponent", toJson(f.exponent)},
          {"ray", toJson(f.ray)},
          {"pairing", f.pairing}};
}

Json toJson(const RayInconsistency& r) {
  return {{"cones", {r.coneA, r.coneB}},
          {"ray", r.ray},
          {"i", r.index},
          {"bases", {subspaceToJson(r.fromA), subspaceToJson(r.fromB)}}};
}

Json toJson(const TorusReduction& t) {
  Json out = {{"found", t.found}, {"candidate_lines", t.candidateCount}};
  if (t.found) {
    Json lines = Json::array();
    for (std::size_t k = 0; k < t.lines.size(); ++k) {
      Json jumps = Json::array();
      for (std::size_t ray = 0; ray < t.summands[k].rayCount(); ++ray)
        jumps.push_back(t.summands[k].jumpIndices(static_cast<int>(ray)).back());
      lines.push_back({{"line", toJson(QMatrix(t.lines[k]))[0]}, {"jumps", jumps}});
    }
    out["splitting"] = lines;
  }
  return out;
}

}  // namespace toricpb
