#include "sphan/json_io.hpp"

#include <regex>

#include "sphan/errors.hpp"

namespace sphan::json {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorKind::InvalidInput, path + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, "missing field \"" + key + "\"");
  return *it;
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string dotted(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::size_t readRank(const json& j) {
  Integer r = readInteger(field(j, "rank", "<root>"), "rank");
  if (r < 1 || r > 64) bad("rank", "expected a positive rank");
  return r.get_ui();
}

std::size_t readIndex(const json& j, const std::string& path) {
  Integer i = readInteger(j, path);
  if (i < 0 || !i.fits_ulong_p()) bad(path, "expected a nonnegative index");
  return i.get_ui();
}

std::vector<LatticePoint> readLatticePoints(const json& j, std::size_t rank, const std::string& path) {
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(readLatticePoint(j[i], rank, at(path, i)));
  return out;
}

std::vector<RationalPoint> readRationalPoints(const json& j, std::size_t rank, const std::string& path) {
  std::vector<RationalPoint> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(readRationalPoint(j[i], rank, at(path, i)));
  return out;
}

std::vector<Color> readColors(const json& j, std::size_t rank) {
  std::vector<Color> colors;
  if (!j.contains("colors")) return colors;
  const json& cs = array(j["colors"], "colors");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string path = at("colors", i);
    const json& name = field(cs[i], "name", path);
    if (!name.is_string()) bad(dotted(path, "name"), "expected a string");
    colors.push_back({name.get<std::string>(), readLatticePoint(field(cs[i], "rho", path), rank, dotted(path, "rho")),
                      readInteger(field(cs[i], "a", path), dotted(path, "a"))});
  }
  return colors;
}

}  // namespace

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorKind::InvalidInput, source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                      ": malformed JSON");
  }
}

Integer readInteger(const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    static const std::regex digits("-?[0-9]+");
    const auto& s = j.get_ref<const std::string&>();
    if (std::regex_match(s, digits)) return Integer(s);
  }
  bad(path, "expected an integer");
}

Rational readRational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(readInteger(j, path));
  if (j.is_array() && j.size() == 2) {
    Integer den = readInteger(j[1], at(path, 1));
    if (den == 0) bad(path, "zero denominator");
    Rational r(readInteger(j[0], at(path, 0)), den);
    r.canonicalize();
    return r;
  }
  if (j.is_number_float()) bad(path, "decimal numbers are not accepted; use an exact \"p/q\" string");
  if (!j.is_string()) bad(path, "expected a rational \"p/q\"");
  try {
    return parseRational(j.get<std::string>());
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

LatticePoint readLatticePoint(const json& j, std::size_t rank, const std::string& path) {
  if (!j.is_array() || j.size() != rank) bad(path, "expected an integer vector of length " + std::to_string(rank));
  LatticePoint v;
  for (std::size_t i = 0; i < rank; ++i) v.push_back(readInteger(j[i], at(path, i)));
  return v;
}

RationalPoint readRationalPoint(const json& j, std::size_t rank, const std::string& path) {
  if (!j.is_array() || j.size() != rank) bad(path, "expected a rational vector of length " + std::to_string(rank));
  RationalPoint v;
  for (std::size_t i = 0; i < rank; ++i) v.push_back(readRational(j[i], at(path, i)));
  return v;
}

Fan readFan(const json& j) {
  const std::size_t rank = readRank(j);
  auto rays = readLatticePoints(field(j, "rays", "<root>"), rank, "rays");
  std::vector<std::vector<std::size_t>> cones;
  const json& cs = array(field(j, "cones", "<root>"), "cones");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::vector<std::size_t> cone;
    for (std::size_t k = 0; k < array(cs[i], at("cones", i)).size(); ++k)
      cone.push_back(readIndex(cs[i][k], at(at("cones", i), k)));
    cones.push_back(std::move(cone));
  }
  return Fan(rank, std::move(rays), std::move(cones));
}

Polytope readPolytope(const json& j) {
  const std::size_t rank = readRank(j);
  auto verts = readRationalPoints(field(j, "vertices", "<root>"), rank, "vertices");
  if (verts.empty()) bad("vertices", "expected at least one point");
  return Polytope::convexHull(rank, verts);
}

RationalCone readCone(const json& j, std::size_t rank, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  if (j.contains("facets")) {
    auto facets = readLatticePoints(j["facets"], rank, dotted(path, "facets"));
    std::vector<LatticeFunctional> eqs;
    if (j.contains("equations")) eqs = readLatticePoints(j["equations"], rank, dotted(path, "equations"));
    return RationalCone::fromInequalities(rank, facets, eqs);
  }
  if (j.contains("generators"))
    return RationalCone::fromGenerators(rank, readLatticePoints(j["generators"], rank, dotted(path, "generators")));
  bad(path, "expected \"facets\" or \"generators\"");
}

ColoredFan readColoredFan(const json& j) {
  const std::size_t rank = readRank(j);
  RationalCone v = readCone(field(j, "valuation_cone", "<root>"), rank, "valuation_cone");
  std::vector<ColoredCone> cones;
  const json& cs = array(field(j, "cones", "<root>"), "cones");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string path = at("cones", i);
    ColoredCone cone;
    cone.generators = readLatticePoints(field(cs[i], "generators", path), rank, dotted(path, "generators"));
    if (cs[i].contains("colors")) {
      const json& names = array(cs[i]["colors"], dotted(path, "colors"));
      for (std::size_t k = 0; k < names.size(); ++k) {
        if (!names[k].is_string()) bad(at(dotted(path, "colors"), k), "expected a color name");
        cone.colors.push_back(names[k].get<std::string>());
      }
    }
    cones.push_back(std::move(cone));
  }
  return ColoredFan(rank, std::move(v), readColors(j, rank), std::move(cones));
}

ColoredSkeleton readColoredSkeleton(const json& j) {
  ColoredSkeleton sk;
  sk.rank = readRank(j);
  sk.valuationCone = readCone(field(j, "valuation_cone", "<root>"), sk.rank, "valuation_cone");
  sk.colors = readColors(j, sk.rank);
  for (const auto& c : sk.colors)
    if (c.a < 1) bad("colors", "color " + c.name + " has a < 1");
  return sk;
}

CombFinitenessData readCombFinitenessData(const json& j) {
  const json& rows = array(field(j, "pi", "<root>"), "pi");
  if (rows.empty() || !rows[0].is_array() || rows[0].empty()) bad("pi", "expected a nonempty integer matrix");
  const std::size_t n = rows[0].size();
  const std::size_t m = rows.size();
  auto pi = QuotientMap(IntMatrix::fromRows(readLatticePoints(rows, n, "pi"), n));
  RationalCone tildeV = readCone(field(j, "tilde_v", "<root>"), m, "tilde_v");
  Integer a = readInteger(field(j, "a", "<root>"), "a");
  auto tildeD = readRationalPoints(field(j, "tilde_d", "<root>"), m, "tilde_d");
  return CombFinitenessData(std::move(pi), std::move(tildeV), std::move(a), std::move(tildeD));
}

CandidatePolytope readCandidate(const json& j, const CombFinitenessData& data) {
  const std::size_t n = data.pi().sourceRank();
  std::vector<DPoint> dPoints;
  if (j.contains("d_points")) {
    const json& ds = array(j["d_points"], "d_points");
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const std::string path = at("d_points", i);
      dPoints.push_back({readIndex(field(ds[i], "index", path), dotted(path, "index")),
                         readRationalPoint(field(ds[i], "lift", path), n, dotted(path, "lift"))});
    }
  }
  std::vector<LatticePoint> vPoints;
  if (j.contains("v_points")) vPoints = readLatticePoints(j["v_points"], n, "v_points");
  return CandidatePolytope(data, std::move(dPoints), std::move(vPoints));
}

json write(const Integer& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

json write(const Rational& q) { return json(ratString(q)); }

json write(const LatticePoint& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(write(z));
  return out;
}

json write(const RationalPoint& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(write(q));
  return out;
}

json write(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(write(m.row(i)));
  return out;
}

namespace {

json writeAll(const std::vector<LatticePoint>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(write(v));
  return out;
}

json writeConstraints(const std::vector<AffineConstraint>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back({{"normal", write(c.normal)}, {"offset", write(c.offset)}});
  return out;
}

}  // namespace

json write(const RationalCone& c) {
  json out = {{"rank", c.rank()}, {"generators", writeAll(c.generators())}, {"facets", writeAll(c.facets())}};
  if (!c.equations().empty()) out["equations"] = writeAll(c.equations());
  return out;
}

json write(const Polytope& q) {
  json verts = json::array();
  for (const auto& v : q.vertices()) verts.push_back(write(v));
  json out = {{"rank", q.rank()}, {"vertices", verts}, {"facets", writeConstraints(q.facets())}};
  if (!q.equations().empty()) out["equations"] = writeConstraints(q.equations());
  return out;
}

json write(const Polyhedron& p) {
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(write(v));
  return {{"rank", p.rank()},
          {"bounded", p.isBounded()},
          {"vertices", verts},
          {"recession_cone", writeAll(p.recessionCone().generators())},
          {"facets", writeConstraints(p.facets())}};
}

json write(const Fan& fan) {
  return {{"rank", fan.rank()}, {"rays", writeAll(fan.rays())}, {"cones", fan.cones()}};
}

json write(const ColoredFan& cf) {
  json v = {{"facets", writeAll(cf.valuationCone().facets())}};
  if (!cf.valuationCone().equations().empty()) v["equations"] = writeAll(cf.valuationCone().equations());
  json colors = json::array();
  for (const auto& c : cf.colors()) colors.push_back({{"name", c.name}, {"rho", write(c.rho)}, {"a", write(c.a)}});
  json cones = json::array();
  for (const auto& c : cf.cones()) cones.push_back({{"generators", writeAll(c.generators)}, {"colors", c.colors}});
  return {{"rank", cf.rank()}, {"valuation_cone", v}, {"colors", colors}, {"cones", cones}};
}

json write(const FanoReport& r) {
  json out = {{"is_complete", r.isComplete}, {"is_q_gorenstein", r.isQGorenstein}, {"is_fano", r.isFano}};
  if (r.index) out["index"] = write(*r.index);
  if (r.mldAll) out["mld_all"] = write(*r.mldAll);
  if (r.mldExceptional) out["mld_exceptional"] = write(*r.mldExceptional);
  if (r.fanoPolytope) out["fano_polytope"] = write(*r.fanoPolytope);
  if (r.epsilon) out["epsilon"] = write(*r.epsilon);
  if (r.epsilonLT) out["epsilon_lt"] = *r.epsilonLT;
  return out;
}

json write(const ValidationReport& report) {
  json checks = json::array();
  for (const auto& item : report.items) {
    json c = {{"check", item.check}, {"passed", item.passed}, {"warning", item.warning}};
    if (!item.detail.empty()) c["detail"] = item.detail;
    if (item.witnessPoint) c["witness_point"] = write(*item.witnessPoint);
    if (item.witnessFunctional) c["witness_functional"] = write(*item.witnessFunctional);
    checks.push_back(std::move(c));
  }
  return {{"valid", report.valid()}, {"checks", checks}};
}

json write(const NormalFormKey& key) {
  json sigs = json::array();
  for (const auto& s : key.signatures) sigs.push_back(write(s));
  return {{"signatures", sigs}, {"matrix", write(key.matrix)}};
}

json write(const FanoSearchResult& r) {
  json out = {{"status", r.bestMld ? "ok" : "no_fano_found"},
              {"search_bound", r.searchBound},
              {"exhaustive", r.exhaustive},
              {"optimal", r.optimal},
              {"candidates_evaluated", r.candidatesEvaluated}};
  out["best_mld"] = r.bestMld ? write(*r.bestMld) : json(nullptr);
  if (r.fanWitness) out["witness"] = write(*r.fanWitness);
  if (r.coloredWitness) out["witness"] = write(*r.coloredWitness);
  return out;
}

json write(const UnimodularMap& g) { return write(g.matrix()); }

json classificationRecord(const ClassifiedPolytope& cls, const Rational& eps, int box) {
  Polytope q = Polytope::convexHull(2, cls.vertices);
  Fan fan = faceFan(q);
  return {{"key", write(cls.key.matrix)},
          {"vertices", writeAll(cls.vertices)},
          {"index", write(gorensteinIndex(fan))},
          {"mld_all", write(mldOfPolytope(q, fan.rays(), MldVariant::All))},
          {"eps_tested", write(eps)},
          {"box", box}};
}

}  // namespace sphan::json
