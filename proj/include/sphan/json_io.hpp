#pragma once

// JSON readers and writers for every file format the tool exchanges. All
// rationals are written as "p/q" strings and read from "p/q" strings, integers
// or [num, den] pairs; integers may be given as JSON numbers or decimal strings.

#include <string>

#include <json.hpp>

#include "sphan/classify.hpp"
#include "sphan/colored.hpp"
#include "sphan/fano_invariant.hpp"
#include "sphan/toric.hpp"

namespace sphan::json {

using nlohmann::json;

/// Parses text, rethrowing syntax errors as InvalidInput with line and column.
json parse(const std::string& text, const std::string& source = "input");

Integer readInteger(const json& j, const std::string& path);
Rational readRational(const json& j, const std::string& path);
LatticePoint readLatticePoint(const json& j, std::size_t rank, const std::string& path);
RationalPoint readRationalPoint(const json& j, std::size_t rank, const std::string& path);

/// {"rank", "rays", "cones"}
Fan readFan(const json& j);
/// {"rank", "vertices"}
Polytope readPolytope(const json& j);
/// {"facets": [...]} or {"generators": [...]}, with the rank given.
RationalCone readCone(const json& j, std::size_t rank, const std::string& path);
/// {"rank", "valuation_cone", "colors", "cones"}
ColoredFan readColoredFan(const json& j);
/// Same as a colored fan without "cones".
ColoredSkeleton readColoredSkeleton(const json& j);
/// {"pi", "tilde_v", "a", "tilde_d"}
CombFinitenessData readCombFinitenessData(const json& j);
/// {"d_points": [{"index", "lift"}], "v_points"}
CandidatePolytope readCandidate(const json& j, const CombFinitenessData& data);

json write(const Integer& z);
json write(const Rational& q);
json write(const LatticePoint& v);
json write(const RationalPoint& v);
json write(const IntMatrix& m);
json write(const RationalCone& c);
json write(const Polytope& q);
json write(const Polyhedron& p);
json write(const Fan& fan);
json write(const ColoredFan& cf);
json write(const FanoReport& report);
json write(const ValidationReport& report);
json write(const NormalFormKey& key);
json write(const FanoSearchResult& result);
json write(const UnimodularMap& g);

/// One classification database line.
json classificationRecord(const ClassifiedPolytope& cls, const Rational& eps, int box);

}  // namespace sphan::json
