#include "sphan/toric.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sphan/errors.hpp"

namespace sphan {

Fan::Fan(std::size_t rank, std::vector<LatticePoint> rays, std::vector<std::vector<std::size_t>> cones)
    : rank_(rank), rays_(std::move(rays)), cones_(std::move(cones)) {
  std::set<LatticePoint> seen;
  for (const auto& r : rays_) {
    if (r.size() != rank_) fail(ErrorKind::InvalidInput, "ray " + toString(r) + " has wrong rank");
    if (isZero(r) || content(r) != 1)
      fail(ErrorKind::InvalidInput, "ray " + toString(r) + " is not a primitive nonzero vector");
    if (!seen.insert(r).second) fail(ErrorKind::InvalidInput, "duplicate ray " + toString(r));
  }
  for (auto& cone : cones_) {
    if (cone.empty()) fail(ErrorKind::InvalidInput, "cone without rays");
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
      fail(ErrorKind::InvalidInput, "cone lists a ray twice");
    for (auto i : cone)
      if (i >= rays_.size()) fail(ErrorKind::InvalidInput, "cone refers to a missing ray");
  }
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    auto listed = coneRays(i);
    RationalCone c = RationalCone::fromGenerators(rank_, listed);
    if (!c.isStrictlyConvex())
      fail(ErrorKind::InvalidInput, "cone " + std::to_string(i) + " is not strictly convex");
    std::sort(listed.begin(), listed.end());
    if (c.generators() != listed)
      fail(ErrorKind::InvalidInput, "cone " + std::to_string(i) + " lists a redundant ray");
    maximalCones_.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (std::size_t j = i + 1; j < cones_.size(); ++j) {
      RationalCone meet = maximalCones_[i].intersect(maximalCones_[j]);
      if (!meet.isFaceOf(maximalCones_[i]) || !meet.isFaceOf(maximalCones_[j]))
        fail(ErrorKind::InvalidInput, "cones " + std::to_string(i) + " and " + std::to_string(j) +
                                          " do not meet along a common face");
    }
}

std::vector<LatticePoint> Fan::coneRays(std::size_t i) const {
  std::vector<LatticePoint> out;
  for (auto r : cones_[i]) out.push_back(rays_[r]);
  return out;
}

Fan Fan::transformed(const UnimodularMap& g) const {
  std::vector<LatticePoint> rays;
  for (const auto& r : rays_) rays.push_back(g.apply(r));
  return Fan(rank_, rays, cones_);
}

Integer SupportFunction::denominator(std::size_t i) const {
  return commonDenominator(pieces.at(i));
}

bool isComplete(const Fan& fan) {
  if (fan.cones().empty()) return false;
  std::map<std::vector<std::size_t>, int> facetCount;
  for (std::size_t i = 0; i < fan.cones().size(); ++i) {
    const RationalCone& c = fan.maximalCones()[i];
    if (!c.isFullDimensional()) return false;
    for (const auto& f : c.facets()) {
      std::vector<std::size_t> onFacet;
      for (auto r : fan.cones()[i])
        if (dot(f, fan.rays()[r]) == 0) onFacet.push_back(r);
      ++facetCount[onFacet];
    }
  }
  return std::all_of(facetCount.begin(), facetCount.end(),
                     [](const auto& kv) { return kv.second == 2; });
}

SupportFunction anticanonicalSupportFunction(const Fan& fan) {
  SupportFunction l;
  for (std::size_t i = 0; i < fan.cones().size(); ++i) {
    std::vector<RationalPoint> rows;
    for (const auto& r : fan.coneRays(i)) rows.push_back(toRational(r));
    auto piece = solveLinear(rows, RationalPoint(rows.size(), Rational(1)), fan.rank());
    if (!piece)
      fail(ErrorKind::NotQGorenstein,
           "generators of cone " + std::to_string(i) + " lie on no common affine hyperplane");
    l.pieces.push_back(std::move(*piece));
  }
  return l;
}

Integer gorensteinIndex(const Fan& fan) {
  SupportFunction l = anticanonicalSupportFunction(fan);
  Integer index = 1;
  for (std::size_t i = 0; i < l.pieces.size(); ++i) index = lcm(index, l.denominator(i));
  return index;
}

FanoCheck isFano(const Fan& fan) {
  if (!isComplete(fan)) fail(ErrorKind::NotComplete, "fan is not complete");
  SupportFunction l = anticanonicalSupportFunction(fan);
  // Strict convexity: l_σ(v) < 1 for every ray v outside σ.
  for (std::size_t i = 0; i < fan.cones().size(); ++i) {
    const auto& cone = fan.cones()[i];
    for (std::size_t r = 0; r < fan.rays().size(); ++r) {
      if (std::binary_search(cone.begin(), cone.end(), r)) continue;
      if (dot(l.pieces[i], toRational(fan.rays()[r])) >= 1) return FanoCheck{};
    }
  }
  return FanoCheck{true, Polytope::convexHull(fan.rank(), fan.rays())};
}

Fan faceFan(const Polytope& q) {
  if (!q.isFullDimensional()) fail(ErrorKind::NotFullDimensional, "polytope is not full-dimensional");
  if (!q.containsOriginInInterior())
    fail(ErrorKind::OriginNotInterior, "origin is not an interior point of the polytope");
  auto vertices = q.latticeVertices();
  std::vector<LatticePoint> rays;
  for (const auto& v : vertices) rays.push_back(primitive(v));
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t i = 0; i < q.facets().size(); ++i) cones.push_back(q.verticesOnFacet(i));
  return Fan(q.rank(), rays, cones);
}

namespace {

struct PositiveFacets {
  std::vector<LatticeFunctional> normals;
  std::vector<Rational> offsets;

  explicit PositiveFacets(const Polytope& q) {
    for (const auto& f : q.facets()) {
      normals.push_back(f.normal);
      offsets.push_back(f.offset);
    }
  }

  Rational gauge(const LatticePoint& u) const {
    Rational t = 0;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      Rational r = Rational(dot(normals[i], u)) / offsets[i];
      if (r > t) t = r;
    }
    return t;
  }
};

}  // namespace

Rational mldOfPolytope(const Polytope& q, const std::vector<LatticePoint>& rays, MldVariant variant) {
  if (!q.containsOriginInInterior())
    fail(ErrorKind::OriginNotInterior, "origin is not an interior point of the polytope");
  PositiveFacets facets(q);
  // Every ray has gauge 1 and the exceptional variant is capped at 2, so the
  // dilations 1·Q resp. 2·Q enclose every candidate that can matter.
  const Rational reach = variant == MldVariant::All ? Rational(1) : Rational(2);
  std::optional<Rational> best;
  std::set<LatticePoint> raySet(rays.begin(), rays.end());
  forEachLatticePoint(boundingBox(q.vertices(), reach), [&](const LatticePoint& u) {
    if (isZero(u)) return true;
    if (variant == MldVariant::Exceptional && (content(u) != 1 || raySet.count(u))) return true;
    Rational g = facets.gauge(u);
    if (g > reach) return true;
    if (!best || g < *best) best = g;
    return true;
  });
  if (variant == MldVariant::Exceptional) return best && *best < 2 ? *best : Rational(2);
  if (!best) fail(ErrorKind::InternalInvariant, "no nonzero lattice point in the Fano polytope");
  return *best;
}

Rational mld(const Fan& fan, MldVariant variant) {
  FanoCheck check = isFano(fan);
  if (!check.isFano) fail(ErrorKind::NotFano, "fan is not Fano");
  return mldOfPolytope(*check.polytope, fan.rays(), variant);
}

bool isEpsilonLTPolytope(const Polytope& q, const Rational& eps) {
  auto points = latticePointsInDilationInterior(q, eps);
  return std::all_of(points.begin(), points.end(), [](const LatticePoint& u) { return isZero(u); });
}

bool isEpsilonLT(const Fan& fan, const Rational& eps) {
  FanoCheck check = isFano(fan);
  if (!check.isFano) fail(ErrorKind::NotFano, "fan is not Fano");
  return isEpsilonLTPolytope(*check.polytope, eps);
}

FanoReport analyzeFan(const Fan& fan, const std::optional<Rational>& eps) {
  FanoReport report;
  report.isComplete = isComplete(fan);
  try {
    report.index = gorensteinIndex(fan);
    report.isQGorenstein = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotQGorenstein) throw;
  }
  if (report.isComplete && report.isQGorenstein) {
    FanoCheck check = isFano(fan);
    report.isFano = check.isFano;
    if (check.isFano) {
      report.fanoPolytope = check.polytope;
      report.mldAll = mldOfPolytope(*check.polytope, fan.rays(), MldVariant::All);
      report.mldExceptional = mldOfPolytope(*check.polytope, fan.rays(), MldVariant::Exceptional);
      if (eps) {
        report.epsilon = eps;
        report.epsilonLT = isEpsilonLTPolytope(*check.polytope, *eps);
      }
    }
  }
  if (eps && !report.epsilon) report.epsilon = eps;
  return report;
}

}  // namespace sphan
