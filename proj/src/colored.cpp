#include "sphan/colored.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "sphan/errors.hpp"

namespace sphan {

RationalPoint Color::normalizedPoint() const {
  RationalPoint p(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    p[i] = Rational(rho[i], a);
    p[i].canonicalize();
  }
  return p;
}

ColoredFan::ColoredFan(std::size_t rank, RationalCone valuationCone, std::vector<Color> colors,
                       std::vector<ColoredCone> cones)
    : rank_(rank),
      valuationCone_(std::move(valuationCone)),
      colors_(std::move(colors)),
      cones_(std::move(cones)) {
  if (valuationCone_.rank() != rank_)
    fail(ErrorKind::InvalidColoredFan, "valuation cone has wrong rank");
  std::set<std::string> names;
  for (const auto& c : colors_) {
    if (c.rho.size() != rank_) fail(ErrorKind::InvalidColoredFan, "color " + c.name + " has wrong rank");
    if (c.a < 1) fail(ErrorKind::InvalidColoredFan, "color " + c.name + " has a_D < 1");
    if (!names.insert(c.name).second)
      fail(ErrorKind::InvalidColoredFan, "duplicate color name " + c.name);
  }
  for (auto& cone : cones_) {
    for (const auto& g : cone.generators)
      if (g.size() != rank_ || isZero(g))
        fail(ErrorKind::InvalidColoredFan, "colored cone generator " + toString(g) + " is invalid");
    for (const auto& n : cone.colors)
      if (!names.count(n)) fail(ErrorKind::InvalidColoredFan, "unknown color " + n);
    std::sort(cone.colors.begin(), cone.colors.end());
    cone.colors.erase(std::unique(cone.colors.begin(), cone.colors.end()), cone.colors.end());
  }
}

ColoredFan ColoredFan::fromToric(const Fan& fan) {
  std::vector<ColoredCone> cones;
  for (std::size_t i = 0; i < fan.cones().size(); ++i) cones.push_back({fan.coneRays(i), {}});
  return ColoredFan(fan.rank(), RationalCone::wholeSpace(fan.rank()), {}, cones);
}

const Color& ColoredFan::color(const std::string& name) const {
  for (const auto& c : colors_)
    if (c.name == name) return c;
  fail(ErrorKind::InvalidColoredFan, "unknown color " + name);
}

RationalCone ColoredFan::cone(std::size_t i) const {
  std::vector<LatticePoint> gens = cones_.at(i).generators;
  for (const auto& n : cones_[i].colors) gens.push_back(color(n).rho);
  return RationalCone::fromGenerators(rank_, gens);
}

RationalCone ColoredFan::trace(std::size_t i) const { return cone(i).intersect(valuationCone_); }

std::vector<RationalPoint> ColoredFan::anticanonicalPoints(std::size_t i) const {
  std::vector<RationalPoint> pts;
  for (const auto& g : cones_.at(i).generators) pts.push_back(toRational(g));
  for (const auto& n : cones_[i].colors) pts.push_back(color(n).normalizedPoint());
  return pts;
}

std::vector<LatticePoint> ColoredFan::valuationRays() const {
  std::set<LatticePoint> rays;
  for (const auto& c : cones_)
    for (const auto& g : c.generators) rays.insert(primitive(g));
  return {rays.begin(), rays.end()};
}

ColoredFan ColoredFan::transformed(const UnimodularMap& g) const {
  std::vector<Color> colors = colors_;
  for (auto& c : colors) c.rho = g.apply(c.rho);
  std::vector<ColoredCone> cones = cones_;
  for (auto& c : cones)
    for (auto& v : c.generators) v = g.apply(v);
  return ColoredFan(rank_, valuationCone_.transformed(g), colors, cones);
}

bool ValidationReport::valid() const {
  return std::all_of(items.begin(), items.end(), [](const ValidationItem& i) { return i.passed; });
}

ValidationReport validateColoredFan(const ColoredFan& cf) {
  ValidationReport report;
  const RationalCone& v = cf.valuationCone();
  {
    ValidationItem item{"valuation cone spans N_Q", v.isFullDimensional(), false, "", {}, {}};
    if (!item.passed) {
      item.detail = "valuation cone satisfies an equation";
      item.witnessFunctional = v.equations().front();
    }
    report.items.push_back(std::move(item));
  }
  {
    bool cosimplicial = rationalRank(v.facets()) == v.facets().size();
    report.items.push_back({"valuation cone is co-simplicial", cosimplicial, false,
                            cosimplicial ? "" : "facet normals are linearly dependent", {}, {}});
  }
  std::vector<RationalCone> traces;
  for (std::size_t i = 0; i < cf.cones().size(); ++i) {
    const std::string tag = "cone " + std::to_string(i) + ": ";
    RationalCone sigma = cf.cone(i);
    {
      ValidationItem item{tag + "strictly convex", sigma.isStrictlyConvex(), false, "", {}, {}};
      if (!item.passed) item.detail = "cone contains a line";
      report.items.push_back(std::move(item));
    }
    {
      ValidationItem item{tag + "generators lie in the valuation cone", true, false, "", {}, {}};
      for (const auto& g : cf.cones()[i].generators)
        if (!v.contains(g)) {
          item.passed = false;
          item.detail = "generator " + toString(g) + " is outside the valuation cone";
          item.witnessPoint = toRational(g);
          break;
        }
      report.items.push_back(std::move(item));
    }
    RationalCone t = sigma.intersect(v);
    {
      // σ⁰ ∩ 𝒱 ≠ ∅ iff no facet of σ vanishes on all of σ ∩ 𝒱.
      ValidationItem item{tag + "relative interior meets the valuation cone", true, false, "", {}, {}};
      for (const auto& f : sigma.facets()) {
        bool vanishes = std::all_of(t.generators().begin(), t.generators().end(),
                                    [&](const LatticePoint& g) { return dot(f, g) == 0; });
        if (vanishes) {
          item.passed = false;
          item.detail = "functional " + toString(f) +
                        " is positive on the relative interior of the cone and vanishes on its "
                        "intersection with the valuation cone";
          item.witnessFunctional = f;
          break;
        }
      }
      if (item.passed) {
        item.witnessPoint = t.interiorPoint();
        item.detail = "common point " + toString(*item.witnessPoint);
      }
      report.items.push_back(std::move(item));
    }
    traces.push_back(std::move(t));
  }
  {
    ValidationItem item{"traces on the valuation cone form a fan", true, false, "", {}, {}};
    for (std::size_t i = 0; i < traces.size() && item.passed; ++i)
      for (std::size_t j = i + 1; j < traces.size(); ++j) {
        RationalCone meet = traces[i].intersect(traces[j]);
        if (!meet.isFaceOf(traces[i]) || !meet.isFaceOf(traces[j])) {
          item.passed = false;
          item.detail = "traces of cones " + std::to_string(i) + " and " + std::to_string(j) +
                        " do not meet along a common face";
          item.witnessPoint = meet.interiorPoint();
          break;
        }
      }
    report.items.push_back(std::move(item));
  }
  {
    std::map<std::string, int> uses;
    for (const auto& c : cf.cones())
      for (const auto& n : c.colors) ++uses[n];
    std::string shared;
    for (const auto& [name, count] : uses)
      if (count > 1) shared += (shared.empty() ? "" : ", ") + name;
    report.items.push_back({"color assignments", true, !shared.empty(),
                            shared.empty() ? "" : "colors shared by several cones: " + shared, {}, {}});
  }
  return report;
}

namespace {

void requireValid(const ColoredFan& cf) {
  ValidationReport report = validateColoredFan(cf);
  for (const auto& item : report.items)
    if (!item.passed) fail(ErrorKind::InvalidColoredFan, item.check + ": " + item.detail);
}

bool completeOverValuationCone(const ColoredFan& cf) {
  if (cf.cones().empty()) return false;
  const RationalCone& v = cf.valuationCone();
  std::map<std::vector<LatticePoint>, int> facetCount;
  for (std::size_t i = 0; i < cf.cones().size(); ++i) {
    RationalCone t = cf.trace(i);
    if (!t.isFullDimensional()) return false;
    for (const auto& f : t.facets()) {
      std::vector<LatticePoint> face;
      for (const auto& g : t.generators())
        if (dot(f, g) == 0) face.push_back(g);
      bool onBoundary = std::any_of(v.facets().begin(), v.facets().end(), [&](const LatticeFunctional& h) {
        return std::all_of(face.begin(), face.end(), [&](const LatticePoint& g) { return dot(h, g) == 0; }) &&
               std::all_of(t.generators().begin(), t.generators().end(),
                           [&](const LatticePoint& g) { return dot(h, g) >= 0; }) &&
               RationalCone::fromGenerators(cf.rank(), face).dimension() + 1 == cf.rank();
      });
      if (!onBoundary) ++facetCount[face];
    }
  }
  return std::all_of(facetCount.begin(), facetCount.end(),
                     [](const auto& kv) { return kv.second == 2; });
}

}  // namespace

bool isCompleteColored(const ColoredFan& cf) {
  requireValid(cf);
  return completeOverValuationCone(cf);
}

bool isToroidal(const ColoredFan& cf) {
  return std::all_of(cf.cones().begin(), cf.cones().end(),
                     [](const ColoredCone& c) { return c.colors.empty(); });
}

CartierCheck isCartierColoredDivisor(const ColoredFan& cf, const DivisorCoefficients& coeffs) {
  requireValid(cf);
  CartierCheck out;
  out.isCartier = true;
  for (std::size_t i = 0; i < cf.cones().size(); ++i) {
    std::vector<LatticePoint> points;
    RationalPoint values;
    for (const auto& g : cf.cones()[i].generators) {
      auto it = coeffs.rays.find(g);
      if (it == coeffs.rays.end())
        fail(ErrorKind::IncompleteCoefficients, "no coefficient for ray " + toString(g));
      points.push_back(g);
      values.push_back(it->second);
    }
    for (const auto& n : cf.cones()[i].colors) {
      auto it = coeffs.colors.find(n);
      if (it == coeffs.colors.end())
        fail(ErrorKind::IncompleteCoefficients, "no coefficient for color " + n);
      points.push_back(cf.color(n).rho);
      values.push_back(it->second);
    }
    if (auto integral = solveIntegral(points, values, cf.rank())) {
      out.pieces.push_back(toRational(*integral));
      continue;
    }
    out.isCartier = false;
    std::vector<RationalPoint> rows;
    for (const auto& p : points) rows.push_back(toRational(p));
    out.pieces.push_back(solveLinear(rows, values, cf.rank()));
  }
  return out;
}

FanoBodies fanoBodies(const ColoredFan& cf) {
  requireValid(cf);
  if (!completeOverValuationCone(cf)) fail(ErrorKind::NotComplete, "colored fan does not cover the valuation cone");
  const std::size_t n = cf.rank();
  std::vector<RationalFunctional> pieces;
  for (std::size_t i = 0; i < cf.cones().size(); ++i) {
    auto pts = cf.anticanonicalPoints(i);
    auto l = solveLinear(pts, RationalPoint(pts.size(), Rational(1)), n);
    if (!l)
      fail(ErrorKind::NotQGorenstein,
           "points of colored cone " + std::to_string(i) + " lie on no common affine hyperplane");
    pieces.push_back(std::move(*l));
  }
  std::vector<RationalCone> sigmas;
  for (std::size_t i = 0; i < cf.cones().size(); ++i) sigmas.push_back(cf.cone(i));
  // (1) strict convexity: l_σ < l_σ' = 1 at the generators of σ' outside σ.
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (i == j) continue;
      for (const auto& w : cf.anticanonicalPoints(j)) {
        Rational value = dot(pieces[i], w);
        bool shared = sigmas[i].contains(w);
        if ((shared && value != 1) || (!shared && value >= 1))
          fail(ErrorKind::NotAmpleCondition1,
               "l of cone " + std::to_string(i) + " takes value " + value.get_str() + " at " + toString(w) +
                   " from cone " + std::to_string(j));
      }
    }
  // (2) colors outside 𝒟_σ satisfy l_σ(ρ(D)/a_D) < 1.
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& used = cf.cones()[i].colors;
    for (const auto& c : cf.colors()) {
      if (std::binary_search(used.begin(), used.end(), c.name)) continue;
      Rational value = dot(pieces[i], c.normalizedPoint());
      if (value >= 1)
        fail(ErrorKind::NotAmpleCondition2, "l of cone " + std::to_string(i) + " takes value " +
                                                 value.get_str() + " at color " + c.name);
    }
  }
  Polyhedron p = Polyhedron::fromInequalities(n, pieces, std::vector<Rational>(pieces.size(), Rational(1)));
  std::vector<RationalPoint> qPoints;
  for (const auto& r : cf.valuationRays()) qPoints.push_back(toRational(r));
  for (const auto& c : cf.colors()) qPoints.push_back(c.normalizedPoint());
  Polytope q = Polytope::convexHull(n, qPoints);
  if (!q.containsOriginInInterior())
    fail(ErrorKind::DegenerateQ,
         "valuation rays and normalized colors lie in a common half-space; Q does not contain 0 in its interior");
  if (!p.intersectCone(cf.valuationCone()).isBounded())
    fail(ErrorKind::UnboundedBody, "P meets the valuation cone in an unbounded set");
  return FanoBodies{std::move(pieces), std::move(p), std::move(q)};
}

namespace {

Polytope boundedRegion(const ColoredFan& cf, const FanoBodies& bodies) {
  return bodies.p.intersectCone(cf.valuationCone()).toPolytope();
}

bool onlyOriginInDilatedInterior(const ColoredFan& cf, const std::vector<RationalPoint>& region,
                                 const Rational& eps,
                                 const std::function<bool(const RationalPoint&)>& inInterior) {
  if (eps <= 0) fail(ErrorKind::InvalidInput, "epsilon must be positive");
  bool clean = true;
  const Rational inv = 1 / eps;
  forEachLatticePoint(boundingBox(region, eps), [&](const LatticePoint& u) {
    if (isZero(u) || !cf.valuationCone().contains(u)) return true;
    if (inInterior(scale(inv, toRational(u)))) {
      clean = false;
      return false;
    }
    return true;
  });
  return clean;
}

}  // namespace

bool isEpsilonLTColored(const ColoredFan& cf, const FanoBodies& bodies, const Rational& eps) {
  Polytope region = boundedRegion(cf, bodies);
  return onlyOriginInDilatedInterior(cf, region.vertices(), eps,
                                     [&](const RationalPoint& x) { return bodies.p.containsInInterior(x); });
}

bool isEpsilonLTColored(const ColoredFan& cf, const Rational& eps) {
  return isEpsilonLTColored(cf, fanoBodies(cf), eps);
}

bool epsilonQTest(const ColoredFan& cf, const FanoBodies& bodies, const Rational& eps) {
  return onlyOriginInDilatedInterior(cf, bodies.q.vertices(), eps,
                                     [&](const RationalPoint& x) { return bodies.q.containsInInterior(x); });
}

bool epsilonQTest(const ColoredFan& cf, const Rational& eps) { return epsilonQTest(cf, fanoBodies(cf), eps); }

Rational coloredMld(const ColoredFan& cf, const FanoBodies& bodies, MldVariant variant) {
  Polytope region = boundedRegion(cf, bodies);
  auto value = [&](const LatticePoint& u) {
    Rational best = 0;
    RationalPoint x = toRational(u);
    for (const auto& l : bodies.pieces) {
      Rational t = dot(l, x);
      if (t > best) best = t;
    }
    return best;
  };
  auto rays = cf.valuationRays();
  std::set<LatticePoint> raySet(rays.begin(), rays.end());
  auto scan = [&](const Rational& reach, bool exceptional) {
    std::optional<Rational> best;
    forEachLatticePoint(boundingBox(region.vertices(), reach), [&](const LatticePoint& u) {
      if (isZero(u) || !cf.valuationCone().contains(u)) return true;
      if (exceptional && (content(u) != 1 || raySet.count(u))) return true;
      Rational t = value(u);
      if (t <= reach && (!best || t < *best)) best = t;
      return true;
    });
    return best;
  };
  if (variant == MldVariant::Exceptional) {
    auto best = scan(Rational(2), true);
    return best && *best < 2 ? *best : Rational(2);
  }
  // l is positive on 𝒱 \ {0} and P ∩ 𝒱 is bounded, so doubling terminates.
  for (Rational reach = 1;; reach *= 2)
    if (auto best = scan(reach, false)) return *best;
}

}  // namespace sphan
