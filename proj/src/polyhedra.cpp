#include "sphan/polyhedra.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sphan/errors.hpp"

namespace sphan {

namespace {

// Calls visit(indices) for every r-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void forEachCombination(std::size_t n, std::size_t r, Visit&& visit) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    if (r == 0) return;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<LatticePoint> cleanVectors(const std::vector<LatticePoint>& in) {
  std::set<LatticePoint> seen;
  for (const auto& v : in)
    if (!isZero(v)) seen.insert(primitive(v));
  return {seen.begin(), seen.end()};
}

struct HRep {
  std::vector<LatticeFunctional> facets;
  std::vector<LatticeFunctional> equations;
};

// Facets of cone(gens): every facet contains dim-1 linearly independent
// generators, so scanning those subsets finds all of them.
HRep computeFacets(std::size_t n, const std::vector<LatticePoint>& gens) {
  HRep out;
  out.equations = integerKernel(IntMatrix::fromRows(gens, n));
  if (gens.empty()) {
    out.equations = integerKernel(IntMatrix(0, n));
    return out;
  }
  const std::size_t d = n - out.equations.size();
  if (d == 0) return out;
  std::set<LatticeFunctional> found;
  forEachCombination(gens.size(), d - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<LatticePoint> rows = out.equations;
    for (auto i : idx) rows.push_back(gens[i]);
    if (rationalRank(rows) != n - 1) return;
    auto ns = nullspace(rows, n);
    if (ns.size() != 1) return;
    LatticeFunctional h = ns.front();
    bool allNonNeg = true, allNonPos = true;
    for (const auto& g : gens) {
      int s = sgn(dot(h, g));
      if (s < 0) allNonNeg = false;
      if (s > 0) allNonPos = false;
    }
    if (allNonNeg && !allNonPos) found.insert(h);
    else if (allNonPos && !allNonNeg) found.insert(negate(h));
  });
  out.facets.assign(found.begin(), found.end());
  return out;
}

struct VRep {
  std::vector<LatticePoint> rays;
  std::vector<LatticePoint> lineality;
};

VRep computeRays(std::size_t n, const std::vector<LatticeFunctional>& ineqs,
                 const std::vector<LatticeFunctional>& eqs) {
  VRep out;
  std::vector<LatticePoint> all = ineqs;
  all.insert(all.end(), eqs.begin(), eqs.end());
  out.lineality = integerKernel(IntMatrix::fromRows(all, n));
  std::vector<LatticePoint> fixed = eqs;
  fixed.insert(fixed.end(), out.lineality.begin(), out.lineality.end());
  const std::size_t fixedRank = rationalRank(fixed);
  if (fixedRank >= n) return out;
  const std::size_t need = n - 1 - fixedRank;
  std::set<LatticePoint> found;
  forEachCombination(ineqs.size(), need, [&](const std::vector<std::size_t>& idx) {
    std::vector<LatticePoint> rows = fixed;
    for (auto i : idx) rows.push_back(ineqs[i]);
    if (rationalRank(rows) != n - 1) return;
    auto ns = nullspace(rows, n);
    if (ns.size() != 1) return;
    LatticePoint r = ns.front();
    bool pos = true, neg = true;
    for (const auto& f : ineqs) {
      int s = sgn(dot(f, r));
      if (s < 0) pos = false;
      if (s > 0) neg = false;
    }
    if (pos) found.insert(r);
    else if (neg) found.insert(negate(r));
  });
  out.rays.assign(found.begin(), found.end());
  return out;
}

std::vector<LatticePoint> generatorsFrom(const VRep& v) {
  std::vector<LatticePoint> g = v.rays;
  for (const auto& l : v.lineality) {
    g.push_back(l);
    g.push_back(negate(l));
  }
  std::sort(g.begin(), g.end());
  return g;
}

LatticePoint homogenize(const RationalPoint& p) {
  Integer d = commonDenominator(p);
  LatticePoint h(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) h[i] = Rational(p[i] * d).get_num();
  h[p.size()] = d;
  return primitive(h);
}

// (h, h0) with h·x + h0 ≥ 0  ↦  (−h)·x ≤ h0, normalized to primitive normal.
std::optional<AffineConstraint> dehomogenizeInequality(const LatticeFunctional& hh) {
  const std::size_t n = hh.size() - 1;
  LatticeFunctional f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = -hh[i];
  Integer g = content(f);
  if (g == 0) return std::nullopt;
  for (auto& x : f) x /= g;
  return AffineConstraint{f, Rational(hh[n], g)};
}

AffineConstraint dehomogenizeEquation(const LatticeFunctional& hh) {
  const std::size_t n = hh.size() - 1;
  LatticeFunctional f(hh.begin(), hh.begin() + static_cast<long>(n));
  Integer g = content(f);
  if (g == 0) fail(ErrorKind::InternalInvariant, "degenerate affine equation");
  for (auto& x : f) x /= g;
  Rational c(-hh[n], g);
  c.canonicalize();
  // Fix the sign so that the first nonzero coefficient is positive.
  auto nz = std::find_if(f.begin(), f.end(), [](const Integer& x) { return x != 0; });
  if (*nz < 0) {
    for (auto& x : f) x = -x;
    c = -c;
  }
  return AffineConstraint{f, c};
}

bool lessConstraint(const AffineConstraint& a, const AffineConstraint& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  return a.offset < b.offset;
}

}  // namespace

// ------------------------------------------------------------ RationalCone

RationalCone RationalCone::fromGenerators(std::size_t rank, const std::vector<LatticePoint>& generators) {
  for (const auto& g : generators)
    if (g.size() != rank) fail(ErrorKind::InvalidInput, "generator has wrong rank");
  auto gens = cleanVectors(generators);
  HRep h = computeFacets(rank, gens);
  VRep v = computeRays(rank, h.facets, h.equations);
  RationalCone c;
  c.rank_ = rank;
  c.facets_ = std::move(h.facets);
  c.equations_ = std::move(h.equations);
  c.generators_ = generatorsFrom(v);
  return c;
}

RationalCone RationalCone::fromInequalities(std::size_t rank,
                                            const std::vector<LatticeFunctional>& inequalities,
                                            const std::vector<LatticeFunctional>& equations) {
  for (const auto& f : inequalities)
    if (f.size() != rank) fail(ErrorKind::InvalidInput, "inequality has wrong rank");
  for (const auto& f : equations)
    if (f.size() != rank) fail(ErrorKind::InvalidInput, "equation has wrong rank");
  VRep v = computeRays(rank, cleanVectors(inequalities), cleanVectors(equations));
  return fromGenerators(rank, generatorsFrom(v));
}

RationalCone RationalCone::wholeSpace(std::size_t rank) {
  return fromInequalities(rank, {});
}

std::vector<LatticePoint> RationalCone::rays() const {
  return isStrictlyConvex() ? generators_ : std::vector<LatticePoint>{};
}

bool RationalCone::isStrictlyConvex() const {
  std::vector<LatticePoint> rows = facets_;
  rows.insert(rows.end(), equations_.begin(), equations_.end());
  return rationalRank(rows) == rank_;
}

bool RationalCone::contains(const RationalPoint& u) const {
  for (const auto& f : facets_)
    if (dot(f, u) < 0) return false;
  for (const auto& e : equations_)
    if (dot(e, u) != 0) return false;
  return true;
}

bool RationalCone::contains(const LatticePoint& u) const {
  for (const auto& f : facets_)
    if (dot(f, u) < 0) return false;
  for (const auto& e : equations_)
    if (dot(e, u) != 0) return false;
  return true;
}

bool RationalCone::containsInRelativeInterior(const RationalPoint& u) const {
  for (const auto& f : facets_)
    if (dot(f, u) <= 0) return false;
  for (const auto& e : equations_)
    if (dot(e, u) != 0) return false;
  return true;
}

RationalCone RationalCone::intersect(const RationalCone& other) const {
  if (other.rank_ != rank_) fail(ErrorKind::InvalidInput, "cone rank mismatch");
  auto f = facets_;
  f.insert(f.end(), other.facets_.begin(), other.facets_.end());
  auto e = equations_;
  e.insert(e.end(), other.equations_.begin(), other.equations_.end());
  return fromInequalities(rank_, f, e);
}

bool RationalCone::isFaceOf(const RationalCone& cone) const {
  for (const auto& g : generators_)
    if (!cone.contains(g)) return false;
  // Smallest face of `cone` containing this cone; equal to it iff a face.
  std::vector<const LatticeFunctional*> tight;
  for (const auto& f : cone.facets_) {
    bool allZero = std::all_of(generators_.begin(), generators_.end(),
                               [&](const LatticePoint& g) { return dot(f, g) == 0; });
    if (allZero) tight.push_back(&f);
  }
  for (const auto& g : cone.generators_) {
    bool onFace = std::all_of(tight.begin(), tight.end(),
                              [&](const LatticeFunctional* f) { return dot(*f, g) == 0; });
    if (onFace && !contains(g)) return false;
  }
  return true;
}

RationalPoint RationalCone::interiorPoint() const {
  RationalPoint p(rank_, Rational(0));
  for (const auto& g : generators_)
    for (std::size_t i = 0; i < rank_; ++i) p[i] += g[i];
  return p;
}

RationalCone RationalCone::transformed(const UnimodularMap& g) const {
  std::vector<LatticePoint> gens;
  for (const auto& v : generators_) gens.push_back(g.apply(v));
  return fromGenerators(rank_, gens);
}

bool isStrictlyConvexCone(const RationalCone& c) { return c.isStrictlyConvex(); }

bool coneMembership(const RationalCone& c, const RationalPoint& u) { return c.contains(u); }

// ----------------------------------------------------------------- Polytope

Polytope Polytope::convexHull(std::size_t rank, const std::vector<RationalPoint>& points) {
  if (points.empty()) fail(ErrorKind::InvalidInput, "convex hull of no points");
  std::vector<LatticePoint> lifted;
  for (const auto& p : points) {
    if (p.size() != rank) fail(ErrorKind::InvalidInput, "point has wrong rank");
    lifted.push_back(homogenize(p));
  }
  RationalCone cone = RationalCone::fromGenerators(rank + 1, lifted);
  Polytope q;
  q.rank_ = rank;
  for (const auto& g : cone.generators()) {
    RationalPoint v(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      v[i] = Rational(g[i], g[rank]);
      v[i].canonicalize();
    }
    q.vertices_.push_back(std::move(v));
  }
  std::sort(q.vertices_.begin(), q.vertices_.end());
  for (const auto& e : cone.equations()) q.equations_.push_back(dehomogenizeEquation(e));
  if (q.vertices_.size() > 1) {
    for (const auto& f : cone.facets())
      if (auto c = dehomogenizeInequality(f)) q.facets_.push_back(*c);
  }
  std::sort(q.facets_.begin(), q.facets_.end(), lessConstraint);
  std::sort(q.equations_.begin(), q.equations_.end(), lessConstraint);
  return q;
}

Polytope Polytope::convexHull(std::size_t rank, const std::vector<LatticePoint>& points) {
  std::vector<RationalPoint> r;
  for (const auto& p : points) r.push_back(toRational(p));
  return convexHull(rank, r);
}

bool Polytope::isLattice() const {
  return std::all_of(vertices_.begin(), vertices_.end(),
                     [](const RationalPoint& v) { return toIntegral(v).has_value(); });
}

std::vector<LatticePoint> Polytope::latticeVertices() const {
  std::vector<LatticePoint> out;
  for (const auto& v : vertices_) {
    auto iv = toIntegral(v);
    if (!iv) fail(ErrorKind::NotLatticePolytope, "vertex " + toString(v) + " is not integral");
    out.push_back(*iv);
  }
  return out;
}

bool Polytope::contains(const RationalPoint& u) const {
  for (const auto& f : facets_)
    if (dot(f.normal, u) > f.offset) return false;
  for (const auto& e : equations_)
    if (dot(e.normal, u) != e.offset) return false;
  return true;
}

bool Polytope::containsInInterior(const RationalPoint& u) const {
  if (!isFullDimensional()) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, u) >= f.offset) return false;
  return true;
}

bool Polytope::containsOriginInInterior() const {
  if (!isFullDimensional()) return false;
  return std::all_of(facets_.begin(), facets_.end(),
                     [](const AffineConstraint& f) { return f.offset > 0; });
}

std::vector<std::size_t> Polytope::verticesOnFacet(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < vertices_.size(); ++k)
    if (dot(facets_[i].normal, vertices_[k]) == facets_[i].offset) out.push_back(k);
  return out;
}

Polytope Polytope::transformed(const UnimodularMap& g) const {
  std::vector<RationalPoint> pts;
  for (const auto& v : vertices_) pts.push_back(g.apply(v));
  return convexHull(rank_, pts);
}

// --------------------------------------------------------------- Polyhedron

Polyhedron Polyhedron::fromInequalities(std::size_t rank,
                                        const std::vector<RationalFunctional>& normals,
                                        const std::vector<Rational>& offsets) {
  if (normals.size() != offsets.size()) fail(ErrorKind::InvalidInput, "normals/offsets mismatch");
  Polyhedron p;
  p.rank_ = rank;
  bool infeasible = false;
  std::vector<LatticeFunctional> lifted;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].size() != rank) fail(ErrorKind::InvalidInput, "inequality has wrong rank");
    RationalPoint row = normals[i];
    row.push_back(offsets[i]);
    if (isZero(normals[i])) {
      if (offsets[i] < 0) infeasible = true;
      continue;
    }
    // c·t − f·x ≥ 0 on the homogenized cone.
    LatticePoint h = primitiveOnRay(row);
    LatticeFunctional ineq(rank + 1);
    for (std::size_t k = 0; k < rank; ++k) ineq[k] = -h[k];
    ineq[rank] = h[rank];
    auto c = dehomogenizeInequality(ineq);
    p.constraints_.push_back(*c);
    lifted.push_back(std::move(ineq));
  }
  LatticeFunctional tPositive(rank + 1, Integer(0));
  tPositive[rank] = 1;
  lifted.push_back(tPositive);
  RationalCone cone = RationalCone::fromInequalities(rank + 1, lifted);
  std::vector<LatticePoint> recession;
  for (const auto& g : cone.generators()) {
    if (g[rank] > 0 && !infeasible) {
      RationalPoint v(rank);
      for (std::size_t i = 0; i < rank; ++i) {
        v[i] = Rational(g[i], g[rank]);
        v[i].canonicalize();
      }
      p.vertices_.push_back(std::move(v));
    } else if (g[rank] == 0) {
      recession.emplace_back(g.begin(), g.begin() + static_cast<long>(rank));
    }
  }
  std::sort(p.vertices_.begin(), p.vertices_.end());
  if (p.vertices_.empty()) recession.clear();
  p.recession_ = RationalCone::fromGenerators(rank, recession);
  if (!p.vertices_.empty()) {
    for (const auto& f : cone.facets())
      if (auto c = dehomogenizeInequality(f)) p.facets_.push_back(*c);
  }
  std::sort(p.facets_.begin(), p.facets_.end(), lessConstraint);
  return p;
}

bool Polyhedron::contains(const RationalPoint& u) const {
  if (isEmpty()) return false;
  for (const auto& f : constraints_)
    if (dot(f.normal, u) > f.offset) return false;
  return true;
}

bool Polyhedron::containsInInterior(const RationalPoint& u) const {
  if (isEmpty()) return false;
  for (const auto& f : constraints_)
    if (dot(f.normal, u) >= f.offset) return false;
  return true;
}

Polyhedron Polyhedron::intersectCone(const RationalCone& cone) const {
  std::vector<RationalFunctional> normals;
  std::vector<Rational> offsets;
  for (const auto& f : constraints_) {
    normals.push_back(toRational(f.normal));
    offsets.push_back(f.offset);
  }
  for (const auto& f : cone.facets()) {
    normals.push_back(toRational(negate(f)));
    offsets.emplace_back(0);
  }
  for (const auto& e : cone.equations()) {
    normals.push_back(toRational(e));
    offsets.emplace_back(0);
    normals.push_back(toRational(negate(e)));
    offsets.emplace_back(0);
  }
  return fromInequalities(rank_, normals, offsets);
}

Polytope Polyhedron::toPolytope() const {
  if (isEmpty()) fail(ErrorKind::InvalidInput, "empty polyhedron");
  if (!isBounded()) fail(ErrorKind::UnboundedBody, "polyhedron is unbounded");
  return Polytope::convexHull(rank_, vertices_);
}

// ----------------------------------------------------- gauge and lattice scan

Rational gauge(const Polytope& q, const RationalPoint& u) {
  RationalPoint origin(q.rank(), Rational(0));
  if (!q.contains(origin)) fail(ErrorKind::InvalidInput, "gauge requires 0 in the polytope");
  for (const auto& e : q.equations())
    if (dot(e.normal, u) != 0)
      fail(ErrorKind::InvalidInput, "point " + toString(u) + " is outside the span of the polytope");
  Rational t = 0;
  for (const auto& f : q.facets()) {
    Rational value = dot(f.normal, u);
    if (f.offset > 0) {
      Rational ratio = value / f.offset;
      if (ratio > t) t = ratio;
    } else if (value > 0) {
      fail(ErrorKind::InvalidInput, "point " + toString(u) + " is outside the cone over the polytope");
    }
  }
  return t;
}

Rational gauge(const Polytope& q, const LatticePoint& u) { return gauge(q, toRational(u)); }

LatticeBox boundingBox(const std::vector<RationalPoint>& points, const Rational& scale) {
  if (points.empty()) fail(ErrorKind::InvalidInput, "bounding box of no points");
  const std::size_t n = points.front().size();
  LatticeBox box{LatticePoint(n), LatticePoint(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Rational lo = scale * points.front()[i], hi = lo;
    for (const auto& p : points) {
      Rational x = scale * p[i];
      if (x < lo) lo = x;
      if (x > hi) hi = x;
    }
    mpz_fdiv_q(box.lo[i].get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_cdiv_q(box.hi[i].get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  }
  return box;
}

void forEachLatticePoint(const LatticeBox& box, const std::function<bool(const LatticePoint&)>& visit) {
  const std::size_t n = box.lo.size();
  for (std::size_t i = 0; i < n; ++i)
    if (box.lo[i] > box.hi[i]) return;
  LatticePoint u = box.lo;
  while (true) {
    if (!visit(u)) return;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (u[i] < box.hi[i]) {
        ++u[i];
        for (std::size_t j = i + 1; j < n; ++j) u[j] = box.lo[j];
        break;
      }
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

std::vector<LatticePoint> latticePointsInDilationInterior(const Polytope& q, const Rational& eps) {
  if (!q.isFullDimensional())
    fail(ErrorKind::NotFullDimensional, "polytope is not full-dimensional");
  if (eps <= 0) fail(ErrorKind::InvalidInput, "dilation factor must be positive");
  std::vector<LatticePoint> out;
  std::vector<Rational> bounds;
  for (const auto& f : q.facets()) bounds.push_back(eps * f.offset);
  forEachLatticePoint(boundingBox(q.vertices(), eps), [&](const LatticePoint& u) {
    for (std::size_t i = 0; i < q.facets().size(); ++i)
      if (Rational(dot(q.facets()[i].normal, u)) >= bounds[i]) return true;
    out.push_back(u);
    return true;
  });
  return out;
}

}  // namespace sphan
