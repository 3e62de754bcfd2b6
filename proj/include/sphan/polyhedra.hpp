#pragma once

// Exact rational convex geometry: cones, polytopes and polyhedra with both
// vertex and facet descriptions, gauges, and lattice-point enumeration.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "sphan/lattice.hpp"

namespace sphan {

/// Rational polyhedral cone {x : f(x) ≥ 0 for facets, e(x) = 0 for equations}
/// = cone(generators). Facets, equations and generators are primitive and
/// sorted; generators are the extreme rays plus ± a basis of the lineality space.
class RationalCone {
 public:
  static RationalCone fromGenerators(std::size_t rank, const std::vector<LatticePoint>& generators);
  static RationalCone fromInequalities(std::size_t rank,
                                       const std::vector<LatticeFunctional>& inequalities,
                                       const std::vector<LatticeFunctional>& equations = {});
  static RationalCone wholeSpace(std::size_t rank);

  std::size_t rank() const { return rank_; }
  std::size_t dimension() const { return rank_ - equations_.size(); }
  const std::vector<LatticePoint>& generators() const { return generators_; }
  const std::vector<LatticeFunctional>& facets() const { return facets_; }
  const std::vector<LatticeFunctional>& equations() const { return equations_; }
  /// Extreme rays only (empty unless the cone is strictly convex).
  std::vector<LatticePoint> rays() const;

  bool isFullDimensional() const { return equations_.empty(); }
  bool isStrictlyConvex() const;
  bool isZero() const { return generators_.empty(); }
  bool contains(const RationalPoint& u) const;
  bool contains(const LatticePoint& u) const;
  /// Relative-interior membership.
  bool containsInRelativeInterior(const RationalPoint& u) const;

  /// Every facet and equation of both cones.
  RationalCone intersect(const RationalCone& other) const;
  /// True iff this cone is a face of `cone`.
  bool isFaceOf(const RationalCone& cone) const;
  /// Sum of the generators: a point of the relative interior.
  RationalPoint interiorPoint() const;

  RationalCone transformed(const UnimodularMap& g) const;

  friend bool operator==(const RationalCone& a, const RationalCone& b) {
    return a.rank_ == b.rank_ && a.generators_ == b.generators_ && a.facets_ == b.facets_ &&
           a.equations_ == b.equations_;
  }

 private:
  RationalCone() = default;
  std::size_t rank_ = 0;
  std::vector<LatticePoint> generators_;
  std::vector<LatticeFunctional> facets_;
  std::vector<LatticeFunctional> equations_;
};

bool isStrictlyConvexCone(const RationalCone& c);
bool coneMembership(const RationalCone& c, const RationalPoint& u);

/// Affine constraint f(x) ≤ offset (facet) or f(x) = offset (equation) with f
/// primitive integral.
struct AffineConstraint {
  LatticeFunctional normal;
  Rational offset;

  friend bool operator==(const AffineConstraint&, const AffineConstraint&) = default;
};

/// Rational polytope with irredundant vertices and facets. Lower-dimensional
/// polytopes carry the equations of their affine span.
class Polytope {
 public:
  static Polytope convexHull(std::size_t rank, const std::vector<RationalPoint>& points);
  static Polytope convexHull(std::size_t rank, const std::vector<LatticePoint>& points);

  std::size_t rank() const { return rank_; }
  std::size_t dimension() const { return rank_ - equations_.size(); }
  bool isFullDimensional() const { return equations_.empty(); }
  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  const std::vector<AffineConstraint>& facets() const { return facets_; }
  const std::vector<AffineConstraint>& equations() const { return equations_; }

  bool isLattice() const;
  std::vector<LatticePoint> latticeVertices() const;  // throws NotLatticePolytope
  bool contains(const RationalPoint& u) const;
  /// Interior in N_ℚ (empty unless full-dimensional).
  bool containsInInterior(const RationalPoint& u) const;
  bool containsOriginInInterior() const;

  /// Indices of the vertices lying on facet i.
  std::vector<std::size_t> verticesOnFacet(std::size_t i) const;

  Polytope transformed(const UnimodularMap& g) const;

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.rank_ == b.rank_ && a.vertices_ == b.vertices_;
  }

 private:
  Polytope() = default;
  std::size_t rank_ = 0;
  std::vector<RationalPoint> vertices_;
  std::vector<AffineConstraint> facets_;
  std::vector<AffineConstraint> equations_;
};

/// Possibly unbounded polyhedron {x : f(x) ≤ c}, stored with its vertices
/// (the bounded part) and recession cone.
class Polyhedron {
 public:
  /// Rows `normals[i]·x ≤ offsets[i]`; normals may be rational.
  static Polyhedron fromInequalities(std::size_t rank,
                                     const std::vector<RationalFunctional>& normals,
                                     const std::vector<Rational>& offsets);

  std::size_t rank() const { return rank_; }
  bool isEmpty() const { return vertices_.empty() && recession_.isZero(); }
  bool isBounded() const { return recession_.isZero(); }
  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  const RationalCone& recessionCone() const { return recession_; }
  /// Irredundant facet inequalities.
  const std::vector<AffineConstraint>& facets() const { return facets_; }

  bool contains(const RationalPoint& u) const;
  bool containsInInterior(const RationalPoint& u) const;
  /// Adds the half-spaces of a cone: {x : f(x) ≥ 0}.
  Polyhedron intersectCone(const RationalCone& cone) const;
  /// Throws UnboundedBody if unbounded.
  Polytope toPolytope() const;

 private:
  Polyhedron() : recession_(RationalCone::wholeSpace(0)) {}
  std::size_t rank_ = 0;
  std::vector<AffineConstraint> constraints_;  // as given (normalized)
  std::vector<AffineConstraint> facets_;
  std::vector<RationalPoint> vertices_;
  RationalCone recession_;
};

/// min{t ≥ 0 : u ∈ t·q}. Requires 0 ∈ q; throws InvalidInput if u is not in
/// the cone over q or 0 ∉ q.
Rational gauge(const Polytope& q, const RationalPoint& u);
Rational gauge(const Polytope& q, const LatticePoint& u);

/// Lattice points of eps·q⁰ (interior of the dilate), sorted.
std::vector<LatticePoint> latticePointsInDilationInterior(const Polytope& q, const Rational& eps);

/// Integral box [lo, hi] containing `scale`·conv(points).
struct LatticeBox {
  LatticePoint lo;
  LatticePoint hi;
};
LatticeBox boundingBox(const std::vector<RationalPoint>& points, const Rational& scale);

/// Visits the lattice points of the box in lexicographic order; stops early if
/// the visitor returns false.
void forEachLatticePoint(const LatticeBox& box, const std::function<bool(const LatticePoint&)>& visit);

}  // namespace sphan
