#pragma once

// Unimodular normal forms, the box-bounded enumeration of ε-lt Fano polygons,
// and the finiteness-lemma data: the threshold 1/F, the 𝒱-reduction check and
// Aut(N,π)-equivalence of candidate polytopes.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sphan/polyhedra.hpp"

namespace sphan {

/// Canonical key of a lattice polytope up to GL(n, ℤ). `signatures` lists the
/// invariant vertex statistics in canonical vertex order; `matrix` is the
/// Hermite form of the vertex matrix (vertices as columns) for that order.
struct NormalFormKey {
  std::vector<std::vector<Integer>> signatures;
  IntMatrix matrix;

  friend bool operator==(const NormalFormKey& a, const NormalFormKey& b) {
    return a.signatures == b.signatures && a.matrix == b.matrix;
  }
  friend bool operator<(const NormalFormKey& a, const NormalFormKey& b) {
    if (a.signatures != b.signatures) return a.signatures < b.signatures;
    return a.matrix < b.matrix;
  }
};

/// Throws NotFullDimensional or NotLatticePolytope.
NormalFormKey normalForm(const Polytope& q);

struct ClassifiedPolytope {
  NormalFormKey key;
  /// Orbit member found in the box with the smallest coordinate height (ties
  /// broken lexicographically), vertices sorted.
  std::vector<LatticePoint> vertices;
};

struct Classification {
  std::vector<ClassifiedPolytope> classes;  ///< sorted by key
  Rational eps;
  int box = 0;
  std::size_t polygonsVisited = 0;
  std::string caveat;
};

/// Lattice polygons with primitive vertices in [-box, box]², 0 in the
/// interior and εQ⁰ ∩ N = {0}, up to GL(2, ℤ). Throws RankTooLarge unless
/// rank = 2.
Classification enumerateEpsLTFanoPolytopes(std::size_t rank, const Rational& eps, int box, unsigned jobs = 1);

/// (π, 𝒱̃, 𝒱 = π⁻¹(𝒱̃), A, {d̃_i}).
class CombFinitenessData {
 public:
  /// Throws InvalidInput unless 𝒱̃ is strictly convex and full-dimensional in
  /// Ñ₁, A ≥ 1, and A·d̃_i is integral.
  CombFinitenessData(QuotientMap pi, RationalCone tildeV, Integer a, std::vector<RationalPoint> tildeD);

  const QuotientMap& pi() const { return pi_; }
  const RationalCone& tildeV() const { return tildeV_; }
  const RationalCone& bigV() const { return bigV_; }
  const Integer& a() const { return a_; }
  const std::vector<RationalPoint>& tildeD() const { return tildeD_; }

 private:
  QuotientMap pi_;
  RationalCone tildeV_;
  RationalCone bigV_;
  Integer a_;
  std::vector<RationalPoint> tildeD_;
};

/// 1/F with −F = min f̃_j(d̃_i) over the primitive facet functionals of 𝒱̃;
/// nullopt stands for +∞ (F ≤ 0).
std::optional<Rational> hensleyThresholdF(const CombFinitenessData& data);

struct DPoint {
  std::size_t index;    ///< into tildeD
  RationalPoint lift;   ///< d_i ∈ N/A with π(d_i) = d̃_i
};

class CandidatePolytope {
 public:
  /// Throws InvalidInput if a lift is off its fiber or not in N/A, a v-point
  /// is outside 𝒱, or the hull is not full-dimensional.
  CandidatePolytope(const CombFinitenessData& data, std::vector<DPoint> dPoints, std::vector<LatticePoint> vPoints);

  const Polytope& polytope() const { return polytope_; }
  const std::vector<DPoint>& dPoints() const { return dPoints_; }
  const std::vector<LatticePoint>& vPoints() const { return vPoints_; }

 private:
  std::vector<DPoint> dPoints_;
  std::vector<LatticePoint> vPoints_;
  Polytope polytope_;
};

/// εQ⁰ ∩ N ∩ 𝒱 = εQ⁰ ∩ N, by exhaustive scan. Throws PreconditionViolated
/// unless eps is below the threshold.
bool verifyLemmaReduction(const CombFinitenessData& data, const CandidatePolytope& cand, const Rational& eps);

struct NotEquivalent {
  std::string reason;
};
struct Inconclusive {
  std::size_t assignmentsTried;
};
using EquivalenceResult = std::variant<UnimodularMap, NotEquivalent, Inconclusive>;

/// Searches g ∈ Aut(N,π) with g·Q₁ = Q₂ by matching vertices fiber by fiber.
/// The search is complete; `budget` caps the number of basis assignments tried
/// and Inconclusive is returned when it runs out.
EquivalenceResult autNPiEquivalent(const CandidatePolytope& q1, const CandidatePolytope& q2,
                                   const CombFinitenessData& data, std::size_t budget = 1000000);

}  // namespace sphan
