#pragma once

// Fans, anticanonical support functions, Gorenstein index, Fano recognition,
// minimal log discrepancies and the ε-lt test for toric varieties.

#include <cstddef>
#include <optional>
#include <vector>

#include "sphan/polyhedra.hpp"

namespace sphan {

/// Fan given by primitive ray generators and maximal cones (as ray indices).
/// The constructor validates strict convexity, irredundancy of the listed
/// rays and the fan condition; it throws InvalidInput otherwise.
class Fan {
 public:
  Fan(std::size_t rank, std::vector<LatticePoint> rays, std::vector<std::vector<std::size_t>> cones);

  std::size_t rank() const { return rank_; }
  const std::vector<LatticePoint>& rays() const { return rays_; }
  const std::vector<std::vector<std::size_t>>& cones() const { return cones_; }
  const std::vector<RationalCone>& maximalCones() const { return maximalCones_; }
  std::vector<LatticePoint> coneRays(std::size_t i) const;

  Fan transformed(const UnimodularMap& g) const;

 private:
  std::size_t rank_;
  std::vector<LatticePoint> rays_;
  std::vector<std::vector<std::size_t>> cones_;
  std::vector<RationalCone> maximalCones_;
};

/// One rational covector l_σ per maximal cone (same order as Fan::cones()).
struct SupportFunction {
  std::vector<RationalFunctional> pieces;

  /// Smallest positive integer making piece i integral.
  Integer denominator(std::size_t i) const;
};

bool isComplete(const Fan& fan);

/// l_σ(v) = 1 for every ray v of σ. Throws NotQGorenstein if some cone's
/// generators lie on no common affine hyperplane.
SupportFunction anticanonicalSupportFunction(const Fan& fan);

/// lcm of the denominators of all l_σ.
Integer gorensteinIndex(const Fan& fan);

struct FanoCheck {
  bool isFano = false;
  std::optional<Polytope> polytope;  ///< Q = conv(ray generators) when Fano
};

/// Requires a complete, Q-Gorenstein fan (throws NotComplete / NotQGorenstein).
FanoCheck isFano(const Fan& fan);

/// Cones over the facets of q. Requires q full-dimensional with 0 ∈ q⁰ and
/// lattice vertices.
Fan faceFan(const Polytope& q);

enum class MldVariant { All, Exceptional };

/// Minimal log discrepancy read off the gauge of Q. `All` minimizes over every
/// nonzero lattice point; `Exceptional` skips ray generators and is capped at 2.
/// Throws NotFano.
Rational mld(const Fan& fan, MldVariant variant);
Rational mldOfPolytope(const Polytope& q, const std::vector<LatticePoint>& rays, MldVariant variant);

/// εQ⁰ ∩ N = {0}. Throws NotFano.
bool isEpsilonLT(const Fan& fan, const Rational& eps);
bool isEpsilonLTPolytope(const Polytope& q, const Rational& eps);

struct FanoReport {
  bool isComplete = false;
  bool isQGorenstein = false;
  bool isFano = false;
  std::optional<Integer> index;
  std::optional<Rational> mldAll;
  std::optional<Rational> mldExceptional;
  std::optional<Polytope> fanoPolytope;
  std::optional<Rational> epsilon;
  std::optional<bool> epsilonLT;
};

/// Runs every criterion; failures are recorded in the report, not thrown.
FanoReport analyzeFan(const Fan& fan, const std::optional<Rational>& eps = std::nullopt);

}  // namespace sphan
