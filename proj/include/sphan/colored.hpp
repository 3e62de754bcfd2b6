#pragma once

// Colored fans over a valuation cone: validation, completeness, the Cartier
// criterion, the anticanonical bodies P and Q, and the ε-lt tests.
// The toric case is the specialization 𝒱 = N_ℚ with no colors.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphan/polyhedra.hpp"
#include "sphan/toric.hpp"

namespace sphan {

struct Color {
  std::string name;
  LatticePoint rho;  ///< ρ(D) ∈ N
  Integer a;         ///< coefficient of D in −K, at least 1

  /// ρ(D)/a_D
  RationalPoint normalizedPoint() const;
};

/// (σ_Y, 𝒟_Y): `generators` are the elements of 𝒱_Y; σ_Y is generated by
/// them together with ρ of the listed colors.
struct ColoredCone {
  std::vector<LatticePoint> generators;
  std::vector<std::string> colors;
};

class ColoredFan {
 public:
  ColoredFan(std::size_t rank, RationalCone valuationCone, std::vector<Color> colors,
             std::vector<ColoredCone> cones);

  /// 𝒱 = N_ℚ, no colors, one colored cone per fan cone.
  static ColoredFan fromToric(const Fan& fan);

  std::size_t rank() const { return rank_; }
  const RationalCone& valuationCone() const { return valuationCone_; }
  const std::vector<Color>& colors() const { return colors_; }
  const std::vector<ColoredCone>& cones() const { return cones_; }
  const Color& color(const std::string& name) const;  // throws InvalidColoredFan

  /// σ_Y as a rational cone.
  RationalCone cone(std::size_t i) const;
  /// σ_Y ∩ 𝒱.
  RationalCone trace(std::size_t i) const;
  /// Points at which the anticanonical function of cone i takes the value 1:
  /// its 𝒱-generators and ρ(D)/a_D for its colors.
  std::vector<RationalPoint> anticanonicalPoints(std::size_t i) const;
  /// 𝒱_X: all 𝒱-generators, deduplicated and sorted.
  std::vector<LatticePoint> valuationRays() const;

  ColoredFan transformed(const UnimodularMap& g) const;

 private:
  std::size_t rank_;
  RationalCone valuationCone_;
  std::vector<Color> colors_;
  std::vector<ColoredCone> cones_;
};

struct ValidationItem {
  std::string check;
  bool passed = true;
  bool warning = false;  ///< reported but does not fail the fan
  std::string detail;
  std::optional<RationalPoint> witnessPoint;
  std::optional<LatticeFunctional> witnessFunctional;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool valid() const;
};

ValidationReport validateColoredFan(const ColoredFan& cf);

/// ∪(σ ∩ 𝒱) = 𝒱, by facet pairing inside 𝒱. Throws InvalidColoredFan.
bool isCompleteColored(const ColoredFan& cf);

bool isToroidal(const ColoredFan& cf);

struct CartierCheck {
  bool isCartier = false;
  /// Interpolating covector per colored cone (rational when not Cartier).
  std::vector<std::optional<RationalFunctional>> pieces;
};

/// Divisor coefficients keyed by 𝒱-ray and by color name.
struct DivisorCoefficients {
  std::map<LatticePoint, Rational> rays;
  std::map<std::string, Rational> colors;
};

/// True iff the prescribed values are interpolated on every colored cone by
/// an integral covector. Throws InvalidColoredFan, IncompleteCoefficients.
CartierCheck isCartierColoredDivisor(const ColoredFan& cf, const DivisorCoefficients& coeffs);

struct FanoBodies {
  std::vector<RationalFunctional> pieces;  ///< l_σ per colored cone
  Polyhedron p;                            ///< {l_σ ≤ 1 for all σ}
  Polytope q;                              ///< conv(𝒱_X ∪ {ρ(D)/a_D})
};

/// Throws InvalidColoredFan, NotComplete, NotQGorenstein, NotAmpleCondition1,
/// NotAmpleCondition2, DegenerateQ or UnboundedBody.
FanoBodies fanoBodies(const ColoredFan& cf);

/// εP⁰ ∩ N ∩ 𝒱 = {0}.
bool isEpsilonLTColored(const ColoredFan& cf, const Rational& eps);
bool isEpsilonLTColored(const ColoredFan& cf, const FanoBodies& bodies, const Rational& eps);

/// εQ⁰ ∩ N ∩ 𝒱 = {0}.
bool epsilonQTest(const ColoredFan& cf, const Rational& eps);
bool epsilonQTest(const ColoredFan& cf, const FanoBodies& bodies, const Rational& eps);

/// Log discrepancies are the values of l at lattice points of 𝒱. `All` takes
/// the minimum over all of them; `Exceptional` skips 𝒱_X and caps at 2.
Rational coloredMld(const ColoredFan& cf, const FanoBodies& bodies, MldVariant variant);

}  // namespace sphan
