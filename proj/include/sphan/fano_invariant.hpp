#pragma once

// Bounded search for the Fano compactification with the largest exceptional
// mld, over toric fans or colored fans on a fixed skeleton (𝒱, colors).

#include <cstddef>
#include <optional>
#include <vector>

#include "sphan/colored.hpp"
#include "sphan/toric.hpp"

namespace sphan {

/// Valuation cone and colors; the colored cones are left to the search.
struct ColoredSkeleton {
  std::size_t rank = 0;
  RationalCone valuationCone = RationalCone::wholeSpace(0);
  std::vector<Color> colors;
};

struct FanoSearchResult {
  std::optional<Rational> bestMld;  ///< absent when no Fano candidate exists in the box
  std::optional<Fan> fanWitness;
  std::optional<ColoredFan> coloredWitness;
  int searchBound = 0;
  /// The generator box was scanned completely.
  bool exhaustive = false;
  /// bestMld reached the cap 2, so no larger value exists anywhere.
  bool optimal = false;
  std::size_t candidatesEvaluated = 0;
};

/// Toric search over face fans of polytopes with primitive vertices in
/// [-heightBound, heightBound]ⁿ. Stops early once the cap 2 is reached.
/// Throws RankTooLarge for rank > 3.
FanoSearchResult fanoInvariantSearch(std::size_t rank, int heightBound, unsigned jobs = 1);

/// Colored search over fans spanned by primitive 𝒱-points in the box and
/// subsets of the colors. Throws RankTooLarge for rank > 2.
FanoSearchResult fanoInvariantSearch(const ColoredSkeleton& skeleton, int heightBound);

/// The exceptional mld, capped at 2. Throws NotFano.
Rational mldOfFanoCompactification(const Fan& fan);
Rational mldOfFanoCompactification(const ColoredFan& cf);

}  // namespace sphan
