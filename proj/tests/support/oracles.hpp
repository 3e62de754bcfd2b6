#pragma once

// Brute-force reference implementations for rank-2 questions. They share no
// code with the library's geometry: hulls, gauges and equivalences are
// recomputed here from cross products in machine integers.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using P = std::array<std::int64_t, 2>;
using Polygon = std::vector<P>;  // counterclockwise, strict vertices

std::int64_t cross(const P& a, const P& b);
std::int64_t cross(const P& o, const P& a, const P& b);

/// Monotone chain; drops collinear points. Counterclockwise from the lowest point.
Polygon convexHull(std::vector<P> pts);
bool originInInterior(const Polygon& q);

/// Nonzero lattice points u with u ∈ (p/q)·Q⁰.
std::vector<P> interiorDilationPoints(const Polygon& q, std::int64_t p, std::int64_t den);
bool epsilonLT(const Polygon& q, std::int64_t p, std::int64_t den);

/// lcm of the denominators of the covectors taking value 1 on each edge.
std::int64_t gorensteinIndex(const Polygon& q);

/// Minimum of the gauge over primitive lattice points that are not vertices,
/// capped at 2.
mpq_class exceptionalMld(const Polygon& q);

/// Linear GL(2, ℤ) equivalence of two polygons.
bool equivalent(const Polygon& a, const Polygon& b);

/// Polygons with primitive vertices in [-box, box]², 0 interior and
/// (p/q)Q⁰ ∩ N = {0}, one representative per GL(2, ℤ) class. Subsets are
/// grown lexicographically with monotone pruning.
std::vector<Polygon> classify(int box, std::int64_t p, std::int64_t den);

/// Random rank-2 Fano polygon: hull of random primitive points in
/// [-bound, bound]² with the origin in its interior.
Polygon randomFanoPolygon(std::mt19937_64& rng, int bound);

/// Random element of GL(2, ℤ) with entries in [-bound, bound].
std::array<std::int64_t, 4> randomGL2(std::mt19937_64& rng, int bound);

/// Seed from SPHAN_SEED if set, else `fallback`.
std::uint64_t seed(std::uint64_t fallback);

}  // namespace oracle
