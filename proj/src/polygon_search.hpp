#pragma once

// Depth-first enumeration of convex lattice polygons with primitive vertices
// around the origin, in machine integers. Internal to the library.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace sphan::detail {

struct Vec2 {
  std::int64_t x;
  std::int64_t y;
};

inline std::int64_t cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }

/// Primitive points of [-bound, bound]² sorted counterclockwise by angle from
/// the positive x-axis.
std::vector<Vec2> primitivePointsByAngle(int bound);

using EdgeFilter = std::function<bool(std::size_t, std::size_t)>;
using PolygonVisitor = std::function<bool(const std::vector<std::size_t>&)>;

/// Visits every strictly convex polygon whose vertices are points[i] listed
/// counterclockwise, whose angularly first vertex is points[first], and which
/// has the origin in its interior. `edgeOk(i, j)` must accept every edge.
/// Returns false if the visitor asked to stop.
bool forEachPolygonFrom(const std::vector<Vec2>& points, std::size_t first, const EdgeFilter& edgeOk,
                        const PolygonVisitor& visit);

}  // namespace sphan::detail
