#include "polygon_search.hpp"

#include <algorithm>
#include <numeric>

namespace sphan::detail {

namespace {

int half(const Vec2& p) { return (p.y < 0 || (p.y == 0 && p.x < 0)) ? 1 : 0; }

bool leftTurn(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - b) > 0; }

struct Walker {
  const std::vector<Vec2>& pts;
  const EdgeFilter& edgeOk;
  const PolygonVisitor& visit;
  std::vector<std::size_t> seq;

  bool closes() const {
    const Vec2& first = pts[seq.front()];
    const Vec2& second = pts[seq[1]];
    const Vec2& prev = pts[seq[seq.size() - 2]];
    const Vec2& last = pts[seq.back()];
    return cross(last, first) > 0 && leftTurn(prev, last, first) && leftTurn(last, first, second) &&
           edgeOk(seq.back(), seq.front());
  }

  bool extend() {
    if (seq.size() >= 3 && closes() && !visit(seq)) return false;
    const std::size_t last = seq.back();
    for (std::size_t j = last + 1; j < pts.size(); ++j) {
      if (cross(pts[last], pts[j]) <= 0) break;
      if (seq.size() >= 2 && !leftTurn(pts[seq[seq.size() - 2]], pts[last], pts[j])) continue;
      if (!edgeOk(last, j)) continue;
      seq.push_back(j);
      bool go = extend();
      seq.pop_back();
      if (!go) return false;
    }
    return true;
  }
};

}  // namespace

std::vector<Vec2> primitivePointsByAngle(int bound) {
  std::vector<Vec2> pts;
  for (std::int64_t x = -bound; x <= bound; ++x)
    for (std::int64_t y = -bound; y <= bound; ++y)
      if (std::gcd(x, y) == 1) pts.push_back({x, y});
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return cross(a, b) > 0;
  });
  return pts;
}

bool forEachPolygonFrom(const std::vector<Vec2>& points, std::size_t first, const EdgeFilter& edgeOk,
                        const PolygonVisitor& visit) {
  Walker w{points, edgeOk, visit, {first}};
  return w.extend();
}

}  // namespace sphan::detail
