#pragma once

#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sphan/errors.hpp"
#include "sphan/lattice.hpp"
#include "sphan/polyhedra.hpp"
#include "sphan/toric.hpp"

namespace testing_support {

using namespace sphan;

inline LatticePoint pt(std::initializer_list<long> xs) {
  LatticePoint v;
  for (long x : xs) v.push_back(Integer(x));
  return v;
}

inline std::vector<LatticePoint> pts(std::initializer_list<std::initializer_list<long>> xs) {
  std::vector<LatticePoint> out;
  for (auto x : xs) out.push_back(pt(x));
  return out;
}

inline RationalPoint rpt(std::initializer_list<Rational> xs) { return RationalPoint(xs); }

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline Polytope hull(std::initializer_list<std::initializer_list<long>> xs) {
  auto v = pts(xs);
  return Polytope::convexHull(v.front().size(), v);
}

inline std::vector<LatticePoint> fromOracle(const oracle::Polygon& poly) {
  std::vector<LatticePoint> out;
  for (const auto& p : poly) out.push_back({Integer(static_cast<long>(p[0])), Integer(static_cast<long>(p[1]))});
  return out;
}

inline Polytope polytopeOf(const oracle::Polygon& poly) { return Polytope::convexHull(2, fromOracle(poly)); }

inline UnimodularMap unimodular(const std::array<std::int64_t, 4>& g) {
  return UnimodularMap(IntMatrix{{static_cast<long>(g[0]), static_cast<long>(g[1])},
                                 {static_cast<long>(g[2]), static_cast<long>(g[3])}});
}

/// Product of random elementary matrices and sign flips in GL(n, ℤ).
inline UnimodularMap randomUnimodular(std::mt19937_64& rng, std::size_t n, int steps = 6) {
  IntMatrix m = IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> k(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) {
      for (std::size_t c = 0; c < n; ++c) m(i, c) = -m(i, c);
    } else {
      m.addRowMultiple(i, j, Integer(k(rng)));
    }
  }
  return UnimodularMap(m);
}

/// Complete rank-2 fan on primitive rays sorted by angle with gaps below π.
inline Fan completeFan(const std::vector<LatticePoint>& raysByAngle) {
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t i = 0; i < raysByAngle.size(); ++i) cones.push_back({i, (i + 1) % raysByAngle.size()});
  return Fan(2, raysByAngle, cones);
}

inline Fan p2Fan() { return Fan(2, pts({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 2}, {2, 0}}); }

/// Kind of the Error thrown by `f`, or nullopt if it returns normally.
template <class F>
std::optional<ErrorKind> errorKindOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testing_support
