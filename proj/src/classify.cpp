#include "sphan/classify.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "polygon_search.hpp"
#include "sphan/errors.hpp"

namespace sphan {

namespace {

std::vector<std::vector<Integer>> vertexSignatures(const Polytope& q, const std::vector<LatticePoint>& verts) {
  std::vector<std::vector<Integer>> sigs(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    std::vector<Integer> offsets;
    for (const auto& f : q.facets())
      if (dot(f.normal, verts[i]) == f.offset) offsets.push_back(f.offset.get_num());
    std::sort(offsets.begin(), offsets.end());
    sigs[i].push_back(Integer(static_cast<unsigned long>(offsets.size())));
    sigs[i].insert(sigs[i].end(), offsets.begin(), offsets.end());
  }
  return sigs;
}

LatticePoint lastHermiteColumn(const std::vector<LatticePoint>& cols, std::size_t n) {
  HermiteForm hf = hermiteNormalForm(IntMatrix::fromColumns(cols, n));
  return hf.h.column(cols.size() - 1);
}

}  // namespace

NormalFormKey normalForm(const Polytope& q) {
  if (!q.isFullDimensional()) fail(ErrorKind::NotFullDimensional, "polytope is not full-dimensional");
  const std::vector<LatticePoint> verts = q.latticeVertices();
  const std::size_t n = q.rank();
  const auto sigs = vertexSignatures(q, verts);
  NormalFormKey key;
  key.signatures = sigs;
  std::sort(key.signatures.begin(), key.signatures.end());

  // Column k of the Hermite form depends only on the first k+1 columns, so
  // keeping every ordering prefix whose newest column is minimal is exact.
  std::vector<std::vector<std::size_t>> frontier{{}};
  for (std::size_t k = 0; k < verts.size(); ++k) {
    std::vector<std::vector<std::size_t>> next;
    std::optional<LatticePoint> best;
    for (const auto& prefix : frontier) {
      std::vector<LatticePoint> cols;
      for (auto i : prefix) cols.push_back(verts[i]);
      for (std::size_t j = 0; j < verts.size(); ++j) {
        if (sigs[j] != key.signatures[k]) continue;
        if (std::find(prefix.begin(), prefix.end(), j) != prefix.end()) continue;
        cols.push_back(verts[j]);
        LatticePoint col = lastHermiteColumn(cols, n);
        cols.pop_back();
        if (best && *best < col) continue;
        if (!best || col < *best) {
          best = col;
          next.clear();
        }
        next.push_back(prefix);
        next.back().push_back(j);
      }
    }
    frontier = std::move(next);
  }
  std::vector<LatticePoint> cols;
  for (auto i : frontier.front()) cols.push_back(verts[i]);
  key.matrix = hermiteNormalForm(IntMatrix::fromColumns(cols, n)).h;
  return key;
}

namespace {

using detail::Vec2;

std::int64_t floorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t d = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? d - 1 : d;
}

std::int64_t ceilDiv(std::int64_t a, std::int64_t b) { return -floorDiv(-a, b); }

std::int64_t toInt64(const Integer& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::InvalidInput, "value " + z.get_str() + " is too large");
  return z.get_si();
}

/// True iff no nonzero lattice point a·v + b·w has a, b ≥ 0 and a + b < p/q.
bool edgeClean(const Vec2& v, const Vec2& w, std::int64_t p, std::int64_t q) {
  const std::int64_t det = detail::cross(v, w);
  std::int64_t lo[2], hi[2];
  const std::int64_t cx[3] = {0, v.x * p, w.x * p};
  const std::int64_t cy[3] = {0, v.y * p, w.y * p};
  lo[0] = floorDiv(*std::min_element(cx, cx + 3), q);
  hi[0] = ceilDiv(*std::max_element(cx, cx + 3), q);
  lo[1] = floorDiv(*std::min_element(cy, cy + 3), q);
  hi[1] = ceilDiv(*std::max_element(cy, cy + 3), q);
  for (std::int64_t x = lo[0]; x <= hi[0]; ++x)
    for (std::int64_t y = lo[1]; y <= hi[1]; ++y) {
      if (x == 0 && y == 0) continue;
      const Vec2 u{x, y};
      const std::int64_t s = detail::cross(u, w);
      const std::int64_t t = detail::cross(v, u);
      if (s >= 0 && t >= 0 && q * (s + t) < p * det) return false;
    }
  return true;
}

LatticePoint toLattice(const Vec2& p) { return {Integer(static_cast<long>(p.x)), Integer(static_cast<long>(p.y))}; }

using ClassMap = std::map<NormalFormKey, std::vector<LatticePoint>>;

Integer height(const std::vector<LatticePoint>& verts) {
  Integer h = 0;
  for (const auto& v : verts)
    for (const auto& x : v) h = std::max<Integer>(h, abs(x));
  return h;
}

/// Smallest coordinate height first, then lexicographic.
bool preferred(const std::vector<LatticePoint>& a, const std::vector<LatticePoint>& b) {
  Integer ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

void mergeInto(ClassMap& into, ClassMap&& from) {
  for (auto& [key, verts] : from) {
    auto it = into.find(key);
    if (it == into.end())
      into.emplace(key, std::move(verts));
    else if (preferred(verts, it->second))
      it->second = std::move(verts);
  }
}

}  // namespace

Classification enumerateEpsLTFanoPolytopes(std::size_t rank, const Rational& eps, int box, unsigned jobs) {
  if (rank != 2) fail(ErrorKind::RankTooLarge, "classification is implemented for rank 2 only");
  if (eps <= 0) fail(ErrorKind::InvalidInput, "epsilon must be positive");
  if (box < 0) fail(ErrorKind::InvalidInput, "box must be nonnegative");
  const std::int64_t p = toInt64(eps.get_num());
  const std::int64_t q = toInt64(eps.get_den());

  const auto pts = detail::primitivePointsByAngle(box);
  const std::size_t m = pts.size();
  std::vector<char> clean(m * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (detail::cross(pts[i], pts[j]) > 0) clean[i * m + j] = edgeClean(pts[i], pts[j], p, q);
  const detail::EdgeFilter edgeOk = [&](std::size_t i, std::size_t j) { return clean[i * m + j] != 0; };

  std::vector<ClassMap> perFirst(m);
  std::vector<std::size_t> visited(m, 0);
  std::atomic<std::size_t> nextFirst{0};
  auto worker = [&] {
    for (std::size_t first; (first = nextFirst++) < m;) {
      ClassMap& classes = perFirst[first];
      detail::forEachPolygonFrom(pts, first, edgeOk, [&](const std::vector<std::size_t>& seq) {
        ++visited[first];
        std::vector<LatticePoint> verts;
        for (auto i : seq) verts.push_back(toLattice(pts[i]));
        Polytope poly = Polytope::convexHull(2, verts);
        std::vector<LatticePoint> sorted = poly.latticeVertices();
        ClassMap single;
        single.emplace(normalForm(poly), std::move(sorted));
        mergeInto(classes, std::move(single));
        return true;
      });
    }
  };
  const unsigned threads = std::max(1u, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ClassMap all;
  Classification out;
  for (std::size_t i = 0; i < m; ++i) {
    mergeInto(all, std::move(perFirst[i]));
    out.polygonsVisited += visited[i];
  }
  for (auto& [key, verts] : all) out.classes.push_back({key, std::move(verts)});
  out.eps = eps;
  out.box = box;
  out.caveat = "box-bounded: only polygons with vertices in [-" + std::to_string(box) + "," +
               std::to_string(box) + "]^2 were searched";
  return out;
}

namespace {

LatticeFunctional pullBack(const LatticeFunctional& f, const IntMatrix& pi) {
  LatticeFunctional g(pi.cols(), Integer(0));
  for (std::size_t k = 0; k < pi.rows(); ++k)
    for (std::size_t j = 0; j < pi.cols(); ++j) g[j] += f[k] * pi(k, j);
  return primitive(g);
}

RationalCone preimage(const QuotientMap& pi, const RationalCone& tildeV) {
  std::vector<LatticeFunctional> ineqs;
  for (const auto& f : tildeV.facets()) ineqs.push_back(pullBack(f, pi.matrix()));
  return RationalCone::fromInequalities(pi.sourceRank(), ineqs);
}

}  // namespace

CombFinitenessData::CombFinitenessData(QuotientMap pi, RationalCone tildeV, Integer a,
                                       std::vector<RationalPoint> tildeD)
    : pi_(std::move(pi)),
      tildeV_(std::move(tildeV)),
      bigV_(preimage(pi_, tildeV_)),
      a_(std::move(a)),
      tildeD_(std::move(tildeD)) {
  if (tildeV_.rank() != pi_.targetRank()) fail(ErrorKind::InvalidInput, "cone and quotient ranks differ");
  if (!tildeV_.isFullDimensional() || !tildeV_.isStrictlyConvex())
    fail(ErrorKind::InvalidInput, "the cone in the quotient must be strictly convex and full-dimensional");
  if (a_ < 1) fail(ErrorKind::InvalidInput, "A must be a positive integer");
  for (const auto& d : tildeD_) {
    if (d.size() != pi_.targetRank()) fail(ErrorKind::InvalidInput, "point " + toString(d) + " has wrong rank");
    if (!toIntegral(scale(Rational(a_), d)))
      fail(ErrorKind::InvalidInput, "A times " + toString(d) + " is not integral");
  }
}

std::optional<Rational> hensleyThresholdF(const CombFinitenessData& data) {
  std::optional<Rational> lowest;
  for (const auto& f : data.tildeV().facets())
    for (const auto& d : data.tildeD()) {
      Rational value = dot(f, d);
      if (!lowest || value < *lowest) lowest = value;
    }
  if (!lowest || *lowest >= 0) return std::nullopt;
  return Rational(-1) / *lowest;
}

namespace {

Polytope hullOf(std::size_t rank, const std::vector<DPoint>& dPoints, const std::vector<LatticePoint>& vPoints) {
  std::vector<RationalPoint> pts;
  for (const auto& d : dPoints) pts.push_back(d.lift);
  for (const auto& v : vPoints) pts.push_back(toRational(v));
  if (pts.empty()) fail(ErrorKind::InvalidInput, "candidate has no points");
  return Polytope::convexHull(rank, pts);
}

}  // namespace

CandidatePolytope::CandidatePolytope(const CombFinitenessData& data, std::vector<DPoint> dPoints,
                                     std::vector<LatticePoint> vPoints)
    : dPoints_(std::move(dPoints)),
      vPoints_(std::move(vPoints)),
      polytope_(hullOf(data.pi().sourceRank(), dPoints_, vPoints_)) {
  const std::size_t n = data.pi().sourceRank();
  for (const auto& d : dPoints_) {
    if (d.index >= data.tildeD().size()) fail(ErrorKind::InvalidInput, "d-point index out of range");
    if (d.lift.size() != n) fail(ErrorKind::InvalidInput, "lift " + toString(d.lift) + " has wrong rank");
    if (!toIntegral(scale(Rational(data.a()), d.lift)))
      fail(ErrorKind::InvalidInput, "lift " + toString(d.lift) + " is not in N/A");
    if (data.pi().apply(d.lift) != data.tildeD()[d.index])
      fail(ErrorKind::InvalidInput, "lift " + toString(d.lift) + " does not map to its point");
  }
  for (const auto& v : vPoints_) {
    if (v.size() != n) fail(ErrorKind::InvalidInput, "point " + toString(v) + " has wrong rank");
    if (!data.bigV().contains(v)) fail(ErrorKind::InvalidInput, "point " + toString(v) + " is outside V");
  }
  if (!polytope_.isFullDimensional()) fail(ErrorKind::InvalidInput, "candidate polytope is not full-dimensional");
}

bool verifyLemmaReduction(const CombFinitenessData& data, const CandidatePolytope& cand, const Rational& eps) {
  if (eps <= 0) fail(ErrorKind::InvalidInput, "epsilon must be positive");
  auto threshold = hensleyThresholdF(data);
  if (threshold && eps >= *threshold)
    fail(ErrorKind::PreconditionViolated,
         "epsilon " + ratString(eps) + " is not below the threshold " + ratString(*threshold));
  const Polytope& q = cand.polytope();
  const Rational inv = 1 / eps;
  bool reduced = true;
  forEachLatticePoint(boundingBox(q.vertices(), eps), [&](const LatticePoint& u) {
    if (!q.containsInInterior(scale(inv, toRational(u)))) return true;
    if (!data.bigV().contains(u)) {
      reduced = false;
      return false;
    }
    return true;
  });
  return reduced;
}

namespace {

struct Matcher {
  const std::vector<RationalPoint>& from;
  const std::vector<RationalPoint>& to;
  const std::vector<RationalPoint>& fromFiber;
  const std::vector<RationalPoint>& toFiber;
  const std::vector<std::size_t>& basis;
  const CombFinitenessData& data;
  std::size_t budget;
  std::size_t tried = 0;
  std::vector<std::size_t> image;
  std::vector<bool> used;
  std::optional<UnimodularMap> found;

  std::optional<UnimodularMap> candidate() const {
    const std::size_t n = basis.size();
    std::vector<RationalPoint> rows;
    for (auto b : basis) rows.push_back(from[b]);
    IntMatrix g(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      RationalPoint rhs;
      for (std::size_t k = 0; k < n; ++k) rhs.push_back(to[image[k]][r]);
      auto row = solveLinear(rows, rhs, n);
      if (!row) return std::nullopt;
      auto integral = toIntegral(*row);
      if (!integral) return std::nullopt;
      for (std::size_t c = 0; c < n; ++c) g(r, c) = (*integral)[c];
    }
    Integer det = determinant(g);
    if (det != 1 && det != -1) return std::nullopt;
    UnimodularMap map(g);
    if (!autNPiMembership(map, data.pi())) return std::nullopt;
    std::set<RationalPoint> target(to.begin(), to.end());
    for (const auto& v : from)
      if (!target.count(map.apply(v))) return std::nullopt;
    return map;
  }

  // Returns false when the search should stop.
  bool assign(std::size_t k) {
    if (k == basis.size()) {
      if (++tried > budget) return false;
      found = candidate();
      return !found;
    }
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (used[j] || toFiber[j] != fromFiber[basis[k]]) continue;
      used[j] = true;
      image[k] = j;
      bool go = assign(k + 1);
      used[j] = false;
      if (!go) return false;
    }
    return true;
  }
};

}  // namespace

EquivalenceResult autNPiEquivalent(const CandidatePolytope& q1, const CandidatePolytope& q2,
                                   const CombFinitenessData& data, std::size_t budget) {
  const auto& from = q1.polytope().vertices();
  const auto& to = q2.polytope().vertices();
  if (from.size() != to.size()) return NotEquivalent{"different numbers of vertices"};
  std::vector<RationalPoint> fromFiber, toFiber;
  for (const auto& v : from) fromFiber.push_back(data.pi().apply(v));
  for (const auto& v : to) toFiber.push_back(data.pi().apply(v));
  {
    auto a = fromFiber, b = toFiber;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return NotEquivalent{"vertex counts over the fibers of pi differ"};
  }
  const std::size_t n = data.pi().sourceRank();
  std::vector<std::size_t> basis;
  std::vector<RationalPoint> chosen;
  for (std::size_t i = 0; i < from.size() && basis.size() < n; ++i) {
    chosen.push_back(from[i]);
    if (rationalRank(chosen) == chosen.size())
      basis.push_back(i);
    else
      chosen.pop_back();
  }
  if (basis.size() < n) fail(ErrorKind::InternalInvariant, "vertices of a full-dimensional polytope do not span");
  Matcher m{from, to, fromFiber, toFiber, basis, data, budget, 0, std::vector<std::size_t>(n), std::vector<bool>(to.size()), {}};
  m.assign(0);
  if (m.found) return *m.found;
  if (m.tried > budget) return Inconclusive{budget};
  return NotEquivalent{"no vertex matching is induced by an element of Aut(N, pi)"};
}

}  // namespace sphan
