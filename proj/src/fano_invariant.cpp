#include "sphan/fano_invariant.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "polygon_search.hpp"
#include "sphan/errors.hpp"

namespace sphan {

namespace {

const Rational kCap = 2;

struct Best {
  std::optional<Rational> mld;
  std::optional<Polytope> polytope;
  std::size_t evaluated = 0;
  bool hitCap = false;

  /// Returns false once the cap is reached.
  bool offer(const Polytope& q) {
    ++evaluated;
    Rational value = mldOfPolytope(q, q.latticeVertices(), MldVariant::Exceptional);
    if (!mld || value > *mld) {
      mld = value;
      polytope = q;
    }
    hitCap = *mld == kCap;
    return !hitCap;
  }
};

LatticePoint toLattice(const detail::Vec2& p) {
  return {Integer(static_cast<long>(p.x)), Integer(static_cast<long>(p.y))};
}

/// One partition per first vertex. Partitions after the first one reaching the
/// cap are irrelevant to the result and are skipped.
std::vector<Best> searchPolygons(int height, unsigned jobs) {
  const auto pts = detail::primitivePointsByAngle(height);
  const std::size_t m = pts.size();
  std::vector<Best> parts(m);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> capAt{std::numeric_limits<std::size_t>::max()};
  const detail::EdgeFilter any = [](std::size_t, std::size_t) { return true; };
  auto worker = [&] {
    for (std::size_t first; (first = next++) < m;) {
      if (first > capAt.load()) continue;
      Best& best = parts[first];
      detail::forEachPolygonFrom(pts, first, any, [&](const std::vector<std::size_t>& seq) {
        std::vector<LatticePoint> verts;
        for (auto i : seq) verts.push_back(toLattice(pts[i]));
        return best.offer(Polytope::convexHull(2, verts));
      });
      if (best.hitCap) {
        std::size_t seen = capAt.load();
        while (first < seen && !capAt.compare_exchange_weak(seen, first)) {
        }
      }
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
  if (capAt.load() < m) parts.resize(capAt.load() + 1);
  return parts;
}

std::vector<LatticePoint> primitiveBoxPoints(std::size_t rank, int height) {
  std::vector<LatticePoint> out;
  LatticeBox box{LatticePoint(rank, Integer(-height)), LatticePoint(rank, Integer(height))};
  forEachLatticePoint(box, [&](const LatticePoint& u) {
    if (!isZero(u) && content(u) == 1) out.push_back(u);
    return true;
  });
  return out;
}

/// Subsets of the box points by increasing size, lexicographic within a size.
std::vector<Best> searchSubsets(std::size_t rank, int height) {
  const auto pts = primitiveBoxPoints(rank, height);
  std::vector<Best> parts(1);
  Best& best = parts.front();
  for (std::size_t k = rank + 1; k <= pts.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<LatticePoint> chosen;
      for (auto i : idx) chosen.push_back(pts[i]);
      Polytope q = Polytope::convexHull(rank, chosen);
      if (q.vertices().size() == k && q.isFullDimensional() && q.containsOriginInInterior() && !best.offer(q))
        return parts;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == pts.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return parts;
}

}  // namespace

FanoSearchResult fanoInvariantSearch(std::size_t rank, int heightBound, unsigned jobs) {
  if (rank == 0) fail(ErrorKind::InvalidInput, "rank must be positive");
  if (rank > 3) fail(ErrorKind::RankTooLarge, "toric search is limited to rank 3");
  if (heightBound < 0) fail(ErrorKind::InvalidInput, "height bound must be nonnegative");
  std::vector<Best> parts = rank == 2 ? searchPolygons(heightBound, jobs) : searchSubsets(rank, heightBound);
  FanoSearchResult out;
  out.searchBound = heightBound;
  out.exhaustive = true;
  const Best* winner = nullptr;
  for (const auto& part : parts) {
    out.candidatesEvaluated += part.evaluated;
    if (part.hitCap) out.exhaustive = false;
    if (part.mld && (!winner || *part.mld > *winner->mld)) winner = &part;
  }
  if (winner) {
    out.bestMld = winner->mld;
    out.fanWitness = faceFan(*winner->polytope);
    out.optimal = *winner->mld == kCap;
  }
  return out;
}

namespace {

bool meetsValuationCone(const RationalCone& sigma, const RationalCone& v) {
  RationalCone t = sigma.intersect(v);
  for (const auto& f : sigma.facets())
    if (std::all_of(t.generators().begin(), t.generators().end(),
                    [&](const LatticePoint& g) { return dot(f, g) == 0; }))
      return false;
  return true;
}

std::optional<ColoredFan> coloredCandidate(const ColoredSkeleton& sk, const std::vector<LatticePoint>& rays,
                                           const std::vector<std::size_t>& colorIdx) {
  std::vector<RationalPoint> pts{RationalPoint(sk.rank, Rational(0))};
  for (const auto& r : rays) pts.push_back(toRational(r));
  for (auto c : colorIdx) pts.push_back(sk.colors[c].normalizedPoint());
  Polytope k = Polytope::convexHull(sk.rank, pts);
  if (!k.isFullDimensional()) return std::nullopt;
  auto isVertex = [&](const RationalPoint& p) {
    return std::binary_search(k.vertices().begin(), k.vertices().end(), p);
  };
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!isVertex(pts[i])) return std::nullopt;
  std::vector<ColoredCone> cones;
  for (const auto& f : k.facets()) {
    if (f.offset <= 0) continue;
    ColoredCone cone;
    for (const auto& r : rays)
      if (dot(f.normal, r) == f.offset) cone.generators.push_back(r);
    for (auto c : colorIdx)
      if (dot(f.normal, sk.colors[c].normalizedPoint()) == f.offset) cone.colors.push_back(sk.colors[c].name);
    std::vector<LatticePoint> gens = cone.generators;
    for (const auto& name : cone.colors)
      for (const auto& c : sk.colors)
        if (c.name == name) gens.push_back(c.rho);
    if (!meetsValuationCone(RationalCone::fromGenerators(sk.rank, gens), sk.valuationCone)) continue;
    cones.push_back(std::move(cone));
  }
  if (cones.empty()) return std::nullopt;
  return ColoredFan(sk.rank, sk.valuationCone, sk.colors, cones);
}

}  // namespace

FanoSearchResult fanoInvariantSearch(const ColoredSkeleton& skeleton, int heightBound) {
  if (skeleton.rank == 0) fail(ErrorKind::InvalidInput, "rank must be positive");
  if (skeleton.rank > 2) fail(ErrorKind::RankTooLarge, "colored search is limited to rank 2");
  if (heightBound < 0) fail(ErrorKind::InvalidInput, "height bound must be nonnegative");
  std::vector<LatticePoint> candidates;
  for (const auto& u : primitiveBoxPoints(skeleton.rank, heightBound))
    if (skeleton.valuationCone.contains(u)) candidates.push_back(u);
  const std::size_t nc = skeleton.colors.size();
  if (candidates.size() + nc > 24) fail(ErrorKind::InvalidInput, "colored search space exceeds 2^24 subsets");

  FanoSearchResult out;
  out.searchBound = heightBound;
  out.exhaustive = true;
  for (unsigned long rayMask = 1; rayMask < (1ul << candidates.size()); ++rayMask) {
    std::vector<LatticePoint> rays;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (rayMask >> i & 1) rays.push_back(candidates[i]);
    for (unsigned long colorMask = 0; colorMask < (1ul << nc); ++colorMask) {
      std::vector<std::size_t> colorIdx;
      for (std::size_t i = 0; i < nc; ++i)
        if (colorMask >> i & 1) colorIdx.push_back(i);
      auto cf = coloredCandidate(skeleton, rays, colorIdx);
      if (!cf || !validateColoredFan(*cf).valid()) continue;
      Rational value;
      try {
        FanoBodies bodies = fanoBodies(*cf);
        value = coloredMld(*cf, bodies, MldVariant::Exceptional);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::InternalInvariant) throw;
        continue;
      }
      ++out.candidatesEvaluated;
      if (!out.bestMld || value > *out.bestMld) {
        out.bestMld = value;
        out.coloredWitness = *cf;
      }
      if (*out.bestMld == kCap) {
        out.optimal = true;
        out.exhaustive = false;
        return out;
      }
    }
  }
  return out;
}

Rational mldOfFanoCompactification(const Fan& fan) { return mld(fan, MldVariant::Exceptional); }

Rational mldOfFanoCompactification(const ColoredFan& cf) {
  FanoBodies bodies = [&] {
    try {
      return fanoBodies(cf);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InternalInvariant) throw;
      fail(ErrorKind::NotFano, std::string("colored fan is not Fano: ") + e.what());
    }
  }();
  return coloredMld(cf, bodies, MldVariant::Exceptional);
}

}  // namespace sphan
