#pragma once

// Random finiteness-lemma instances with rank N = 2 and rank Ñ₁ = 1, and a
// brute-force search for Aut(N,π)-equivalences over small integer matrices.

#include <optional>
#include <random>
#include <set>

#include "helpers.hpp"
#include "sphan/classify.hpp"

namespace testing_support {

struct LemmaInstance {
  UnimodularMap basis;  ///< π is its first row
  CombFinitenessData data;
};

inline LemmaInstance randomLemmaData(std::mt19937_64& rng) {
  UnimodularMap c = randomUnimodular(rng, 2, 4);
  QuotientMap pi(IntMatrix::fromRows({c.matrix().row(0)}, 2));
  std::uniform_int_distribution<long> a(1, 3), num(-9, 9), count(1, 3);
  std::uniform_int_distribution<int> side(0, 1);
  RationalCone tildeV = RationalCone::fromInequalities(1, pts({{side(rng) ? 1 : -1}}));
  Integer bigA = a(rng);
  std::vector<RationalPoint> tildeD;
  for (long i = 0, n = count(rng); i < n; ++i) {
    Rational d(num(rng), bigA);
    d.canonicalize();
    tildeD.push_back({d});
  }
  return {c, CombFinitenessData(pi, tildeV, bigA, tildeD)};
}

/// x ∈ N/A with π(x) = target, chosen uniformly among lifts whose kernel
/// coordinate (in the basis `c`) lies in [-window, window].
inline RationalPoint randomLift(std::mt19937_64& rng, const LemmaInstance& inst, const Rational& target, int window) {
  const Integer& bigA = inst.data.a();
  std::uniform_int_distribution<long> t(-window, window);
  // c·x = (target, s) with s ∈ (1/A)ℤ
  Rational s(t(rng), bigA);
  s.canonicalize();
  UnimodularMap inv = inst.basis.inverse();
  return inv.apply(RationalPoint{target, s});
}

inline std::optional<CandidatePolytope> randomCandidate(std::mt19937_64& rng, const LemmaInstance& inst) {
  std::uniform_int_distribution<long> coord(-4, 4);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<DPoint> ds;
  for (std::size_t i = 0; i < inst.data.tildeD().size(); ++i)
    for (int k = 0, n = count(rng); k < n; ++k) ds.push_back({i, randomLift(rng, inst, inst.data.tildeD()[i][0], 6)});
  std::vector<LatticePoint> vs;
  for (int k = 0, n = count(rng) + 1; k < n; ++k) {
    LatticePoint v = pt({coord(rng), coord(rng)});
    if (!isZero(v) && inst.data.bigV().contains(v)) vs.push_back(v);
  }
  try {
    return CandidatePolytope(inst.data, ds, vs);
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// Image of a candidate under g, with the same d/v bookkeeping.
inline CandidatePolytope transformCandidate(const CandidatePolytope& q, const UnimodularMap& g,
                                            const CombFinitenessData& data) {
  std::vector<DPoint> ds;
  for (const auto& d : q.dPoints()) ds.push_back({d.index, g.apply(d.lift)});
  std::vector<LatticePoint> vs;
  for (const auto& v : q.vPoints()) vs.push_back(g.apply(v));
  return CandidatePolytope(data, ds, vs);
}

/// Random element of Aut(N,π): c⁻¹·[[1,0],[k,±1]]·c.
inline UnimodularMap randomAutNPi(std::mt19937_64& rng, const LemmaInstance& inst) {
  std::uniform_int_distribution<long> k(-4, 4);
  std::uniform_int_distribution<int> sign(0, 1);
  UnimodularMap m(IntMatrix{{1, 0}, {k(rng), sign(rng) ? 1 : -1}});
  return inst.basis.compose(m).compose(inst.basis.inverse());
}

/// Brute force over 2×2 integer matrices with entries in [-bound, bound]:
/// πg = π, det g = ±1, and g maps the vertex set of q1 onto that of q2.
inline bool bruteForceEquivalent(const CandidatePolytope& q1, const CandidatePolytope& q2, const QuotientMap& pi,
                                 long bound) {
  const auto& from = q1.polytope().vertices();
  std::set<RationalPoint> to(q2.polytope().vertices().begin(), q2.polytope().vertices().end());
  if (from.size() != to.size()) return false;
  const IntMatrix& p = pi.matrix();
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      for (long c = -bound; c <= bound; ++c)
        for (long d = -bound; d <= bound; ++d) {
          long det = a * d - b * c;
          if (det != 1 && det != -1) continue;
          IntMatrix g{{a, b}, {c, d}};
          if (!(p * g == p)) continue;
          bool maps = true;
          for (const auto& v : from) maps = maps && to.count(g.apply(v));
          if (maps) return true;
        }
  return false;
}

}  // namespace testing_support
