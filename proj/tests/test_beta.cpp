#include <gtest/gtest.h>
#include <omp.h>

#include <random>

#include "nj/beta.hpp"
#include "nj/naive.hpp"

using namespace nj;

namespace {

bool divides(long o, const Int& d) { return d % o == 0; }

// Two vertex terms and the edge term of a segment, solved by hand.
LaurentPoly segment_beta(const IntVec& a, const IntVec& b, long o) {
  Int ea = divides(o, content(a)) ? 1 : 0, eb = divides(o, content(b)) ? 1 : 0;
  Int d = naive::lattice_distance({a, b});
  Int len = content(sub(b, a));
  return LaurentPoly::monomial(-(ea + eb), 0) +
         LaurentPoly::monomial(ea + eb - (divides(o, d) ? len : Int(0)), 1);
}

std::vector<IntVec> pyramid(long s, long h) {
  return {{0, 0, 0, h}, {s, 0, 0, h}, {0, s, 0, h}, {s, s, 0, h}, {s, s, s, h}};
}

std::vector<IntVec> octahedron(long s, long h) {
  return {{s, 0, s, h}, {s, 2 * s, s, h}, {0, s, s, h}, {2 * s, s, s, h}, {s, s, 0, h}, {s, s, 2 * s, h}};
}

}  // namespace

TEST(BetaPoint, Examples) {
  EXPECT_EQ(beta_point({3, 0}, 3), LaurentPoly(1));
  EXPECT_TRUE(beta_point({3, 0}, 2).is_zero());
  for (long o = 2; o < 6; ++o) EXPECT_TRUE(beta_point({2, 3}, o).is_zero());
  EXPECT_EQ(beta_point({4, 6}, 2), LaurentPoly(1));
}

TEST(BetaRecursive, SegmentExample) {
  auto bp = BasedPolytope::make({{2, 0}, {2, 2}});
  EXPECT_EQ(bp.distance, 2);
  EXPECT_EQ(beta_recursive(bp, 2), LaurentPoly(-2));
  EXPECT_EQ(beta_pseudoprime_closed(bp, 2), LaurentPoly(-2));
  BetaEngine eng;
  EXPECT_EQ(eng.beta(bp, 2), LaurentPoly(-2));
}

TEST(BetaRecursive, SegmentVanishes) {
  for (long d = 1; d <= 5; ++d)
    for (long m = 1; m <= 5; ++m)
      for (long o = 2; o <= 6; ++o) {
        if (d % o == 0 || std::gcd(d, m) % o == 0) continue;
        EXPECT_TRUE(beta_recursive(BasedPolytope::make({{d, 0}, {d, m}}), o).is_zero());
      }
}

TEST(BetaRecursive, PointIsBase) {
  for (long o = 2; o <= 6; ++o) {
    IntVec p = {6, 4, 2};
    EXPECT_EQ(beta_recursive(BasedPolytope::make({p}), o), beta_point(p, o));
  }
}

TEST(BetaRecursive, RandomSegmentsByHand) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> c(0, 5);
  int done = 0;
  while (done < 40) {
    IntVec a = {c(rng), c(rng), c(rng)}, b = {c(rng), c(rng), c(rng)};
    if (a == b || nj::rank({to_rat(a), to_rat(b)}) < 2) continue;
    ++done;
    auto bp = BasedPolytope::make({a, b});
    for (long o = 2; o <= 6; ++o) EXPECT_EQ(beta_recursive(bp, o), segment_beta(a, b, o));
  }
}

TEST(BetaRecursive, PolygonProperties) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> c(0, 3);
  int done = 0;
  while (done < 25) {
    std::vector<IntVec> pts;
    for (int i = 0; i < 4; ++i) pts.push_back({c(rng), c(rng), c(rng)});
    auto h = naive::hull(pts);
    if (h.dim != 2) continue;
    Int d;
    try {
      d = naive::lattice_distance(pts);
    } catch (const GeometryError&) {
      continue;
    }
    ++done;
    std::vector<IntVec> verts;
    for (auto& v : h.vertices) verts.push_back(to_int(v));
    auto bp = BasedPolytope::make(verts);
    Int vol = naive::lattice_volume(verts);
    for (long o = 2; o <= 6; ++o) {
      auto b = beta_recursive(bp, o);
      if (!b.is_zero()) {
        EXPECT_GE(b.low(), 0);
        EXPECT_LE(b.high(), 2);
      }
      EXPECT_EQ(b.at_one(), divides(o, d) ? vol : Int(0));
      EXPECT_EQ(beta_pseudoprime_closed(bp, o), b);  // every triangle pyramid is pseudo-prime
    }
  }
}

TEST(BetaRecursive, MajorizerOrderIrrelevant) {
  for (long s = 1; s <= 2; ++s)
    for (long h = 1; h <= 3; ++h)
      for (auto pts : {pyramid(s, h), octahedron(s, h)}) {
        auto bp = BasedPolytope::make(pts);
        for (long o = 2; o <= 4; ++o) {
          auto ref = beta_recursive(bp, o, 0);
          for (std::uint64_t seed : {1ull, 99ull, 12345ull}) EXPECT_EQ(beta_recursive(bp, o, seed), ref);
          EXPECT_EQ(ref.at_one(), divides(o, bp.distance) ? Int(-naive::lattice_volume(pts)) : Int(0));
        }
      }
}

TEST(BetaPadded, Examples) {
  EXPECT_EQ(beta_padded(LaurentPoly(-2), 1, 1), LaurentPoly(-2));
  EXPECT_EQ(beta_padded(LaurentPoly(-2), 1, 2), LaurentPoly::monomial(-2, 2) + LaurentPoly(2));
  EXPECT_TRUE(beta_padded(LaurentPoly(), 1, 4).is_zero());
  EXPECT_EQ(beta_padded(LaurentPoly(1), 0, 2), LaurentPoly::t2_minus_one(2));
}

TEST(ClosedForm, CoprimeOrderVanishes) {
  auto bp = BasedPolytope::make({{2, 0, 4}, {4, 2, 0}, {0, 4, 2}});
  EXPECT_TRUE(beta_pseudoprime_closed(bp, 7).is_zero());
  EXPECT_TRUE(beta_recursive(bp, 7).is_zero());
}

TEST(ClosedForm, RejectsNonPseudoPrime) {
  // The pyramid over a square pyramid is not pseudo-prime.
  auto bp = BasedPolytope::make(pyramid(1, 1));
  EXPECT_FALSE(closed_form_table(bp).has_value());
  EXPECT_THROW(beta_pseudoprime_closed(bp, 2), GeometryError);
}

TEST(ClosedForm, TableMatchesRecursion) {
  for (long h = 1; h <= 4; ++h) {
    auto bp = BasedPolytope::make({{0, 0, 0, h}, {2, 0, 0, h}, {0, 2, 0, h}, {0, 0, 2, h}});
    auto table = closed_form_table(bp);
    ASSERT_TRUE(table.has_value());
    for (long o = 2; o <= 4; ++o) EXPECT_EQ(beta_closed(*table, o), beta_recursive(bp, o));
  }
}

TEST(BasedPolytope, KeyIgnoresOrderAndEmbedding) {
  std::vector<IntVec> a = {{2, 0, 1}, {0, 2, 1}, {1, 1, 3}};
  std::vector<IntVec> b = {a[2], a[0], a[1]};
  std::vector<IntVec> c;
  for (auto& v : a) c.push_back({v[0], 0, v[1], v[2]});
  auto key = BasedPolytope::make(a).canonical_key();
  EXPECT_EQ(BasedPolytope::make(b).canonical_key(), key);
  EXPECT_EQ(BasedPolytope::make(c).canonical_key(), key);
  EXPECT_THROW(BasedPolytope::make({{1, -1}, {-1, 1}}), GeometryError);
}

TEST(BetaEngine, ConcurrentMemo) {
  std::vector<std::vector<IntVec>> polys;
  for (long s = 1; s <= 2; ++s)
    for (long h = 1; h <= 3; ++h) {
      polys.push_back(pyramid(s, h));
      polys.push_back(octahedron(s, h));
    }
  std::vector<LaurentPoly> serial;
  for (auto& p : polys)
    for (long o = 2; o <= 4; ++o) serial.push_back(beta_recursive(BasedPolytope::make(p), o));

  BetaEngine shared;
  std::vector<LaurentPoly> par(serial.size());
  const long total = static_cast<long>(serial.size());
#pragma omp parallel for num_threads(4) schedule(dynamic)
  for (long i = 0; i < total; ++i) par[i] = shared.beta(polys[i / 3], Int(2 + i % 3));
  EXPECT_EQ(par, serial);
  std::size_t size = shared.memo_size();
  EXPECT_GT(size, 0u);
  for (std::size_t i = 0; i < polys.size(); ++i) EXPECT_EQ(shared.beta(polys[i], 2), serial[3 * i]);
  EXPECT_EQ(shared.memo_size(), size);
}
