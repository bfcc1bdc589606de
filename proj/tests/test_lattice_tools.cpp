#include <gtest/gtest.h>

#include <random>

#include "nj/lattice_tools.hpp"
#include "nj/naive.hpp"

using namespace nj;

namespace {

Polyhedron segment(int a, int b) { return Polyhedron::from_points(std::vector<IntVec>{{a}, {b}}); }
TorsionCharacter tau1(Rat q) { return TorsionCharacter(RatVec{q}); }

// Lattice points of the hull (or its relative interior) with τ(v) = α, by
// scanning the bounding box.
Int brute_count(const std::vector<IntVec>& pts, const TorsionCharacter& tau, const Rat& alpha,
                bool interior) {
  auto h = naive::hull(pts);
  std::size_t n = pts[0].size();
  IntVec lo = pts[0], hi = pts[0];
  for (auto& p : pts)
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] < lo[i]) lo[i] = p[i];
      if (p[i] > hi[i]) hi[i] = p[i];
    }
  Int count = 0;
  IntVec x = lo;
  while (true) {
    auto r = to_rat(x);
    bool in = interior ? naive::relint_contains(h, r) : naive::contains(h, r);
    if (in && tau(x) == frac(alpha)) ++count;
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  return count;
}

}  // namespace

TEST(Character, Evaluation) {
  TorsionCharacter t(RatVec{Rat(1, 2), Rat(2, 3)});
  EXPECT_EQ(t({1, 1}), Rat(1, 6));
  EXPECT_EQ(t({-1, 0}), Rat(1, 2));
  EXPECT_EQ(t.image_order(), 6);
  EXPECT_TRUE(t.kernel().contains({2, 3}));
  EXPECT_FALSE(t.kernel().contains({1, 3}));
}

TEST(Character, SegmentInteriorCounts) {
  auto D = segment(0, 2);
  for (long k = 1; k <= 3; ++k) {
    EXPECT_EQ(interior_count(D, tau1(Rat(1, 2)), 0, k), k - 1);
    EXPECT_EQ(interior_count(D, tau1(Rat(1, 2)), Rat(1, 2), k), k);
  }
}

TEST(Character, NaturalCountOfPoint) {
  auto L = Lattice::generated_by({{2, 0}, {0, 1}}, 2);
  EXPECT_EQ(natural_count(Polyhedron::from_points(std::vector<IntVec>{{4, 3}}), L), 1);
  EXPECT_EQ(natural_count(Polyhedron::from_points(std::vector<IntVec>{{3, 3}}), L), 0);
}

TEST(Character, UnitSquareInterior) {
  auto sq = Polyhedron::from_points(std::vector<IntVec>{{0, 0}, {2, 0}, {0, 2}, {2, 2}});
  EXPECT_EQ(natural_count(sq, Lattice::standard(2)), 1);
  EXPECT_EQ(sharp_count(sq, Lattice::standard(2)), 9);
}

TEST(Character, AgreesWithBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(0, 4), den(1, 4);
  for (int it = 0; it < 30; ++it) {
    std::size_t n = 2 + it % 2;
    std::vector<IntVec> pts;
    for (std::size_t i = 0; i < n + 2; ++i) {
      IntVec p(n);
      for (auto& x : p) x = c(rng);
      pts.push_back(p);
    }
    auto P = Polyhedron::from_points(pts);
    RatVec q(n);
    for (auto& x : q) x = make_rat(c(rng), den(rng));
    TorsionCharacter tau(q);
    Int D = tau.image_order();
    Int total_closed = 0;
    for (Int a = 0; a < D; ++a) {
      Rat alpha = make_rat(a, D);
      Int closed = character_count(P, tau, alpha, Region::Closed);
      EXPECT_EQ(closed, brute_count(pts, tau, alpha, false));
      EXPECT_EQ(character_count(P, tau, alpha, Region::RelativeInterior), brute_count(pts, tau, alpha, true));
      total_closed += closed;
    }
    EXPECT_EQ(total_closed, sharp_count(P, Lattice::standard(n)));
  }
}

TEST(Ehrhart, Examples) {
  EXPECT_EQ(ehrhart_series_polynomial(segment(0, 2), tau1(Rat(1, 2)), Rat(1, 2)), (std::vector<Int>{0, 1, 0}));
  // Interior counts k-1 sum to t^2/(1-t)^2.
  EXPECT_EQ(ehrhart_series_polynomial(segment(0, 1), tau1(0), 0), (std::vector<Int>{0, 0, 1}));
  EXPECT_EQ(ehrhart_series_polynomial(segment(0, 2), tau1(Rat(1, 2)), Rat(1, 3)), (std::vector<Int>{0, 0, 0}));
}

TEST(Ehrhart, VertexConditionEnforced) {
  EXPECT_THROW(ehrhart_series_polynomial(segment(0, 1), tau1(Rat(1, 2)), Rat(1, 2)), ValidationError);
}

TEST(Ehrhart, IndependentOfVertex) {
  auto T = Polyhedron::from_points(std::vector<IntVec>{{0, 0}, {2, 0}, {2, 2}, {0, 4}});
  TorsionCharacter tau(RatVec{Rat(1, 2), Rat(1, 2)});
  for (Rat a : {Rat(0), Rat(1, 2)})
    for (std::size_t w = 1; w < T.vertices().size(); ++w)
      EXPECT_EQ(ehrhart_series_polynomial(T, tau, a, w), ehrhart_series_polynomial(T, tau, a, 0));
}

TEST(Hodge, Examples) {
  auto h = hodge_column_sums(segment(0, 2), tau1(Rat(1, 2)), Rat(1, 2));
  EXPECT_EQ(h[0], 1);
  EXPECT_EQ(h[1], 0);
  // Trivial eigenvalue: the two points give χ = 1, all of it in column 0.
  auto h1 = hodge_column_sums(segment(0, 2), tau1(Rat(1, 2)), 0);
  EXPECT_EQ(h1[0], 1);
  EXPECT_EQ(h1[1], 0);
}

TEST(Hodge, ColumnSumsGiveChi) {
  std::vector<std::pair<Polyhedron, TorsionCharacter>> cases = {
      {segment(0, 2), tau1(Rat(1, 2))},
      {segment(0, 6), tau1(Rat(1, 3))},
      {Polyhedron::from_points(std::vector<IntVec>{{0, 0}, {2, 0}, {2, 2}}), TorsionCharacter(RatVec{Rat(1, 2), 0})},
      {Polyhedron::from_points(std::vector<IntVec>{{0, 0}, {4, 0}, {0, 4}}), TorsionCharacter(RatVec{Rat(1, 4), Rat(1, 2)})},
      {Polyhedron::from_points(std::vector<IntVec>{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}}),
       TorsionCharacter(RatVec{Rat(1, 2), Rat(1, 2), 0})},
  };
  for (auto& [D, tau] : cases) {
    Int ord = tau.image_order();
    for (Int a = 0; a < ord; ++a) {
      Rat alpha = make_rat(a, ord);
      Int sum = 0;
      for (auto& [p, v] : hodge_column_sums(D, tau, alpha)) sum += v;
      EXPECT_EQ(sum, chi_via_ehrhart(D, tau, alpha));
    }
  }
}

TEST(Chi, Examples) {
  auto D = segment(0, 2);
  EXPECT_EQ(chi_via_ehrhart(D, tau1(Rat(1, 2)), Rat(1, 2)), 1);
  EXPECT_EQ(chi_via_ehrhart(D, tau1(Rat(1, 2)), 0), 1);
  EXPECT_EQ(chi_via_ehrhart(D, tau1(Rat(1, 2)), Rat(1, 3)), 0);
  EXPECT_EQ(chi_via_volume(D, tau1(Rat(1, 2)), Rat(1, 2)), 1);
  auto T = Polyhedron::from_points(std::vector<IntVec>{{0, 0}, {2, 0}, {2, 2}});
  TorsionCharacter tau(RatVec{Rat(1, 2), 0});
  EXPECT_EQ(chi_via_volume(T, tau, Rat(1, 2)), -2);
  EXPECT_EQ(chi_via_ehrhart(T, tau, Rat(1, 2)), -2);
}

TEST(Chi, RoutesAgree) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> c(0, 2), den(1, 3);
  for (int it = 0; it < 20; ++it) {
    RatVec q = {make_rat(c(rng), den(rng)), make_rat(c(rng), den(rng))};
    TorsionCharacter tau(q);
    Int D = tau.image_order();
    std::vector<IntVec> pts;
    for (int i = 0; i < 4; ++i) pts.push_back({D * c(rng), D * c(rng)});
    auto P = Polyhedron::from_points(pts);
    if (P.dim() != 2) continue;
    for (Int a = 0; a < D; ++a) {
      Rat alpha = make_rat(a, D);
      EXPECT_EQ(chi_route(P, tau, alpha, ChiRoute::Ehrhart), chi_route(P, tau, alpha, ChiRoute::SublatticeCounts));
    }
  }
}

TEST(AE, Examples) {
  auto Z2 = Lattice::standard(2);
  std::vector<IntVec> sq = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  auto r = alternating_mixed_identity({{Rat(1, 2), Rat(1, 2)}}, {sq, sq}, Z2);
  EXPECT_EQ(r.natural, 2);
  EXPECT_EQ(r.sharp, 2);
  EXPECT_EQ(r.mixed_volume, 2);

  auto s = alternating_mixed_identity({{0, 0}}, {{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}}, Z2);
  EXPECT_EQ(s.khovanskii, 1);
  EXPECT_EQ(s.mixed_volume, 1);

  auto p = alternating_mixed_identity({{Rat(1, 3), 0}}, {sq, {{2, 1}}}, Z2);
  EXPECT_EQ(p.natural, 0);
  EXPECT_EQ(p.sharp, 0);
  EXPECT_EQ(p.mixed_volume, 0);
}

TEST(ConeSlice, Point) {
  auto s = cone_slice_counts(Polyhedron::from_points(std::vector<IntVec>{{2}}), 3);
  PuiseuxPoly want = {{Rat(1, 2), 1}, {Rat(3, 2), 1}, {Rat(5, 2), 1}};
  PuiseuxPoly got;
  for (auto& [e, c] : s.terms)
    if (c != 0) got[e] = c;
  EXPECT_EQ(got, want);
}

TEST(ConeSlice, IntegralHeights) {
  auto s = cone_slice_counts(Polyhedron::from_points(std::vector<IntVec>{{1, 0}, {0, 1}}), 4);
  for (auto& [e, c] : s.terms) EXPECT_EQ(c, 0);
}

TEST(ConeSlice, RandomPlaneCones) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> c(0, 4);
  int done = 0;
  while (done < 20) {
    IntVec p = {c(rng), c(rng)}, q = {c(rng), c(rng)};
    Int det = p[0] * q[1] - p[1] * q[0];
    if (det == 0) continue;
    ++done;
    Rat bound = 3;
    auto s = cone_slice_counts(Polyhedron::from_points(std::vector<IntVec>{p, q}), bound);
    // v = a p + b q with a, b >= 0 has height a + b.
    PuiseuxPoly want;
    long R = 3 * 8 + 1;
    for (long x = 0; x <= R; ++x)
      for (long y = 0; y <= R; ++y) {
        Rat a = make_rat(x * q[1] - y * q[0], det), b = make_rat(p[0] * y - p[1] * x, det);
        if (a < 0 || b < 0) continue;
        Rat h = a + b;
        if (h <= bound && frac(h) != 0) want[h] += 1;
      }
    PuiseuxPoly got;
    for (auto& [e, n] : s.terms)
      if (n != 0) got[e] = n;
    EXPECT_EQ(got, want) << to_string(p) << " " << to_string(q);
  }
}

TEST(ConeSlice, NeedsBound) {
  EXPECT_THROW(cone_slice_counts(Polyhedron::from_points(std::vector<IntVec>{{2}}), 0), ValidationError);
}
