#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "nj/naive.hpp"
#include "nj/oracle.hpp"
#include "nj/pipeline.hpp"

using namespace nj;

namespace {

PipelineInput make(std::size_t n, std::vector<Support> s, Mode mode = Mode::Local) {
  PipelineInput in;
  in.n = n;
  in.mode = mode;
  in.supports = std::move(s);
  return in;
}

PipelineInput plane_pair() { return make(2, {{{2, 0}, {0, 2}}, {{1, 0}, {0, 1}}}); }

bool all_ok(const std::vector<CheckOutcome>& v, std::string* why = nullptr) {
  for (auto& c : v)
    if (!c.ok) {
      if (why) *why = c.name + ": " + c.detail;
      return false;
    }
  return true;
}

}  // namespace

TEST(Packages, PlanePair) {
  auto pk = enumerate_theta_packages(plane_pair());
  ASSERT_EQ(pk.size(), 1u);
  auto& p = pk[0];
  EXPECT_EQ(p.dim, 1);
  EXPECT_EQ(p.vertices, (std::vector<IntVec>{{0, 3}, {3, 0}}));
  EXPECT_EQ(p.gamma[0], (std::vector<IntVec>{{0, 2}, {2, 0}}));
  EXPECT_EQ(p.gamma[1], (std::vector<IntVec>{{0, 1}, {1, 0}}));
  EXPECT_EQ(p.s, 2);
  EXPECT_EQ(p.m, 0);
  EXPECT_EQ(p.distance, 1);  // K through (1,0) parallel to the edge
}

TEST(Packages, InputValidation) {
  EXPECT_THROW(enumerate_theta_packages(make(2, {{{2, 0}, {0, 2}}})), ValidationError);
  EXPECT_THROW(enumerate_theta_packages(make(2, {{{2, 0}, {0, 2}}, {{1, 1}}})), ValidationError);
  EXPECT_THROW(enumerate_theta_packages(make(2, {{{2, 0}, {0, 2}}, {{1, 0}}, {{0, 1}}})), ValidationError);
}

TEST(Packages, InfinityFacesAvoidOrigin) {
  Support f1 = {{1, 0}, {0, 1}, {2, 2}}, f2 = {{1, 1}};
  auto M = minkowski_sum({newton_polyhedron(f1, 2, Mode::Infinity), newton_polyhedron(f2, 2, Mode::Infinity)});
  std::set<std::vector<IntVec>> far;
  for (std::size_t f = 0; f < M.sum.faces().size(); ++f) {
    auto v = M.sum.face_lattice_vertices(f);
    std::sort(v.begin(), v.end());
    if (!std::binary_search(v.begin(), v.end(), IntVec{0, 0})) far.insert(v);
  }
  std::vector<std::vector<RatVec>> pts(2);
  for (auto& v : f1) pts[0].push_back(to_rat(v));
  for (auto& v : f2) pts[1].push_back(to_rat(v));
  for (auto& p : pts) p.push_back({0, 0});
  auto h = naive::hull(naive::minkowski_points(pts));
  std::set<std::vector<IntVec>> want;
  for (auto& f : naive::faces(h)) {
    std::vector<IntVec> v;
    for (auto i : f.vertices) v.push_back(to_int(h.vertices[i]));
    std::sort(v.begin(), v.end());
    if (!std::binary_search(v.begin(), v.end(), IntVec{0, 0})) want.insert(v);
  }
  EXPECT_EQ(want.size(), 9u);
  EXPECT_EQ(far, want);

  auto pk = enumerate_theta_packages(make(2, {{{1, 0}, {0, 1}, {2, 2}}, {{2, 0}, {0, 2}}}, Mode::Infinity));
  for (auto& p : pk) {
    EXPECT_FALSE(std::binary_search(p.vertices.begin(), p.vertices.end(), IntVec{0, 0}));
    EXPECT_GE(p.dim, 1);
  }
  EXPECT_FALSE(pk.empty());
}

TEST(Packages, FaceIsSumOfGammas) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 8; ++it) {
    auto in = oracle::random_instance(rng, 3, 2 + it % 2, 5);
    for (auto& p : enumerate_theta_packages(in)) {
      std::vector<std::vector<IntVec>> g = p.gamma;
      auto hull = minkowski_hull(g);
      auto v = hull.lattice_vertices();
      std::sort(v.begin(), v.end());
      EXPECT_EQ(v, p.vertices);
    }
  }
}

TEST(Delta, VertexAndSegment) {
  auto pk = enumerate_theta_packages(make(2, {{{4, 0}, {0, 1}}, {{1, 0}, {0, 1}}}));
  ASSERT_EQ(pk.size(), 2u);
  int seen = 0;
  for (auto& p : pk) {
    auto dc = delta_combinatorics(p);
    if (p.gamma_dim[1] == 0) {
      EXPECT_EQ(p.joins[0].delta, 0);
      EXPECT_EQ(p.joins[1].delta, 0);
      ASSERT_TRUE(dc.j0.has_value());
      EXPECT_EQ(*dc.j0, 1u);
      ++seen;
    } else {
      EXPECT_EQ(p.joins[0].delta, 1);
      ++seen;
    }
  }
  EXPECT_EQ(seen, 2);
}

TEST(Delta, Submodular) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 6; ++it) {
    auto in = oracle::random_instance(rng, 3 + it % 2, 3, 5);
    for (auto& p : enumerate_theta_packages(in)) {
      unsigned full = static_cast<unsigned>(p.joins.size());
      for (unsigned I = 0; I < full; ++I)
        for (unsigned J = 0; J < full; ++J)
          EXPECT_GE(p.joins[I].delta + p.joins[J].delta, p.joins[I & J].delta + p.joins[I | J].delta);
      EXPECT_NO_THROW(delta_combinatorics(p));
    }
  }
}

TEST(Candidates, SingleDistance) {
  PipelineInput in = make(2, {{{2, 0}, {0, 2}}, {{2, 0}, {0, 2}}});
  auto pk = enumerate_theta_packages(in);
  auto c = eigenvalue_candidates(pk);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].value(), Rat(1, 2));
  EXPECT_EQ(pk[0].distance, 2);
  EXPECT_EQ(distance_lcm(pk), 2);
  EXPECT_TRUE(eigenvalue_candidates(enumerate_theta_packages(plane_pair())).empty());
}

TEST(Candidates, OutsideClassesVanish) {
  auto in = make(2, {{{2, 0}, {0, 3}}, {{3, 0}, {0, 2}}});
  Pipeline P(in);
  Int N = distance_lcm(P.packages());
  auto cand = eigenvalue_candidates(P.packages());
  std::set<Rat> in_set;
  for (auto& c : cand) {
    in_set.insert(c.value());
    EXPECT_EQ(N % c.order(), 0);
  }
  std::vector<Int> orders;
  for (Int o = 2; o <= N; ++o)
    if (N % o == 0) orders.push_back(o);
  P.evaluate(orders);
  for (Int a = 1; a < N; ++a) {
    Rat b = make_rat(a, N);
    auto r = P.jordan_blocks(EigenvalueClass(b));
    if (in_set.count(b)) continue;
    EXPECT_TRUE(r.beta.is_zero()) << to_string(b);
    for (auto& x : r.counts_geq) EXPECT_EQ(x, 0);
  }
}

TEST(Pipeline, SerialAndParallelAgree) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 4; ++it) {
    auto in = oracle::random_instance(rng, 3, 2, 5);
    PipelineOptions par;
    par.jobs = 4;
    Pipeline A(in, par), B(in);
    auto orders = candidate_orders(A.packages());
    A.evaluate(orders);
    B.evaluate_serial(orders);
    for (auto& o : orders) {
      EXPECT_EQ(A.motivic_beta(o), B.motivic_beta(o));
      for (std::size_t t = 0; t < A.packages().size(); ++t)
        for (unsigned m = 0; m < A.packages()[t].joins.size(); ++m) EXPECT_EQ(A.join_beta(t, m, o), B.join_beta(t, m, o));
    }
  }
}

TEST(Pipeline, KappaChoiceIrrelevant) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 4; ++it) {
    auto in = oracle::random_instance(rng, 3, 2 + it % 2, 5);
    PipelineOptions lo, hi;
    hi.kappa = KappaChoice::LexMax;
    Pipeline A(in, lo), B(in, hi);
    auto orders = candidate_orders(A.packages());
    ASSERT_EQ(orders, candidate_orders(B.packages()));
    A.evaluate(orders);
    B.evaluate(orders);
    for (auto& o : orders) EXPECT_EQ(A.motivic_beta(o), B.motivic_beta(o));
  }
}

TEST(Pipeline, InvariantChecksHold) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 6; ++it) {
    auto in = oracle::random_instance(rng, 2 + it % 3, 2, 5);
    Pipeline P(in);
    auto orders = candidate_orders(P.packages());
    P.evaluate(orders);
    for (auto& o : orders) {
      auto r = P.jordan_blocks(EigenvalueClass(make_rat(1, o)));
      for (std::size_t i = 0; i < r.counts_geq.size(); ++i) {
        EXPECT_GE(r.counts_geq[i], 0);
        if (i) {
          EXPECT_LE(r.counts_geq[i], r.counts_geq[i - 1]);
        }
      }
      if (!r.beta.is_zero()) {
        EXPECT_LE(r.beta.high(), 2 * (P.n() - P.k()));
      }
      std::string why;
      EXPECT_TRUE(all_ok(P.check_eigenvalue(EigenvalueClass(make_rat(1, o)), true), &why)) << why;
    }
    std::string why;
    EXPECT_TRUE(all_ok(P.check_spectrum(P.spectrum()), &why)) << why;
  }
}

TEST(Pipeline, NaiveMotivicBeta) {
  for (auto in : {plane_pair(), make(2, {{{2, 0}, {0, 2}}, {{2, 0}, {0, 2}}}), make(2, {{{2, 0}, {0, 3}}, {{3, 0}, {0, 2}}}),
                  make(3, {{{0, 0, 1}, {2, 0, 0}, {0, 3, 0}}, {{3, 0, 0}, {0, 4, 0}, {0, 0, 5}}})}) {
    Pipeline P(in);
    auto orders = candidate_orders(P.packages());
    for (long o : {2, 3, 4})
      if (std::find(orders.begin(), orders.end(), Int(o)) == orders.end()) orders.push_back(o);
    P.evaluate(orders);
    auto naive = oracle::naive_motivic_betas(in, orders);
    ASSERT_TRUE(naive.has_value());
    for (auto& o : orders) EXPECT_EQ(naive->at(o), P.motivic_beta(o)) << o.get_str();
  }
}

TEST(Pipeline, WeightedHomogeneousHasNoLongBlocks) {
  auto fams = oracle::weighted_homogeneous_families();
  EXPECT_GE(fams.size(), 5u);
  for (auto& in : fams) {
    Pipeline P(in);
    auto orders = candidate_orders(P.packages());
    P.evaluate(orders);
    for (auto& o : orders) {
      auto r = P.jordan_blocks(EigenvalueClass(make_rat(1, o)));
      if (r.counts_geq.size() > 1) {
        EXPECT_EQ(r.counts_geq[1], 0);
      }
    }
  }
}

// Eliminating z from z + x^a + y^b = x^A + y^B + z^C leaves a curve with the
// Brieskorn-Pham spectrum {i/A + j/B}.
TEST(Spectrum, BrieskornPham) {
  struct Case {
    long a, b, A, B, C;
  };
  for (auto c : {Case{2, 3, 3, 4, 5}, Case{2, 2, 3, 3, 4}, Case{3, 3, 2, 5, 3}, Case{2, 3, 4, 5, 5}}) {
    auto in = make(3, {{{0, 0, 1}, {c.a, 0, 0}, {0, c.b, 0}}, {{c.A, 0, 0}, {0, c.B, 0}, {0, 0, c.C}}});
    Pipeline P(in);
    auto sp = P.spectrum();
    PuiseuxPoly want;
    for (long i = 1; i < c.A; ++i)
      for (long j = 1; j < c.B; ++j) {
        Rat e = make_rat(i, c.A) + make_rat(j, c.B);
        if (frac(e) != 0) want[e] += 1;
      }
    PuiseuxPoly got;
    for (auto& [e, n] : sp)
      if (n != 0) got[e] = n;
    EXPECT_EQ(got, want) << c.A << "," << c.B;
  }
}

TEST(Spectrum, IntegralHeightsGiveNothing) {
  Pipeline P(make(2, {{{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}}));
  for (auto& [e, n] : P.spectrum()) EXPECT_EQ(n, 0);
}

TEST(Corollaries, PlaneCurvesAndMajorizing) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 4; ++it) {
    auto in = oracle::majorizing_instance(rng, 3, 2);
    Pipeline P(in);
    ASSERT_TRUE(P.mutually_majorizing());
    auto orders = candidate_orders(P.packages());
    P.evaluate(orders);
    for (auto& o : orders) {
      EXPECT_EQ(P.max_count_corollary_k2(o), P.jordan_max_count(o));
      EXPECT_EQ(P.max_count_corollary_majorizing(o), P.jordan_max_count(o));
      EXPECT_EQ(P.second_count_corollary_k2(o), P.jordan_second_count(o));
      EXPECT_EQ(P.second_count_corollary_majorizing(o), P.jordan_second_count(o));
    }
  }
}

TEST(Infinity, InvariantChecksHold) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 3; ++it) {
    auto in = oracle::random_instance(rng, 2 + it % 2, 2, 4, Mode::Infinity);
    auto fails = oracle::audit_instance(in, oracle::AuditOptions{true, false, false, 1});
    EXPECT_TRUE(fails.empty()) << (fails.empty() ? "" : fails[0].dump());
  }
}
