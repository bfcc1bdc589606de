#include "nj/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <exception>
#include <functional>
#include <set>

#include "nj/naive.hpp"

namespace nj::oracle {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Int sign(long e) { return e % 2 ? Int(-1) : Int(1); }

bool divides(const Int& order, const Int& d) { return d % order == 0; }

ojson json_vec(const IntVec& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_long(x));
  return a;
}

ojson json_vec(const RatVec& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

template <class V>
ojson json_set(const std::vector<V>& s) {
  ojson a = ojson::array();
  for (const auto& v : s) a.push_back(json_vec(v));
  return a;
}

int thread_count(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

// Runs fn(i) for i < count in parallel; fn returns the failure records of
// instance i. Exceptions become failures. Aggregation is in index order.
Report parallel_report(std::string name, std::uint64_t seed, std::size_t count, int jobs,
                       const std::function<std::vector<ojson>(std::size_t, std::size_t&)>& fn) {
  std::vector<std::vector<ojson>> fails(count);
  std::vector<std::size_t> skipped(count, 0);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
  for (long i = 0; i < n; ++i) {
    auto idx = static_cast<std::size_t>(i);
    try {
      fails[idx] = fn(idx, skipped[idx]);
    } catch (const std::exception& e) {
      fails[idx] = {ojson{{"instance", idx}, {"error", e.what()}}};
    }
  }
  Report r{std::move(name), seed, count, 0, 0, {}};
  for (std::size_t i = 0; i < count; ++i) {
    r.skipped += skipped[i];
    if (fails[i].empty()) ++r.passed;
    for (auto& f : fails[i]) r.failures.push_back(std::move(f));
  }
  return r;
}

IntVec random_point_in(std::mt19937_64& rng, std::size_t n, long hi, const std::vector<IntVec>& basis) {
  while (true) {
    IntVec x(n);
    for (auto& c : x) c = uniform(rng, 0, hi);
    if (naive::in_lattice(x, basis)) return x;
  }
}

}  // namespace

ojson to_json(const Report& r) {
  ojson j;
  j["oracle"] = r.name;
  j["seed"] = r.seed;
  j["count"] = r.count;
  j["passed"] = r.passed;
  j["skipped"] = r.skipped;
  j["ok"] = r.ok();
  j["failures"] = r.failures;
  return j;
}

ojson describe(const PipelineInput& in) {
  ojson j;
  j["n"] = in.n;
  j["k"] = in.k();
  j["mode"] = in.mode == Mode::Local ? "local" : "infinity";
  ojson s = ojson::array();
  for (const auto& sup : in.supports) s.push_back(json_set(sup));
  j["supports"] = s;
  return j;
}

PipelineInput random_instance(std::mt19937_64& rng, std::size_t n, std::size_t k,
                              std::size_t max_monomials, Mode mode) {
  PipelineInput in;
  in.n = n;
  in.mode = mode;
  for (std::size_t j = 0; j < k; ++j) {
    Support s;
    for (std::size_t i = 0; i < n; ++i) {
      IntVec v(n, 0);
      v[i] = uniform(rng, 1, 4);
      s.push_back(v);
    }
    long extra = max_monomials > n ? uniform(rng, 0, static_cast<long>(max_monomials - n)) : 0;
    for (long e = 0; e < extra; ++e) {
      IntVec v(n, 0);
      int nz = 0;
      while (nz < 2) {
        nz = 0;
        for (auto& c : v) {
          c = uniform(rng, 0, 3);
          if (c != 0) ++nz;
        }
      }
      s.push_back(v);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    in.supports.push_back(s);
  }
  return in;
}

PipelineInput majorizing_instance(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  Support base;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec v(n, 0);
    v[i] = uniform(rng, 1, 3);
    base.push_back(v);
  }
  long extra = uniform(rng, 0, 2);
  for (long e = 0; e < extra; ++e) {
    IntVec v(n, 0);
    for (auto& c : v) c = uniform(rng, 0, 2);
    if (std::count_if(v.begin(), v.end(), [](const Int& c) { return c != 0; }) >= 2) base.push_back(v);
  }
  PipelineInput in;
  in.n = n;
  for (std::size_t j = 0; j < k; ++j) {
    long c = uniform(rng, 1, 2);
    Support s;
    for (const auto& v : base) {
      IntVec w = v;
      for (auto& x : w) x *= c;
      s.push_back(w);
    }
    in.supports.push_back(s);
  }
  return in;
}

std::vector<PipelineInput> weighted_homogeneous_families() {
  auto make = [](std::size_t n, std::vector<Support> s) {
    PipelineInput in;
    in.n = n;
    in.supports = std::move(s);
    return in;
  };
  return {
      // weights (1,1,1), degrees 2 and 4
      make(3, {{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, {{4, 0, 0}, {0, 4, 0}, {0, 0, 4}, {2, 2, 0}, {1, 1, 2}}}),
      // weights (1,2,3), degrees 6 and 12
      make(3, {{{6, 0, 0}, {0, 3, 0}, {0, 0, 2}, {1, 1, 1}}, {{12, 0, 0}, {0, 6, 0}, {0, 0, 4}, {2, 2, 2}, {0, 3, 2}}}),
      // weights (3,2,2), degrees 6 and 12
      make(3, {{{2, 0, 0}, {0, 3, 0}, {0, 0, 3}, {0, 1, 2}}, {{4, 0, 0}, {0, 6, 0}, {0, 0, 6}, {2, 1, 2}}}),
      // weights (1,1,1,1), degrees 2 and 3
      make(4, {{{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}},
               {{3, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}, {1, 1, 1, 0}}}),
      // weights (2,3), degrees 6 and 12
      make(2, {{{3, 0}, {0, 2}}, {{6, 0}, {0, 4}, {3, 2}}}),
      // weights (1,1,1), degrees 1, 2, 3
      make(3, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}}),
      // weights (2,2,1), degrees 4 and 6
      make(3, {{{2, 0, 0}, {0, 2, 0}, {0, 0, 4}, {1, 0, 2}}, {{3, 0, 0}, {0, 3, 0}, {0, 0, 6}, {1, 1, 2}}}),
  };
}

// --- brute-force motivic β -------------------------------------------------

namespace {

std::vector<IntVec> int_points(const std::vector<RatVec>& v) {
  std::vector<IntVec> out;
  for (const auto& x : v) out.push_back(to_int(x));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> drop_dominated(const std::vector<IntVec>& pts) {
  std::vector<IntVec> keep;
  for (const auto& p : pts) {
    bool dom = false;
    for (const auto& q : pts) {
      if (q == p) continue;
      bool le = true;
      for (std::size_t c = 0; c < p.size(); ++c) le = le && q[c] <= p[c];
      if (le) {
        dom = true;
        break;
      }
    }
    if (!dom) keep.push_back(p);
  }
  return keep;
}

struct NaiveJoin {
  int dim = 0;
  bool simple = true;
  std::vector<int> face_dim;
  std::vector<Int> volume, distance;
  std::vector<std::vector<std::size_t>> below;
};

NaiveJoin naive_join(const std::vector<IntVec>& pts) {
  naive::Hull h = naive::hull(pts);
  auto fs = naive::faces(h);
  NaiveJoin J;
  J.dim = h.dim;
  J.simple = naive::is_simple(h, fs);
  if (!J.simple) return J;
  for (const auto& g : fs) {
    std::vector<RatVec> vr;
    for (std::size_t v : g.vertices) vr.push_back(h.vertices[v]);
    auto vi = int_points(vr);
    J.face_dim.push_back(g.dim);
    J.volume.push_back(naive::lattice_volume(vi));
    J.distance.push_back(naive::lattice_distance(vi));
    std::vector<std::size_t> below;
    for (std::size_t s = 0; s < fs.size(); ++s)
      if (std::includes(g.vertices.begin(), g.vertices.end(), fs[s].vertices.begin(), fs[s].vertices.end()))
        below.push_back(s);
    J.below.push_back(std::move(below));
  }
  return J;
}

LaurentPoly naive_join_beta(const NaiveJoin& J, const Int& order) {
  LaurentPoly beta;
  for (int r = 0; r <= J.dim; ++r) {
    Int c = 0;
    for (std::size_t G = 0; G < J.face_dim.size(); ++G) {
      if (J.face_dim[G] != r) continue;
      for (std::size_t g : J.below[G])
        if (divides(order, J.distance[g])) c += sign(J.face_dim[g]) * J.volume[g];
    }
    beta += LaurentPoly::monomial(sign(J.dim + r) * c, r);
  }
  return beta;
}

}  // namespace

std::optional<LaurentPoly> naive_motivic_beta(const PipelineInput& in, const Int& order) {
  auto r = naive_motivic_betas(in, {order});
  if (!r) return std::nullopt;
  return r->at(order);
}

std::optional<std::map<Int, LaurentPoly>> naive_motivic_betas(const PipelineInput& in, const std::vector<Int>& orders) {
  const std::size_t n = in.n, k = in.k();
  const bool local = in.mode == Mode::Local;
  std::vector<std::vector<IntVec>> S = in.supports;
  if (!local)
    for (auto& s : S) s.push_back(IntVec(n, 0));
  std::vector<IntVec> rays;
  if (local)
    for (std::size_t i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      rays.push_back(e);
    }
  std::vector<IntVec> pts = {IntVec(n, 0)};
  for (const auto& s : S) {
    std::vector<IntVec> next;
    for (const auto& a : pts)
      for (const auto& b : s) next.push_back(add(a, b));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (local) next = drop_dominated(next);
    pts = int_points(naive::hull(next, rays).vertices);
  }
  naive::Hull H = naive::hull(pts, rays);
  auto fs = naive::faces(H);
  const IntVec origin(n, 0);
  std::map<Int, LaurentPoly> total;
  for (const auto& o : orders) total[o];
  for (const auto& F : fs) {
    if (F.dim < static_cast<int>(k) - 1) continue;
    if (!F.rays.empty()) continue;
    std::vector<RatVec> vr;
    for (std::size_t v : F.vertices) vr.push_back(H.vertices[v]);
    auto theta = int_points(vr);
    if (std::find(theta.begin(), theta.end(), origin) != theta.end()) continue;
    RatVec u(n, 0);
    for (std::size_t f : F.facets) u = add(u, H.normal[f]);
    std::vector<std::vector<IntVec>> gamma;
    for (const auto& s : S) {
      Rat lo = dot(s[0], u);
      for (const auto& p : s) lo = std::min(lo, Rat(dot(p, u)));
      std::vector<IntVec> arg;
      for (const auto& p : s)
        if (dot(p, u) == lo) arg.push_back(p);
      gamma.push_back(int_points(naive::hull(arg).vertices));
    }
    int s_theta = 0;
    for (std::size_t c = 0; c < n; ++c)
      if (std::any_of(theta.begin(), theta.end(), [&](const IntVec& v) { return v[c] != 0; })) ++s_theta;
    int m = s_theta - F.dim - 1;
    IntVec p = gamma.back().back();
    std::vector<std::vector<IntVec>> kappa;
    for (std::size_t j = 0; j + 1 < k; ++j) {
      std::vector<IntVec> kap;
      for (const auto& x : gamma[j]) kap.push_back(add(sub(x, gamma[j].back()), p));
      kappa.push_back(kap);
    }
    std::map<Int, LaurentPoly> inner;
    for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
      std::size_t size = static_cast<std::size_t>(std::popcount(mask));
      std::vector<IntVec> join;
      for (const auto& v : gamma.back()) {
        IntVec w = v;
        w.resize(n + size, 0);
        join.push_back(w);
      }
      std::size_t slot = 0;
      for (std::size_t j = 0; j + 1 < k; ++j) {
        if (!(mask >> j & 1)) continue;
        for (const auto& v : kappa[j]) {
          IntVec w = v;
          w.resize(n + size, 0);
          w[n + slot] = 1;
          join.push_back(w);
        }
        ++slot;
      }
      NaiveJoin J = naive_join(join);
      if (!J.simple) return std::nullopt;
      LaurentPoly pad = LaurentPoly::t2_minus_one(s_theta + static_cast<long>(size) - 1 - J.dim);
      for (const auto& o : orders) inner[o] += pad * naive_join_beta(J, o);
    }
    long shift = 2 * static_cast<long>(k) - 2;
    for (const auto& o : orders) {
      if (!inner[o].divisible_by_t(shift)) throw InternalError("brute-force inner sum is not divisible");
      total[o] += sign(m) * inner[o].shifted(-shift);
    }
  }
  return total;
}

// --- AE identity -----------------------------------------------------------

Report check_AE(std::uint64_t seed, std::size_t count, int jobs) {
  struct Instance {
    std::size_t n;
    std::vector<IntVec> basis;
    std::vector<RatVec> delta0;
    std::vector<std::vector<IntVec>> deltas;
  };
  std::mt19937_64 rng(seed);
  std::vector<Instance> inst;
  for (std::size_t i = 0; i < count; ++i) {
    Instance I;
    I.n = 1 + i % 3;
    std::vector<long> diag(I.n, 1);
    long index = uniform(rng, 1, 4);
    if (index == 4 && I.n >= 2 && uniform(rng, 0, 1)) {
      diag[0] = 2;
      diag[I.n - 1] = 2;
    } else {
      diag[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(I.n) - 1))] = index;
    }
    for (std::size_t r = 0; r < I.n; ++r) {
      IntVec row(I.n, 0);
      row[r] = diag[r];
      for (std::size_t c = 0; c < r; ++c) row[c] = uniform(rng, 0, diag[c] - 1);
      I.basis.push_back(row);
    }
    bool segments = i % 10 == 9;
    std::size_t n0 = segments ? 1 : static_cast<std::size_t>(uniform(rng, 1, 2));
    for (std::size_t a = 0; a < n0; ++a) {
      RatVec p(I.n);
      long q = uniform(rng, 1, 3);
      for (auto& c : p) c = make_rat(uniform(rng, 0, 2 * q), q);
      I.delta0.push_back(p);
    }
    for (std::size_t j = 0; j < I.n; ++j) {
      std::size_t pts = segments ? 2 : uniform(rng, 0, 7) == 0 ? 1 : static_cast<std::size_t>(uniform(rng, 2, I.n == 3 ? 3 : 4));
      std::vector<IntVec> d;
      for (std::size_t a = 0; a < pts; ++a) d.push_back(random_point_in(rng, I.n, 4, I.basis));
      I.deltas.push_back(d);
    }
    inst.push_back(std::move(I));
  }
  return parallel_report("AE", seed, count, jobs, [&](std::size_t i, std::size_t&) -> std::vector<ojson> {
    const Instance& I = inst[i];
    const std::size_t n = I.n;
    Int nat = 0, sharp = 0, kh = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::vector<RatVec>> with0 = {I.delta0}, without = {{RatVec(n, 0)}};
      for (std::size_t j = 0; j < n; ++j)
        if (mask >> j & 1) {
          std::vector<RatVec> d;
          for (const auto& v : I.deltas[j]) d.push_back(to_rat(v));
          with0.push_back(d);
          without.push_back(d);
        }
      auto count_in = [&](const std::vector<RatVec>& verts, bool interior) {
        naive::Hull h = naive::hull(verts);
        IntVec lo(n), hi(n);
        for (std::size_t c = 0; c < n; ++c) {
          Rat mn = verts[0][c], mx = verts[0][c];
          for (const auto& v : verts) {
            mn = std::min(mn, v[c]);
            mx = std::max(mx, v[c]);
          }
          lo[c] = ceil_rat(mn);
          hi[c] = floor_rat(mx);
        }
        Int cnt = 0;
        std::function<void(std::size_t, IntVec&)> rec = [&](std::size_t c, IntVec& x) {
          if (c == n) {
            RatVec xr = to_rat(x);
            bool in = interior ? naive::relint_contains(h, xr) : naive::contains(h, xr);
            if (in && naive::in_lattice(x, I.basis)) ++cnt;
            return;
          }
          for (Int t = lo[c]; t <= hi[c]; ++t) {
            x[c] = t;
            rec(c + 1, x);
          }
        };
        IntVec x(n);
        rec(0, x);
        return std::make_pair(cnt, h.dim);
      };
      auto A = naive::minkowski_points(with0);
      auto B = naive::minkowski_points(without);
      auto [ia, da] = count_in(A, true);
      auto [ca, da2] = count_in(A, false);
      auto [ib, db] = count_in(B, true);
      (void)da2;
      long size = std::popcount(mask);
      nat += sign(size) * sign(da) * ia;
      sharp += sign(static_cast<long>(n) - size) * ca;
      kh += sign(size) * sign(db) * ib;
    }
    Rat mv = naive::mixed_volume_in(I.deltas, I.basis);
    AlternatingSums prim = alternating_mixed_identity(I.delta0, I.deltas, Lattice::generated_by(I.basis, n));
    bool ok = Rat(nat) == mv && Rat(sharp) == mv && Rat(kh) == mv && Rat(prim.natural) == mv &&
              Rat(prim.sharp) == mv && Rat(prim.khovanskii) == mv && prim.mixed_volume == mv;
    if (ok) return {};
    ojson f;
    f["instance"] = i;
    f["basis"] = json_set(I.basis);
    f["delta0"] = json_set(I.delta0);
    ojson ds = ojson::array();
    for (const auto& d : I.deltas) ds.push_back(json_set(d));
    f["deltas"] = ds;
    f["brute_force"] = {nat.get_str(), sharp.get_str(), kh.get_str(), to_string(mv)};
    f["library"] = {prim.natural.get_str(), prim.sharp.get_str(), prim.khovanskii.get_str(),
                    to_string(prim.mixed_volume)};
    return {f};
  });
}

// --- χ two routes ----------------------------------------------------------

Report check_chi_routes(std::uint64_t seed, std::size_t count, int jobs) {
  struct Instance {
    std::size_t n;
    RatVec q;
    std::vector<IntVec> verts;
  };
  std::mt19937_64 rng(seed);
  std::vector<Instance> inst;
  for (std::size_t i = 0; i < count; ++i) {
    Instance I;
    I.n = 1 + i % 3;
    long D = uniform(rng, 1, I.n == 3 ? 2 : 4);
    for (std::size_t c = 0; c < I.n; ++c) I.q.push_back(make_rat(uniform(rng, 0, D - 1), D));
    long side = I.n == 1 ? 3 : I.n == 2 ? 2 : 1;
    while (true) {
      std::vector<IntVec> v;
      std::size_t npts = I.n + 1 + static_cast<std::size_t>(uniform(rng, 0, 1));
      for (std::size_t a = 0; a < npts; ++a) {
        IntVec x(I.n);
        for (auto& c : x) c = uniform(rng, 0, side) * D;
        v.push_back(x);
      }
      if (naive::hull(v).dim == static_cast<int>(I.n)) {
        I.verts = v;
        break;
      }
    }
    inst.push_back(std::move(I));
  }
  return parallel_report("chi_routes", seed, count, jobs, [&](std::size_t i, std::size_t&) -> std::vector<ojson> {
    const Instance& I = inst[i];
    const long n = static_cast<long>(I.n);
    Int image = 1;
    for (const auto& x : I.q) image = lcm(image, x.get_den());
    naive::Hull h = naive::hull(I.verts);
    Int vol = naive::lattice_volume(I.verts);
    std::vector<Rat> alphas;
    for (Int a = 0; a < image; ++a) alphas.push_back(make_rat(a, image));
    for (Rat extra : {Rat(1, 5), Rat(2, 7), Rat(3, 11)}) alphas.push_back(extra);
    Polyhedron P = Polyhedron::from_points(I.verts);
    TorsionCharacter tau(I.q);
    std::vector<ojson> fails;
    auto fail = [&](const std::string& why, const Rat& alpha) {
      ojson f;
      f["instance"] = i;
      f["q"] = json_vec(I.q);
      f["vertices"] = json_set(I.verts);
      f["alpha"] = to_string(alpha);
      f["detail"] = why;
      fails.push_back(f);
    };
    if (vol % image != 0) fail("volume not divisible by the image size", 0);
    for (const Rat& alpha : alphas) {
      Int ehr = frac(alpha) == 0 ? sign(n - 1) : Int(0);
      for (long k = 1; k <= n; ++k) {
        std::vector<RatVec> kv;
        for (const auto& v : h.vertices) {
          RatVec w = v;
          for (auto& x : w) x *= k;
          kv.push_back(w);
        }
        naive::Hull hk = naive::hull(kv);
        Int cnt = 0;
        std::function<void(std::size_t, IntVec&)> rec = [&](std::size_t c, IntVec& x) {
          if (c == I.n) {
            Rat t = 0;
            for (std::size_t j = 0; j < I.n; ++j) t += I.q[j] * x[j];
            if (frac(t) == frac(alpha) && naive::relint_contains(hk, to_rat(x))) ++cnt;
            return;
          }
          Rat mn = kv[0][c], mx = kv[0][c];
          for (const auto& v : kv) {
            mn = std::min(mn, v[c]);
            mx = std::max(mx, v[c]);
          }
          for (Int t = ceil_rat(mn); t <= floor_rat(mx); ++t) {
            x[c] = t;
            rec(c + 1, x);
          }
        };
        IntVec x(I.n);
        rec(0, x);
        ehr += sign(k + 1) * binomial(n, k) * cnt;
      }
      Int byvol = Rat(alpha * image).get_den() == 1 ? Int(sign(n - 1) * vol / image) : Int(0);
      Int a = chi_via_ehrhart(P, tau, alpha);
      Int b = chi_via_volume(P, tau, alpha);
      if (!(ehr == byvol && a == ehr && b == ehr))
        fail("brute force " + ehr.get_str() + "/" + byvol.get_str() + ", library " + a.get_str() + "/" +
                 b.get_str(),
             alpha);
    }
    return fails;
  });
}

// --- β engine --------------------------------------------------------------

Report check_beta(std::uint64_t seed, std::size_t count, int jobs) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<IntVec>> inst;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t kind = i % 5;  // 0,1: segments, 2,3: polygons, 4: three-dimensional
    while (true) {
      std::vector<IntVec> pts;
      if (kind <= 1) {
        std::size_t N = 2 + kind;
        for (int a = 0; a < 2; ++a) {
          IntVec x(N);
          for (auto& c : x) c = uniform(rng, 0, 4);
          pts.push_back(x);
        }
      } else if (kind <= 3) {
        std::size_t np = static_cast<std::size_t>(uniform(rng, 3, 4));
        for (std::size_t a = 0; a < np; ++a) {
          IntVec x(3);
          for (auto& c : x) c = uniform(rng, 0, 3);
          pts.push_back(x);
        }
      } else {
        // square pyramid or octahedron lifted to height one, randomly scaled
        long s = uniform(rng, 1, 2), h = uniform(rng, 1, 3);
        pts = {{0, 0, 0, h}, {s, 0, 0, h}, {0, s, 0, h}, {s, s, 0, h}};
        if (uniform(rng, 0, 1)) {
          pts.push_back({s, s, s, h});
        } else {
          pts = {{s, 0, s, h}, {s, 2 * s, s, h}, {0, s, s, h}, {2 * s, s, s, h}, {s, s, 0, h}, {s, s, 2 * s, h}};
        }
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      naive::Hull hh = naive::hull(pts);
      int want = kind <= 1 ? 1 : kind <= 3 ? 2 : 3;
      if (hh.dim != want) continue;
      try {
        naive::lattice_distance(pts);
      } catch (const GeometryError&) {
        continue;
      }
      inst.push_back(int_points(hh.vertices));
      break;
    }
  }
  return parallel_report("beta", seed, count, jobs, [&](std::size_t i, std::size_t& skipped) -> std::vector<ojson> {
    const auto& V = inst[i];
    std::vector<ojson> fails;
    BasedPolytope bp = BasedPolytope::make(V);
    naive::Hull h = naive::hull(V);
    auto fs = naive::faces(h);
    Int d = naive::lattice_distance(V);
    Int vol = naive::lattice_volume(V);
    int dim = h.dim;
    const bool simple = naive::is_simple(h, fs);
    NaiveJoin face_table = simple ? naive_join(V) : NaiveJoin{};
    for (long o = 2; o <= 6; ++o) {
      Int order = o;
      auto fail = [&](const std::string& why) {
        ojson f;
        f["instance"] = i;
        f["vertices"] = json_set(V);
        f["order"] = o;
        f["detail"] = why;
        fails.push_back(f);
      };
      LaurentPoly b;
      try {
        b = beta_recursive(bp, order, 0);
      } catch (const std::exception& e) {
        fail(std::string("recursion failed: ") + e.what());
        continue;
      }
      if (!b.is_zero() && (b.low() < 0 || b.high() > dim)) fail("degree exceeds dim: " + b.str());
      Int target = divides(order, d) ? Int(sign(dim) * vol) : Int(0);
      if (b.at_one() != target) fail("beta(1) = " + b.at_one().get_str() + ", expected " + target.get_str());
      try {
        LaurentPoly c = beta_pseudoprime_closed(bp, order);
        if (!(c == b)) fail("closed form " + c.str() + " vs recursion " + b.str());
      } catch (const GeometryError&) {
        ++skipped;
      }
      if (simple) {
        LaurentPoly nb = naive_join_beta(face_table, order);
        if (!(nb == b)) fail("face-sum formula " + nb.str() + " vs recursion " + b.str());
      }
      if (dim == 1) {
        Int ea = divides(order, content(V[0])) ? 1 : 0, eb = divides(order, content(V[1])) ? 1 : 0;
        Int len = content(sub(V[1], V[0]));
        LaurentPoly hand = LaurentPoly::monomial(-(ea + eb), 0) +
                           LaurentPoly::monomial(ea + eb - (divides(order, d) ? len : Int(0)), 1);
        if (!(hand == b)) fail("segment formula " + hand.str() + " vs recursion " + b.str());
      }
      for (std::uint64_t s : {1ULL, 2ULL, 0xdecafULL}) {
        LaurentPoly other = beta_recursive(bp, order, s);
        if (!(other == b)) fail("pulling order " + std::to_string(s) + " gives " + other.str());
      }
    }
    return fails;
  });
}

// --- pipeline --------------------------------------------------------------

std::vector<ojson> audit_instance(const PipelineInput& in, const AuditOptions& opt) {
  std::vector<ojson> fails;
  auto fail = [&](const std::string& check, const std::string& lambda, const std::string& detail) {
    ojson f;
    f["input"] = describe(in);
    f["check"] = check;
    f["eigenvalue"] = lambda;
    f["detail"] = detail;
    fails.push_back(f);
  };
  PipelineOptions popts;
  popts.jobs = opt.jobs;
  Pipeline P(in, popts);
  const auto orders = candidate_orders(P.packages());
  P.evaluate(orders);
  auto label = [](const Int& o) { return EigenvalueClass(make_rat(1, o)).str(); };
  for (const auto& o : orders) {
    for (const auto& r : P.check_eigenvalue(EigenvalueClass(make_rat(1, o)), opt.full))
      if (!r.ok) fail(r.name, label(o), r.detail);
    if (opt.deep)
      for (const auto& r : P.check_beta_routes(o))
        if (!r.ok) fail(r.name, label(o), r.detail);
  }

  auto is_prime = [](const Int& p) {
    for (Int q = 2; q * q <= p; ++q)
      if (p % q == 0) return false;
    return true;
  };
  Int N = distance_lcm(P.packages());
  Int prime = 2;
  while (N % prime == 0 || !is_prime(prime)) ++prime;
  EigenvalueClass outside(make_rat(1, prime));
  auto rep = P.jordan_blocks(outside);
  if (!rep.beta.is_zero()) fail("outside_candidates", outside.str(), "nonzero beta " + rep.beta.str());

  if (opt.spectrum)
    for (const auto& r : P.check_spectrum(P.spectrum()))
      if (!r.ok) fail(r.name, "", r.detail);

  if (opt.deep) {
    PipelineOptions alt = popts;
    alt.kappa = KappaChoice::LexMax;
    Pipeline Q(in, alt);
    for (const auto& o : orders)
      if (!(Q.motivic_beta(o) == P.motivic_beta(o))) fail("kappa_choice", label(o), "lexmax translates change beta");
    if (in.n <= 3)
      if (auto nb = naive_motivic_betas(in, orders))
        for (const auto& o : orders)
          if (!(nb->at(o) == P.motivic_beta(o)))
            fail("brute_force_beta", label(o), nb->at(o).str() + " vs " + P.motivic_beta(o).str());
  }
  return fails;
}

Report check_jordan(std::uint64_t seed, std::size_t count, int jobs, Mode mode, std::size_t deep_max_n) {
  std::mt19937_64 rng(seed);
  std::vector<PipelineInput> inst;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = 2 + i % 3;
    std::size_t k = (n == 2 || (i / 3) % 2 == 0) ? 2 : 3;
    inst.push_back(random_instance(rng, n, k, 6, mode));
  }
  // Instances run one at a time; each pipeline already uses the thread pool.
  Report r{mode == Mode::Local ? "jordan" : "jordan_infinity", seed, count, 0, 0, {}};
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<ojson> f;
    try {
      f = audit_instance(inst[i], {.full = true, .spectrum = true, .deep = inst[i].n <= deep_max_n, .jobs = jobs});
    } catch (const std::exception& e) {
      f = {ojson{{"input", describe(inst[i])}, {"error", e.what()}}};
    }
    if (f.empty()) ++r.passed;
    for (auto& x : f) r.failures.push_back(std::move(x));
  }
  return r;
}

Report check_weighted_homogeneous(int jobs) {
  auto fams = weighted_homogeneous_families();
  Report r{"weighted_homogeneous", 0, fams.size(), 0, 0, {}};
  for (const auto& in : fams) {
    std::vector<ojson> fails;
    try {
      PipelineOptions opts;
      opts.jobs = jobs;
      Pipeline P(in, opts);
      const auto orders = candidate_orders(P.packages());
      P.evaluate(orders);
      for (const auto& o : orders) {
        EigenvalueClass c(make_rat(1, o));
        auto rep = P.jordan_blocks(c);
        for (std::size_t i = 1; i < rep.counts_geq.size(); ++i)
          if (rep.counts_geq[i] != 0)
            fails.push_back(ojson{{"input", describe(in)},
                                  {"eigenvalue", c.str()},
                                  {"detail", "blocks of size " + std::to_string(i + 1) + ": " +
                                                 rep.counts_geq[i].get_str()}});
      }
      for (auto& f : audit_instance(in, {.full = false, .spectrum = true, .deep = false, .jobs = jobs}))
        fails.push_back(f);
    } catch (const std::exception& e) {
      fails.push_back(ojson{{"input", describe(in)}, {"error", e.what()}});
    }
    if (fails.empty()) ++r.passed;
    for (auto& f : fails) r.failures.push_back(std::move(f));
  }
  return r;
}

Report check_corollaries(std::uint64_t seed, std::size_t count, int jobs) {
  std::mt19937_64 rng(seed);
  std::vector<PipelineInput> inst;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = 2 + i % 3;
    if (i % 2 == 0)
      inst.push_back(random_instance(rng, n, 2, 6));
    else
      inst.push_back(majorizing_instance(rng, n, n == 2 ? 2 : 2 + (i / 2) % 2));
  }
  Report r{"corollaries", seed, count, 0, 0, {}};
  for (std::size_t i = 0; i < count; ++i) {
    const auto& in = inst[i];
    std::vector<ojson> fails;
    auto fail = [&](const std::string& what, const std::string& lambda, const std::string& detail) {
      fails.push_back(ojson{{"input", describe(in)}, {"check", what}, {"eigenvalue", lambda}, {"detail", detail}});
    };
    try {
      PipelineOptions opts;
      opts.jobs = jobs;
      Pipeline P(in, opts);
      bool maj = P.mutually_majorizing();
      if (i % 2 == 1 && !maj) fail("hypothesis", "", "dilated supports are not mutually majorizing");
      const auto orders = candidate_orders(P.packages());
      P.evaluate(orders);
      const long nk = P.n() - P.k();
      for (const auto& o : orders) {
        EigenvalueClass c(make_rat(1, o));
        auto rep = P.jordan_blocks(c);
        if (P.k() == 2) {
          Int a = P.max_count_corollary_k2(o);
          if (a != rep.max_count) fail("max_k2", c.str(), a.get_str() + " vs " + rep.max_count.get_str());
          if (nk >= 1) {
            Int b = P.second_count_corollary_k2(o);
            if (b != *rep.second_count) fail("second_k2", c.str(), b.get_str() + " vs " + rep.second_count->get_str());
          }
        }
        if (maj) {
          Int a = P.max_count_corollary_majorizing(o);
          if (a != rep.max_count) fail("max_majorizing", c.str(), a.get_str() + " vs " + rep.max_count.get_str());
          if (nk >= 1) {
            Int b = P.second_count_corollary_majorizing(o);
            if (b != *rep.second_count)
              fail("second_majorizing", c.str(), b.get_str() + " vs " + rep.second_count->get_str());
          }
        }
      }
    } catch (const std::exception& e) {
      fail("error", "", e.what());
    }
    if (fails.empty()) ++r.passed;
    for (auto& f : fails) r.failures.push_back(std::move(f));
  }
  return r;
}

}  // namespace nj::oracle
