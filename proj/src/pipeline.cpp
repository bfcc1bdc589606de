#include "nj/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <exception>
#include <functional>
#include <set>

namespace nj {

namespace {

bool divides(const Int& order, const Int& d) { return d % order == 0; }

Int sign(long e) { return e % 2 ? Int(-1) : Int(1); }

std::vector<IntVec> sorted_unique(std::vector<IntVec> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

const IntVec& pick(const std::vector<IntVec>& pts, KappaChoice c) {
  return c == KappaChoice::LexMin ? *std::min_element(pts.begin(), pts.end())
                                  : *std::max_element(pts.begin(), pts.end());
}

std::vector<IntVec> directions(const std::vector<IntVec>& pts) {
  std::vector<IntVec> d;
  for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(sub(pts[i], pts[0]));
  return d;
}

std::vector<IntVec> argmin(const std::vector<IntVec>& pts, const RatVec& u) {
  std::vector<IntVec> best;
  Rat lo;
  for (const auto& p : pts) {
    Rat v = dot(p, u);
    if (best.empty() || v < lo) {
      best = {p};
      lo = v;
    } else if (v == lo) {
      best.push_back(p);
    }
  }
  return best;
}

Int lattice_length(const std::vector<IntVec>& seg) {
  if (seg.size() < 2) return 0;
  NJ_ASSERT(seg.size() == 2, "segment with more than two vertices");
  return content(sub(seg[1], seg[0]));
}

Int to_integer(const Rat& q, const char* what) {
  NJ_ASSERT(q.get_den() == 1, what);
  return q.get_num();
}

Polyhedron sum_polytope(const std::vector<std::vector<IntVec>>& parts) {
  if (parts.size() == 1) return Polyhedron::from_points(parts[0]);
  return minkowski_hull(parts);
}

JoinData build_join(const ThetaPackage& pkg, unsigned mask, std::size_t n) {
  JoinData jd;
  jd.mask = mask;
  for (std::size_t j = 0; j < pkg.kappa.size(); ++j)
    if (mask >> j & 1) jd.members.push_back(static_cast<int>(j));
  std::size_t nj = jd.members.size();
  std::size_t N = n + nj;
  auto lift = [&](const IntVec& v, std::size_t slot) {
    IntVec w = v;
    w.resize(N, 0);
    if (slot < nj) w[n + slot] = 1;
    return w;
  };
  std::vector<IntVec> pts;
  for (const auto& v : pkg.gamma.back()) pts.push_back(lift(v, nj));
  for (std::size_t i = 0; i < nj; ++i)
    for (const auto& v : pkg.kappa[static_cast<std::size_t>(jd.members[i])]) pts.push_back(lift(v, i));

  std::vector<std::vector<IntVec>> qparts = {pkg.gamma.back()};
  for (int j : jd.members) qparts.push_back(pkg.kappa[static_cast<std::size_t>(j)]);
  Polyhedron Q = sum_polytope(qparts);
  jd.sum_dim = Q.dim();
  jd.delta = jd.sum_dim - static_cast<int>(nj);
  jd.c = pkg.dim - jd.sum_dim;

  auto body = std::make_shared<BasedPolytope>(BasedPolytope::make(pts));
  jd.vertices = body->vertices;
  jd.dim = body->dim();
  NJ_ASSERT(jd.dim == jd.sum_dim + static_cast<int>(nj), "join has the wrong dimension");
  jd.distance = body->distance;
  IntVec origin(N, 0);
  for (std::size_t f = 0; f < body->poly.faces().size(); ++f)
    jd.face_distances.push_back(lattice_distance(origin, body->poly.face_lattice_vertices(f)));
  jd.body = body;

  std::vector<IntVec> qv = Q.lattice_vertices();
  std::vector<std::vector<IntVec>> kappas(qparts.begin() + 1, qparts.end());
  if (jd.delta == 0)
    jd.mv_kappa = nj == 0 ? Rat(1) : mixed_volume(kappas, direction_lattice(qv));
  if (jd.delta == 1) {
    auto with_q = kappas;
    with_q.push_back(qv);
    jd.mv_kappa_sum = mixed_volume(with_q, direction_lattice(qv));
    IntVec zero(n, 0);
    for (std::size_t f = 0; f < Q.faces().size(); ++f) {
      if (Q.faces()[f].dim != Q.dim() - 1) continue;
      RatVec u = Q.relint_normal(f);
      std::vector<IntVec> gv = Q.face_lattice_vertices(f);
      std::vector<std::vector<IntVec>> faces;
      for (const auto& k : kappas) faces.push_back(argmin(k, u));
      std::vector<IntVec> gk = argmin(pkg.gamma.back(), u);
      JoinData::FacetTerm t;
      t.mv = nj == 0 ? Rat(1) : mixed_volume(faces, direction_lattice(gv));
      t.distance = lattice_distance(zero, gk[0], directions(gv));
      jd.facets.push_back(t);
    }
  }
  return jd;
}

}  // namespace

void validate_input(const PipelineInput& in) {
  if (in.n == 0) throw ValidationError("n must be positive");
  if (in.k() < 2 || in.k() > in.n)
    throw ValidationError("need 2 <= k <= n, got k = " + std::to_string(in.k()) +
                          " and n = " + std::to_string(in.n));
  for (std::size_t j = 0; j < in.k(); ++j) {
    validate_support(in.supports[j], in.n);
    if (!is_convenient(in.supports[j], in.n))
      throw ValidationError("f_" + std::to_string(j + 1) +
                            " is not convenient; add a pure power x_i^a of every variable");
  }
}

std::vector<ThetaPackage> enumerate_theta_packages(const PipelineInput& in, KappaChoice choice) {
  validate_input(in);
  const std::size_t n = in.n, k = in.k();
  std::vector<Polyhedron> parts;
  for (const auto& s : in.supports) parts.push_back(newton_polyhedron(s, n, in.mode));
  MinkowskiSum ms = minkowski_sum(parts);
  const Polyhedron& S = ms.sum;
  const IntVec origin(n, 0);

  std::vector<ThetaPackage> out;
  for (std::size_t f = 0; f < S.faces().size(); ++f) {
    const Face& F = S.faces()[f];
    if (F.dim < static_cast<int>(k) - 1) continue;
    if (in.mode == Mode::Local && !F.bounded()) continue;
    std::vector<IntVec> V = sorted_unique(S.face_lattice_vertices(f));
    if (in.mode == Mode::Infinity && std::binary_search(V.begin(), V.end(), origin)) continue;

    ThetaPackage pkg;
    pkg.vertices = V;
    pkg.dim = F.dim;
    auto sf = ms.summand_faces(f);
    for (std::size_t j = 0; j < k; ++j) {
      const Polyhedron& P = ms.parts[j];
      NJ_ASSERT(P.faces()[sf[j]].bounded(), "summand face of a compact face is unbounded");
      pkg.gamma.push_back(sorted_unique(P.face_lattice_vertices(sf[j])));
      pkg.gamma_dim.push_back(P.faces()[sf[j]].dim);
    }
    NJ_ASSERT(sorted_unique(minkowski_hull(pkg.gamma).lattice_vertices()) == V,
              "face is not the sum of its summand faces");
    for (std::size_t c = 0; c < n; ++c)
      if (std::any_of(V.begin(), V.end(), [&](const IntVec& v) { return v[c] != 0; })) ++pkg.s;
    pkg.m = pkg.s - pkg.dim - 1;
    NJ_ASSERT(pkg.m >= 0, "negative m for a face");
    pkg.anchor = pick(pkg.gamma.back(), choice);
    for (std::size_t j = 0; j + 1 < k; ++j) {
      IntVec v = pick(pkg.gamma[j], choice);
      std::vector<IntVec> kap;
      for (const auto& x : pkg.gamma[j]) kap.push_back(add(sub(x, v), pkg.anchor));
      pkg.kappa.push_back(sorted_unique(kap));
    }
    pkg.distance = lattice_distance(origin, pkg.anchor, directions(V));
    for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) pkg.joins.push_back(build_join(pkg, mask, n));
    out.push_back(std::move(pkg));
  }
  return out;
}

bool mutually_majorizing(const PipelineInput& in) {
  std::vector<Polyhedron> parts;
  for (const auto& s : in.supports) parts.push_back(newton_polyhedron(s, in.n, in.mode));
  MinkowskiSum ms = minkowski_sum(parts);
  for (std::size_t f = 0; f < ms.sum.faces().size(); ++f) {
    auto sf = ms.summand_faces(f);
    for (std::size_t j = 0; j < sf.size(); ++j)
      if (ms.parts[j].faces()[sf[j]].dim != ms.sum.faces()[f].dim) return false;
  }
  return true;
}

DeltaCombinatorics delta_combinatorics(const ThetaPackage& pkg) {
  const auto& J = pkg.joins;
  const unsigned M = static_cast<unsigned>(J.size());
  DeltaCombinatorics dc;
  dc.min_delta = J[0].delta;
  for (const auto& j : J) dc.min_delta = std::min(dc.min_delta, j.delta);
  for (unsigned a = 0; a < M; ++a)
    for (unsigned b = 0; b < M; ++b)
      NJ_ASSERT(J[a].delta + J[b].delta >= J[a & b].delta + J[a | b].delta,
                "delta is not submodular");
  if (dc.min_delta == 0) {
    unsigned j0 = 0;
    for (unsigned a = 0; a < M; ++a)
      if (J[a].delta == 0) j0 |= a;
    NJ_ASSERT(J[j0].delta == 0, "sets with delta 0 are not closed under unions");
    dc.j0 = j0;
    std::vector<unsigned> cand;
    for (unsigned a = 0; a < M; ++a)
      if (J[a].delta == 1 && (a & j0) == j0) cand.push_back(a);
    for (unsigned a : cand) {
      bool maximal = std::none_of(cand.begin(), cand.end(),
                                  [&](unsigned b) { return b != a && (a & b) == a; });
      if (maximal) dc.j1.push_back(a);
    }
    for (unsigned a : dc.j1)
      for (unsigned b : dc.j1)
        NJ_ASSERT(a == b || (a & b) == j0, "two maximal delta-1 sets meet outside J0");
  } else if (dc.min_delta == 1) {
    unsigned j1 = 0;
    for (unsigned a = 0; a < M; ++a)
      if (J[a].delta == 1) j1 |= a;
    NJ_ASSERT(J[j1].delta == 1, "no unique maximal set with delta 1");
    dc.j1 = {j1};
  }
  return dc;
}

Int distance_lcm(const std::vector<ThetaPackage>& pkgs) {
  Int N = 1;
  for (const auto& p : pkgs) {
    N = lcm(N, p.distance);
    for (const auto& j : p.joins) {
      N = lcm(N, j.distance);
      for (const auto& d : j.face_distances) N = lcm(N, d);
      for (const auto& f : j.facets) N = lcm(N, f.distance);
    }
  }
  return N;
}

std::vector<Int> candidate_orders(const std::vector<ThetaPackage>& pkgs) {
  std::set<Int> dist;
  for (const auto& p : pkgs) {
    dist.insert(p.distance);
    for (const auto& j : p.joins) {
      dist.insert(j.distance);
      dist.insert(j.face_distances.begin(), j.face_distances.end());
      for (const auto& f : j.facets) dist.insert(f.distance);
    }
  }
  std::set<Int> orders;
  for (const auto& d : dist)
    for (Int q = 1; q * q <= d; ++q)
      if (d % q == 0) {
        orders.insert(q);
        orders.insert(d / q);
      }
  orders.erase(1);
  return {orders.begin(), orders.end()};
}

std::vector<EigenvalueClass> eigenvalue_candidates(const std::vector<ThetaPackage>& pkgs) {
  std::vector<EigenvalueClass> out;
  for (const auto& o : candidate_orders(pkgs))
    for (Int a = 1; a < o; ++a)
      if (gcd(a, o) == 1) out.emplace_back(make_rat(a, o));
  std::sort(out.begin(), out.end());
  return out;
}

Pipeline::Pipeline(PipelineInput in, PipelineOptions opts)
    : in_(std::move(in)), opts_(opts), pkgs_(enumerate_theta_packages(in_, opts.kappa)),
      engine_(opts.beta),
      alt_engine_(BetaOptions{opts.beta.majorizer_seed ^ 0x9e3779b97f4a7c15ULL, true}) {}

const std::optional<ClosedFormTable>& Pipeline::closed_table(std::size_t theta, unsigned mask) const {
  std::pair<std::size_t, unsigned> key{theta, mask};
  {
    std::lock_guard<std::mutex> lock(closed_mu_);
    auto it = closed_.find(key);
    if (it != closed_.end()) return it->second;
  }
  auto t = closed_form_table(*pkgs_[theta].joins[mask].body);
  std::lock_guard<std::mutex> lock(closed_mu_);
  return closed_.emplace(key, std::move(t)).first->second;
}

LaurentPoly Pipeline::compute_join_beta(std::size_t theta, unsigned mask, const Int& order) const {
  return engine_.beta(*pkgs_[theta].joins[mask].body, order);
}

void Pipeline::evaluate_serial(const std::vector<Int>& orders) {
  for (const auto& o : orders) {
    if (table_.count(o)) continue;
    std::vector<std::vector<LaurentPoly>> t(pkgs_.size());
    for (std::size_t i = 0; i < pkgs_.size(); ++i)
      for (unsigned mask = 0; mask < pkgs_[i].joins.size(); ++mask) t[i].push_back(compute_join_beta(i, mask, o));
    table_.emplace(o, std::move(t));
  }
}

void Pipeline::evaluate(const std::vector<Int>& orders) {
  if (!opts_.parallel) return evaluate_serial(orders);
  struct Task {
    LaurentPoly* slot;
    std::size_t theta;
    unsigned mask;
    const Int* order;
  };
  std::vector<Task> tasks;
  std::vector<const Int*> fresh;
  for (const auto& o : orders) {
    if (table_.count(o)) continue;
    auto it = table_.emplace(o, std::vector<std::vector<LaurentPoly>>(pkgs_.size())).first;
    fresh.push_back(&it->first);
    for (std::size_t i = 0; i < pkgs_.size(); ++i) {
      it->second[i].resize(pkgs_[i].joins.size());
      for (unsigned mask = 0; mask < pkgs_[i].joins.size(); ++mask)
        tasks.push_back({&it->second[i][mask], i, mask, &it->first});
    }
  }
  std::vector<std::exception_ptr> errors(tasks.size());
  const int threads = opts_.jobs > 0 ? opts_.jobs : omp_get_max_threads();
  const long count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < count; ++i) {
    const Task& task = tasks[static_cast<std::size_t>(i)];
    try {
      *task.slot = compute_join_beta(task.theta, task.mask, *task.order);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (errors[i]) {
      for (const Int* o : fresh) table_.erase(Int(*o));
      std::rethrow_exception(errors[i]);
    }
}

LaurentPoly Pipeline::join_beta(std::size_t theta, unsigned mask, const Int& order) const {
  auto it = table_.find(order);
  if (it != table_.end()) return it->second[theta][mask];
  return compute_join_beta(theta, mask, order);
}

LaurentPoly Pipeline::theta_inner_sum(std::size_t theta, const Int& order) const {
  const ThetaPackage& p = pkgs_[theta];
  LaurentPoly sum;
  for (const auto& j : p.joins) {
    int size = static_cast<int>(j.members.size());
    sum += beta_padded(join_beta(theta, j.mask, order), j.dim, p.s + size - 1);
  }
  return sum;
}

LaurentPoly Pipeline::motivic_beta(const Int& order) const {
  const long shift = 2 * k() - 2;
  LaurentPoly total;
  for (std::size_t i = 0; i < pkgs_.size(); ++i) {
    LaurentPoly inner = theta_inner_sum(i, order);
    if (!inner.divisible_by_t(shift))
      throw InternalError("inner sum of face " + std::to_string(i) + " is not divisible by t^" +
                          std::to_string(shift) + ": " + inner.str());
    total += sign(pkgs_[i].m) * inner.shifted(-shift);
  }
  return total;
}

JordanReport Pipeline::jordan_blocks(const EigenvalueClass& lambda) const {
  JordanReport r;
  r.lambda = lambda;
  r.beta = motivic_beta(lambda.order());
  const long nk = n() - k();
  const Int sg = sign(nk);
  for (long i = 1; i <= nk + 1; ++i) r.counts_geq.push_back(sg * (r.beta.coeff(nk - 1 + i) + r.beta.coeff(nk + i)));
  for (long s = 1; s <= nk + 1; ++s) {
    Int next = s <= nk ? r.counts_geq[static_cast<std::size_t>(s)] : Int(0);
    r.counts_exact.push_back(r.counts_geq[static_cast<std::size_t>(s - 1)] - next);
  }
  r.max_count = r.counts_geq.back();
  if (nk >= 1) r.second_count = r.counts_exact[static_cast<std::size_t>(nk - 1)];
  return r;
}

std::vector<Int> Pipeline::counts_geq_binomial(const Int& order) const {
  const long nn = n(), kk = k();
  std::vector<Int> out;
  for (long i = 1; i <= nn - kk + 1; ++i) {
    Int total = 0;
    for (std::size_t t = 0; t < pkgs_.size(); ++t) {
      const ThetaPackage& p = pkgs_[t];
      for (const auto& j : p.joins) {
        LaurentPoly b = join_beta(t, j.mask, order);
        Int inner = 0;
        for (long l = i; l <= i + 1; ++l)
          for (long r = 0; r <= j.dim; ++r) {
            long top = nn + kk - 3 + l - r;
            if (top % 2 != 0 || top < 0) continue;
            long e = top / 2;
            inner += sign(e) * binomial(p.m + j.c, e) * b.coeff(r);
          }
        total += sign(nn - kk + j.c) * inner;
      }
    }
    out.push_back(total);
  }
  return out;
}

Rat Pipeline::E(const ThetaPackage& p, const Int& order) const {
  auto dc = delta_combinatorics(p);
  if (dc.min_delta != 0) return 0;
  const JoinData& j0 = p.joins[*dc.j0];
  return divides(order, j0.distance) ? j0.mv_kappa : Rat(0);
}

Rat Pipeline::F_term(const JoinData& j, const Int& order) const {
  NJ_ASSERT(j.delta == 1, "F term needs delta 1");
  Rat v = divides(order, j.distance) ? j.mv_kappa_sum : Rat(0);
  for (const auto& f : j.facets)
    if (divides(order, f.distance)) v -= f.mv;
  return v;
}

Rat Pipeline::F(const ThetaPackage& p, const Int& order) const {
  auto dc = delta_combinatorics(p);
  if (dc.min_delta < 0 || dc.min_delta > 1) return 0;
  if (dc.min_delta == 1) return F_term(p.joins[dc.j1.at(0)], order);
  if (dc.j1.empty()) return 0;
  const JoinData& j0 = p.joins[*dc.j0];
  Rat twice = divides(order, j0.distance) ? Rat(2 * j0.mv_kappa) : Rat(0);
  Rat v = 0;
  for (unsigned a : dc.j1) v += twice + F_term(p.joins[a], order);
  return v;
}

Int Pipeline::jordan_max_count(const Int& order) const {
  Rat total = 0;
  for (const auto& p : pkgs_)
    if (p.s == n()) total += Rat(sign(p.dim - (k() - 1))) * E(p, order);
  return to_integer(total, "maximal block count is not an integer");
}

Int Pipeline::jordan_second_count(const Int& order) const {
  if (n() - k() < 1) throw ValidationError("second maximal block size n-k is 0 when k = n");
  Rat total = 0;
  for (const auto& p : pkgs_)
    if (p.s == n() && p.dim >= k()) total += Rat(sign(p.dim - k())) * F(p, order);
  return to_integer(total, "second maximal block count is not an integer");
}

Int Pipeline::max_count_corollary_k2(const Int& order) const {
  if (k() != 2) throw ValidationError("corollary needs k = 2");
  Int total = 0;
  for (const auto& p : pkgs_) {
    if (p.s != n()) continue;
    if (p.dim == 1 && divides(order, p.distance)) total += lattice_length(p.gamma[0]);
    if (p.dim >= 2 && p.dim <= n() - 1 && p.gamma_dim[1] == 0 && divides(order, content(p.gamma[1][0])))
      total += sign(p.dim - 1);
  }
  return total;
}

Int Pipeline::max_count_corollary_majorizing(const Int& order) const {
  Rat total = 0;
  for (const auto& p : pkgs_) {
    if (p.s != n() || p.dim != k() - 1 || !divides(order, p.distance)) continue;
    total += mixed_volume(p.kappa, direction_lattice(p.vertices));
  }
  return to_integer(total, "mixed volume sum is not an integer");
}

Int Pipeline::second_count_corollary_k2(const Int& order) const {
  if (k() != 2) throw ValidationError("corollary needs k = 2");
  if (n() - k() < 1) throw ValidationError("second maximal block size n-k is 0 when k = n");
  Rat total = 0;
  for (const auto& p : pkgs_) {
    if (p.s != n()) continue;
    if (p.dim == 2) total += F(p, order);
    if (p.dim >= 3 && p.dim <= n() - 1 && p.gamma_dim[1] == 1 &&
        divides(order, lattice_distance(IntVec(in_.n, 0), p.gamma[1]))) {
      Int v = lattice_length(p.gamma[1]);
      for (const auto& x : p.gamma[1])
        if (divides(order, content(x))) v -= 1;
      total += Rat(sign(p.dim) * v);
    }
  }
  return to_integer(total, "corollary count is not an integer");
}

Int Pipeline::second_count_corollary_majorizing(const Int& order) const {
  if (n() - k() < 1) throw ValidationError("second maximal block size n-k is 0 when k = n");
  Rat total = 0;
  for (const auto& p : pkgs_)
    if (p.s == n() && p.dim == k()) total += F(p, order);
  return to_integer(total, "corollary count is not an integer");
}

bool Pipeline::mutually_majorizing() const { return nj::mutually_majorizing(in_); }

PuiseuxPoly Pipeline::spectrum() const {
  PuiseuxPoly sp;
  for (const auto& p : pkgs_)
    for (const auto& j : p.joins) {
      long size = static_cast<long>(j.members.size());
      for (const auto& piece : cone_pieces(j.body->poly, true)) {
        long power = p.s + size - piece.power;
        NJ_ASSERT(power >= 0, "cone piece of too large dimension");
        puiseux_add(sp, puiseux_mul_one_minus_t(piece.numerator, power), sign(p.dim + size));
      }
    }
  PuiseuxPoly out;
  puiseux_add(out, puiseux_shift(sp, Rat(1 - k())), sign(n() - k()));
  return out;
}

namespace {

template <class Fn>
CheckOutcome run_check(std::string name, Fn&& fn) {
  CheckOutcome c{std::move(name), true, ""};
  try {
    c.detail = fn();
    c.ok = c.detail.empty();
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = e.what();
  }
  return c;
}

std::string mismatch(const std::string& what, const Int& a, const Int& b) {
  if (a == b) return "";
  return what + ": " + a.get_str() + " != " + b.get_str();
}

std::string join_vec(const std::vector<Int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

}  // namespace

std::vector<CheckOutcome> Pipeline::check_eigenvalue(const EigenvalueClass& lambda, bool full) const {
  const Int order = lambda.order();
  const long nk = n() - k();
  std::vector<CheckOutcome> out;
  JordanReport rep;
  bool have = false;
  out.push_back(run_check("divisibility", [&]() -> std::string {
    rep = jordan_blocks(lambda);
    have = true;
    return "";
  }));
  if (!have) return out;

  out.push_back(run_check("degree_bound", [&]() -> std::string {
    if (rep.beta.is_zero()) return "";
    if (rep.beta.low() < 0 || rep.beta.high() > 2 * nk)
      return "beta " + rep.beta.str() + " outside degrees [0, " + std::to_string(2 * nk) + "]";
    return "";
  }));
  out.push_back(run_check("counts_valid", [&]() -> std::string {
    for (std::size_t i = 0; i < rep.counts_geq.size(); ++i) {
      if (rep.counts_geq[i] < 0) return "negative count " + join_vec(rep.counts_geq);
      if (i && rep.counts_geq[i] > rep.counts_geq[i - 1]) return "increasing counts " + join_vec(rep.counts_geq);
    }
    return "";
  }));
  out.push_back(run_check("max_count_closed_form", [&]() {
    return mismatch("E route vs coefficient", jordan_max_count(order), sign(nk) * rep.beta.coeff(2 * nk));
  }));
  if (nk >= 1)
    out.push_back(run_check("second_count_closed_form", [&]() {
      return mismatch("F route vs coefficient", jordan_second_count(order), sign(nk) * rep.beta.coeff(2 * nk - 1));
    }));
  out.push_back(run_check("binomial_route", [&]() -> std::string {
    auto b = counts_geq_binomial(order);
    if (b != rep.counts_geq) return join_vec(b) + " != " + join_vec(rep.counts_geq);
    return "";
  }));
  out.push_back(run_check("emptiness", [&]() -> std::string {
    for (std::size_t t = 0; t < pkgs_.size(); ++t)
      if (delta_combinatorics(pkgs_[t]).min_delta < 0 && !theta_inner_sum(t, order).is_zero())
        return "face " + std::to_string(t) + " with negative delta contributes";
    return "";
  }));
  out.push_back(run_check("lower_strata", [&]() -> std::string {
    const long shift = 2 * k() - 2;
    for (std::size_t t = 0; t < pkgs_.size(); ++t) {
      if (pkgs_[t].s == n()) continue;
      LaurentPoly c = theta_inner_sum(t, order);
      for (long e = std::max(0L, 2 * nk - 1); e <= 2 * nk; ++e)
        if (c.coeff(e + shift) != 0)
          return "face " + std::to_string(t) + " with s < n reaches degree " + std::to_string(e);
    }
    return "";
  }));

  if (!full) return out;

  if (k() == 2) {
    out.push_back(run_check("corollary_max_k2", [&]() {
      return mismatch("corollary vs general", max_count_corollary_k2(order), rep.max_count);
    }));
    if (nk >= 1)
      out.push_back(run_check("corollary_second_k2", [&]() {
        return mismatch("corollary vs general", second_count_corollary_k2(order), *rep.second_count);
      }));
  }
  if (mutually_majorizing()) {
    out.push_back(run_check("corollary_max_majorizing", [&]() {
      return mismatch("corollary vs general", max_count_corollary_majorizing(order), rep.max_count);
    }));
    if (nk >= 1)
      out.push_back(run_check("corollary_second_majorizing", [&]() {
        return mismatch("corollary vs general", second_count_corollary_majorizing(order), *rep.second_count);
      }));
  }
  return out;
}

std::vector<CheckOutcome> Pipeline::check_beta_routes(const Int& order) const {
  std::vector<CheckOutcome> out;
  out.push_back(run_check("join_closed_form", [&]() -> std::string {
    for (std::size_t t = 0; t < pkgs_.size(); ++t)
      for (const auto& j : pkgs_[t].joins) {
        const auto& table = closed_table(t, j.mask);
        if (!table) continue;
        LaurentPoly closed = beta_closed(*table, order);
        if (!(closed == join_beta(t, j.mask, order)))
          return "face " + std::to_string(t) + " join " + std::to_string(j.mask) + ": " + closed.str() +
                 " vs " + join_beta(t, j.mask, order).str();
      }
    return "";
  }));
  out.push_back(run_check("majorizer_order", [&]() -> std::string {
    for (std::size_t t = 0; t < pkgs_.size(); ++t)
      for (const auto& j : pkgs_[t].joins) {
        if (j.dim < 3) continue;
        LaurentPoly b = alt_engine_.beta(*j.body, order);
        if (!(b == join_beta(t, j.mask, order)))
          return "face " + std::to_string(t) + " join " + std::to_string(j.mask) + ": " + b.str();
      }
    return "";
  }));
  return out;
}

std::vector<CheckOutcome> Pipeline::check_spectrum(const PuiseuxPoly& sp) const {
  const Rat top(n() - k() + 1);
  std::vector<CheckOutcome> out;
  out.push_back(run_check("spectrum_support", [&]() -> std::string {
    for (const auto& [e, c] : sp)
      if (e <= 0 || e >= top) return "exponent " + to_string(e) + " outside (0, " + to_string(top) + ")";
    return "";
  }));
  out.push_back(run_check("spectrum_symmetry", [&]() -> std::string {
    for (const auto& [e, c] : sp) {
      auto it = sp.find(top - e);
      if (it == sp.end() || it->second != c) return "exponent " + to_string(e) + " has no mirror image";
    }
    return "";
  }));
  out.push_back(run_check("spectrum_class_sums", [&]() -> std::string {
    std::map<Rat, Int> sums;
    for (const auto& [e, c] : sp) sums[frac(e)] += c;
    std::map<Int, Int> at_one;
    for (const auto& lambda : eigenvalue_candidates(pkgs_)) {
      auto it = at_one.find(lambda.order());
      if (it == at_one.end()) it = at_one.emplace(lambda.order(), motivic_beta(lambda.order()).at_one()).first;
      Int expect = sign(n() - k()) * it->second;
      Int got = sums.count(lambda.value()) ? sums[lambda.value()] : Int(0);
      sums.erase(lambda.value());
      if (got != expect)
        return "class " + lambda.str() + ": " + got.get_str() + " != " + expect.get_str();
    }
    for (const auto& [b, c] : sums)
      if (c != 0) return "class " + to_string(b) + " is not a candidate but sums to " + c.get_str();
    return "";
  }));
  return out;
}

}  // namespace nj
