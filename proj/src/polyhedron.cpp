#include "nj/polyhedron.hpp"

#include <algorithm>
#include <deque>
#include <nlohmann/json.hpp>
#include <set>

namespace nj {

using Bits = boost::dynamic_bitset<>;

IntMat extreme_rays(const IntMat& a, std::size_t dim) {
  std::size_t m = a.size();
  // Pick dim independent rows to seed a simplicial cone.
  std::vector<std::size_t> seed;
  RatMat echelon_rows;
  for (std::size_t i = 0; i < m && seed.size() < dim; ++i) {
    RatMat trial = echelon_rows;
    trial.push_back(to_rat(a[i]));
    if (rank(trial) > echelon_rows.size()) {
      echelon_rows = trial;
      seed.push_back(i);
    }
  }
  if (seed.size() < dim) throw GeometryError("cone is not pointed");

  RatMat aug(dim, RatVec(2 * dim, 0));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) aug[r][c] = a[seed[r]][c];
    aug[r][dim + r] = 1;
  }
  rref(aug);
  std::vector<IntVec> rays;
  std::vector<Bits> tight;
  for (std::size_t j = 0; j < dim; ++j) {
    RatVec col(dim);
    for (std::size_t r = 0; r < dim; ++r) col[r] = aug[r][dim + j];
    rays.push_back(primitive(col));
    Bits t(m);
    for (std::size_t r = 0; r < dim; ++r)
      if (r != j) t.set(seed[r]);
    tight.push_back(t);
  }

  std::vector<bool> used(m, false);
  for (auto s : seed) used[s] = true;
  for (std::size_t i = 0; i < m; ++i) {
    if (used[i]) continue;
    std::vector<Int> val(rays.size());
    std::vector<std::size_t> pos, zero, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a[i], rays[r]);
      int s = sgn(val[r]);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
    }
    std::vector<IntVec> next;
    std::vector<Bits> next_tight;
    for (auto r : pos) {
      next.push_back(rays[r]);
      next_tight.push_back(tight[r]);
    }
    for (auto r : zero) {
      next.push_back(rays[r]);
      Bits t = tight[r];
      t.set(i);
      next_tight.push_back(t);
    }
    if (!neg.empty()) {
      for (auto p : pos) {
        for (auto q : neg) {
          Bits common = tight[p] & tight[q];
          if (common.count() + 2 < dim) continue;
          bool adjacent = true;
          for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
            if (r == p || r == q) continue;
            if (common.is_subset_of(tight[r])) adjacent = false;
          }
          if (!adjacent) continue;
          IntVec nr(dim);
          for (std::size_t c = 0; c < dim; ++c) nr[c] = val[p] * rays[q][c] - val[q] * rays[p][c];
          next.push_back(primitive(nr));
          common.set(i);
          next_tight.push_back(common);
        }
      }
    }
    rays = std::move(next);
    tight = std::move(next_tight);
  }
  std::sort(rays.begin(), rays.end());
  return rays;
}

namespace {

bool lex_less(const RatVec& x, const RatVec& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace

Polyhedron Polyhedron::from_points(const std::vector<IntVec>& points,
                                   const std::vector<IntVec>& rays) {
  std::vector<RatVec> r;
  r.reserve(points.size());
  for (const auto& p : points) r.push_back(to_rat(p));
  return from_points(r, rays);
}

Polyhedron Polyhedron::from_points(const std::vector<RatVec>& points_in,
                                   const std::vector<IntVec>& rays_in) {
  if (points_in.empty()) throw ValidationError("polyhedron needs at least one point");
  Polyhedron P;
  P.ambient_ = points_in[0].size();
  std::size_t n = P.ambient_;

  std::vector<RatVec> pts = points_in;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<IntVec> rys;
  for (const auto& r : rays_in)
    if (!is_zero(r)) rys.push_back(primitive(r));
  std::sort(rys.begin(), rys.end());
  rys.erase(std::unique(rys.begin(), rys.end()), rys.end());

  const RatVec& p0 = pts[0];
  RatMat dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(sub(pts[i], p0));
  for (const auto& r : rys) dirs.push_back(to_rat(r));
  RatMat ech = dirs;
  P.chart_ = rref(ech);
  std::size_t d = P.chart_.size();
  P.dim_ = static_cast<int>(d);
  for (const auto& e : nullspace(dirs, n)) {
    IntVec ei = primitive(e);
    P.equations_.emplace_back(ei, dot(ei, p0));
  }

  if (d == 0) {
    P.vertices_ = {p0};
    Face f;
    f.vertices = {0};
    f.dim = 0;
    P.faces_ = {f};
    P.children_ = {{}};
    Bits b(1);
    b.set(0);
    P.face_sets_ = {b};
    P.face_index_[b] = 0;
    return P;
  }

  IntMat gens;
  for (const auto& p : pts) {
    RatVec h(d + 1);
    h[0] = 1;
    for (std::size_t c = 0; c < d; ++c) h[c + 1] = p[P.chart_[c]];
    gens.push_back(primitive(h));
  }
  for (const auto& r : rys) {
    IntVec h(d + 1, 0);
    for (std::size_t c = 0; c < d; ++c) h[c + 1] = r[P.chart_[c]];
    gens.push_back(primitive(h));
  }
  IntMat dual = extreme_rays(gens, d + 1);
  for (const auto& y : dual) {
    IntVec yp(y.begin() + 1, y.end());
    if (is_zero(yp)) continue;
    Int g = content(yp);
    Facet f;
    f.normal.assign(n, 0);
    for (std::size_t c = 0; c < d; ++c) f.normal[P.chart_[c]] = Rat(yp[c] / g);
    f.offset = make_rat(-y[0], g);
    P.facets_.push_back(f);
  }

  auto tight_rank = [&](const std::vector<std::size_t>& idx) {
    RatMat m;
    for (auto i : idx) {
      RatVec v(d);
      for (std::size_t c = 0; c < d; ++c) v[c] = P.facets_[i].normal[P.chart_[c]];
      m.push_back(v);
    }
    return rank(m);
  };

  for (const auto& p : pts) {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < P.facets_.size(); ++i)
      if (dot(P.facets_[i].normal, p) == P.facets_[i].offset) t.push_back(i);
    if (tight_rank(t) == d) P.vertices_.push_back(p);
  }
  for (const auto& r : rys) {
    RatVec rr = to_rat(r);
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < P.facets_.size(); ++i)
      if (dot(P.facets_[i].normal, rr) == 0) t.push_back(i);
    if (tight_rank(t) + 1 == d) P.rays_.push_back(r);
  }

  std::size_t nv = P.vertices_.size(), nr = P.rays_.size();
  std::vector<Bits> inc(P.facets_.size(), Bits(nv + nr));
  for (std::size_t i = 0; i < P.facets_.size(); ++i) {
    const auto& f = P.facets_[i];
    for (std::size_t v = 0; v < nv; ++v)
      if (dot(f.normal, P.vertices_[v]) == f.offset) inc[i].set(v);
    for (std::size_t r = 0; r < nr; ++r)
      if (dot(f.normal, to_rat(P.rays_[r])) == 0) inc[i].set(nv + r);
  }
  P.build_faces(inc);
  return P;
}

int Polyhedron::affine_rank(const Bits& elems) const {
  std::size_t nv = vertices_.size();
  RatMat m;
  const RatVec* base = nullptr;
  for (auto i = elems.find_first(); i != Bits::npos; i = elems.find_next(i)) {
    if (i < nv) {
      if (!base) {
        base = &vertices_[i];
        continue;
      }
      m.push_back(sub(vertices_[i], *base));
    } else {
      m.push_back(to_rat(rays_[i - nv]));
    }
  }
  return static_cast<int>(rank(m));
}

void Polyhedron::build_faces(const std::vector<Bits>& inc) {
  std::size_t nv = vertices_.size(), total = nv + rays_.size();
  Bits all(total);
  all.set();
  std::set<Bits> seen{all};
  std::deque<Bits> queue{all};
  while (!queue.empty()) {
    Bits f = queue.front();
    queue.pop_front();
    for (const auto& facet : inc) {
      Bits g = f & facet;
      if (g == f) continue;
      bool has_vertex = false;
      for (std::size_t v = 0; v < nv; ++v)
        if (g.test(v)) {
          has_vertex = true;
          break;
        }
      if (!has_vertex) continue;
      if (seen.insert(g).second) queue.push_back(g);
    }
  }

  struct Entry {
    int dim;
    std::vector<int> verts, rays;
    Bits set;
  };
  std::vector<Entry> entries;
  for (const auto& s : seen) {
    Entry e{affine_rank(s), {}, {}, s};
    for (std::size_t i = 0; i < total; ++i)
      if (s.test(i)) (i < nv ? e.verts : e.rays).push_back(static_cast<int>(i < nv ? i : i - nv));
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.dim != y.dim) return x.dim < y.dim;
    if (x.verts != y.verts) return x.verts < y.verts;
    return x.rays < y.rays;
  });
  NJ_ASSERT(entries.back().dim == dim_, "top face dimension mismatch");

  faces_.clear();
  face_sets_.clear();
  face_index_.clear();
  for (auto& e : entries) {
    Face f;
    f.vertices = std::move(e.verts);
    f.rays = std::move(e.rays);
    f.dim = e.dim;
    for (std::size_t i = 0; i < inc.size(); ++i)
      if (e.set.is_subset_of(inc[i])) f.facets.push_back(static_cast<int>(i));
    face_index_[e.set] = faces_.size();
    face_sets_.push_back(e.set);
    faces_.push_back(std::move(f));
  }
  children_.assign(faces_.size(), {});
  for (std::size_t i = 0; i < faces_.size(); ++i)
    for (std::size_t j = 0; j < faces_.size(); ++j)
      if (faces_[j].dim + 1 == faces_[i].dim && face_sets_[j].is_subset_of(face_sets_[i]))
        children_[i].push_back(j);
}

std::vector<IntVec> Polyhedron::lattice_vertices() const {
  std::vector<IntVec> r;
  for (const auto& v : vertices_) r.push_back(to_int(v));
  return r;
}

RatVec Polyhedron::to_chart(const RatVec& x) const {
  RatVec r(chart_.size());
  for (std::size_t c = 0; c < chart_.size(); ++c) r[c] = x[chart_[c]];
  return r;
}

bool Polyhedron::face_contains(std::size_t big, std::size_t small) const {
  return face_sets_[small].is_subset_of(face_sets_[big]);
}

std::vector<RatVec> Polyhedron::face_vertices(std::size_t f) const {
  std::vector<RatVec> r;
  for (int v : faces_[f].vertices) r.push_back(vertices_[v]);
  return r;
}

std::vector<IntVec> Polyhedron::face_lattice_vertices(std::size_t f) const {
  std::vector<IntVec> r;
  for (int v : faces_[f].vertices) r.push_back(to_int(vertices_[v]));
  return r;
}

Polyhedron Polyhedron::face_polyhedron(std::size_t f) const {
  std::vector<IntVec> rs;
  for (int r : faces_[f].rays) rs.push_back(rays_[r]);
  return from_points(face_vertices(f), rs);
}

std::size_t Polyhedron::supporting_face(const RatVec& u) const {
  std::size_t nv = vertices_.size();
  Bits s(nv + rays_.size());
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    Rat v = dot(rays_[r], u);
    if (v < 0) throw GeometryError("functional is unbounded below on the polyhedron");
    if (v == 0) s.set(nv + r);
  }
  Rat best;
  for (std::size_t v = 0; v < nv; ++v) {
    Rat val = dot(u, vertices_[v]);
    if (v == 0 || val < best) best = val;
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (dot(u, vertices_[v]) == best) s.set(v);
  auto it = face_index_.find(s);
  if (it == face_index_.end()) throw InternalError("minimizer is not a face");
  return it->second;
}

RatVec Polyhedron::relint_normal(std::size_t f) const {
  RatVec u(ambient_, 0);
  for (int i : faces_[f].facets) u = add(u, facets_[i].normal);
  return u;
}

bool Polyhedron::contains(const RatVec& x) const {
  for (const auto& [e, c] : equations_)
    if (dot(e, x) != c) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) < f.offset) return false;
  return true;
}

bool Polyhedron::relint_contains(const RatVec& x) const {
  for (const auto& [e, c] : equations_)
    if (dot(e, x) != c) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) <= f.offset) return false;
  return true;
}

bool Polyhedron::is_simple() const {
  for (const auto& f : faces_)
    if (f.dim == 0 && static_cast<int>(f.facets.size()) != dim_) return false;
  return true;
}

std::string Polyhedron::debug_json() const {
  nlohmann::ordered_json j;
  j["ambient_dim"] = ambient_;
  j["dim"] = dim_;
  auto rv = [](const RatVec& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
  };
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : vertices_) j["vertices"].push_back(rv(v));
  j["rays"] = nlohmann::ordered_json::array();
  for (const auto& r : rays_) j["rays"].push_back(rv(to_rat(r)));
  j["facets"] = nlohmann::ordered_json::array();
  for (const auto& f : facets_)
    j["facets"].push_back({{"normal", rv(f.normal)}, {"offset", to_string(f.offset)}});
  j["faces"] = nlohmann::ordered_json::array();
  for (const auto& f : faces_)
    j["faces"].push_back({{"dim", f.dim}, {"vertices", f.vertices}, {"rays", f.rays}, {"facets", f.facets}});
  return j.dump(2);
}

std::vector<RatVec> vertices_from_inequalities(const RatMat& a, const RatVec& b) {
  if (a.empty()) throw ValidationError("no inequalities");
  std::size_t d = a[0].size();
  IntMat rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    RatVec h(d + 1);
    h[0] = -b[i];
    for (std::size_t c = 0; c < d; ++c) h[c + 1] = a[i][c];
    rows.push_back(primitive(h));
  }
  IntVec x0(d + 1, 0);
  x0[0] = 1;
  rows.push_back(x0);
  std::vector<RatVec> verts;
  for (const auto& r : extreme_rays(rows, d + 1)) {
    if (r[0] == 0) throw GeometryError("inequality system is unbounded");
    RatVec v(d);
    for (std::size_t c = 0; c < d; ++c) v[c] = make_rat(r[c + 1], r[0]);
    verts.push_back(v);
  }
  std::sort(verts.begin(), verts.end(), lex_less);
  return verts;
}

}  // namespace nj
