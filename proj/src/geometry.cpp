#include "nj/geometry.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace nj {

void validate_support(const Support& s, std::size_t n) {
  if (n == 0) throw ValidationError("dimension must be positive");
  if (s.empty()) throw ValidationError("empty support");
  for (const auto& p : s) {
    if (p.size() != n) throw ValidationError("exponent vector has wrong length");
    for (const auto& x : p)
      if (x < 0) throw ValidationError("negative exponent " + to_string(p));
    if (is_zero(p)) throw ValidationError("constant term in support; f must vanish at 0");
  }
}

bool is_convenient(const Support& s, std::size_t n) {
  std::vector<bool> hit(n, false);
  for (const auto& p : s) {
    int nz = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (p[i] != 0) {
        ++nz;
        at = i;
      }
    if (nz == 1) hit[at] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

namespace {

std::vector<IntVec> undominated(const std::vector<IntVec>& pts) {
  std::vector<IntVec> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      if (i == j || pts[i] == pts[j]) continue;
      bool le = true;
      for (std::size_t c = 0; c < pts[i].size(); ++c)
        if (pts[j][c] > pts[i][c]) {
          le = false;
          break;
        }
      dominated = le;
    }
    if (!dominated) keep.push_back(pts[i]);
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  return keep;
}

std::vector<IntVec> unit_rays(std::size_t n) {
  std::vector<IntVec> r;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    r.push_back(e);
  }
  return r;
}

bool all_unit_rays(const std::vector<IntVec>& rays, std::size_t n) {
  return rays.size() == n && rays == unit_rays(n);
}

}  // namespace

Polyhedron newton_polyhedron(const Support& s, std::size_t n, Mode mode) {
  validate_support(s, n);
  if (mode == Mode::Local) return Polyhedron::from_points(undominated(s), unit_rays(n));
  std::vector<IntVec> pts = s;
  pts.push_back(IntVec(n, 0));
  return Polyhedron::from_points(pts);
}

Polyhedron minkowski_hull(const std::vector<std::vector<IntVec>>& parts) {
  std::vector<IntVec> acc = {IntVec(parts.at(0).at(0).size(), 0)};
  Polyhedron P;
  for (const auto& part : parts) {
    std::vector<IntVec> next;
    for (const auto& a : acc)
      for (const auto& b : part) next.push_back(add(a, b));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    P = Polyhedron::from_points(next);
    acc = P.lattice_vertices();
  }
  return P;
}

MinkowskiSum minkowski_sum(std::vector<Polyhedron> parts) {
  if (parts.empty()) throw ValidationError("empty Minkowski sum");
  std::size_t n = parts[0].ambient_dim();
  std::vector<RatVec> acc = {RatVec(n, 0)};
  std::vector<IntVec> rays;
  bool local = true;
  for (const auto& P : parts) {
    for (const auto& r : P.rays()) rays.push_back(r);
    if (!all_unit_rays(P.rays(), n)) local = false;
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  Polyhedron S;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::vector<RatVec> next;
    for (const auto& a : acc)
      for (const auto& b : parts[k].vertices()) next.push_back(add(a, b));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (local) {
      // Points dominated by another point are not vertices of a local sum.
      std::vector<RatVec> keep;
      for (std::size_t i = 0; i < next.size(); ++i) {
        bool dom = false;
        for (std::size_t j = 0; j < next.size() && !dom; ++j) {
          if (i == j) continue;
          bool le = true;
          for (std::size_t c = 0; c < n; ++c)
            if (next[j][c] > next[i][c]) {
              le = false;
              break;
            }
          dom = le;
        }
        if (!dom) keep.push_back(next[i]);
      }
      next = keep;
    }
    std::vector<IntVec> partial_rays;
    for (std::size_t j = 0; j <= k; ++j)
      for (const auto& r : parts[j].rays()) partial_rays.push_back(r);
    S = Polyhedron::from_points(next, partial_rays);
    acc = S.vertices();
  }
  return MinkowskiSum{std::move(S), std::move(parts)};
}

std::vector<std::size_t> MinkowskiSum::summand_faces(std::size_t face) const {
  RatVec u = sum.relint_normal(face);
  std::vector<std::size_t> r;
  for (const auto& P : parts) r.push_back(P.supporting_face(u));
  return r;
}

std::vector<std::vector<int>> pulling_triangulation(const Polyhedron& P) {
  if (!P.bounded()) throw GeometryError("triangulation of an unbounded polyhedron");
  std::map<std::size_t, std::vector<std::vector<int>>> memo;
  std::function<const std::vector<std::vector<int>>&(std::size_t)> tri =
      [&](std::size_t f) -> const std::vector<std::vector<int>>& {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    const Face& F = P.faces()[f];
    std::vector<std::vector<int>> out;
    if (F.dim == 0) {
      out.push_back({F.vertices[0]});
    } else {
      int apex = F.vertices[0];
      for (auto g : P.facets_of(f)) {
        const auto& G = P.faces()[g].vertices;
        if (std::find(G.begin(), G.end(), apex) != G.end()) continue;
        for (auto s : tri(g)) {
          s.insert(s.begin(), apex);
          out.push_back(std::move(s));
        }
      }
    }
    return memo[f] = std::move(out);
  };
  return tri(P.whole());
}

Lattice direction_lattice(const std::vector<IntVec>& points) {
  std::vector<IntVec> dirs;
  for (std::size_t i = 1; i < points.size(); ++i) dirs.push_back(sub(points[i], points[0]));
  return Lattice::saturated(dirs, points.at(0).size());
}

Lattice direction_lattice(const Polyhedron& P) {
  std::vector<RatVec> dirs;
  for (std::size_t i = 1; i < P.vertices().size(); ++i)
    dirs.push_back(sub(P.vertices()[i], P.vertices()[0]));
  for (const auto& r : P.rays()) dirs.push_back(to_rat(r));
  return Lattice::saturated(dirs, P.ambient_dim());
}

Rat normalized_volume(const Polyhedron& P, const Lattice& L) {
  if (!P.bounded()) throw GeometryError("volume of an unbounded polyhedron");
  if (P.dim() < static_cast<int>(L.rank())) return 0;
  if (P.dim() > static_cast<int>(L.rank())) throw GeometryError("polytope does not fit in the lattice");
  if (P.dim() == 0) return 1;
  const auto& V = P.vertices();
  std::vector<RatVec> coords;
  for (const auto& v : V) {
    auto c = L.coordinates(sub(v, V[0]));
    if (!c) throw GeometryError("polytope direction space is not in the lattice span");
    coords.push_back(*c);
  }
  Rat vol = 0;
  for (const auto& s : pulling_triangulation(P)) {
    RatMat m;
    for (std::size_t i = 1; i < s.size(); ++i) m.push_back(sub(coords[s[i]], coords[s[0]]));
    vol += abs(determinant(m));
  }
  return vol;
}

Int normalized_volume(const Polyhedron& P) {
  Rat v = normalized_volume(P, direction_lattice(P));
  NJ_ASSERT(v.get_den() == 1, "lattice polytope volume must be integral");
  return v.get_num();
}

Rat mixed_volume(const std::vector<std::vector<RatVec>>& polys, const Lattice& L) {
  std::size_t m = polys.size();
  if (m != L.rank()) throw GeometryError("mixed volume needs as many polytopes as the lattice rank");
  if (m == 0) return 1;
  // Move every polytope into lattice coordinates, anchored at its first point.
  std::vector<std::vector<RatVec>> coords(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& v : polys[i]) {
      auto c = L.coordinates(sub(v, polys[i][0]));
      if (!c) throw GeometryError("polytope direction space is not in the lattice span");
      coords[i].push_back(*c);
    }
  }
  Lattice Zm = Lattice::standard(m);
  Rat total = 0;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<RatVec> acc = {RatVec(m, 0)};
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1)) continue;
      std::vector<RatVec> next;
      for (const auto& a : acc)
        for (const auto& b : coords[i]) next.push_back(add(a, b));
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      acc = Polyhedron::from_points(next).vertices();
    }
    Polyhedron S = Polyhedron::from_points(acc);
    Rat vol = normalized_volume(S, Zm);
    int sign = ((m - static_cast<std::size_t>(std::popcount(mask))) % 2) ? -1 : 1;
    total += sign * vol;
  }
  return total / Rat(factorial(static_cast<long>(m)));
}

Rat mixed_volume(const std::vector<std::vector<IntVec>>& polys, const Lattice& L) {
  std::vector<std::vector<RatVec>> r;
  for (const auto& p : polys) {
    std::vector<RatVec> q;
    for (const auto& v : p) q.push_back(to_rat(v));
    r.push_back(q);
  }
  return mixed_volume(r, L);
}

bool is_prime(const Polyhedron& P) { return P.dim() <= 2 || P.is_simple(); }

bool is_pseudo_prime(const Polyhedron& P) {
  int d = P.dim();
  if (d <= 2) return true;
  const auto& F = P.faces();
  for (std::size_t e = 0; e < F.size(); ++e) {
    if (F[e].dim != 1) continue;
    int count = 0;
    for (std::size_t g = 0; g < F.size(); ++g)
      if (F[g].dim == 2 && P.face_contains(g, e)) ++count;
    if (count != d - 1) return false;
  }
  return true;
}

namespace {

std::optional<Majorizer> try_perturbation(const Polyhedron& P,
                                          const std::vector<std::size_t>& order,
                                          const Rat& delta) {
  std::size_t d = static_cast<std::size_t>(P.dim());
  const auto& chart = P.chart();
  RatMat a;
  RatVec b;
  Rat eps = delta;
  std::vector<Rat> shift(P.facets().size());
  for (auto i : order) {
    shift[i] = eps;
    eps *= delta;
  }
  for (std::size_t i = 0; i < P.facets().size(); ++i) {
    a.push_back(P.to_chart(P.facets()[i].normal));
    b.push_back(P.facets()[i].offset - shift[i]);
  }
  Majorizer M;
  M.identity = false;
  M.prime = Polyhedron::from_points(vertices_from_inequalities(a, b));
  if (M.prime.dim() != static_cast<int>(d) || !M.prime.is_simple()) return std::nullopt;
  if (M.prime.facets().size() != P.facets().size()) return std::nullopt;

  auto lift = [&](const RatVec& u) {
    RatVec l(P.ambient_dim(), 0);
    for (std::size_t c = 0; c < d; ++c) l[chart[c]] = u[c];
    return l;
  };
  const auto& F = M.prime.faces();
  M.psi.resize(F.size());
  for (std::size_t f = 0; f < F.size(); ++f) M.psi[f] = P.supporting_face(lift(M.prime.relint_normal(f)));
  // Cone inclusion at every vertex: each tight facet normal of the new vertex
  // must also be minimized at the image vertex.
  for (std::size_t f = 0; f < F.size(); ++f) {
    if (F[f].dim != 0) continue;
    std::size_t image = M.psi[f];
    if (P.faces()[image].dim != 0) return std::nullopt;
    for (int i : F[f].facets) {
      std::size_t g = P.supporting_face(lift(M.prime.facets()[i].normal));
      if (!P.face_contains(g, image)) return std::nullopt;
    }
  }
  return M;
}

}  // namespace

Majorizer prime_majorizer(const Polyhedron& P, std::uint64_t order_seed) {
  if (!P.bounded()) throw GeometryError("majorizer of an unbounded polyhedron");
  if (is_prime(P)) {
    Majorizer M;
    M.prime = P;
    M.psi.resize(P.faces().size());
    std::iota(M.psi.begin(), M.psi.end(), 0);
    return M;
  }
  std::vector<std::size_t> order(P.facets().size());
  std::iota(order.begin(), order.end(), 0);
  if (order_seed != 0) {
    std::mt19937_64 rng(order_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  Rat delta(1, 8);
  for (int attempt = 0; attempt < 16; ++attempt) {
    if (auto M = try_perturbation(P, order, delta)) return *M;
    delta /= 8;
  }
  throw GeometryError("could not construct a prime majorizer");
}

}  // namespace nj
