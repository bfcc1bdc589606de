#include "nj/naive.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace nj::naive {

namespace {

RatMat as_rows(const std::vector<RatVec>& v) { return RatMat(v.begin(), v.end()); }

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RatVec primitive_direction(const RatVec& v) {
  Int den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  Int g = 0;
  for (const auto& x : v) {
    Int y = Int(x * den);
    g = gcd(g, Int(abs(y)));
  }
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = make_rat(Int(v[i] * den), g);
  return out;
}

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

std::vector<IntVec> scaled_rows(const std::vector<RatVec>& rows, Int& scale) {
  scale = 1;
  for (const auto& r : rows)
    for (const auto& x : r) scale = lcm(scale, x.get_den());
  std::vector<IntVec> out;
  for (const auto& r : rows) {
    IntVec v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = Int(r[i] * scale);
    out.push_back(v);
  }
  return out;
}

RatVec centroid(const Hull& h, const std::vector<std::size_t>& verts) {
  RatVec c(h.ambient, 0);
  for (std::size_t i : verts)
    for (std::size_t j = 0; j < h.ambient; ++j) c[j] += h.vertices[i][j];
  for (auto& x : c) x /= static_cast<long>(verts.size());
  return c;
}

// Complete flags of faces from the whole hull down to a vertex, as the
// barycentric simplices' edge rows c(F_i) - c(whole).
void for_each_flag(const Hull& h, const std::vector<NaiveFace>& fs,
                   const std::function<void(const std::vector<RatVec>&)>& f) {
  const NaiveFace& top = fs.back();
  RatVec apex = centroid(h, top.vertices);
  std::vector<RatVec> edges;
  std::function<void(std::size_t)> rec = [&](std::size_t cur) {
    if (fs[cur].dim == 0) {
      f(edges);
      return;
    }
    for (std::size_t g = 0; g < fs.size(); ++g) {
      if (fs[g].dim != fs[cur].dim - 1) continue;
      if (!std::includes(fs[cur].vertices.begin(), fs[cur].vertices.end(), fs[g].vertices.begin(),
                         fs[g].vertices.end()))
        continue;
      edges.push_back(sub(centroid(h, fs[g].vertices), apex));
      rec(g);
      edges.pop_back();
    }
  };
  rec(fs.size() - 1);
}

}  // namespace

Hull hull(const std::vector<RatVec>& pts_in, const std::vector<IntVec>& rays) {
  if (pts_in.empty()) throw ValidationError("hull of no points");
  Hull h;
  h.points = pts_in;
  std::sort(h.points.begin(), h.points.end());
  h.points.erase(std::unique(h.points.begin(), h.points.end()), h.points.end());
  h.rays = rays;
  h.ambient = h.points[0].size();
  const std::size_t N = h.ambient;
  const RatVec& p0 = h.points[0];

  std::vector<RatVec> dirs;
  for (std::size_t i = 1; i < h.points.size(); ++i) dirs.push_back(sub(h.points[i], p0));
  for (const auto& r : rays) dirs.push_back(to_rat(r));
  h.dim = dirs.empty() ? 0 : static_cast<int>(rank(as_rows(dirs)));
  const std::size_t d = static_cast<std::size_t>(h.dim);

  if (d == 0) {
    for (std::size_t i = 0; i < N; ++i) {
      RatVec e(N, 0);
      e[i] = 1;
      h.eq_normal.push_back(e);
    }
  } else {
    h.eq_normal = nullspace(as_rows(dirs), N);
  }
  for (const auto& a : h.eq_normal) h.eq_value.push_back(dot(a, p0));

  std::vector<std::size_t> chart;
  std::vector<RatVec> acc;
  for (std::size_t c = 0; c < N && chart.size() < d; ++c) {
    auto trial = chart;
    trial.push_back(c);
    std::vector<RatVec> proj;
    for (const auto& v : dirs) {
      RatVec w;
      for (std::size_t t : trial) w.push_back(v[t]);
      proj.push_back(w);
    }
    if (rank(as_rows(proj)) == trial.size()) chart = trial;
  }
  auto project = [&](const RatVec& x) {
    RatVec w;
    for (std::size_t t : chart) w.push_back(x[t]);
    return w;
  };

  if (d == 0) {
    h.vertices = {p0};
    return h;
  }

  std::vector<RatVec> gens;
  for (const auto& p : h.points) gens.push_back(project(p));
  std::size_t np = gens.size();
  for (const auto& r : rays) gens.push_back(project(to_rat(r)));

  std::set<std::pair<RatVec, Rat>> seen;
  for_each_subset(gens.size(), d, [&](const std::vector<std::size_t>& sub_idx) {
    if (sub_idx[0] >= np) return;
    const RatVec& base = gens[sub_idx[0]];
    std::vector<RatVec> span;
    for (std::size_t i = 1; i < sub_idx.size(); ++i) {
      std::size_t g = sub_idx[i];
      span.push_back(g < np ? sub(gens[g], base) : gens[g]);
    }
    RatVec a;
    if (span.empty()) {
      a = RatVec(1, 1);
    } else {
      if (rank(as_rows(span)) != d - 1) return;
      auto ns = nullspace(as_rows(span), d);
      if (ns.size() != 1) return;
      a = ns[0];
    }
    a = primitive_direction(a);
    Rat b = dot(a, base);
    bool pos = false, neg = false;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Rat s = g < np ? Rat(dot(a, gens[g]) - b) : dot(a, gens[g]);
      if (s > 0) pos = true;
      if (s < 0) neg = true;
    }
    if (pos && neg) return;
    if (neg) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    seen.insert({a, b});
  });
  for (const auto& [a, b] : seen) {
    RatVec full(N, 0);
    for (std::size_t i = 0; i < d; ++i) full[chart[i]] = a[i];
    h.normal.push_back(full);
    h.offset.push_back(b);
  }

  for (const auto& p : h.points) {
    std::vector<RatVec> tight;
    for (std::size_t i = 0; i < h.normal.size(); ++i)
      if (dot(h.normal[i], p) == h.offset[i]) tight.push_back(project(h.normal[i]));
    if (!tight.empty() && rank(as_rows(tight)) == d) h.vertices.push_back(p);
  }
  return h;
}

Hull hull(const std::vector<IntVec>& points, const std::vector<IntVec>& rays) {
  std::vector<RatVec> p;
  for (const auto& v : points) p.push_back(to_rat(v));
  return hull(p, rays);
}

bool contains(const Hull& h, const RatVec& x) {
  for (std::size_t i = 0; i < h.eq_normal.size(); ++i)
    if (dot(h.eq_normal[i], x) != h.eq_value[i]) return false;
  for (std::size_t i = 0; i < h.normal.size(); ++i)
    if (dot(h.normal[i], x) < h.offset[i]) return false;
  return true;
}

bool relint_contains(const Hull& h, const RatVec& x) {
  for (std::size_t i = 0; i < h.eq_normal.size(); ++i)
    if (dot(h.eq_normal[i], x) != h.eq_value[i]) return false;
  for (std::size_t i = 0; i < h.normal.size(); ++i)
    if (dot(h.normal[i], x) <= h.offset[i]) return false;
  return true;
}

std::vector<NaiveFace> faces(const Hull& h) {
  using Key = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
  std::set<Key> found;
  std::vector<Key> frontier;
  for (std::size_t i = 0; i < h.normal.size(); ++i) {
    Key k;
    for (std::size_t v = 0; v < h.vertices.size(); ++v)
      if (dot(h.normal[i], h.vertices[v]) == h.offset[i]) k.first.push_back(v);
    for (std::size_t r = 0; r < h.rays.size(); ++r)
      if (dot(h.normal[i], to_rat(h.rays[r])) == 0) k.second.push_back(r);
    if (!k.first.empty() && found.insert(k).second) frontier.push_back(k);
  }
  std::vector<Key> facet_keys(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<Key> next;
    for (const auto& a : frontier)
      for (const auto& b : facet_keys) {
        Key c;
        std::set_intersection(a.first.begin(), a.first.end(), b.first.begin(), b.first.end(),
                              std::back_inserter(c.first));
        std::set_intersection(a.second.begin(), a.second.end(), b.second.begin(), b.second.end(),
                              std::back_inserter(c.second));
        if (!c.first.empty() && found.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  Key whole;
  for (std::size_t v = 0; v < h.vertices.size(); ++v) whole.first.push_back(v);
  for (std::size_t r = 0; r < h.rays.size(); ++r) whole.second.push_back(r);
  found.erase(whole);

  std::vector<NaiveFace> out;
  auto make = [&](const Key& k) {
    NaiveFace f;
    f.vertices = k.first;
    f.rays = k.second;
    std::vector<RatVec> dirs;
    for (std::size_t i = 1; i < k.first.size(); ++i) dirs.push_back(sub(h.vertices[k.first[i]], h.vertices[k.first[0]]));
    for (std::size_t r : k.second) dirs.push_back(to_rat(h.rays[r]));
    f.dim = dirs.empty() ? 0 : static_cast<int>(rank(as_rows(dirs)));
    for (std::size_t i = 0; i < h.normal.size(); ++i) {
      bool all = true;
      for (std::size_t v : k.first) all = all && dot(h.normal[i], h.vertices[v]) == h.offset[i];
      for (std::size_t r : k.second) all = all && dot(h.normal[i], to_rat(h.rays[r])) == 0;
      if (all) f.facets.push_back(i);
    }
    return f;
  };
  for (const auto& k : found) out.push_back(make(k));
  std::stable_sort(out.begin(), out.end(), [](const NaiveFace& a, const NaiveFace& b) { return a.dim < b.dim; });
  out.push_back(make(whole));
  return out;
}

bool is_simple(const Hull& h, const std::vector<NaiveFace>& fs) {
  if (h.dim <= 1) return true;
  for (const auto& f : fs)
    if (f.dim == 0 && static_cast<int>(f.facets.size()) != h.dim) return false;
  return true;
}

Int determinantal_divisor(const std::vector<IntVec>& rows) {
  if (rows.empty()) return 1;
  std::vector<RatVec> r;
  for (const auto& v : rows) r.push_back(to_rat(v));
  std::size_t rk = rank(as_rows(r));
  if (rk == 0) return 1;
  std::size_t ncols = rows[0].size();
  Int g = 0;
  for_each_subset(rows.size(), rk, [&](const std::vector<std::size_t>& ri) {
    for_each_subset(ncols, rk, [&](const std::vector<std::size_t>& ci) {
      RatMat m(rk, RatVec(rk));
      for (std::size_t a = 0; a < rk; ++a)
        for (std::size_t b = 0; b < rk; ++b) m[a][b] = rows[ri[a]][ci[b]];
      Rat det = determinant(m);
      g = gcd(g, abs_int(det.get_num()));
    });
  });
  return g;
}

Int lattice_distance(const std::vector<IntVec>& points) {
  std::vector<IntVec> dirs;
  for (std::size_t i = 1; i < points.size(); ++i) dirs.push_back(sub(points[i], points[0]));
  std::vector<RatVec> pr, dr;
  for (const auto& p : points) pr.push_back(to_rat(p));
  for (const auto& p : dirs) dr.push_back(to_rat(p));
  std::size_t rp = rank(as_rows(pr)), rd = dr.empty() ? 0 : rank(as_rows(dr));
  if (rp != rd + 1) throw GeometryError("affine hull passes through the origin");
  return determinantal_divisor(points) / determinantal_divisor(dirs);
}

Int lattice_volume(const std::vector<IntVec>& points) {
  Hull h = hull(points);
  if (h.dim == 0) return 1;
  auto fs = faces(h);
  Rat total = 0;
  std::size_t r = static_cast<std::size_t>(h.dim);
  for_each_flag(h, fs, [&](const std::vector<RatVec>& edges) {
    Int scale;
    auto rows = scaled_rows(edges, scale);
    Rat s = Rat(determinantal_divisor(rows));
    for (std::size_t i = 0; i < r; ++i) s /= scale;
    total += s;
  });
  NJ_ASSERT(total.get_den() == 1, "lattice volume is not an integer");
  return total.get_num();
}

Rat volume_in(const std::vector<RatVec>& points, const std::vector<IntVec>& basis) {
  Hull h = hull(points);
  if (h.dim < static_cast<int>(h.ambient)) return 0;
  if (h.dim == 0) return 1;
  auto fs = faces(h);
  Rat total = 0;
  for_each_flag(h, fs, [&](const std::vector<RatVec>& edges) {
    Rat det = determinant(as_rows(edges));
    total += det < 0 ? Rat(-det) : det;
  });
  RatMat b;
  for (const auto& v : basis) b.push_back(to_rat(v));
  Rat idx = determinant(b);
  return total / (idx < 0 ? Rat(-idx) : idx);
}

std::vector<RatVec> minkowski_points(const std::vector<std::vector<RatVec>>& parts) {
  std::vector<RatVec> acc = {RatVec(parts.at(0).at(0).size(), 0)};
  for (const auto& part : parts) {
    std::vector<RatVec> next;
    for (const auto& a : acc)
      for (const auto& b : part) next.push_back(add(a, b));
    acc = hull(next).vertices;
  }
  return acc;
}

Rat mixed_volume_in(const std::vector<std::vector<IntVec>>& polys, const std::vector<IntVec>& basis) {
  std::size_t m = polys.size();
  if (m == 0) return 1;
  Rat total = 0;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::vector<RatVec>> parts;
    for (std::size_t j = 0; j < m; ++j)
      if (mask >> j & 1) {
        std::vector<RatVec> p;
        for (const auto& v : polys[j]) p.push_back(to_rat(v));
        parts.push_back(p);
      }
    Rat v = volume_in(minkowski_points(parts), basis);
    total += (m - parts.size()) % 2 ? Rat(-v) : v;
  }
  return total / Rat(factorial(static_cast<long>(m)));
}

bool in_lattice(const IntVec& x, const std::vector<IntVec>& basis) {
  std::size_t n = basis.size();
  RatMat b(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i][j] = basis[i][j];
  Rat det = determinant(b);
  for (std::size_t i = 0; i < n; ++i) {
    RatMat m = b;
    for (std::size_t j = 0; j < n; ++j) m[i][j] = x[j];
    if (Rat(determinant(m) / det).get_den() != 1) return false;
  }
  return true;
}

}  // namespace nj::naive
