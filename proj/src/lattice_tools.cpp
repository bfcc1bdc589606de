#include "nj/lattice_tools.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <set>

namespace nj {

TorsionCharacter::TorsionCharacter(RatVec q) : q_(std::move(q)) {
  for (auto& x : q_) x = frac(x);
}

Rat TorsionCharacter::operator()(const IntVec& v) const {
  if (v.size() != q_.size()) throw ValidationError("character dimension mismatch");
  return frac(dot(v, q_));
}

Int TorsionCharacter::image_order() const {
  Int l = 1;
  for (const auto& x : q_) l = lcm(l, x.get_den());
  return l;
}

Int TorsionCharacter::image_order(const Lattice& M) const {
  Int l = 1;
  for (const auto& b : M.basis()) l = lcm(l, (*this)(b).get_den());
  return l;
}

Lattice TorsionCharacter::kernel() const {
  std::size_t n = q_.size();
  Int D = image_order();
  IntVec row(n + 1);
  for (std::size_t i = 0; i < n; ++i) row[i] = Rat(q_[i] * D).get_num();
  row[n] = D;
  IntMat gens;
  for (auto v : integer_kernel({row}, n + 1)) {
    v.pop_back();
    gens.push_back(v);
  }
  return Lattice::generated_by(gens, n);
}

EigenvalueClass::EigenvalueClass(Rat b) : b_(std::move(b)) {
  b_.canonicalize();
  if (b_ <= 0 || b_ >= 1) throw ValidationError("eigenvalue class must lie in (0,1): " + to_string(b_));
}

EigenvalueClass EigenvalueClass::parse(const std::string& text) {
  static const std::regex re(R"(\s*(\d+)\s*/\s*(\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ValidationError("malformed eigenvalue '" + text + "', expected a/d");
  Int d(m[2].str());
  if (d == 0) throw ValidationError("zero denominator in eigenvalue '" + text + "'");
  return EigenvalueClass(make_rat(Int(m[1].str()), d));
}

void puiseux_add(PuiseuxPoly& acc, const PuiseuxPoly& p, const Int& scale) {
  for (const auto& [e, c] : p) {
    Int& slot = acc[e];
    slot += scale * c;
    if (slot == 0) acc.erase(e);
  }
}

PuiseuxPoly puiseux_mul_one_minus_t(const PuiseuxPoly& p, long power) {
  NJ_ASSERT(power >= 0, "negative power of (1-t)");
  PuiseuxPoly out;
  for (long i = 0; i <= power; ++i) {
    Int b = binomial(power, i);
    if (i % 2) b = -b;
    PuiseuxPoly shifted;
    for (const auto& [e, c] : p) shifted[e + i] = c;
    puiseux_add(out, shifted, b);
  }
  return out;
}

PuiseuxPoly puiseux_shift(const PuiseuxPoly& p, const Rat& by) {
  PuiseuxPoly out;
  for (const auto& [e, c] : p) out[e + by] = c;
  return out;
}

namespace {

template <class F>
void for_each_box_point(const std::vector<RatVec>& verts, F&& f) {
  std::size_t n = verts.at(0).size();
  IntVec lo(n), hi(n);
  for (std::size_t c = 0; c < n; ++c) {
    Rat mn = verts[0][c], mx = verts[0][c];
    for (const auto& v : verts) {
      mn = std::min(mn, v[c]);
      mx = std::max(mx, v[c]);
    }
    lo[c] = ceil_rat(mn);
    hi[c] = floor_rat(mx);
    if (lo[c] > hi[c]) return;
  }
  IntVec x = lo;
  while (true) {
    f(x);
    std::size_t c = 0;
    while (c < n) {
      if (x[c] < hi[c]) {
        ++x[c];
        break;
      }
      x[c] = lo[c];
      ++c;
    }
    if (c == n) return;
  }
}

void require_vertex_condition(const Polyhedron& delta, const TorsionCharacter& tau) {
  if (delta.dim() != static_cast<int>(delta.ambient_dim()))
    throw ValidationError("polytope must be full-dimensional");
  auto V = delta.lattice_vertices();
  for (const auto& v : V)
    if (tau(sub(v, V[0])) != 0) throw ValidationError("character is not constant on the vertices");
}

Polyhedron dilate_translate(const Polyhedron& P, long k, const RatVec& shift) {
  std::vector<RatVec> pts;
  for (const auto& v : P.vertices()) {
    RatVec w = v;
    for (std::size_t c = 0; c < w.size(); ++c) w[c] = w[c] * k - shift[c];
    pts.push_back(w);
  }
  return Polyhedron::from_points(pts);
}

}  // namespace

Int character_count(const Polyhedron& A, const TorsionCharacter& tau, const Rat& alpha,
                    Region region, const Lattice* L) {
  if (!A.bounded()) throw GeometryError("counting points of an unbounded region");
  Rat a = frac(alpha);
  Int count = 0;
  for_each_box_point(A.vertices(), [&](const IntVec& x) {
    RatVec xr = to_rat(x);
    bool in = region == Region::Closed ? A.contains(xr) : A.relint_contains(xr);
    if (!in || tau(x) != a) return;
    if (L && !L->contains(x)) return;
    ++count;
  });
  return count;
}

Int sharp_count(const Polyhedron& A, const Lattice& L) {
  return character_count(A, TorsionCharacter::trivial(A.ambient_dim()), 0, Region::Closed, &L);
}

Int natural_count(const Polyhedron& A, const Lattice& L) {
  Int c = character_count(A, TorsionCharacter::trivial(A.ambient_dim()), 0, Region::RelativeInterior, &L);
  return A.dim() % 2 ? Int(-c) : c;
}

Int interior_count(const Polyhedron& delta, const TorsionCharacter& tau, const Rat& alpha,
                   long k, std::size_t vertex) {
  require_vertex_condition(delta, tau);
  if (k == 0) return 0;
  const RatVec& w = delta.vertices().at(vertex);
  RatVec shift(w.size());
  for (std::size_t c = 0; c < w.size(); ++c) shift[c] = w[c] * k;
  return character_count(dilate_translate(delta, k, shift), tau, alpha, Region::RelativeInterior);
}

std::vector<Int> ehrhart_series_polynomial(const Polyhedron& delta, const TorsionCharacter& tau,
                                           const Rat& alpha, std::size_t vertex) {
  long n = static_cast<long>(delta.ambient_dim());
  std::vector<Int> l;
  for (long k = 0; k <= n + 3; ++k) l.push_back(interior_count(delta, tau, alpha, k, vertex));
  std::vector<Int> c(static_cast<std::size_t>(n + 4), 0);
  for (long j = 0; j <= n + 3; ++j)
    for (long i = 0; i <= std::min(j, n + 1); ++i) {
      Int b = binomial(n + 1, i) * l[static_cast<std::size_t>(j - i)];
      c[static_cast<std::size_t>(j)] += (i % 2) ? Int(-b) : b;
    }
  NJ_ASSERT(c[static_cast<std::size_t>(n + 2)] == 0 && c[static_cast<std::size_t>(n + 3)] == 0,
            "Ehrhart series numerator exceeds degree n+1");
  c.resize(static_cast<std::size_t>(n + 2));
  return c;
}

std::map<int, Int> hodge_column_sums(const Polyhedron& delta, const TorsionCharacter& tau,
                                     const Rat& alpha) {
  long n = static_cast<long>(delta.ambient_dim());
  auto phi = ehrhart_series_polynomial(delta, tau, alpha);
  bool trivial = frac(alpha) == 0;
  std::map<int, Int> out;
  for (long p = 0; p <= n; ++p) {
    Int v = phi[static_cast<std::size_t>(n - p)];
    if (n % 2 == 0) v = -v;
    if (trivial) {
      Int b = binomial(n, p + 1);
      v += ((p + n + 1) % 2) ? Int(-b) : b;
    }
    out[static_cast<int>(p)] = v;
  }
  return out;
}

Int chi_route(const Polyhedron& delta, const TorsionCharacter& tau, const Rat& alpha,
              ChiRoute route) {
  require_vertex_condition(delta, tau);
  long n = static_cast<long>(delta.ambient_dim());
  bool trivial = frac(alpha) == 0;
  Int chi = 0;
  if (route == ChiRoute::Ehrhart) {
    if (trivial) chi = (n - 1) % 2 ? -1 : 1;
    for (long k = 1; k <= n; ++k) {
      Int t = binomial(n, k) * interior_count(delta, tau, alpha, k);
      chi += (k + 1) % 2 ? Int(-t) : t;
    }
    return chi;
  }
  // Representative w(α) with τ(w) = α inside one period box.
  Int D = tau.image_order();
  std::optional<IntVec> w;
  std::vector<RatVec> box = {RatVec(static_cast<std::size_t>(n), 0),
                             RatVec(static_cast<std::size_t>(n), Rat(D - 1))};
  for_each_box_point(box, [&](const IntVec& x) {
    if (!w && tau(x) == frac(alpha)) w = x;
  });
  if (!w) return 0;
  Lattice L = tau.kernel();
  const RatVec& v0 = delta.vertices()[0];
  for (long k = 0; k <= n; ++k) {
    RatVec shift(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < shift.size(); ++c) shift[c] = v0[c] * k + Rat((*w)[c]);
    Int t = binomial(n, k) * natural_count(dilate_translate(delta, k, shift), L);
    chi += k % 2 ? Int(-t) : t;
  }
  return (n - 1) % 2 ? Int(-chi) : chi;
}

Int chi_via_ehrhart(const Polyhedron& delta, const TorsionCharacter& tau, const Rat& alpha) {
  Int a = chi_route(delta, tau, alpha, ChiRoute::Ehrhart);
  Int b = chi_route(delta, tau, alpha, ChiRoute::SublatticeCounts);
  NJ_ASSERT(a == b, "Euler characteristic routes disagree");
  return a;
}

Int chi_via_volume(const Polyhedron& delta, const TorsionCharacter& tau, const Rat& alpha) {
  require_vertex_condition(delta, tau);
  long n = static_cast<long>(delta.ambient_dim());
  Int D = tau.image_order();
  if (Rat(frac(alpha) * D).get_den() != 1) return 0;
  Int vol = normalized_volume(delta);
  if (vol % D != 0) throw GeometryError("volume is not divisible by the character image size");
  Int chi = vol / D;
  return (n - 1) % 2 ? Int(-chi) : chi;
}

AlternatingSums alternating_mixed_identity(const std::vector<RatVec>& delta0,
                                           const std::vector<std::vector<IntVec>>& deltas,
                                           const Lattice& L) {
  std::size_t n = deltas.size();
  if (L.rank() != n || L.ambient_dim() != n) throw ValidationError("lattice must have full rank n");
  for (const auto& d : deltas)
    for (const auto& v : d)
      if (!L.contains(v)) throw ValidationError("polytope vertex outside the lattice");
  AlternatingSums out{0, 0, 0, 0};
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<RatVec> with0 = delta0;
    std::vector<RatVec> without = {RatVec(n, 0)};
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      auto grow = [&](std::vector<RatVec>& acc) {
        std::vector<RatVec> next;
        for (const auto& a : acc)
          for (const auto& b : deltas[j]) next.push_back(add(a, to_rat(b)));
        acc = Polyhedron::from_points(next).vertices();
      };
      grow(with0);
      grow(without);
    }
    int size = std::popcount(mask);
    Polyhedron A = Polyhedron::from_points(with0), B = Polyhedron::from_points(without);
    Int nat = natural_count(A, L), sh = sharp_count(A, L), kh = natural_count(B, L);
    out.natural += size % 2 ? Int(-nat) : nat;
    out.sharp += (n - static_cast<std::size_t>(size)) % 2 ? Int(-sh) : sh;
    out.khovanskii += size % 2 ? Int(-kh) : kh;
  }
  out.mixed_volume = mixed_volume(deltas, L);
  return out;
}

std::vector<ConePiece> cone_pieces(const Polyhedron& theta, bool nonintegral_only) {
  if (!theta.bounded()) throw GeometryError("cone over an unbounded polyhedron");
  std::size_t N = theta.ambient_dim();
  auto V = theta.lattice_vertices();
  {
    std::vector<IntVec> dirs;
    for (std::size_t i = 1; i < V.size(); ++i) dirs.push_back(sub(V[i], V[0]));
    RatMat m;
    for (const auto& d : dirs) m.push_back(to_rat(d));
    m.push_back(to_rat(V[0]));
    if (rank(m) != static_cast<std::size_t>(theta.dim()) + 1)
      throw GeometryError("polytope affine hull passes through the origin");
  }
  std::set<std::vector<int>> simplices;
  for (const auto& s : pulling_triangulation(theta)) {
    unsigned k = static_cast<unsigned>(s.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> sub;
      for (unsigned i = 0; i < k; ++i)
        if (mask >> i & 1) sub.push_back(s[i]);
      simplices.insert(sub);
    }
  }
  std::vector<ConePiece> out;
  for (const auto& s : simplices) {
    std::vector<IntVec> g;
    for (int i : s) g.push_back(V[static_cast<std::size_t>(i)]);
    std::size_t m = g.size();
    Lattice Ls = Lattice::saturated(g, N);
    IntMat G;
    for (const auto& v : g) G.push_back(to_int(*Ls.coordinates(v)));
    IntMat H = hermite_normal_form(G);
    RatMat aug(m, RatVec(2 * m, 0));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) aug[r][c] = G[c][r];
      aug[r][m + r] = 1;
    }
    rref(aug);
    // Inverse of G^T, so that c = (G^T)^{-1} x solves c G = x.
    RatMat inv(m, RatVec(m));
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) inv[r][c] = aug[r][m + c];
    ConePiece piece{{}, static_cast<long>(m)};
    IntVec x(m, 0);
    while (true) {
      Rat h = 0;
      for (std::size_t r = 0; r < m; ++r) {
        Rat c = frac(dot(inv[r], to_rat(x)));
        if (c == 0) c = 1;
        h += c;
      }
      if (!nonintegral_only || h.get_den() != 1) piece.numerator[h] += 1;
      std::size_t c = 0;
      while (c < m) {
        if (x[c] + 1 < H[c][c]) {
          ++x[c];
          break;
        }
        x[c] = 0;
        ++c;
      }
      if (c == m) break;
    }
    if (!piece.numerator.empty()) out.push_back(std::move(piece));
  }
  return out;
}

PuiseuxSeries cone_slice_counts(const Polyhedron& theta, const Rat& bound) {
  if (bound <= 0) throw ValidationError("cone slice enumeration needs a positive bound");
  PuiseuxSeries s{{}, bound};
  for (const auto& piece : cone_pieces(theta, true)) {
    for (const auto& [h, c] : piece.numerator) {
      for (long j = 0; h + j <= bound; ++j)
        s.terms[h + j] += c * binomial(j + piece.power - 1, piece.power - 1);
    }
  }
  return s;
}

}  // namespace nj
