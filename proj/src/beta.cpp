#include "nj/beta.hpp"

#include <algorithm>

namespace nj {

namespace {

bool divides(const Int& order, const Int& d) { return d % order == 0; }

}  // namespace

BasedPolytope BasedPolytope::make(std::vector<IntVec> points) {
  if (points.empty()) throw ValidationError("empty polytope");
  BasedPolytope bp;
  bp.poly = Polyhedron::from_points(points);
  bp.vertices = bp.poly.lattice_vertices();
  std::size_t n = bp.vertices[0].size();
  bp.lattice = Lattice::saturated(bp.vertices, n);
  if (static_cast<int>(bp.lattice.rank()) != bp.poly.dim() + 1)
    throw GeometryError("affine hull of the polytope passes through 0");
  bp.distance = lattice_distance(IntVec(n, 0), bp.vertices);
  for (const auto& v : bp.vertices) bp.key.push_back(to_int(*bp.lattice.coordinates(v)));
  std::sort(bp.key.begin(), bp.key.end());
  return bp;
}

LaurentPoly beta_point(const IntVec& p, const Int& order) {
  if (is_zero(p)) throw ValidationError("beta of the origin");
  return divides(order, content(p)) ? LaurentPoly(1) : LaurentPoly();
}

LaurentPoly beta_padded(const LaurentPoly& beta, int dim, int m) {
  if (m < dim) throw ValidationError("padding below the polytope dimension");
  return LaurentPoly::t2_minus_one(m - dim) * beta;
}

LaurentPoly BetaEngine::beta(const std::vector<IntVec>& vertices, const Int& order) {
  return beta(BasedPolytope::make(vertices), order);
}

LaurentPoly BetaEngine::beta(const BasedPolytope& bp, const Int& order) {
  if (bp.dim() == 0) return beta_point(bp.vertices[0], order);
  return eval(*node(bp), order);
}

std::size_t BetaEngine::memo_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::size_t total = 0;
  for (const auto& [key, nd] : nodes_) {
    std::lock_guard<std::mutex> inner(nd->mu);
    total += nd->memo.size();
  }
  return total;
}

std::shared_ptr<BetaEngine::Node> BetaEngine::node(const BasedPolytope& bp) {
  if (opts_.memoize) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = nodes_.find(bp.canonical_key());
    if (it != nodes_.end()) return it->second;
  }
  auto nd = std::make_shared<Node>();
  const Polyhedron& P = bp.poly;
  nd->dim = P.dim();
  nd->distance = bp.distance;
  if (nd->dim > 0) {
    nd->volume = normalized_volume(P);
    Majorizer M = prime_majorizer(P, opts_.majorizer_seed);
    const auto& F = M.prime.faces();
    std::map<std::size_t, LaurentPoly> factor;
    for (std::size_t f = 0; f < F.size(); ++f) {
      if (f == M.prime.whole()) continue;
      std::size_t g = M.psi[f];
      NJ_ASSERT(g != P.whole(), "proper face mapped onto the whole polytope");
      factor[g] += LaurentPoly::t2_minus_one(F[f].dim - P.faces()[g].dim);
    }
    for (auto& [g, mult] : factor)
      nd->faces.emplace_back(node(BasedPolytope::make(P.face_lattice_vertices(g))), std::move(mult));
  }
  if (!opts_.memoize) return nd;
  std::lock_guard<std::mutex> lock(mu_);
  return nodes_.emplace(bp.canonical_key(), std::move(nd)).first->second;
}

LaurentPoly BetaEngine::eval(Node& nd, const Int& order) {
  if (nd.dim == 0) return divides(order, nd.distance) ? LaurentPoly(1) : LaurentPoly();
  if (opts_.memoize) {
    std::lock_guard<std::mutex> lock(nd.mu);
    auto it = nd.memo.find(order);
    if (it != nd.memo.end()) return it->second;
  }
  const long d = nd.dim;
  // Known part of the symmetric polynomial Σ_{Γ'} (t^2-1)^{dim Γ' - dim Γ} β(Γ).
  LaurentPoly known;
  for (const auto& [face, mult] : nd.faces) known += mult * eval(*face, order);
  Int vol = divides(order, nd.distance) ? nd.volume : Int(0);
  Int target = d % 2 ? Int(-vol) : vol;

  // Unknowns β_0..β_d. Symmetry c_{d+k} = c_{d-k} for k = 1..d, where
  // c = known + β, and β(1) = target.
  std::size_t m = static_cast<std::size_t>(d) + 1;
  RatMat sys(m, RatVec(m + 1, 0));
  for (long k = 1; k <= d; ++k) {
    auto& row = sys[static_cast<std::size_t>(k - 1)];
    row[static_cast<std::size_t>(d - k)] = -1;
    row[m] = Rat(known.coeff(d - k) - known.coeff(d + k));
  }
  for (std::size_t i = 0; i < m; ++i) sys[m - 1][i] = 1;
  sys[m - 1][m] = Rat(target);
  auto piv = rref(sys);
  if (piv.size() != m || piv.back() >= m) throw GeometryError("beta recursion system is singular or inconsistent");
  for (long k = d + 1; k <= 2 * d + 2; ++k)
    if (known.coeff(d + k) != 0)
      throw GeometryError("beta recursion: symmetry cannot hold beyond degree 2d");
  LaurentPoly beta;
  for (std::size_t i = 0; i < m; ++i) {
    NJ_ASSERT(sys[i][m].get_den() == 1, "beta coefficient is not an integer");
    beta += LaurentPoly::monomial(sys[i][m].get_num(), static_cast<long>(i));
  }
  NJ_ASSERT(beta.at_one() == target, "beta(1) does not match the volume condition");
  if (opts_.memoize) {
    std::lock_guard<std::mutex> lock(nd.mu);
    nd.memo.emplace(order, beta);
  }
  return beta;
}

LaurentPoly beta_recursive(const BasedPolytope& bp, const Int& order, std::uint64_t majorizer_seed) {
  BetaEngine engine(BetaOptions{majorizer_seed, true});
  return engine.beta(bp, order);
}

std::optional<ClosedFormTable> closed_form_table(const BasedPolytope& bp) {
  std::size_t N = bp.vertices[0].size();
  std::vector<IntVec> pts = bp.vertices;
  pts.push_back(IntVec(N, 0));
  Polyhedron D = Polyhedron::from_points(pts);
  if (!is_pseudo_prime(D)) return std::nullopt;
  std::vector<IntVec> dirs;
  for (std::size_t i = 1; i < bp.vertices.size(); ++i) dirs.push_back(sub(bp.vertices[i], bp.vertices[0]));
  HeightFunctional h = height_functional(IntVec(N, 0), bp.vertices[0], dirs);
  auto tau = [&](const IntVec& v) { return frac(h.evaluate(to_rat(v)) / Rat(h.value)); };

  ClosedFormTable t;
  t.dim = D.dim();
  const auto& F = D.faces();
  for (std::size_t g = 0; g < F.size(); ++g) {
    auto V = D.face_lattice_vertices(g);
    Lattice M = direction_lattice(V);
    Int image = 1;
    for (const auto& b : M.basis()) image = lcm(image, tau(b).get_den());
    NJ_ASSERT(tau(V[0]) == 0, "vertex of the pyramid with nontrivial character");
    t.face_dim.push_back(F[g].dim);
    t.volume.push_back(F[g].dim == 0 ? Int(1) : normalized_volume(D.face_polyhedron(g)));
    t.image.push_back(image);
    std::vector<std::size_t> below;
    for (std::size_t s = 0; s < F.size(); ++s)
      if (D.face_contains(g, s)) below.push_back(s);
    t.below.push_back(std::move(below));
  }
  return t;
}

LaurentPoly beta_closed(const ClosedFormTable& t, const Int& order) {
  std::vector<Rat> weight(t.face_dim.size());
  for (std::size_t g = 0; g < weight.size(); ++g) {
    Rat w = divides(order, t.image[g]) ? Rat(t.volume[g]) / Rat(t.image[g]) : Rat(0);
    weight[g] = t.face_dim[g] % 2 ? Rat(-w) : w;
  }
  LaurentPoly beta;
  for (long r = 0; r < t.dim; ++r) {
    Rat sum = 0;
    for (std::size_t G = 0; G < weight.size(); ++G) {
      if (t.face_dim[G] != r + 1) continue;
      for (std::size_t g : t.below[G]) sum += weight[g];
    }
    if ((t.dim + r) % 2) sum = -sum;
    NJ_ASSERT(sum.get_den() == 1, "closed-form beta coefficient is not an integer");
    beta += LaurentPoly::monomial(sum.get_num(), r);
  }
  return beta;
}

LaurentPoly beta_pseudoprime_closed(const BasedPolytope& bp, const Int& order) {
  auto t = closed_form_table(bp);
  if (!t) throw GeometryError("pyramid is not pseudo-prime");
  return beta_closed(*t, order);
}

}  // namespace nj
