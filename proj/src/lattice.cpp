#include "nj/lattice.hpp"

#include <algorithm>

namespace nj {

namespace {

// rows[i] <- s*rows[i] + t*rows[j], rows[j] <- u*rows[i] + v*rows[j]
void combine(IntMat& rows, std::size_t i, std::size_t j, const Int& s,
             const Int& t, const Int& u, const Int& v) {
  for (std::size_t c = 0; c < rows[i].size(); ++c) {
    Int a = rows[i][c], b = rows[j][c];
    rows[i][c] = s * a + t * b;
    rows[j][c] = u * a + v * b;
  }
}

// Reduce the first `cols` columns of `rows` to echelon form with unimodular
// row operations. Returns the number of pivot rows.
std::size_t echelon(IntMat& rows, std::size_t cols, bool reduce_above) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Int a = rows[r][c], b = rows[i][c], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      Int u = -b / g, v = a / g;
      combine(rows, r, i, s, t, u, v);
    }
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    if (reduce_above) {
      for (std::size_t i = 0; i < r; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        if (q == 0) continue;
        for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] -= q * rows[r][k];
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

IntMat hermite_normal_form(IntMat rows) {
  if (rows.empty()) return rows;
  std::size_t r = echelon(rows, rows[0].size(), true);
  rows.resize(r);
  return rows;
}

IntMat integer_kernel(const IntMat& rows, std::size_t ambient) {
  if (rows.empty()) {
    IntMat id(ambient, IntVec(ambient, 0));
    for (std::size_t i = 0; i < ambient; ++i) id[i][i] = 1;
    return id;
  }
  std::size_t p = rows.size();
  IntMat aug(ambient, IntVec(p + ambient, 0));
  for (std::size_t i = 0; i < ambient; ++i) {
    for (std::size_t j = 0; j < p; ++j) aug[i][j] = rows[j][i];
    aug[i][p + i] = 1;
  }
  std::size_t r = echelon(aug, p, false);
  IntMat ker;
  for (std::size_t i = r; i < ambient; ++i)
    ker.emplace_back(aug[i].begin() + static_cast<long>(p), aug[i].end());
  return hermite_normal_form(ker);
}

Lattice Lattice::standard(std::size_t n) {
  IntMat id(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  Lattice l;
  l.ambient_ = n;
  l.set_basis(id);
  return l;
}

Lattice Lattice::generated_by(const IntMat& gens, std::size_t ambient) {
  Lattice l;
  l.ambient_ = ambient;
  l.set_basis(hermite_normal_form(gens));
  return l;
}

Lattice Lattice::saturated(const std::vector<RatVec>& span, std::size_t ambient) {
  Lattice l;
  l.ambient_ = ambient;
  RatMat m(span.begin(), span.end());
  if (m.empty() || nj::rank(m) == 0) return l;
  RatMat perp = nullspace(m, ambient);
  IntMat a;
  for (const auto& v : perp) a.push_back(primitive(v));
  l.set_basis(integer_kernel(a, ambient));
  return l;
}

Lattice Lattice::saturated(const std::vector<IntVec>& span, std::size_t ambient) {
  std::vector<RatVec> r;
  for (const auto& v : span) r.push_back(to_rat(v));
  return saturated(r, ambient);
}

void Lattice::set_basis(IntMat b) {
  basis_ = std::move(b);
  pivots_.clear();
  for (const auto& row : basis_) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    pivots_.push_back(c);
  }
}

std::optional<RatVec> Lattice::coordinates(const RatVec& x) const {
  RatVec rest = x;
  RatVec c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    c[i] = rest[pivots_[i]] / Rat(basis_[i][pivots_[i]]);
    if (c[i] == 0) continue;
    for (std::size_t k = 0; k < ambient_; ++k) rest[k] -= c[i] * basis_[i][k];
  }
  if (!is_zero(rest)) return std::nullopt;
  return c;
}

std::optional<RatVec> Lattice::coordinates(const IntVec& x) const {
  return coordinates(to_rat(x));
}

bool Lattice::contains(const IntVec& x) const {
  auto c = coordinates(x);
  return c && is_integral(*c);
}

IntVec Lattice::point(const IntVec& coords) const {
  IntVec p(ambient_, 0);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t k = 0; k < ambient_; ++k) p[k] += coords[i] * basis_[i][k];
  return p;
}

Rat HeightFunctional::evaluate(const RatVec& v) const {
  auto c = lattice.coordinates(v);
  if (!c) throw GeometryError("vector outside the height functional's span");
  return dot(functional, *c);
}

HeightFunctional height_functional(const IntVec& base, const IntVec& anchor,
                                   const std::vector<IntVec>& directions) {
  std::size_t n = base.size();
  IntVec a = sub(anchor, base);
  std::vector<IntVec> span = directions;
  span.push_back(a);
  HeightFunctional h;
  h.lattice = Lattice::saturated(span, n);
  RatMat dirs;
  for (const auto& d : directions) dirs.push_back(*h.lattice.coordinates(d));
  RatMat ker = nullspace(dirs, h.lattice.rank());
  if (ker.size() != 1) throw GeometryError("base point lies on the flat");
  h.functional = primitive(ker[0]);
  Rat val = dot(h.functional, *h.lattice.coordinates(a));
  if (val < 0) {
    for (auto& x : h.functional) x = -x;
    val = -val;
  }
  NJ_ASSERT(val.get_den() == 1 && val > 0, "lattice distance must be a positive integer");
  h.value = val.get_num();
  return h;
}

Int lattice_distance(const IntVec& base, const IntVec& anchor,
                     const std::vector<IntVec>& directions) {
  return height_functional(base, anchor, directions).value;
}

Int lattice_distance(const IntVec& base, const std::vector<IntVec>& flat_points) {
  if (flat_points.empty()) throw ValidationError("empty flat");
  std::vector<IntVec> dirs;
  for (std::size_t i = 1; i < flat_points.size(); ++i)
    dirs.push_back(sub(flat_points[i], flat_points[0]));
  return lattice_distance(base, flat_points[0], dirs);
}

}  // namespace nj
