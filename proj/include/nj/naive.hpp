#pragma once

// Slow reference geometry used by the oracles. Nothing here calls into the
// polyhedron, lattice or volume code of the library; only exact arithmetic
// helpers are shared.

#include <optional>

#include "nj/arith.hpp"
#include "nj/laurent.hpp"

namespace nj::naive {

struct Hull {
  std::size_t ambient = 0;
  int dim = -1;
  std::vector<RatVec> points;
  std::vector<IntVec> rays;
  std::vector<RatVec> eq_normal;  // affine hull: eq_normal[i] . x = eq_value[i]
  std::vector<Rat> eq_value;
  std::vector<RatVec> normal;  // facets: normal[i] . x >= offset[i]
  std::vector<Rat> offset;
  std::vector<RatVec> vertices;
};

struct NaiveFace {
  std::vector<std::size_t> vertices;  // indices into Hull::vertices
  std::vector<std::size_t> rays;      // indices into Hull::rays
  std::vector<std::size_t> facets;    // facets containing the face
  int dim = 0;
};

// Facets from every hyperplane spanned by generators.
Hull hull(const std::vector<RatVec>& points, const std::vector<IntVec>& rays = {});
Hull hull(const std::vector<IntVec>& points, const std::vector<IntVec>& rays = {});

bool contains(const Hull& h, const RatVec& x);
bool relint_contains(const Hull& h, const RatVec& x);

// Nonempty faces, the whole hull last.
std::vector<NaiveFace> faces(const Hull& h);
bool is_simple(const Hull& h, const std::vector<NaiveFace>& fs);

// gcd of all r x r minors of the rows (r = rank); 1 for the empty matrix.
Int determinantal_divisor(const std::vector<IntVec>& rows);

// Lattice distance of aff(points) from 0, as a quotient of determinantal divisors.
Int lattice_distance(const std::vector<IntVec>& points);

// Normalized volume in Z^N ∩ (direction space), via the barycentric subdivision.
Int lattice_volume(const std::vector<IntVec>& points);

// Normalized volume with respect to a full-rank lattice with the given basis rows
// (polytope must be full-dimensional; 0 otherwise).
Rat volume_in(const std::vector<RatVec>& points, const std::vector<IntVec>& basis);
Rat mixed_volume_in(const std::vector<std::vector<IntVec>>& polys, const std::vector<IntVec>& basis);

bool in_lattice(const IntVec& x, const std::vector<IntVec>& basis);  // full-rank basis rows

std::vector<RatVec> minkowski_points(const std::vector<std::vector<RatVec>>& parts);

}  // namespace nj::naive
