#pragma once

#include <cstdint>

#include "nj/lattice.hpp"
#include "nj/polyhedron.hpp"

namespace nj {

enum class Mode { Local, Infinity };

using Support = std::vector<IntVec>;

// Nonnegative, nonzero exponent vectors of a common length n.
void validate_support(const Support& s, std::size_t n);
bool is_convenient(const Support& s, std::size_t n);

// Local mode: conv(S) + R_{>=0}^n. Infinity mode: conv({0} ∪ S).
Polyhedron newton_polyhedron(const Support& s, std::size_t n, Mode mode);

struct MinkowskiSum {
  Polyhedron sum;
  std::vector<Polyhedron> parts;
  // Faces F_i of the parts with F = F_1 + ... + F_k.
  std::vector<std::size_t> summand_faces(std::size_t face) const;
};

MinkowskiSum minkowski_sum(std::vector<Polyhedron> parts);
// Vertices (and rays) of the sum of point sets, without the face bookkeeping.
Polyhedron minkowski_hull(const std::vector<std::vector<IntVec>>& parts);

// Pulling triangulation of a bounded polyhedron, pulling vertices in index
// order. Each simplex lists dim+1 vertex indices.
std::vector<std::vector<int>> pulling_triangulation(const Polyhedron& P);

// Normalized volume (dim! times Euclidean volume) with respect to the lattice
// L. The polytope direction space must lie in span(L) and dim P must equal
// rank L; otherwise the volume is 0 when dim P < rank L.
Rat normalized_volume(const Polyhedron& P, const Lattice& L);
// Volume in the lattice Z^N ∩ (direction space of P).
Int normalized_volume(const Polyhedron& P);
Lattice direction_lattice(const std::vector<IntVec>& points);
Lattice direction_lattice(const Polyhedron& P);

// Normalized mixed volume with MV(Q,...,Q) = Vol_L(Q). Needs rank L == Q.size().
Rat mixed_volume(const std::vector<std::vector<RatVec>>& polys, const Lattice& L);
Rat mixed_volume(const std::vector<std::vector<IntVec>>& polys, const Lattice& L);

bool is_prime(const Polyhedron& P);
bool is_pseudo_prime(const Polyhedron& P);

struct Majorizer {
  Polyhedron prime;  // lives in the chart coordinates of the input when not identity
  bool identity = true;
  std::vector<std::size_t> psi;  // face of prime -> face of the input
};

// A prime polytope majorizing P, with the face map Ψ. `order_seed` selects the
// pulling order of the facets (0 keeps the facet order).
Majorizer prime_majorizer(const Polyhedron& P, std::uint64_t order_seed = 0);

}  // namespace nj
