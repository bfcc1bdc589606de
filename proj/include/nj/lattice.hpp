#pragma once

#include <optional>

#include "nj/arith.hpp"

namespace nj {

// Row-style Hermite normal form of the lattice spanned by the rows. Zero rows
// are dropped, pivots are positive and entries above a pivot are reduced into
// [0, pivot).
IntMat hermite_normal_form(IntMat rows);

// Basis (HNF) of {x in Z^N : a . x = 0 for all rows a}.
IntMat integer_kernel(const IntMat& rows, std::size_t ambient);

// A sublattice of Z^N stored through its canonical HNF basis.
class Lattice {
 public:
  Lattice() = default;
  static Lattice standard(std::size_t n);
  static Lattice generated_by(const IntMat& gens, std::size_t ambient);
  // Z^N intersected with the linear span of the given vectors.
  static Lattice saturated(const std::vector<RatVec>& span, std::size_t ambient);
  static Lattice saturated(const std::vector<IntVec>& span, std::size_t ambient);

  std::size_t rank() const { return basis_.size(); }
  std::size_t ambient_dim() const { return ambient_; }
  const IntMat& basis() const { return basis_; }

  // Coefficients of x in the basis, or nullopt when x is outside the span.
  std::optional<RatVec> coordinates(const RatVec& x) const;
  std::optional<RatVec> coordinates(const IntVec& x) const;
  bool in_span(const RatVec& x) const { return coordinates(x).has_value(); }
  bool contains(const IntVec& x) const;
  // Image of lattice coordinates back in Z^N.
  IntVec point(const IntVec& coords) const;

  bool operator==(const Lattice& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

 private:
  IntMat basis_;
  std::vector<std::size_t> pivots_;
  std::size_t ambient_ = 0;
  void set_basis(IntMat b);
};

// Primitive functional on the lattice coordinates of Z^N ∩ span(anchor - base,
// directions) that vanishes on the directions, normalized to be positive on
// anchor - base. Returns the functional in coordinates together with the
// lattice it lives on.
struct HeightFunctional {
  Lattice lattice;
  IntVec functional;  // in lattice coordinates
  Int value;          // value on anchor - base, the lattice distance

  // Value of the functional on a vector of the lattice span.
  Rat evaluate(const RatVec& v) const;
};

HeightFunctional height_functional(const IntVec& base, const IntVec& anchor,
                                   const std::vector<IntVec>& directions);

// Lattice distance from `base` to the affine flat through `anchor` spanned by
// `directions`, measured in Z^N ∩ span(flat - base). Throws GeometryError when
// base lies on the flat.
Int lattice_distance(const IntVec& base, const IntVec& anchor,
                     const std::vector<IntVec>& directions);
// Same with the flat given by points on it.
Int lattice_distance(const IntVec& base, const std::vector<IntVec>& flat_points);

}  // namespace nj
