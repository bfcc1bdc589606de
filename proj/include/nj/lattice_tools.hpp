#pragma once

#include <map>

#include "nj/geometry.hpp"

namespace nj {

// Character v -> sum q_i v_i of Z^n into Q/Z. Values are kept in [0,1).
class TorsionCharacter {
 public:
  TorsionCharacter() = default;
  explicit TorsionCharacter(RatVec q);
  static TorsionCharacter trivial(std::size_t n) { return TorsionCharacter(RatVec(n, 0)); }

  std::size_t dim() const { return q_.size(); }
  const RatVec& weights() const { return q_; }
  Rat operator()(const IntVec& v) const;
  // Size of the image of Z^n, and of the image of a sublattice.
  Int image_order() const;
  Int image_order(const Lattice& M) const;
  // Kernel lattice L_tau.
  Lattice kernel() const;

 private:
  RatVec q_;
};

// A nontrivial root of unity exp(2 pi i b), b in (0,1).
class EigenvalueClass {
 public:
  EigenvalueClass() = default;
  explicit EigenvalueClass(Rat b);
  static EigenvalueClass parse(const std::string& text);  // "a/d"

  const Rat& value() const { return b_; }
  Int order() const { return b_.get_den(); }
  std::string str() const { return to_string(b_); }
  bool operator<(const EigenvalueClass& o) const { return b_ < o.b_; }
  bool operator==(const EigenvalueClass& o) const { return b_ == o.b_; }

 private:
  Rat b_{1, 2};
};

// Finite Puiseux polynomial in t with rational exponents.
using PuiseuxPoly = std::map<Rat, Int>;

void puiseux_add(PuiseuxPoly& acc, const PuiseuxPoly& p, const Int& scale = 1);
PuiseuxPoly puiseux_mul_one_minus_t(const PuiseuxPoly& p, long power);
PuiseuxPoly puiseux_shift(const PuiseuxPoly& p, const Rat& by);

// Truncated series: coefficients are exact for every exponent <= bound.
struct PuiseuxSeries {
  PuiseuxPoly terms;
  Rat bound;
};

enum class Region { Closed, RelativeInterior };

// Number of v in the region (and in L when given) with tau(v) = alpha mod 1.
Int character_count(const Polyhedron& A, const TorsionCharacter& tau, const Rat& alpha,
                    Region region, const Lattice* L = nullptr);
// Counts over a sublattice: ♯A = #(A ∩ L) and ♮(A) = (-1)^dim #(relint A ∩ L).
Int sharp_count(const Polyhedron& A, const Lattice& L);
Int natural_count(const Polyhedron& A, const Lattice& L);

// l*(kΔ)_α for the polytope translated by its vertex number `vertex`.
Int interior_count(const Polyhedron& delta, const TorsionCharacter& tau, const Rat& alpha,
                   long k, std::size_t vertex = 0);

// (1-t)^{n+1} Σ_k l*(kΔ)_α t^k as coefficients of t^0..t^{n+1}.
std::vector<Int> ehrhart_series_polynomial(const Polyhedron& delta, const TorsionCharacter& tau,
                                           const Rat& alpha, std::size_t vertex = 0);

std::map<int, Int> hodge_column_sums(const Polyhedron& delta, const TorsionCharacter& tau,
                                     const Rat& alpha);

// Ehrhart: alternating binomial sum of l*(kΔ)_α. SublatticeCounts: the same
// sum rewritten with ♮ over L_tau and a representative w(α).
enum class ChiRoute { Ehrhart, SublatticeCounts };
Int chi_route(const Polyhedron& delta, const TorsionCharacter& tau, const Rat& alpha,
              ChiRoute route);
// Both routes, asserted equal.
Int chi_via_ehrhart(const Polyhedron& delta, const TorsionCharacter& tau, const Rat& alpha);
Int chi_via_volume(const Polyhedron& delta, const TorsionCharacter& tau, const Rat& alpha);

struct AlternatingSums {
  Int natural;     // Σ_J (-1)^{|J|} ♮(Δ_0 + Δ_J)
  Int sharp;       // Σ_J (-1)^{n-|J|} ♯(Δ_0 + Δ_J)
  Int khovanskii;  // Σ_J (-1)^{|J|} ♮(Δ_J), Δ_∅ = {0}
  Rat mixed_volume;
};

AlternatingSums alternating_mixed_identity(const std::vector<RatVec>& delta0,
                                           const std::vector<std::vector<IntVec>>& deltas,
                                           const Lattice& L);

// Lattice points of relint Cone(σ) for every simplex σ of a triangulation of
// theta, as numerator / (1-t)^power with exponents measured by the height
// that is 1 on theta. Only non-integral exponents are kept when asked.
struct ConePiece {
  PuiseuxPoly numerator;
  long power;
};
std::vector<ConePiece> cone_pieces(const Polyhedron& theta, bool nonintegral_only);

PuiseuxSeries cone_slice_counts(const Polyhedron& theta, const Rat& bound);

}  // namespace nj
