#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "nj/geometry.hpp"
#include "nj/laurent.hpp"

namespace nj {

// A lattice polytope □ with 0 ∉ aff □, seen inside the saturated lattice of
// span({0} ∪ □). β(□)_α depends on α only through its order.
struct BasedPolytope {
  std::vector<IntVec> vertices;
  Polyhedron poly;
  Lattice lattice;
  Int distance;  // lattice distance of aff □ from 0
  static BasedPolytope make(std::vector<IntVec> points);
  int dim() const { return poly.dim(); }
  // Vertex coordinates in the lattice basis, sorted. Equal keys mean the two
  // polytopes are identified by a lattice isomorphism.
  const std::vector<IntVec>& canonical_key() const { return key; }
  std::vector<IntVec> key;
};

LaurentPoly beta_point(const IntVec& p, const Int& order);
LaurentPoly beta_padded(const LaurentPoly& beta, int dim, int m);

struct BetaOptions {
  std::uint64_t majorizer_seed = 0;
  bool memoize = true;
};

// Recursive evaluation through prime majorizers with a thread-safe memo.
class BetaEngine {
 public:
  explicit BetaEngine(BetaOptions opts = {}) : opts_(opts) {}
  BetaEngine(const BetaEngine&) = delete;
  BetaEngine& operator=(const BetaEngine&) = delete;

  LaurentPoly beta(const std::vector<IntVec>& vertices, const Int& order);
  LaurentPoly beta(const BasedPolytope& bp, const Int& order);
  std::size_t memo_size() const;

 private:
  // One lattice-isomorphism class of based polytopes. The order-independent
  // part of the recursion (faces met by proper faces of the majorizer, with
  // their summed padding factors) is built once; β is memoized per order.
  struct Node {
    long dim = 0;
    Int volume;
    Int distance;
    std::vector<std::pair<std::shared_ptr<Node>, LaurentPoly>> faces;
    std::mutex mu;
    std::map<Int, LaurentPoly> memo;
  };
  BetaOptions opts_;
  mutable std::mutex mu_;
  std::map<std::vector<IntVec>, std::shared_ptr<Node>> nodes_;

  std::shared_ptr<Node> node(const BasedPolytope& bp);
  LaurentPoly eval(Node& nd, const Int& order);
};

LaurentPoly beta_recursive(const BasedPolytope& bp, const Int& order, std::uint64_t majorizer_seed = 0);
// Closed form over the face lattice of the pyramid conv({0} ∪ □). Throws
// GeometryError when the pyramid is not pseudo-prime.
LaurentPoly beta_pseudoprime_closed(const BasedPolytope& bp, const Int& order);

// The same closed form split into its order-independent face table.
struct ClosedFormTable {
  long dim = 0;  // of the pyramid
  std::vector<int> face_dim;
  std::vector<Int> volume;
  std::vector<Int> image;  // order of the character on the face directions
  std::vector<std::vector<std::size_t>> below;  // faces contained in each face
};
std::optional<ClosedFormTable> closed_form_table(const BasedPolytope& bp);
LaurentPoly beta_closed(const ClosedFormTable& table, const Int& order);

}  // namespace nj
