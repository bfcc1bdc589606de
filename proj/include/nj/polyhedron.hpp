#pragma once

#include <boost/dynamic_bitset.hpp>
#include <map>
#include <string>

#include "nj/arith.hpp"

namespace nj {

// Extreme rays (primitive, integral) of the pointed cone {x : a . x >= 0 for
// every row a}. Throws GeometryError if the cone has a lineality space.
IntMat extreme_rays(const IntMat& constraints, std::size_t dim);

struct Facet {
  RatVec normal;  // supported on the coordinate chart of the polyhedron
  Rat offset;     // normal . x >= offset on the polyhedron
};

struct Face {
  std::vector<int> vertices;
  std::vector<int> rays;
  std::vector<int> facets;  // facets containing the face
  int dim = 0;
  bool bounded() const { return rays.empty(); }
};

// A pointed polyhedron conv(points) + cone(rays), stored with both
// representations and its complete face lattice.
class Polyhedron {
 public:
  Polyhedron() = default;
  static Polyhedron from_points(const std::vector<RatVec>& points,
                                const std::vector<IntVec>& rays = {});
  static Polyhedron from_points(const std::vector<IntVec>& points,
                                const std::vector<IntVec>& rays = {});

  std::size_t ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  bool bounded() const { return rays_.empty(); }

  const std::vector<RatVec>& vertices() const { return vertices_; }
  std::vector<IntVec> lattice_vertices() const;  // throws if not integral
  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<Facet>& facets() const { return facets_; }
  // Affine hull as equations e . x = c.
  const std::vector<std::pair<IntVec, Rat>>& equations() const { return equations_; }
  // Coordinates on which the affine hull projects isomorphically.
  const std::vector<std::size_t>& chart() const { return chart_; }
  RatVec to_chart(const RatVec& x) const;

  // Faces sorted by dimension; the polyhedron itself is last.
  const std::vector<Face>& faces() const { return faces_; }
  std::size_t whole() const { return faces_.size() - 1; }
  // Faces of dimension dim-1 contained in face f.
  const std::vector<std::size_t>& facets_of(std::size_t f) const { return children_[f]; }
  bool face_contains(std::size_t big, std::size_t small) const;

  std::vector<RatVec> face_vertices(std::size_t f) const;
  std::vector<IntVec> face_lattice_vertices(std::size_t f) const;
  Polyhedron face_polyhedron(std::size_t f) const;

  // Face minimizing u. Throws GeometryError if u is unbounded below.
  std::size_t supporting_face(const RatVec& u) const;
  // A functional whose minimizing face is exactly f (sum of tight facet normals).
  RatVec relint_normal(std::size_t f) const;

  bool contains(const RatVec& x) const;
  bool relint_contains(const RatVec& x) const;
  bool is_simple() const;  // every vertex lies on exactly dim facets

  std::string debug_json() const;

 private:
  std::size_t ambient_ = 0;
  int dim_ = -1;
  std::vector<RatVec> vertices_;
  std::vector<IntVec> rays_;
  std::vector<Facet> facets_;
  std::vector<std::pair<IntVec, Rat>> equations_;
  std::vector<std::size_t> chart_;
  std::vector<Face> faces_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<boost::dynamic_bitset<>> face_sets_;
  std::map<boost::dynamic_bitset<>, std::size_t> face_index_;

  void build_faces(const std::vector<boost::dynamic_bitset<>>& incidence);
  int affine_rank(const boost::dynamic_bitset<>& elems) const;
};

// Vertices of the bounded polyhedron {x in R^d : a_i . x >= b_i}.
std::vector<RatVec> vertices_from_inequalities(const RatMat& a, const RatVec& b);

}  // namespace nj
