#pragma once

// Exact lattice polytopes: hulls, strict faces, face-accessibility of
// G-graphs, and representative directions for the common refinement of
// normal fans and hyperplane arrangements.

#include <cstddef>
#include <vector>

#include "metab/ggraph.hpp"
#include "metab/laurent.hpp"

namespace metab {

using RationalVector = std::vector<Rational>;

struct FaceDescriptor {
  Direction direction;                // the face is the argmax of direction . x
  std::vector<Exponent> vertices;     // extreme points in the face
  std::vector<Exponent> points;       // all input points on the face
};

class LatticePolytope {
 public:
  struct Facet {
    RationalVector normal;  // ambient; normal . x <= offset on the polytope
    Rational offset;
    std::vector<std::size_t> points;  // indices into points()
  };
  struct Equation {
    RationalVector normal;  // normal . x = value on the affine hull
    Rational value;
  };

  /// Exact convex hull; throws on empty input.
  static LatticePolytope hull(const std::vector<Exponent>& points);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dimension() const { return dim_; }
  /// Distinct input points, sorted.
  const std::vector<Exponent>& points() const { return points_; }
  /// Extreme points, sorted.
  const std::vector<Exponent>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Equation>& equations() const { return equations_; }

  /// x in N * P, tested with the facet inequalities and hull equations.
  bool contains_scaled(const RationalVector& x, const Rational& scale = 1) const;
  bool contains(const Exponent& x) const;

  /// max over the polytope of v . x
  Rational support(const RationalVector& v) const;
  /// Input points attaining the support value.
  std::vector<Exponent> argmax_points(const RationalVector& v) const;

 private:
  std::size_t n_ = 0, dim_ = 0;
  std::vector<Exponent> points_, vertices_;
  std::vector<Facet> facets_;
  std::vector<Equation> equations_;
};

LatticePolytope convex_hull(const std::vector<Exponent>& points);

/// Every face other than the empty set and the polytope itself.
std::vector<FaceDescriptor> strict_faces(const LatticePolytope& p);

struct FaceAccessReport {
  bool accessible = true;
  std::vector<FaceDescriptor> inaccessible;
};

/// Every strict face of conv(V(g)) has an edge leaving it.
FaceAccessReport is_face_accessible(const GGraph& g);

struct FanCell {
  Direction representative;
  /// For each input polytope, the points of the face selected by the cell.
  std::vector<std::vector<Exponent>> selected;
  /// For each hyperplane normal a: sign of a . v (-1, 0 or 1).
  std::vector<int> signs;
};

/// Representatives meeting the relative interior of every cell of the common
/// refinement of the normal fans and the hyperplanes a^perp, covering all
/// nonzero directions.
std::vector<FanCell> refined_fan(const std::vector<LatticePolytope>& polytopes,
                                 const std::vector<Exponent>& hyperplanes);

RationalVector to_rational(const Exponent& a);
Rational dot(const RationalVector& v, const RationalVector& w);

}  // namespace metab
