#pragma once

#include <map>
#include <memory>
#include <optional>

#include "polytri/lifting.hpp"
#include "polytri/triangulation.hpp"

namespace polytri {

struct Ray {
  Point generator;
  Point primitive;  // first lattice point on the ray
};

/// A nonzero cone, given by the ids of its extreme rays.
struct Cone {
  VertexSet rays;
  int dim = 0;
  bool simplicial() const { return static_cast<int>(rays.size()) == dim; }
  friend auto operator<=>(const Cone&, const Cone&) = default;
};

/// Conical polyhedral complex: pointed cones sharing the origin, determined by
/// their rays. The origin is implicit and not listed among the cones.
///
/// The lattice is `integral` unless a maximal cone carries its own lattice
/// (a basis of a lattice in the span of that cone), as happens after a base
/// change of a piecewise linear morphism.
class ConicalComplex {
 public:
  ConicalComplex() = default;

  /// Validating constructor. Errors: DimensionMismatch, DegenerateInput (zero
  /// or parallel generators), DomainMismatch, NotPointed, RedundantVertex,
  /// NotIntersectionClosed.
  static ConicalComplex build(std::size_t ambient_dim, const std::map<VertexId, Point>& generators,
                              std::span<const VertexSet> maximal_cones, IntegralStructure integral,
                              std::map<VertexSet, Matrix> cone_lattices = {});

  /// Same without the pairwise intersection test, for trusted input.
  static ConicalComplex assemble(std::size_t ambient_dim, const std::map<VertexId, Point>& generators,
                                 std::span<const VertexSet> maximal_cones, IntegralStructure integral,
                                 std::map<VertexSet, Matrix> cone_lattices = {});

  std::size_t ambient_dim() const { return ambient_dim_; }
  int dimension() const { return cones_.empty() ? 0 : cones_.back().dim; }
  const std::map<VertexId, Ray>& rays() const { return rays_; }
  const Ray& ray(VertexId id) const { return rays_.at(id); }
  bool has_ray(VertexId id) const { return rays_.count(id) != 0; }
  const std::vector<Cone>& cones() const { return cones_; }
  const Cone& cone(std::size_t index) const { return cones_[index]; }
  std::optional<std::size_t> find_cone(const VertexSet& rays) const;
  std::vector<std::size_t> maximal_cones() const { return maximal_; }
  const IntegralStructure& integral() const { return integral_; }
  const std::map<VertexSet, Matrix>& cone_lattices() const { return cone_lattices_; }
  std::map<VertexId, Point> generators() const;
  std::vector<Point> generators(const VertexSet& rays) const;

  /// Basis of the lattice of the cone intersected with its span.
  Matrix lattice_of(const VertexSet& rays) const;

  /// Smallest cone containing all points; nullopt when some point is outside
  /// the support. The origin alone has no carrier cone (returns nullopt too).
  std::optional<std::size_t> carrier_of(std::span<const Point> points) const;
  bool contains(const Point& x) const;

  /// Labeled comparison: same ray ids, generators and cones.
  friend bool operator==(const ConicalComplex& a, const ConicalComplex& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.generators() == b.generators() && a.cones_ == b.cones_;
  }

 private:
  static ConicalComplex make(std::size_t ambient_dim, const std::map<VertexId, Point>& generators,
                             std::span<const VertexSet> maximal_cones, IntegralStructure integral,
                             std::map<VertexSet, Matrix> cone_lattices, bool check_intersections);
  static std::vector<Point> generators_of(const VertexSet& rays, const std::map<VertexId, Point>& gens);

  std::size_t ambient_dim_ = 0;
  std::map<VertexId, Ray> rays_;
  std::vector<Cone> cones_;
  std::map<VertexSet, std::size_t> index_;
  std::vector<std::size_t> maximal_;
  std::vector<Point> functional_;  // per maximal cone, positive on its rays
  IntegralStructure integral_;
  std::map<VertexSet, Matrix> cone_lattices_;
};

/// Some linear functional with u . r >= 1 on every ray; nullopt for a cone
/// that contains a line.
std::optional<Point> positive_functional(std::span<const Point> rays);

/// Subcomplex spanned by the listed cones (and their faces). Throws NotSubcomplex.
ConicalComplex conical_subcomplex(const ConicalComplex& complex, std::span<const VertexSet> cones);

/// Positive ray values, extended linearly over each cone.
struct SlicingFunction {
  std::map<VertexId, Rational> ray_values;
};

/// Checks positivity and linearity on every cone. Errors: NotSlicing.
void validate_slicing(const ConicalComplex& complex, const SlicingFunction& h);

/// Value of the per-cone linear extension at a point of the support.
Rational evaluate(const ConicalComplex& complex, const std::map<VertexId, Rational>& ray_values, const Point& x);

/// A slicing function found by a positivity LP, if one exists.
std::optional<SlicingFunction> find_slicing_function(const ConicalComplex& complex);

/// The cone over a compact complex (rays through (v, 1)) and its height function.
std::pair<ConicalComplex, SlicingFunction> cone_over(const PolyComplex& complex);

/// The compact complex h = 1, vertex ids equal to ray ids, lattice kept from
/// the cone side.
PolyComplex slice(const ConicalComplex& complex, const SlicingFunction& h);

struct ConicalSubdivision {
  ConicalComplex refined;
  std::shared_ptr<const ConicalComplex> parent;
  std::vector<std::size_t> carrier;
  const ConicalComplex& base() const { return *parent; }
};

/// Trusted assembly from maximal cones; carriers are computed.
ConicalSubdivision make_conical_subdivision(std::shared_ptr<const ConicalComplex> parent,
                                            const std::map<VertexId, Point>& generators,
                                            std::span<const VertexSet> maximal_cones);
ConicalSubdivision trivial_conical_subdivision(std::shared_ptr<const ConicalComplex> parent);

/// Validates a candidate refinement. Errors: CellNotContained, NotComplete.
ConicalSubdivision is_conical_subdivision(const ConicalComplex& candidate,
                                          std::shared_ptr<const ConicalComplex> parent);

/// Homogeneous lifting given by ray values. Extra rays (ids not in the
/// complex) lie in its support and carry values too.
struct HomogeneousLifting {
  std::map<VertexId, Rational> values;
  std::map<VertexId, Point> extra_rays;
};

/// True iff every given ray value is attained by the per-cone homogeneous
/// convex-down extension (no ray strictly below the hull of the others).
bool is_homogeneous_lifting(const ConicalComplex& complex, const HomogeneousLifting& f);

/// Fan on whose cones f is linear. Throws NotConvexDown for unattainable values.
ConicalSubdivision induced_conical_subdivision(std::shared_ptr<const ConicalComplex> complex,
                                               const HomogeneousLifting& f);

struct ConicalExtension {
  ConicalSubdivision triangulation;
  HomogeneousLifting lifting;  // on the rays of triangulation.refined
  Extension sliced;            // the compact computation on the slice
};

/// Conical version of extend_triangulation, by slicing with h.
/// Errors: NoSlicingFunction, NotSubcomplex, plus those of extend_triangulation.
ConicalExtension extend_conical_triangulation(std::shared_ptr<const ConicalComplex> complex, const SlicingFunction& h,
                                              const ConicalComplex& sub, const ConicalSubdivision& sub_triangulation,
                                              const HomogeneousLifting& f0,
                                              const GenericStrategy& strategy = PullingStrategy{});

bool is_simplicial(const ConicalComplex& complex);

/// Same cones geometrically (rays compared as directions), ignoring labels.
bool same_cones(const ConicalComplex& a, const ConicalComplex& b);

/// Ray directions normalized to primitive integer vectors in the standard
/// coordinates; used to compare skeleta.
std::set<Point, PointLess> ray_directions(const ConicalComplex& complex);

}  // namespace polytri
