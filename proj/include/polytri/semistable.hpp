#pragma once

#include <string>
#include <vector>

#include "polytri/conical.hpp"

namespace polytri {

/// The nonnegative orthant in R^n with lattice  prod Z k_i e_i.
struct OrthantBase {
  std::size_t n = 0;
  std::vector<Integer> multipliers;

  static OrthantBase standard(std::size_t n);
  Matrix lattice() const;
  ConicalComplex complex() const;
};

/// Piecewise linear map from a conical complex to an orthant, linear on each
/// cone and given by the images of the ray generators.
struct ConicalMorphism {
  std::shared_ptr<const ConicalComplex> source;
  OrthantBase target;
  std::map<VertexId, Point> ray_images;
};

/// Validating constructor. Errors: InvalidMorphism (missing or negative
/// images, non-linear on a cone, lattice not respected, image not the whole
/// orthant), DimensionMismatch.
ConicalMorphism make_morphism(std::shared_ptr<const ConicalComplex> source, OrthantBase target,
                              std::map<VertexId, Point> ray_images);

/// Image of a point of the source support. Throws CellNotContained.
Point image(const ConicalMorphism& f, const Point& x);

/// Replaces the target lattice by prod Z k_i e_i (relative to the current one)
/// and the source lattice of each maximal cone by its preimage.
/// Errors: NonPositiveMultiplier, DimensionMismatch.
ConicalMorphism base_change(const ConicalMorphism& f, const std::vector<Integer>& k);

/// |det| of the primitive generators in a basis of lattice ∩ span(rays).
/// Errors: NotSimplicial (dependent generators).
Integer cone_index(std::span<const Point> rays, const Matrix& lattice_basis);
Integer cone_index(const ConicalComplex& complex, const VertexSet& cone);

struct PreimageSkeleton {
  ConicalComplex skeleton;             // cones mapping into the 1-skeleton of the orthant
  std::vector<ConicalComplex> pieces;  // pieces[i]: cones mapping into Cone(e_i)
};

PreimageSkeleton preimage_skeleton(const ConicalMorphism& f);

enum class Verdict { Neither, NearlySemistable, Semistable };
std::string to_string(Verdict v);

struct SemistabilityReport {
  bool equidimensional = true;
  std::vector<std::string> equidimensional_witnesses;
  bool reduced = true;
  std::vector<std::string> reduced_witnesses;
  bool codim1_semistable = true;
  std::vector<std::string> codim1_witnesses;
  bool simplicial = true;
  bool base_nonsingular = true;
  /// Index of every maximal cone of the subdivision (0 for non-simplicial).
  std::vector<std::pair<VertexSet, Integer>> maximal_indices;
  Verdict verdict = Verdict::Neither;

  bool nearly_semistable() const { return verdict != Verdict::Neither; }
  bool semistable() const { return verdict == Verdict::Semistable; }
};

/// Combinatorial nearly-semistable conditions for f after subdividing its
/// source by `subdivision`. Errors: IncompatibleSubdivision.
SemistabilityReport check_nearly_semistable(const ConicalMorphism& f, const ConicalSubdivision& subdivision);

/// Triangulation of one preimage piece with the lifting inducing it.
struct BoundaryPiece {
  ConicalSubdivision triangulation;
  HomogeneousLifting lifting;
};

struct BoundaryData {
  std::vector<Integer> multipliers;
  std::vector<BoundaryPiece> pieces;  // one per coordinate of the base
};

struct Reduction {
  ConicalMorphism morphism;  // after base change
  ConicalSubdivision subdivision;
  SemistabilityReport report;
  ConicalExtension extension;
};

/// Base change, assembly of the boundary triangulations, extension over the
/// whole source and verification.
/// Errors: BoundaryNotIndexOne, BoundaryNotInduced, NoSlicingFunction, plus
/// those of base_change and extend_conical_triangulation.
Reduction weak_to_nearly_semistable(const ConicalMorphism& f, const BoundaryData& data);

/// Trivial boundary data: each piece left as it is with zero lifting.
BoundaryData trivial_boundary_data(const ConicalMorphism& f, std::vector<Integer> multipliers);

/// Small exhaustive search for an index-1 regular triangulation of a piece
/// using its existing rays only (dimension <= 3, at most 12 rays).
/// Errors: SearchExhausted, UnsupportedDimension.
BoundaryPiece find_index_one_triangulation(std::shared_ptr<const ConicalComplex> piece);

}  // namespace polytri
