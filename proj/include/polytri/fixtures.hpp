#pragma once

#include <memory>
#include <string>
#include <vector>

#include "polytri/conical.hpp"
#include "polytri/lifting.hpp"
#include "polytri/semistable.hpp"

/// Example complexes, liftings and morphisms shared by tests, the acceptance
/// suite and the CLI fixture corpus.
namespace polytri::fixtures {

using ComplexPtr = std::shared_ptr<const PolyComplex>;

struct Named {
  std::string name;
  ComplexPtr complex;
};

/// Unit square with vertices a,b,c,d (ids 0..3) ordered clockwise.
ComplexPtr square();
/// The edges ab and cd of the square.
PolyComplex square_edges();
ComplexPtr segment();
ComplexPtr triangle();
ComplexPtr tetrahedron();
/// Triangular prism, ids 0,1,2 on the bottom and 3,4,5 above them.
ComplexPtr prism();
/// Boundary of the prism with the edges 0-4, 1-5, 2-3 cut into the squares.
Subdivision twisted_boundary();
/// Lifting on the prism vertices inducing the diagonals 0-4, 1-5, 0-5.
VerticialLifting staircase_lifting();
ComplexPtr cube();
/// Two prisms stacked along a triangle.
ComplexPtr glued_prisms();
/// Convex lattice polygon with the given number of vertices (3 to 8).
ComplexPtr polygon(std::size_t vertices);
ComplexPtr domino();
ComplexPtr l_shape();
ComplexPtr strip();
ComplexPtr square_pyramid();
ComplexPtr octahedron();
ComplexPtr bipyramid();
/// Hexagon cut into two quadrilaterals.
ComplexPtr split_hexagon();
ComplexPtr hexagonal_prism();

/// Every compact complex above.
std::vector<Named> complexes();

/// Complex, subcomplex and a lifting on the subcomplex vertices inducing a
/// simplicial subdivision of it.
struct ExtensionCase {
  std::string name;
  ComplexPtr complex;
  ComplexPtr sub;
  VerticialLifting f0;
};
std::vector<ExtensionCase> extension_cases();

struct ConicalCase {
  std::string name;
  std::shared_ptr<const ConicalComplex> complex;
  SlicingFunction h;
  std::shared_ptr<const ConicalComplex> sub;
  HomogeneousLifting f0;
};
/// Cones over the compact cases with their boundary data.
std::vector<ConicalCase> conical_cases();

/// The standard orthant as a conical complex.
std::shared_ptr<const ConicalComplex> orthant(std::size_t n, const Matrix& lattice = {});
ConicalMorphism identity_morphism(std::size_t n);
/// R^4 -> R^2, (a,b,c,d) -> (a+b, c+d), source lattice generated by
/// (1/2,1/2,1/2,1/2) and the unit vectors.
ConicalMorphism remark_morphism();
/// R -> R, x -> 2x.
ConicalMorphism doubling_morphism();

}  // namespace polytri::fixtures
