#pragma once

#include <map>
#include <memory>

#include "polytri/complex.hpp"

namespace polytri {

/// Values on the vertices of a complex; the function is the per-cell upper
/// hull of these values.
using VerticialLifting = std::map<VertexId, Rational>;

/// Piecewise linear lifting: linear on each cell of `linearity.refined`,
/// with the given values on its vertices.
struct PLLifting {
  Subdivision linearity;
  VerticialLifting values;

  const PolyComplex& domain() const { return linearity.base(); }
};

/// Trivial-linearity PL lifting of vertex values.
PLLifting as_pl(std::shared_ptr<const PolyComplex> complex, const VerticialLifting& values);

/// Coarsest subdivision on whose cells f is affine. Throws DomainMismatch when
/// a vertex value is missing.
Subdivision induced_subdivision(std::shared_ptr<const PolyComplex> complex, const VerticialLifting& f);

/// Same for a PL lifting; throws NotConvexDown when some parent cell carries a
/// non-convex-down function.
Subdivision induced_subdivision(const PLLifting& f);

/// Pointwise-minimal convex-down function with the given values. `points`
/// holds every vertex of the complex (same ids) and possibly extra points of
/// |complex|; `values` must cover all of them. Throws UnattainableValue when a
/// point lies strictly below the upper hull of the others in some cell.
PLLifting minimal_extension(std::shared_ptr<const PolyComplex> complex, const std::map<VertexId, Point>& points,
                            const VerticialLifting& values);

/// Value of f at a point of its domain. Throws CellNotContained off |domain|.
Rational evaluate(const PLLifting& f, const Point& x);

/// Restriction to a subcomplex of the domain. Throws NotSubcomplex.
PLLifting restrict(const PLLifting& f, const PolyComplex& sub);
VerticialLifting restrict(const VerticialLifting& f, const PolyComplex& sub);

/// Common refinement: inside each cell of base.refined, the subdivision
/// induced by fprime (values on base.refined's vertices). Carriers refer to
/// base's parent.
Subdivision refine_by(const Subdivision& base, const VerticialLifting& fprime);

/// Largest eps0 (up to a factor 2) such that for 0 < eps <= eps0 the function
/// f + eps * fprime induces refine_by(induced_subdivision(f), fprime).
/// fprime is given on the vertices of induced_subdivision(f).
Rational explicit_epsilon(const PLLifting& f, const VerticialLifting& fprime);
Rational explicit_epsilon(std::shared_ptr<const PolyComplex> complex, const VerticialLifting& f,
                          const VerticialLifting& fprime);

/// f + eps * fprime on the vertices of the induced subdivision of f, as a
/// minimal extension over f's domain.
PLLifting combine(const PLLifting& f, const VerticialLifting& fprime, const Rational& eps);

/// Vertex values of the induced subdivision's vertices.
VerticialLifting values_on(const PLLifting& f, const PolyComplex& target);

}  // namespace polytri
