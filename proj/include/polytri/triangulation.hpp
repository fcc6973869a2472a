#pragma once

#include <cstdint>
#include <random>
#include <variant>

#include "polytri/lifting.hpp"
#include "polytri/lp.hpp"

namespace polytri {

bool is_simplicial(const PolyComplex& complex);
bool is_simplicial(const Subdivision& subdivision);

struct RandomStrategy {
  std::uint64_t seed = 0;
  std::int64_t denominator_bound = 10000;
};

/// Pulls the vertices in the given order; vertices left out are pulled after
/// them in increasing id order.
struct PullingStrategy {
  std::vector<VertexId> order;
};

using GenericStrategy = std::variant<RandomStrategy, PullingStrategy>;

/// One random value p/q per vertex, 1 <= q <= bound, |p| <= bound.
VerticialLifting random_lifting(const PolyComplex& complex, std::mt19937_64& rng, std::int64_t bound);

/// A lifting inducing a triangulation without new vertices. The random
/// strategy gives up after 64 draws (GenericityExhausted).
VerticialLifting generic_simplicial_lifting(std::shared_ptr<const PolyComplex> complex,
                                            const GenericStrategy& strategy);

/// Lifting inducing exactly a given subdivision, with the smallest slack of
/// its strict fold inequalities.
struct RegularityCertificate {
  VerticialLifting lifting;  // on the refined vertices
  Rational margin;
};

/// One fold inequality  l_tau(w) - c_w >= 1  (or = 0 when w is a vertex of
/// tau) over the vertex values c.
struct FoldConstraint {
  std::size_t parent_cell = 0;
  VertexSet cell;
  VertexId vertex = 0;
  lp::Constraint constraint;
  Rational multiplier;  // Farkas weight
};

struct NonRegularityWitness {
  std::vector<VertexId> variables;  // refined vertex of each coefficient
  std::vector<FoldConstraint> infeasible_constraint_subset;
};

using RegularityResult = std::variant<RegularityCertificate, NonRegularityWitness>;

RegularityResult is_regular(const Subdivision& subdivision);

/// Checks that the multipliers combine the listed constraints into 0 >= 1.
bool verify_witness(const NonRegularityWitness& witness);

/// Checks that the certificate lifting induces the subdivision.
bool verify_certificate(const Subdivision& subdivision, const RegularityCertificate& certificate);

/// Output of extend_triangulation together with the intermediate liftings.
struct Extension {
  Subdivision triangulation;
  Rational shift;              // added to f0 to make it positive
  PLLifting extension_by_zero;  // minimal extension of the shifted f0
  Subdivision intermediate;    // induced by extension_by_zero
  VerticialLifting generic;    // on intermediate.refined
  Rational epsilon;
  PLLifting composed;          // extension_by_zero + epsilon * generic
};

/// Extends a regular triangulation of a subcomplex to a regular triangulation
/// of the whole complex without new vertices. f0 gives values on the vertices
/// of sub_triangulation.refined; vertices of the refined subcomplex that
/// coincide with vertices of the complex must carry the same ids.
///
/// Errors: NotSubcomplex, InputNotSimplicial, InputNotInduced, RestrictionMismatch.
Extension extend_triangulation(std::shared_ptr<const PolyComplex> complex, const PolyComplex& sub,
                               const Subdivision& sub_triangulation, const VerticialLifting& f0,
                               const GenericStrategy& strategy = PullingStrategy{});

/// All triangulations using exactly the vertices of the complex, in canonical
/// order. Throws TooLarge above 12 vertices.
std::vector<Subdivision> enumerate_triangulations(std::shared_ptr<const PolyComplex> complex, unsigned jobs = 1);

/// Radius (Euclidean, on the vertex-value vector) within which every
/// perturbation of c induces a refinement of, hence for simplicial results the
/// same, subdivision.
Rational stability_radius(std::shared_ptr<const PolyComplex> complex, const VerticialLifting& c);

}  // namespace polytri
