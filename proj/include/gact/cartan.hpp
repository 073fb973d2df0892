#pragma once

#include "gact/fell.hpp"

namespace gact {

/// Finite-dimensional Cartan pair: a unital *-algebra together with the
/// basis indices of the diagonal idempotents (the subalgebra A = span diag).
struct CartanPair {
  AlgebraPtr algebra;
  std::vector<int> diag;
};

/// E(b) = sum_x d_x b d_x, the expectation onto the diagonal.
AlgebraHom cartan_expectation(const CartanPair& p);

/// Diagonal axioms, maximal abelianness, regularity (all corners at most
/// one-dimensional) and faithfulness of the expectation, all exact.
Report check_cartan(const CartanPair& p);

/// Normaliser test against an explicit diagonal.
bool is_normaliser(const StarAlgebra& a, const CVec& n,
                   const std::vector<int>& diag);

/// Weyl groupoid and twist reconstructed from the nonzero corners
/// d_y B d_x, with a normalized corner basis (n* n = d_x exactly) and the
/// *-isomorphism C*(G, sigma) -> B sending arrows to the corner basis.
struct WeylTwist {
  GroupoidPtr groupoid;  // principal, arrows = nonzero corners
  Twist twist;
  AlgebraHom iso;  // from the twisted convolution algebra onto the pair
  std::vector<std::pair<int, int>> corners;  // arrow -> (y, x) diag positions
  std::vector<CVec> corner_basis;            // normalized n_{y,x} in B
};

WeylTwist weyl_twist(const CartanPair& p);

/// Transport of a twist along a groupoid isomorphism.
Twist transport_twist(const Twist& t, const GroupoidIso& iso);

/// For pairs built from a (twisted) groupoid algebra with diag = units: the
/// canonical identification of the reconstructed groupoid with the base.
GroupoidIso weyl_base_identification(const WeylTwist& w,
                                     const GroupoidPtr& base);

/// Cartan morphism checks: diagonal into diagonal, corner normalisers to
/// normalisers, expectation entwining, unitality.
Report check_cartan_morphism(const AlgebraHom& phi, const CartanPair& p1,
                             const CartanPair& p2);

/// A Cartan morphism realized as a Fell actor between the Weyl line
/// bundles, with the transported homomorphism for round-trip checks.
struct CartanActor {
  WeylTwist w1, w2;
  FellActor actor;
  AlgebraHom transported;  // iso2^{-1} . phi . iso1, between twisted algebras
};

/// Builds the actor of a non-degenerate Cartan morphism; verifies the
/// round trip fell_hom(actor) == transported exactly.
CartanActor actor_from_cartan_morphism(const AlgebraHom& phi,
                                       const CartanPair& p1,
                                       const CartanPair& p2);

/// The reverse construction: the Cartan morphism of a free line-bundle
/// actor between reconstructed Weyl twists, as a map B1 -> B2.
AlgebraHom cartan_morphism_from_actor(const FellActor& a, const WeylTwist& w1,
                                      const WeylTwist& w2);

}  // namespace gact
