#pragma once

#include <optional>
#include <vector>

#include "gact/groupoid.hpp"
#include "gact/semigroup.hpp"

namespace gact {

/// A left action of dom on the arrows of cod commuting with right
/// multiplication: the morphism notion between etale groupoids used
/// throughout. act(g, x) is defined exactly when src(g) = anchor(x).
struct Actor {
  GroupoidPtr dom;  // G, the acting groupoid
  GroupoidPtr cod;  // H, the groupoid acted on
  std::vector<int> anchor;  // arrow of H -> unit arrow of G
  std::vector<int> act;     // dense |G| x |H|, -1 = undefined

  int action(int g, int x) const { return act[g * cod->size() + x]; }
  bool defined(int g, int x) const { return action(g, x) >= 0; }
  bool same_tables(const Actor& o) const {
    return same_groupoid(dom, o.dom) && same_groupoid(cod, o.cod) &&
           anchor == o.anchor && act == o.act;
  }
};

/// Every actor between finite discrete groupoids is proper: the anchor map
/// restricted to the (finite) unit space is trivially a proper map. Kept as
/// a named predicate so hypotheses read like the statements they implement.
constexpr bool is_proper(const Actor&) { return true; }

/// Exhaustive check of all actor axioms, with witnesses.
Report validate_actor(const Actor& h);

/// Left multiplication of a groupoid on itself; anchor = rng.
Actor identity_actor(const GroupoidPtr& g);

/// Composite actor of k: H act K and h: G act H, giving G act K with
/// anchor rho_h o rho_k and g .(kh) x = (g .h rho_k(x)) .k x.
Actor compose_actors(const Actor& k, const Actor& h);

/// Group-equivariant construction: Gamma acting on spaces X and Y with an
/// equivariant map rho0: X -> Y induces Gamma x| Y act Gamma x| X.
struct EquivariantActor {
  GroupoidPtr dom;  // Gamma x| Y
  GroupoidPtr cod;  // Gamma x| X
  Actor actor;
};
EquivariantActor actor_from_equivariant_map(
    const std::vector<std::vector<int>>& group_mult,
    const std::vector<std::vector<int>>& action_x,
    const std::vector<std::vector<int>>& action_y,
    const std::vector<int>& rho0);

/// Fibrewise-bijective homomorphism phi: H -> G gives G act H with
/// g . x = phi|_{H_{rng x}}^{-1}(g) x. Reports the offending fibre when phi
/// is not fibrewise bijective.
Actor actor_from_homomorphism(const GroupoidPtr& h_grpd,
                              const GroupoidPtr& g_grpd,
                              const std::vector<int>& phi);

/// Actor from an entwining pair of inverse semigroup actions:
/// psi: T -> S with x in dom(psi(t)) iff rho(x) in dom(t) and
/// t.rho(x) = rho(psi(t).x); the actor acts by [t,y].[u,x] = [psi(t)u, x].
struct EntwinedActor {
  GermGroupoid dom_germ;  // T x| Y
  GermGroupoid cod_germ;  // S x| X
  Actor actor;
};
EntwinedActor actor_from_entwining_pair(const SemigroupAction& t_on_y,
                                        const SemigroupAction& s_on_x,
                                        const std::vector<int>& psi,
                                        const std::vector<int>& rho);

/// U.V = {g.x : g in U, x in V, src(g) = anchor(x)}: an (open) bisection of
/// cod. Verifies bisection-ness and unique factorization.
Bisection dot_bisection(const Actor& h, const Bisection& u,
                        const Bisection& v);

/// The canonical entwining pair of an actor: psi(U) = U . H^(0) on the
/// semigroup generated by gens_g (plus singleton covers of H), with the
/// anchor restricted to units. The induced entwined actor reproduces h
/// through the germ isomorphisms.
struct CanonicalBisPair {
  BisGermIso dom_iso;  // over the semigroup generated by gens_g
  BisGermIso cod_iso;  // generated by cod singletons plus psi images
  std::vector<int> psi;  // dom semigroup element -> cod semigroup element
  std::vector<int> rho;  // cod unit point -> dom unit point
  EntwinedActor induced;
};
CanonicalBisPair canonical_bis_pair(const Actor& h,
                                    const std::vector<Bisection>& gens_g);

/// Stable space S_U: units t of cod fixed by some non-unit arrow of U.
std::vector<int> stable_space(const Actor& h, const Bisection& u);

/// Free: g.t = t for a unit t only when g is a unit.
bool is_free(const Actor& h);

bool anchor_surjective(const Actor& h);

/// Left cancellation witness: h k1 = h k2 implies k1 = k2 (table equality).
bool is_monomorphism_witness(const Actor& h, const Actor& k1, const Actor& k2);

/// Transformation groupoid G x| H^(0) of an actor, with the embedding
/// i(g,t) = g.t into H and the projection p(g,t) = g onto G.
struct TransformationGroupoid {
  GroupoidPtr k;
  std::vector<std::pair<int, int>> arrows;  // (arrow of G, unit arrow of H)
  std::vector<int> i_map;  // arrow of k -> arrow of H
  std::vector<int> p_map;  // arrow of k -> arrow of G
};
TransformationGroupoid transformation_groupoid(const Actor& h);

}  // namespace gact
