#pragma once

#include "gact/cartan.hpp"

namespace gact {

/// A finite chain of free surjective-anchor actors h_n: G_n act G_{n+1},
/// optionally covered by a parallel chain of Fell actors. The stationary
/// marker means the system continues with identity actors beyond the chain.
struct InductiveSystem {
  std::vector<Actor> chain;
  bool stationary = false;
  std::vector<FellActor> fell_chain;  // empty or parallel to chain
};

/// G_0, ..., G_N read off the chain.
std::vector<GroupoidPtr> system_groupoids(const InductiveSystem& sys);

/// Hypotheses: validity, freeness, surjective anchors, chain compatibility,
/// and (when present) the Fell-chain hypotheses.
Report validate_system(const InductiveSystem& sys);

/// h_n^m: G_n act G_m, the (possibly empty) composite along the chain.
/// Indices beyond the chain are allowed only for stationary systems.
Actor composite_actor(const InductiveSystem& sys, int n, int m);

/// Composite Fell actor A_n^m along the Fell chain.
FellActor composite_fell_actor(const InductiveSystem& sys, int n, int m);

/// G_{n,m}: the image of G_n acting on the units of G_{n+m}, as a
/// subgroupoid of G_{n+m}, with the projection onto the previous stage.
struct StageGroupoid {
  GroupoidPtr g;             // re-indexed copy
  std::vector<int> ambient;  // arrow -> arrow of G_{n+m}
  std::vector<int> proj;     // arrow -> arrow of G_{n+m-1} in G_{n,m-1}; empty when m = 0
};
StageGroupoid stage_groupoid(const InductiveSystem& sys, int n, int m);

/// Tower inclusion G_{n,m+k} inside G_{n+k,m} as subsets of G_{n+m+k}.
bool tower_inclusion_check(const InductiveSystem& sys, int n, int m, int k);

struct LimitGroupoid {
  GroupoidPtr limit;        // tables of the final stabilized groupoid
  std::vector<Actor> legs;  // j_k: G_k act limit
  int stabilization_depth;  // largest depth at which a tower became constant
};

/// Inductive limit of a stationary system, with its universal cocone.
/// Verifies the cocone identities j_k = j_{k+1} h_k exactly.
LimitGroupoid limit_groupoid(const InductiveSystem& sys);

/// Mediating actor of a compatible family l_n: G_n act H; verifies the
/// factorizations l_n = l o j_n. Throws with the witness index on an
/// incompatible family.
Actor universality_check(const LimitGroupoid& l,
                         const std::vector<Actor>& family);

/// A second candidate factoring the family must agree with the mediating
/// actor (table equality).
bool mediating_agrees(const LimitGroupoid& l, const std::vector<Actor>& family,
                      const Actor& candidate);

struct LimitAlgebra {
  AlgebraPtr colimit;                    // stabilized image algebra
  std::vector<AlgebraHom> colimit_legs;  // lambda_n, composed step homs
  AlgebraHom iso;                        // colimit -> C*(limit groupoid)
  std::vector<AlgebraHom> limit_legs;    // induced_hom(j_n)
};

/// Builds both sides of the colimit comparison and verifies the exact
/// *-isomorphism and the leg identities i_n = iso o lambda_n.
LimitAlgebra limit_algebra_check(const InductiveSystem& sys,
                                 const FieldPtr& field);

struct LimitFell {
  FellPtr limit;                // stabilized bundle over the limit groupoid
  std::vector<FellActor> legs;  // J_k: E_k act limit bundle
  AlgebraHom iso;               // colim C*(E_n) -> C*(limit bundle)
};

/// Limit Fell bundle of a stationary system with a Fell chain, with leg
/// actors and the exact section-algebra colimit comparison.
LimitFell limit_fell_bundle(const InductiveSystem& sys);

}  // namespace gact
