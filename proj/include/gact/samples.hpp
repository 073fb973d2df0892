#pragma once

#include <random>

#include "gact/limits.hpp"

namespace gact {

/// Deterministic generators for the property suites. Every sample is built
/// from the library's own validated constructions, so generation doubles as
/// construction-path coverage.
using Rng = std::mt19937_64;

std::vector<std::vector<int>> sample_group_table(Rng& rng, int max_order);

/// Disjoint unions of group, pair, and transformation groupoids.
GroupoidPtr sample_groupoid(Rng& rng, int max_arrows);

/// Disjoint unions of pair groupoids (every finite principal groupoid).
GroupoidPtr sample_principal_groupoid(Rng& rng, int max_arrows);

/// Valid actor; mixes free and non-free, surjective and not.
Actor sample_actor(Rng& rng, int max_arrows);

Actor sample_free_surjective_actor(Rng& rng, int max_arrows);

/// Valid actor with a fixed point (never free).
Actor sample_non_free_actor(Rng& rng, int max_arrows);

/// Free actor whose anchor misses at least one unit of the domain.
Actor sample_non_surjective_actor(Rng& rng, int max_arrows);

/// Composable pair (k, h) with cod(h) = dom(k).
std::pair<Actor, Actor> sample_composable_pair(Rng& rng, int max_arrows);

/// Random normalized cocycle (a coboundary chain over the context roots).
Twist sample_cocycle(Rng& rng, const GroupoidPtr& g, const FieldPtr& f);

/// Fold of `copies` copies of the base onto itself: a free surjective
/// actor realized by a fibrewise-bijective homomorphism.
struct CoverSample {
  Actor h;
  std::vector<int> phi;
};
CoverSample sample_cover(const GroupoidPtr& base, int copies);

FellActor sample_line_bundle_actor(Rng& rng, int max_arrows,
                                   const FieldPtr& f);

std::pair<FellActor, FellActor> sample_composable_line_actors(
    Rng& rng, int max_arrows, const FieldPtr& f);

/// Eventually-stationary system of folds, optionally with a parallel
/// trivial-twist line-bundle chain.
InductiveSystem sample_stationary_system(Rng& rng, int max_len,
                                         int max_arrows, bool with_fell,
                                         const FieldPtr& f);

}  // namespace gact
