#pragma once

#include <map>
#include <optional>

#include "gact/cyclotomic.hpp"
#include "gact/groupoid.hpp"

namespace gact {

/// A twist over a finite groupoid, encoded as a normalized 2-cocycle with
/// root-of-unity values in the context field: sigma(a,b) for each composable
/// pair, satisfying sigma(a,b) sigma(ab,c) = sigma(b,c) sigma(a,bc) and
/// sigma(rng g, g) = sigma(g, src g) = 1.
struct Twist {
  GroupoidPtr base;
  FieldPtr field;
  std::map<std::pair<int, int>, Cyc> sigma;

  const Cyc& value(int a, int b) const;
};

/// Trivial twist (sigma = 1 on every composable pair).
Twist trivial_twist(const GroupoidPtr& g, const FieldPtr& f);

/// Checks the cocycle identity, normalization, root-of-unity values and
/// domain completeness.
Report validate_twist(const Twist& t);

/// Rescale by the coboundary c(g) = sigma(rng g, rng g)^{-1} so that unit
/// values become 1. No-op on already normalized cocycles.
Twist normalize_cocycle(const Twist& t);

/// Coboundary of a unit-scalar chain: sigma'(a,b) = c(a)c(b)/c(ab) sigma(a,b).
Twist coboundary_twist(const Twist& t, const std::vector<Cyc>& chain);

/// Searches for a root-of-unity 0-chain c with
/// sigma2 = (coboundary of c) * sigma1. Exact, via a linear solve over
/// Z/lcm(2, N) on the exponents. Returns the witness chain when found.
std::optional<std::vector<Cyc>> cocycles_cohomologous(const Twist& s1,
                                                      const Twist& s2);

}  // namespace gact
