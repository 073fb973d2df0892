#pragma once

#include <optional>
#include <vector>

#include "gact/groupoid.hpp"

namespace gact {

/// Partial bijection of {0..n-1}; img[x] = -1 means x is not in the domain.
struct PartialBij {
  std::vector<int> img;

  explicit PartialBij(int n) : img(n, -1) {}
  explicit PartialBij(std::vector<int> i) : img(std::move(i)) {}
  static PartialBij identity(int n);

  int size() const { return static_cast<int>(img.size()); }
  bool defined(int x) const { return img[x] >= 0; }
  int operator()(int x) const { return img[x]; }

  PartialBij compose(const PartialBij& o) const;  // this after o
  PartialBij inverse() const;
  bool is_partial_identity() const;
  bool is_injective() const;
  bool operator==(const PartialBij& o) const { return img == o.img; }
  bool operator<(const PartialBij& o) const { return img < o.img; }
};

/// A finite unital inverse semigroup acting on {0..space-1} by partial
/// bijections. Elements are abstract indices; the germ relation uses the
/// abstract multiplication, the arrows it produces use the action. For a
/// semigroup given directly as partial bijections the two coincide.
struct SemigroupAction {
  int n_elements = 0;
  int space = 0;
  std::vector<std::vector<int>> mult;  // total multiplication table
  std::vector<PartialBij> act;         // representation on the space
  int identity = -1;
  std::vector<int> inverse;            // unique inverse element per element
  std::vector<int> idempotents;

  /// Verifies the inverse-semigroup and action axioms.
  Report validate() const;
};

/// Semigroup of actual partial bijections, closed under composition and
/// inverse, containing the identity. Throws on closure/identity failure.
SemigroupAction semigroup_from_partial_bijections(
    const std::vector<PartialBij>& elements);

/// Closure of generating bisections under product and inverse, with the
/// unit-space bisection adjoined; elements act on units by rng o src^{-1}.
/// Requires the generators to cover every arrow of g.
struct BisectionSemigroup {
  SemigroupAction action;
  std::vector<Bisection> elements;  // parallel to action element indices
};

BisectionSemigroup bisection_semigroup(const GroupoidPtr& g,
                                       const std::vector<Bisection>& gens);

/// Germ groupoid S x| X: classes [t, x] for x in dom(t), with [t,x] = [u,x]
/// iff te = ue for an idempotent e whose action domain contains x.
struct GermGroupoid {
  GroupoidPtr groupoid;
  std::vector<std::pair<int, int>> rep;   // arrow -> representative (t, x)
  std::vector<std::vector<int>> class_of; // class_of[t][x], -1 if undefined

  int germ(int t, int x) const { return class_of[t][x]; }
};

GermGroupoid germ_transformation_groupoid(const SemigroupAction& s);

/// Same construction from plain partial bijections.
GermGroupoid germ_transformation_groupoid(
    const std::vector<PartialBij>& elements);

/// The isomorphism g -> Bis(g) x| g^(0) of the canonical action, realized on
/// the semigroup generated by `gens`. Aborts with Error if the verification
/// fails (that would be an implementation bug, not bad input).
struct BisGermIso {
  BisectionSemigroup semigroup;
  GermGroupoid germ;
  GroupoidIso iso;  // from g to germ.groupoid
};

BisGermIso bis_germ_iso(const GroupoidPtr& g,
                        const std::vector<Bisection>& gens);

}  // namespace gact
