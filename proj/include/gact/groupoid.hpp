#pragma once

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gact/report.hpp"

namespace gact {

class FiniteGroupoid;
using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// A finite (discrete, hence etale) groupoid presented by composition tables.
/// Arrows are integers 0..n-1; comp(a, b) is defined exactly when
/// src(a) = rng(b). Units, sources and ranges are derived from the tables.
class FiniteGroupoid {
 public:
  FiniteGroupoid(int n_arrows, std::vector<int> inv,
                 const std::vector<std::tuple<int, int, int>>& comps);

  int size() const { return n_; }
  int inv(int a) const { return inv_[a]; }
  /// Composite ab, or -1 when the pair is not composable.
  int comp(int a, int b) const { return comp_[a * n_ + b]; }
  bool composable(int a, int b) const { return comp(a, b) >= 0; }

  /// src(a) = inv(a)a, rng(a) = a inv(a); -1 when the table is too broken
  /// for the product to exist (only possible on unvalidated input).
  int src(int a) const { return src_[a]; }
  int rng(int a) const { return rng_[a]; }
  bool is_unit(int a) const { return unit_[a]; }
  const std::vector<int>& units() const { return units_; }

  /// Arrows with src = u / rng = u.
  std::vector<int> source_fibre(int u) const;
  std::vector<int> range_fibre(int u) const;

  bool is_principal() const;

  /// Structural equality of tables (arrow indexing included).
  bool same_tables(const FiniteGroupoid& o) const;

 private:
  int n_;
  std::vector<int> inv_;
  std::vector<int> comp_;  // dense n*n, -1 = undefined
  std::vector<int> src_, rng_;
  std::vector<bool> unit_;
  std::vector<int> units_;
  friend Report validate_groupoid(const FiniteGroupoid&);
};

/// Exhaustive axiom check; the report lists each violated axiom with a
/// witness pair or triple.
Report validate_groupoid(const FiniteGroupoid& g);

GroupoidPtr make_groupoid(int n_arrows, std::vector<int> inv,
                          const std::vector<std::tuple<int, int, int>>& comps);

/// Same underlying groupoid: pointer equality or table equality.
bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);

/// One-unit groupoid from a finite group multiplication table.
/// Rejects tables without identity or inverses, or non-associative tables.
GroupoidPtr from_group(const std::vector<std::vector<int>>& mult);

/// Full pair groupoid on n points: arrows (i, j), comp (i,j)(j,k) = (i,k).
GroupoidPtr pair_groupoid(int n);

/// Disjoint union; arrows of the pieces are re-indexed consecutively.
GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& pieces);

/// Transformation groupoid Gamma x X for a group action by permutations.
/// Arrow (g, x) has index g*|X| + x; (g1,x1)(g2,x2) = (g1 g2, x2) when
/// x1 = g2 . x2. Rejects non-homomorphic action tables.
GroupoidPtr group_transformation_groupoid(
    const std::vector<std::vector<int>>& group_mult, int space_size,
    const std::vector<std::vector<int>>& action);

/// Isomorphism witness between two finite groupoids.
struct GroupoidIso {
  GroupoidPtr from;
  GroupoidPtr to;
  std::vector<int> map;  // arrow of `from` -> arrow of `to`
};

/// Checks bijectivity and that composition and inverses are preserved.
Report verify_iso(const GroupoidIso& iso);

/// Search for an isomorphism (backtracking; fine at desk scale).
std::optional<GroupoidIso> find_isomorphism(const GroupoidPtr& a,
                                            const GroupoidPtr& b);

/// Subset of arrows on which src and rng are injective.
struct Bisection {
  GroupoidPtr parent;
  std::vector<int> arrows;  // sorted

  Bisection(GroupoidPtr p, std::vector<int> arr);
  bool operator==(const Bisection& o) const { return arrows == o.arrows; }
  bool operator<(const Bisection& o) const { return arrows < o.arrows; }
};

bool is_bisection(const FiniteGroupoid& g, const std::vector<int>& arrows);

/// U.V = {ab : a in U, b in V, src(a) = rng(b)}.
Bisection bisection_product(const Bisection& u, const Bisection& v);
Bisection bisection_inverse(const Bisection& u);
Bisection units_bisection(const GroupoidPtr& g);

}  // namespace gact
