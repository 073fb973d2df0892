#include "gact/groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gact/cyclotomic.hpp"  // for Error

namespace gact {

namespace {

std::string triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," +
         std::to_string(c) + ")";
}

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(
    int n_arrows, std::vector<int> inv,
    const std::vector<std::tuple<int, int, int>>& comps)
    : n_(n_arrows), inv_(std::move(inv)) {
  if (static_cast<int>(inv_.size()) != n_)
    throw Error("inv table has wrong length");
  for (int a : inv_)
    if (a < 0 || a >= n_) throw Error("inv table index out of range");
  comp_.assign(static_cast<size_t>(n_) * n_, -1);
  for (const auto& [a, b, c] : comps) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_ || c < 0 || c >= n_)
      throw Error("comp table index out of range");
    int& slot = comp_[a * n_ + b];
    if (slot >= 0 && slot != c)
      throw Error("duplicate comp entry for pair " + pair_str(a, b));
    slot = c;
  }
  src_.assign(n_, -1);
  rng_.assign(n_, -1);
  unit_.assign(n_, false);
  for (int a = 0; a < n_; ++a) {
    src_[a] = comp(inv_[a], a);
    rng_[a] = comp(a, inv_[a]);
  }
  for (int a = 0; a < n_; ++a) unit_[a] = (src_[a] == a && rng_[a] == a);
  for (int a = 0; a < n_; ++a)
    if (unit_[a]) units_.push_back(a);
}

std::vector<int> FiniteGroupoid::source_fibre(int u) const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a)
    if (src_[a] == u) out.push_back(a);
  return out;
}

std::vector<int> FiniteGroupoid::range_fibre(int u) const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a)
    if (rng_[a] == u) out.push_back(a);
  return out;
}

bool FiniteGroupoid::is_principal() const {
  for (int a = 0; a < n_; ++a)
    if (src_[a] == rng_[a] && !unit_[a]) return false;
  return true;
}

bool FiniteGroupoid::same_tables(const FiniteGroupoid& o) const {
  return n_ == o.n_ && inv_ == o.inv_ && comp_ == o.comp_;
}

Report validate_groupoid(const FiniteGroupoid& g) {
  Report rep;
  int n = g.size();
  for (int a = 0; a < n; ++a)
    if (g.inv(g.inv(a)) != a)
      rep.fail("inv_involution", "arrow " + std::to_string(a));
  for (int a = 0; a < n; ++a) {
    if (g.src(a) < 0)
      rep.fail("source_defined", "comp(inv(a),a) undefined for a=" +
                                     std::to_string(a));
    if (g.rng(a) < 0)
      rep.fail("range_defined", "comp(a,inv(a)) undefined for a=" +
                                    std::to_string(a));
  }
  if (!rep.ok()) return rep;  // remaining checks need src/rng

  // comp defined exactly on matching pairs
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool defined = g.composable(a, b);
      bool should = g.src(a) == g.rng(b);
      if (defined && !should)
        rep.fail("comp_domain", "defined but src!=rng at " + pair_str(a, b));
      if (!defined && should)
        rep.fail("comp_domain", "missing composable pair " + pair_str(a, b));
    }

  // associativity on all defined triples
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      int ab = g.comp(a, b);
      for (int c = 0; c < n; ++c) {
        if (!g.composable(b, c)) continue;
        int bc = g.comp(b, c);
        if (!g.composable(ab, c) || !g.composable(a, bc) ||
            g.comp(ab, c) != g.comp(a, bc))
          rep.fail("associativity", triple(a, b, c));
      }
    }

  // gamma^{-1}(gamma eta) = eta and (gamma eta) eta^{-1} = gamma
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      int ab = g.comp(a, b);
      if (g.comp(g.inv(a), ab) != b)
        rep.fail("left_cancel", pair_str(a, b));
      if (g.comp(ab, g.inv(b)) != a)
        rep.fail("right_cancel", pair_str(a, b));
    }

  for (int u : g.units()) {
    if (g.inv(u) != u) rep.fail("unit_inv_fixed", std::to_string(u));
  }
  for (int a = 0; a < n; ++a) {
    if (!g.is_unit(g.src(a)))
      rep.fail("src_in_units", std::to_string(a));
    if (!g.is_unit(g.rng(a)))
      rep.fail("rng_in_units", std::to_string(a));
  }
  return rep;
}

GroupoidPtr make_groupoid(int n_arrows, std::vector<int> inv,
                          const std::vector<std::tuple<int, int, int>>& comps) {
  return std::make_shared<const FiniteGroupoid>(n_arrows, std::move(inv),
                                                comps);
}

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_tables(*b);
}

GroupoidPtr from_group(const std::vector<std::vector<int>>& mult) {
  int n = static_cast<int>(mult.size());
  if (n == 0) throw Error("empty group table");
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != n)
      throw Error("group table not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("group table entry out of range");
  }
  // locate two-sided identity
  int e = -1;
  for (int cand = 0; cand < n; ++cand) {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      if (mult[cand][a] != a || mult[a][cand] != a) {
        ok = false;
        break;
      }
    if (ok) {
      e = cand;
      break;
    }
  }
  if (e < 0) throw Error("group table has no identity");
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mult[a][b] == e && mult[b][a] == e) {
        inv[a] = b;
        break;
      }
    if (inv[a] < 0)
      throw Error("group element " + std::to_string(a) + " not invertible");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
          throw Error("group table not associative at " + triple(a, b, c));
  std::vector<std::tuple<int, int, int>> comps;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) comps.emplace_back(a, b, mult[a][b]);
  return make_groupoid(n, std::move(inv), comps);
}

GroupoidPtr pair_groupoid(int n) {
  // arrow (i, j) = i*n + j, src = (j,j), rng = (i,i)
  int m = n * n;
  std::vector<int> inv(m);
  std::vector<std::tuple<int, int, int>> comps;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i * n + j] = j * n + i;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        comps.emplace_back(i * n + j, j * n + k, i * n + k);
  return make_groupoid(m, std::move(inv), comps);
}

GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& pieces) {
  int total = 0;
  for (const auto& p : pieces) total += p->size();
  std::vector<int> inv(total);
  std::vector<std::tuple<int, int, int>> comps;
  int off = 0;
  for (const auto& p : pieces) {
    int n = p->size();
    for (int a = 0; a < n; ++a) inv[off + a] = off + p->inv(a);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (p->composable(a, b))
          comps.emplace_back(off + a, off + b, off + p->comp(a, b));
    off += n;
  }
  return make_groupoid(total, std::move(inv), comps);
}

GroupoidPtr group_transformation_groupoid(
    const std::vector<std::vector<int>>& group_mult, int space_size,
    const std::vector<std::vector<int>>& action) {
  GroupoidPtr grp = from_group(group_mult);  // validates the group table
  int ng = static_cast<int>(group_mult.size());
  if (static_cast<int>(action.size()) != ng)
    throw Error("action table has wrong length");
  // identify the identity element
  int e = -1;
  for (int a = 0; a < ng; ++a) {
    bool ok = true;
    for (int b = 0; b < ng; ++b)
      if (group_mult[a][b] != b || group_mult[b][a] != b) ok = false;
    if (ok) e = a;
  }
  for (int gidx = 0; gidx < ng; ++gidx) {
    std::vector<bool> seen(space_size, false);
    if (static_cast<int>(action[gidx].size()) != space_size)
      throw Error("action row has wrong length");
    for (int x : action[gidx]) {
      if (x < 0 || x >= space_size || seen[x])
        throw Error("action of element " + std::to_string(gidx) +
                    " is not a permutation");
      seen[x] = true;
    }
  }
  for (int x = 0; x < space_size; ++x)
    if (action[e][x] != x) throw Error("identity does not act trivially");
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b)
      for (int x = 0; x < space_size; ++x)
        if (action[group_mult[a][b]][x] != action[a][action[b][x]])
          throw Error("action is not a homomorphism at " + triple(a, b, x));

  // arrows (g, x): index g*space+x; (g1,x1)(g2,x2) = (g1g2, x2) iff x1 = g2.x2
  int n = ng * space_size;
  std::vector<int> inv(n);
  std::vector<std::tuple<int, int, int>> comps;
  std::vector<int> ginv(ng);
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b)
      if (group_mult[a][b] == e && group_mult[b][a] == e) ginv[a] = b;
  for (int gidx = 0; gidx < ng; ++gidx)
    for (int x = 0; x < space_size; ++x)
      inv[gidx * space_size + x] =
          ginv[gidx] * space_size + action[gidx][x];
  for (int g1 = 0; g1 < ng; ++g1)
    for (int g2 = 0; g2 < ng; ++g2)
      for (int x2 = 0; x2 < space_size; ++x2) {
        int x1 = action[g2][x2];
        comps.emplace_back(g1 * space_size + x1, g2 * space_size + x2,
                           group_mult[g1][g2] * space_size + x2);
      }
  return make_groupoid(n, std::move(inv), comps);
}

Report verify_iso(const GroupoidIso& iso) {
  Report rep;
  const FiniteGroupoid& a = *iso.from;
  const FiniteGroupoid& b = *iso.to;
  if (a.size() != b.size() ||
      static_cast<int>(iso.map.size()) != a.size()) {
    rep.fail("iso_size", "arrow counts differ");
    return rep;
  }
  std::vector<bool> hit(b.size(), false);
  for (int x = 0; x < a.size(); ++x) {
    if (iso.map[x] < 0 || iso.map[x] >= b.size() || hit[iso.map[x]]) {
      rep.fail("iso_bijective", "arrow " + std::to_string(x));
      return rep;
    }
    hit[iso.map[x]] = true;
  }
  for (int x = 0; x < a.size(); ++x)
    if (iso.map[a.inv(x)] != b.inv(iso.map[x]))
      rep.fail("iso_inverse", std::to_string(x));
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y) {
      bool da = a.composable(x, y);
      bool db = b.composable(iso.map[x], iso.map[y]);
      if (da != db) {
        rep.fail("iso_composability", pair_str(x, y));
        continue;
      }
      if (da && iso.map[a.comp(x, y)] != b.comp(iso.map[x], iso.map[y]))
        rep.fail("iso_multiplicative", pair_str(x, y));
    }
  return rep;
}

namespace {

bool extend_iso(const FiniteGroupoid& a, const FiniteGroupoid& b,
                std::vector<int>& map, std::vector<bool>& used, int next) {
  int n = a.size();
  if (next == n) return true;
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    // quick local compatibility
    if (a.is_unit(next) != b.is_unit(cand)) continue;
    bool ok = true;
    if (map[a.inv(next)] >= 0 && map[a.inv(next)] != b.inv(cand)) ok = false;
    for (int y = 0; ok && y < next; ++y) {
      bool d1 = a.composable(next, y);
      if (d1 != b.composable(cand, map[y])) ok = false;
      if (ok && d1 && map[a.comp(next, y)] >= 0 &&
          map[a.comp(next, y)] != b.comp(cand, map[y]))
        ok = false;
      bool d2 = a.composable(y, next);
      if (ok && d2 != b.composable(map[y], cand)) ok = false;
      if (ok && d2 && map[a.comp(y, next)] >= 0 &&
          map[a.comp(y, next)] != b.comp(map[y], cand))
        ok = false;
    }
    if (!ok) continue;
    if (a.composable(next, next) != b.composable(cand, cand)) continue;
    map[next] = cand;
    used[cand] = true;
    if (extend_iso(a, b, map, used, next + 1)) return true;
    map[next] = -1;
    used[cand] = false;
  }
  return false;
}

}  // namespace

std::optional<GroupoidIso> find_isomorphism(const GroupoidPtr& a,
                                            const GroupoidPtr& b) {
  if (a->size() != b->size()) return std::nullopt;
  std::vector<int> map(a->size(), -1);
  std::vector<bool> used(b->size(), false);
  if (!extend_iso(*a, *b, map, used, 0)) return std::nullopt;
  GroupoidIso iso{a, b, std::move(map)};
  if (!verify_iso(iso).ok()) return std::nullopt;
  return iso;
}

Bisection::Bisection(GroupoidPtr p, std::vector<int> arr)
    : parent(std::move(p)), arrows(std::move(arr)) {
  std::sort(arrows.begin(), arrows.end());
  arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
  if (!is_bisection(*parent, arrows))
    throw Error("arrow set is not a bisection");
}

bool is_bisection(const FiniteGroupoid& g, const std::vector<int>& arrows) {
  std::set<int> srcs, rngs;
  for (int a : arrows) {
    if (a < 0 || a >= g.size()) return false;
    if (!srcs.insert(g.src(a)).second) return false;
    if (!rngs.insert(g.rng(a)).second) return false;
  }
  return true;
}

Bisection bisection_product(const Bisection& u, const Bisection& v) {
  if (!same_groupoid(u.parent, v.parent))
    throw Error("bisections of different groupoids");
  const FiniteGroupoid& g = *u.parent;
  std::vector<int> out;
  for (int a : u.arrows)
    for (int b : v.arrows)
      if (g.composable(a, b)) out.push_back(g.comp(a, b));
  return Bisection(u.parent, std::move(out));
}

Bisection bisection_inverse(const Bisection& u) {
  std::vector<int> out;
  for (int a : u.arrows) out.push_back(u.parent->inv(a));
  return Bisection(u.parent, std::move(out));
}

Bisection units_bisection(const GroupoidPtr& g) {
  return Bisection(g, g->units());
}

}  // namespace gact
