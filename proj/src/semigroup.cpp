#include "gact/semigroup.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gact/cyclotomic.hpp"  // Error

namespace gact {

PartialBij PartialBij::identity(int n) {
  PartialBij p(n);
  for (int i = 0; i < n; ++i) p.img[i] = i;
  return p;
}

PartialBij PartialBij::compose(const PartialBij& o) const {
  PartialBij out(size());
  for (int x = 0; x < size(); ++x)
    if (o.defined(x) && defined(o(x))) out.img[x] = img[o(x)];
  return out;
}

PartialBij PartialBij::inverse() const {
  PartialBij out(size());
  for (int x = 0; x < size(); ++x)
    if (defined(x)) out.img[img[x]] = x;
  return out;
}

bool PartialBij::is_partial_identity() const {
  for (int x = 0; x < size(); ++x)
    if (defined(x) && img[x] != x) return false;
  return true;
}

bool PartialBij::is_injective() const {
  std::set<int> seen;
  for (int x = 0; x < size(); ++x)
    if (defined(x) && !seen.insert(img[x]).second) return false;
  return true;
}

Report SemigroupAction::validate() const {
  Report rep;
  if (identity < 0 || identity >= n_elements) {
    rep.fail("identity", "missing identity element");
    return rep;
  }
  for (int a = 0; a < n_elements; ++a) {
    if (mult[identity][a] != a || mult[a][identity] != a)
      rep.fail("identity", "element " + std::to_string(a));
    if (!act[a].is_injective())
      rep.fail("action_injective", std::to_string(a));
  }
  for (int a = 0; a < n_elements; ++a)
    for (int b = 0; b < n_elements; ++b)
      for (int c = 0; c < n_elements; ++c)
        if (mult[mult[a][b]][c] != mult[a][mult[b][c]]) {
          rep.fail("associativity", std::to_string(a) + "," +
                                        std::to_string(b) + "," +
                                        std::to_string(c));
          return rep;
        }
  for (int a = 0; a < n_elements; ++a) {
    int s = inverse[a];
    if (s < 0 || mult[mult[a][s]][a] != a || mult[mult[s][a]][s] != s)
      rep.fail("inverse", std::to_string(a));
  }
  // action is a homomorphism
  for (int a = 0; a < n_elements; ++a)
    for (int b = 0; b < n_elements; ++b)
      if (!(act[mult[a][b]] == act[a].compose(act[b])))
        rep.fail("action_hom", std::to_string(a) + "," + std::to_string(b));
  for (int x = 0; x < space; ++x)
    if (!act[identity].defined(x) || act[identity](x) != x)
      rep.fail("identity_action", "point " + std::to_string(x));
  return rep;
}

namespace {

std::vector<int> find_idempotents(const std::vector<std::vector<int>>& mult) {
  std::vector<int> out;
  for (size_t e = 0; e < mult.size(); ++e)
    if (mult[e][e] == static_cast<int>(e)) out.push_back(static_cast<int>(e));
  return out;
}

}  // namespace

SemigroupAction semigroup_from_partial_bijections(
    const std::vector<PartialBij>& elements) {
  if (elements.empty()) throw Error("empty semigroup");
  int space = elements[0].size();
  std::vector<PartialBij> elems;
  for (const auto& p : elements) {
    if (p.size() != space) throw Error("partial bijections on different sets");
    if (!p.is_injective()) throw Error("element is not a partial bijection");
    if (std::find(elems.begin(), elems.end(), p) == elems.end())
      elems.push_back(p);
  }
  PartialBij id = PartialBij::identity(space);
  if (std::find(elems.begin(), elems.end(), id) == elems.end())
    throw Error("semigroup does not contain the identity");
  int n = static_cast<int>(elems.size());
  SemigroupAction s;
  s.n_elements = n;
  s.space = space;
  s.act = elems;
  s.mult.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      PartialBij c = elems[a].compose(elems[b]);
      auto it = std::find(elems.begin(), elems.end(), c);
      if (it == elems.end())
        throw Error("set not closed under composition");
      s.mult[a][b] = static_cast<int>(it - elems.begin());
    }
  for (int a = 0; a < n; ++a) {
    PartialBij inv = elems[a].inverse();
    auto it = std::find(elems.begin(), elems.end(), inv);
    if (it == elems.end()) throw Error("set not closed under inverse");
    s.inverse.push_back(static_cast<int>(it - elems.begin()));
  }
  s.identity =
      static_cast<int>(std::find(elems.begin(), elems.end(), id) - elems.begin());
  s.idempotents = find_idempotents(s.mult);
  return s;
}

BisectionSemigroup bisection_semigroup(const GroupoidPtr& g,
                                       const std::vector<Bisection>& gens) {
  // coverage check
  std::vector<bool> covered(g->size(), false);
  for (const auto& u : gens) {
    if (!same_groupoid(u.parent, g))
      throw Error("generator bisection of a different groupoid");
    for (int a : u.arrows) covered[a] = true;
  }
  for (int a = 0; a < g->size(); ++a)
    if (!covered[a])
      throw Error("generators fail to cover arrow " + std::to_string(a));

  std::vector<Bisection> elems;
  auto add = [&](const Bisection& b) -> bool {
    if (std::find(elems.begin(), elems.end(), b) == elems.end()) {
      elems.push_back(b);
      return true;
    }
    return false;
  };
  add(units_bisection(g));
  for (const auto& u : gens) add(u);
  // close under product and inverse
  bool grew = true;
  while (grew) {
    grew = false;
    size_t cur = elems.size();
    for (size_t i = 0; i < cur; ++i)
      if (add(bisection_inverse(elems[i]))) grew = true;
    for (size_t i = 0; i < cur; ++i)
      for (size_t j = 0; j < cur; ++j)
        if (add(bisection_product(elems[i], elems[j]))) grew = true;
  }
  std::sort(elems.begin(), elems.end());

  int n = static_cast<int>(elems.size());
  int nu = static_cast<int>(g->units().size());
  std::map<int, int> unit_index;  // unit arrow -> point index
  for (int i = 0; i < nu; ++i) unit_index[g->units()[i]] = i;

  SemigroupAction s;
  s.n_elements = n;
  s.space = nu;
  s.mult.assign(n, std::vector<int>(n, -1));
  auto index_of = [&](const Bisection& b) {
    auto it = std::lower_bound(elems.begin(), elems.end(), b);
    if (it == elems.end() || !(*it == b))
      throw Error("bisection closure incomplete");
    return static_cast<int>(it - elems.begin());
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      s.mult[a][b] = index_of(bisection_product(elems[a], elems[b]));
  for (int a = 0; a < n; ++a)
    s.inverse.push_back(index_of(bisection_inverse(elems[a])));
  for (int a = 0; a < n; ++a) {
    PartialBij p(nu);
    for (int arr : elems[a].arrows)
      p.img[unit_index.at(g->src(arr))] = unit_index.at(g->rng(arr));
    s.act.push_back(p);
  }
  s.identity = index_of(units_bisection(g));
  s.idempotents = find_idempotents(s.mult);
  return BisectionSemigroup{std::move(s), std::move(elems)};
}

GermGroupoid germ_transformation_groupoid(const SemigroupAction& s) {
  Report v = s.validate();
  if (!v.ok()) throw Error("invalid semigroup action: " + v.summary());
  int n = s.n_elements, m = s.space;

  // pairs (t, x) with x in dom(act t)
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<int>> pair_idx(n, std::vector<int>(m, -1));
  for (int t = 0; t < n; ++t)
    for (int x = 0; x < m; ++x)
      if (s.act[t].defined(x)) {
        pair_idx[t][x] = static_cast<int>(pairs.size());
        pairs.emplace_back(t, x);
      }

  auto equivalent = [&](int t, int u, int x) {
    for (int e : s.idempotents)
      if (s.act[e].defined(x) && s.mult[t][e] == s.mult[u][e]) return true;
    return false;
  };

  // union-find over pairs at the same point
  std::vector<int> cls(pairs.size(), -1);
  int n_classes = 0;
  std::vector<std::pair<int, int>> reps;
  for (size_t p = 0; p < pairs.size(); ++p) {
    if (cls[p] >= 0) continue;
    cls[p] = n_classes;
    reps.push_back(pairs[p]);
    for (size_t q = p + 1; q < pairs.size(); ++q) {
      if (cls[q] >= 0 || pairs[q].second != pairs[p].second) continue;
      if (equivalent(pairs[p].first, pairs[q].first, pairs[p].second))
        cls[q] = n_classes;
    }
    ++n_classes;
  }

  std::vector<std::vector<int>> class_of(n, std::vector<int>(m, -1));
  for (size_t p = 0; p < pairs.size(); ++p)
    class_of[pairs[p].first][pairs[p].second] = cls[p];

  // groupoid tables on classes: [t,x]^{-1} = [t*, t.x];
  // [t,x][u,y] = [tu, y] when x = u.y
  std::vector<int> inv(n_classes);
  for (int c = 0; c < n_classes; ++c) {
    auto [t, x] = reps[c];
    inv[c] = class_of[s.inverse[t]][s.act[t](x)];
  }
  std::set<std::tuple<int, int, int>> comp_set;
  for (int c1 = 0; c1 < n_classes; ++c1) {
    auto [t, x] = reps[c1];
    for (int c2 = 0; c2 < n_classes; ++c2) {
      auto [u, y] = reps[c2];
      if (s.act[u](y) != x) continue;
      int prod = class_of[s.mult[t][u]][y];
      if (prod < 0) throw Error("germ product escaped the semigroup");
      comp_set.emplace(c1, c2, prod);
    }
  }
  // well-definedness across representatives
  for (size_t p = 0; p < pairs.size(); ++p) {
    auto [t, x] = pairs[p];
    for (size_t q = 0; q < pairs.size(); ++q) {
      auto [u, y] = pairs[q];
      if (s.act[u](y) != x) continue;
      int prod = class_of[s.mult[t][u]][y];
      std::tuple<int, int, int> want{cls[p], cls[q], prod};
      if (comp_set.find(want) == comp_set.end())
        throw Error("germ multiplication not well-defined");
    }
  }
  std::vector<std::tuple<int, int, int>> comps(comp_set.begin(),
                                               comp_set.end());
  GermGroupoid out;
  out.groupoid = make_groupoid(n_classes, std::move(inv), comps);
  out.rep = std::move(reps);
  out.class_of = std::move(class_of);
  Report rep = validate_groupoid(*out.groupoid);
  if (!rep.ok())
    throw Error("germ construction produced an invalid groupoid: " +
                rep.summary());
  return out;
}

GermGroupoid germ_transformation_groupoid(
    const std::vector<PartialBij>& elements) {
  return germ_transformation_groupoid(
      semigroup_from_partial_bijections(elements));
}

BisGermIso bis_germ_iso(const GroupoidPtr& g,
                        const std::vector<Bisection>& gens) {
  BisGermIso out{bisection_semigroup(g, gens), {}, {}};
  out.germ = germ_transformation_groupoid(out.semigroup.action);

  std::map<int, int> unit_index;
  const auto& units = g->units();
  for (size_t i = 0; i < units.size(); ++i)
    unit_index[units[i]] = static_cast<int>(i);

  std::vector<int> map(g->size(), -1);
  for (int arr = 0; arr < g->size(); ++arr) {
    int elem = -1;
    for (size_t e = 0; e < out.semigroup.elements.size(); ++e) {
      const auto& arrows = out.semigroup.elements[e].arrows;
      if (std::binary_search(arrows.begin(), arrows.end(), arr)) {
        elem = static_cast<int>(e);
        break;
      }
    }
    if (elem < 0) throw Error("arrow not covered after closure");
    map[arr] = out.germ.germ(elem, unit_index.at(g->src(arr)));
  }
  out.iso = GroupoidIso{g, out.germ.groupoid, std::move(map)};
  Report rep = verify_iso(out.iso);
  if (!rep.ok())
    throw Error("Bis(G) germ isomorphism failed verification: " +
                rep.summary());
  return out;
}

}  // namespace gact
