#include "gact/actor.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gact/cyclotomic.hpp"  // Error

namespace gact {

namespace {

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

Report validate_actor(const Actor& h) {
  Report rep;
  const FiniteGroupoid& g = *h.dom;
  const FiniteGroupoid& c = *h.cod;
  if (static_cast<int>(h.anchor.size()) != c.size() ||
      static_cast<int>(h.act.size()) != g.size() * c.size()) {
    rep.fail("tables", "anchor or action table has wrong shape");
    return rep;
  }
  for (int x = 0; x < c.size(); ++x)
    if (h.anchor[x] < 0 || h.anchor[x] >= g.size() || !g.is_unit(h.anchor[x]))
      rep.fail("anchor_range", "anchor of " + std::to_string(x) +
                                   " is not a unit of the domain");
  if (!rep.ok()) return rep;

  // definedness: act(g, x) defined exactly when src(g) = anchor(x)
  for (int a = 0; a < g.size(); ++a)
    for (int x = 0; x < c.size(); ++x) {
      bool want = g.src(a) == h.anchor[x];
      bool have = h.defined(a, x);
      if (want != have)
        rep.fail("act_domain", pair_str(a, x));
      if (have && (h.action(a, x) < 0 || h.action(a, x) >= c.size()))
        rep.fail("act_range", pair_str(a, x));
    }
  if (!rep.ok()) return rep;

  // rho(g.x) = rng(g)
  for (int a = 0; a < g.size(); ++a)
    for (int x = 0; x < c.size(); ++x)
      if (h.defined(a, x) && h.anchor[h.action(a, x)] != g.rng(a))
        rep.fail("anchor_of_action", pair_str(a, x));

  // g1.(g2.x) = (g1 g2).x
  for (int a1 = 0; a1 < g.size(); ++a1)
    for (int a2 = 0; a2 < g.size(); ++a2) {
      if (!g.composable(a1, a2)) continue;
      int a12 = g.comp(a1, a2);
      for (int x = 0; x < c.size(); ++x) {
        if (!h.defined(a2, x)) continue;
        int y = h.action(a2, x);
        if (!h.defined(a1, y) || !h.defined(a12, x) ||
            h.action(a1, y) != h.action(a12, x))
          rep.fail("associativity",
                   "(" + std::to_string(a1) + "," + std::to_string(a2) + "," +
                       std::to_string(x) + ")");
      }
    }

  // rho(x).x = x
  for (int x = 0; x < c.size(); ++x)
    if (!h.defined(h.anchor[x], x) || h.action(h.anchor[x], x) != x)
      rep.fail("unit_acts_trivially", std::to_string(x));

  // src(g.x) = src(x) and g.(xy) = (g.x)y; rho(xy) = rho(x)
  for (int x = 0; x < c.size(); ++x)
    for (int y = 0; y < c.size(); ++y) {
      if (!c.composable(x, y)) continue;
      int xy = c.comp(x, y);
      if (h.anchor[xy] != h.anchor[x])
        rep.fail("anchor_right_invariant", pair_str(x, y));
    }
  for (int a = 0; a < g.size(); ++a)
    for (int x = 0; x < c.size(); ++x) {
      if (!h.defined(a, x)) continue;
      if (c.src(h.action(a, x)) != c.src(x))
        rep.fail("source_preserved", pair_str(a, x));
      for (int y = 0; y < c.size(); ++y) {
        if (!c.composable(x, y)) continue;
        int xy = c.comp(x, y);
        if (!h.defined(a, xy) ||
            !c.composable(h.action(a, x), y) ||
            h.action(a, xy) != c.comp(h.action(a, x), y))
          rep.fail("right_multiplication",
                   "(" + std::to_string(a) + "," + std::to_string(x) + "," +
                       std::to_string(y) + ")");
      }
    }
  return rep;
}

Actor identity_actor(const GroupoidPtr& g) {
  Actor h;
  h.dom = g;
  h.cod = g;
  h.anchor.resize(g->size());
  for (int x = 0; x < g->size(); ++x) h.anchor[x] = g->rng(x);
  h.act.assign(static_cast<size_t>(g->size()) * g->size(), -1);
  for (int a = 0; a < g->size(); ++a)
    for (int x = 0; x < g->size(); ++x)
      if (g->composable(a, x)) h.act[a * g->size() + x] = g->comp(a, x);
  return h;
}

Actor compose_actors(const Actor& k, const Actor& h) {
  if (!same_groupoid(h.cod, k.dom))
    throw Error("actors not composable: cod(h) != dom(k)");
  Actor kh;
  kh.dom = h.dom;
  kh.cod = k.cod;
  int nk = k.cod->size();
  kh.anchor.resize(nk);
  for (int x = 0; x < nk; ++x) kh.anchor[x] = h.anchor[k.anchor[x]];
  kh.act.assign(static_cast<size_t>(h.dom->size()) * nk, -1);
  for (int a = 0; a < h.dom->size(); ++a)
    for (int x = 0; x < nk; ++x) {
      if (h.dom->src(a) != kh.anchor[x]) continue;
      int mid = h.action(a, k.anchor[x]);  // g .h rho_k(x)
      kh.act[a * nk + x] = k.action(mid, x);
    }
  return kh;
}

EquivariantActor actor_from_equivariant_map(
    const std::vector<std::vector<int>>& group_mult,
    const std::vector<std::vector<int>>& action_x,
    const std::vector<std::vector<int>>& action_y,
    const std::vector<int>& rho0) {
  int ng = static_cast<int>(group_mult.size());
  int nx = action_x.empty() ? 0 : static_cast<int>(action_x[0].size());
  int ny = action_y.empty() ? 0 : static_cast<int>(action_y[0].size());
  if (static_cast<int>(rho0.size()) != nx)
    throw Error("equivariant map has wrong length");
  for (int g = 0; g < ng; ++g)
    for (int x = 0; x < nx; ++x)
      if (rho0[action_x[g][x]] != action_y[g][rho0[x]])
        throw Error("map is not equivariant at " + pair_str(g, x));

  EquivariantActor out;
  out.dom = group_transformation_groupoid(group_mult, ny, action_y);
  out.cod = group_transformation_groupoid(group_mult, nx, action_x);
  Actor& h = out.actor;
  h.dom = out.dom;
  h.cod = out.cod;
  // arrow of cod: (g, x) = g*nx + x; anchor = unit (1, rho0(g.x)) of dom
  int e = -1;
  for (int cand = 0; cand < ng; ++cand) {
    bool ok = true;
    for (int b = 0; b < ng; ++b)
      if (group_mult[cand][b] != b || group_mult[b][cand] != b) ok = false;
    if (ok) e = cand;
  }
  h.anchor.resize(out.cod->size());
  for (int g = 0; g < ng; ++g)
    for (int x = 0; x < nx; ++x)
      h.anchor[g * nx + x] = e * ny + rho0[action_x[g][x]];
  // (t, y) . (u, x) = (t u, x), defined when y = rho0(u.x)
  h.act.assign(static_cast<size_t>(out.dom->size()) * out.cod->size(), -1);
  for (int t = 0; t < ng; ++t)
    for (int y = 0; y < ny; ++y)
      for (int u = 0; u < ng; ++u)
        for (int x = 0; x < nx; ++x)
          if (y == rho0[action_x[u][x]])
            h.act[(t * ny + y) * out.cod->size() + (u * nx + x)] =
                group_mult[t][u] * nx + x;
  Report rep = validate_actor(h);
  if (!rep.ok())
    throw Error("equivariant construction failed validation: " +
                rep.summary());
  return out;
}

Actor actor_from_homomorphism(const GroupoidPtr& h_grpd,
                              const GroupoidPtr& g_grpd,
                              const std::vector<int>& phi) {
  const FiniteGroupoid& hg = *h_grpd;
  const FiniteGroupoid& gg = *g_grpd;
  if (static_cast<int>(phi.size()) != hg.size())
    throw Error("homomorphism table has wrong length");
  for (int x = 0; x < hg.size(); ++x)
    if (phi[x] < 0 || phi[x] >= gg.size())
      throw Error("homomorphism image out of range");
  for (int x = 0; x < hg.size(); ++x)
    for (int y = 0; y < hg.size(); ++y) {
      if (!hg.composable(x, y)) continue;
      if (!gg.composable(phi[x], phi[y]) ||
          gg.comp(phi[x], phi[y]) != phi[hg.comp(x, y)])
        throw Error("phi is not a homomorphism at " + pair_str(x, y));
    }
  for (int x = 0; x < hg.size(); ++x)
    if (phi[hg.inv(x)] != gg.inv(phi[x]))
      throw Error("phi does not preserve inverses at " + std::to_string(x));

  // fibrewise bijectivity: phi restricted to each source fibre
  std::map<std::pair<int, int>, int> fibre_inverse;  // (unit t of H, g) -> x
  for (int t : hg.units()) {
    std::set<int> image;
    for (int x : hg.source_fibre(t)) {
      if (!image.insert(phi[x]).second)
        throw Error("phi not injective on fibre at unit " + std::to_string(t));
      fibre_inverse[{t, phi[x]}] = x;
    }
    std::vector<int> target = gg.source_fibre(phi[t]);
    if (image.size() != target.size())
      throw Error("phi not surjective on fibre at unit " + std::to_string(t));
  }

  Actor h;
  h.dom = g_grpd;
  h.cod = h_grpd;
  h.anchor.resize(hg.size());
  for (int x = 0; x < hg.size(); ++x) h.anchor[x] = phi[hg.rng(x)];
  h.act.assign(static_cast<size_t>(gg.size()) * hg.size(), -1);
  for (int a = 0; a < gg.size(); ++a)
    for (int x = 0; x < hg.size(); ++x) {
      if (gg.src(a) != h.anchor[x]) continue;
      // unique y in H with src(y) = rng(x) and phi(y) = a; act = y x
      auto it = fibre_inverse.find({hg.rng(x), a});
      if (it == fibre_inverse.end())
        throw Error("fibre inverse missing; phi not fibrewise bijective");
      h.act[a * hg.size() + x] = hg.comp(it->second, x);
    }
  Report rep = validate_actor(h);
  if (!rep.ok())
    throw Error("homomorphism construction failed validation: " +
                rep.summary());
  return h;
}

EntwinedActor actor_from_entwining_pair(const SemigroupAction& t_on_y,
                                        const SemigroupAction& s_on_x,
                                        const std::vector<int>& psi,
                                        const std::vector<int>& rho) {
  if (static_cast<int>(psi.size()) != t_on_y.n_elements)
    throw Error("psi has wrong length");
  if (static_cast<int>(rho.size()) != s_on_x.space)
    throw Error("rho has wrong length");
  // psi is a semigroup homomorphism
  for (int a = 0; a < t_on_y.n_elements; ++a)
    for (int b = 0; b < t_on_y.n_elements; ++b)
      if (psi[t_on_y.mult[a][b]] != s_on_x.mult[psi[a]][psi[b]])
        throw Error("psi is not multiplicative at " + pair_str(a, b));
  // entwining: x in dom(psi(t)) iff rho(x) in dom(t); t.rho(x) = rho(psi(t).x)
  for (int t = 0; t < t_on_y.n_elements; ++t)
    for (int x = 0; x < s_on_x.space; ++x) {
      bool dx = s_on_x.act[psi[t]].defined(x);
      bool dy = t_on_y.act[t].defined(rho[x]);
      if (dx != dy)
        throw Error("entwining domain condition fails at " + pair_str(t, x));
      if (dx && t_on_y.act[t](rho[x]) != rho[s_on_x.act[psi[t]](x)])
        throw Error("entwining condition fails at " + pair_str(t, x));
    }

  EntwinedActor out;
  out.dom_germ = germ_transformation_groupoid(t_on_y);
  out.cod_germ = germ_transformation_groupoid(s_on_x);
  const GroupoidPtr& dg = out.dom_germ.groupoid;
  const GroupoidPtr& cg = out.cod_germ.groupoid;

  Actor& h = out.actor;
  h.dom = dg;
  h.cod = cg;
  // anchor of [u, x] is the unit [1_T, rho(u.x)]
  h.anchor.resize(cg->size());
  for (int w = 0; w < cg->size(); ++w) {
    auto [u, x] = out.cod_germ.rep[w];
    int pt = rho[s_on_x.act[u](x)];
    h.anchor[w] = out.dom_germ.germ(t_on_y.identity, pt);
  }
  h.act.assign(static_cast<size_t>(dg->size()) * cg->size(), -1);
  for (int a = 0; a < dg->size(); ++a) {
    auto [t, y] = out.dom_germ.rep[a];
    for (int w = 0; w < cg->size(); ++w) {
      auto [u, x] = out.cod_germ.rep[w];
      if (dg->src(a) != h.anchor[w]) continue;
      h.act[a * cg->size() + w] =
          out.cod_germ.germ(s_on_x.mult[psi[t]][u], x);
    }
  }
  // well-definedness across germ representatives
  for (int t = 0; t < t_on_y.n_elements; ++t)
    for (int y = 0; y < t_on_y.space; ++y) {
      if (!t_on_y.act[t].defined(y)) continue;
      int a = out.dom_germ.germ(t, y);
      for (int u = 0; u < s_on_x.n_elements; ++u)
        for (int x = 0; x < s_on_x.space; ++x) {
          if (!s_on_x.act[u].defined(x)) continue;
          int w = out.cod_germ.germ(u, x);
          if (dg->src(a) != h.anchor[w]) continue;
          if (y != rho[s_on_x.act[u](x)]) continue;
          int got = out.cod_germ.germ(s_on_x.mult[psi[t]][u], x);
          if (got != h.action(a, w))
            throw Error("entwined action not well-defined at (" +
                        std::to_string(t) + "," + std::to_string(u) + "," +
                        std::to_string(x) + ")");
        }
    }
  Report rep = validate_actor(h);
  if (!rep.ok())
    throw Error("entwined construction failed validation: " + rep.summary());
  return out;
}

Bisection dot_bisection(const Actor& h, const Bisection& u,
                        const Bisection& v) {
  if (!same_groupoid(u.parent, h.dom) || !same_groupoid(v.parent, h.cod))
    throw Error("bisections do not match the actor's groupoids");
  std::vector<int> arrows;
  std::map<int, std::pair<int, int>> factor;
  for (int a : u.arrows)
    for (int x : v.arrows) {
      if (!h.defined(a, x)) continue;
      int y = h.action(a, x);
      auto it = factor.find(y);
      if (it != factor.end() && it->second != std::make_pair(a, x))
        throw Error("dot bisection factorization not unique at " +
                    std::to_string(y));
      factor[y] = {a, x};
      arrows.push_back(y);
    }
  return Bisection(h.cod, std::move(arrows));  // ctor checks bisection-ness
}

CanonicalBisPair canonical_bis_pair(const Actor& h,
                                    const std::vector<Bisection>& gens_g) {
  CanonicalBisPair out;
  out.dom_iso = bis_germ_iso(h.dom, gens_g);

  Bisection cod_units = units_bisection(h.cod);
  std::vector<Bisection> gens_h;
  for (int x = 0; x < h.cod->size(); ++x)
    gens_h.push_back(Bisection(h.cod, {x}));
  for (const auto& u : out.dom_iso.semigroup.elements)
    gens_h.push_back(dot_bisection(h, u, cod_units));
  out.cod_iso = bis_germ_iso(h.cod, gens_h);

  const auto& selems = out.dom_iso.semigroup.elements;
  const auto& telems = out.cod_iso.semigroup.elements;
  out.psi.resize(selems.size());
  for (size_t i = 0; i < selems.size(); ++i) {
    Bisection img = dot_bisection(h, selems[i], cod_units);
    auto it = std::lower_bound(telems.begin(), telems.end(), img);
    if (it == telems.end() || !(*it == img))
      throw Error("psi image missing from codomain semigroup");
    out.psi[i] = static_cast<int>(it - telems.begin());
  }
  // psi is multiplicative on the generated semigroup (exhaustive)
  const auto& ms = out.dom_iso.semigroup.action.mult;
  const auto& mt = out.cod_iso.semigroup.action.mult;
  for (size_t i = 0; i < selems.size(); ++i)
    for (size_t j = 0; j < selems.size(); ++j)
      if (out.psi[ms[i][j]] != mt[out.psi[i]][out.psi[j]])
        throw Error("psi not multiplicative at (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");

  // rho restricted to units, in point coordinates
  std::map<int, int> gu, hu;
  for (size_t i = 0; i < h.dom->units().size(); ++i)
    gu[h.dom->units()[i]] = static_cast<int>(i);
  for (size_t i = 0; i < h.cod->units().size(); ++i)
    hu[h.cod->units()[i]] = static_cast<int>(i);
  out.rho.resize(h.cod->units().size());
  for (size_t i = 0; i < h.cod->units().size(); ++i)
    out.rho[i] = gu.at(h.anchor[h.cod->units()[i]]);

  out.induced = actor_from_entwining_pair(out.dom_iso.semigroup.action,
                                          out.cod_iso.semigroup.action,
                                          out.psi, out.rho);
  // the induced actor reproduces h through the germ isomorphisms
  const auto& di = out.dom_iso.iso.map;
  const auto& ci = out.cod_iso.iso.map;
  for (int a = 0; a < h.dom->size(); ++a)
    for (int x = 0; x < h.cod->size(); ++x) {
      bool d1 = h.defined(a, x);
      bool d2 = out.induced.actor.defined(di[a], ci[x]);
      if (d1 != d2 ||
          (d1 && ci[h.action(a, x)] != out.induced.actor.action(di[a], ci[x])))
        throw Error("canonical pair does not reproduce the actor at " +
                    pair_str(a, x));
    }
  return out;
}

std::vector<int> stable_space(const Actor& h, const Bisection& u) {
  std::vector<int> out;
  for (int t : h.cod->units()) {
    bool stable = false;
    for (int a : u.arrows) {
      if (h.dom->is_unit(a)) continue;
      if (h.dom->src(a) != h.anchor[t]) continue;
      if (h.action(a, t) == t) stable = true;
    }
    if (stable) out.push_back(t);
  }
  return out;
}

bool is_free(const Actor& h) {
  for (int t : h.cod->units())
    for (int a = 0; a < h.dom->size(); ++a) {
      if (h.dom->is_unit(a) || h.dom->src(a) != h.anchor[t]) continue;
      if (h.action(a, t) == t) return false;
    }
  return true;
}

bool anchor_surjective(const Actor& h) {
  std::set<int> hit;
  for (int x = 0; x < h.cod->size(); ++x) hit.insert(h.anchor[x]);
  for (int u : h.dom->units())
    if (hit.find(u) == hit.end()) return false;
  return true;
}

bool is_monomorphism_witness(const Actor& h, const Actor& k1,
                             const Actor& k2) {
  Actor c1 = compose_actors(h, k1);
  Actor c2 = compose_actors(h, k2);
  if (!c1.same_tables(c2)) return true;  // nothing to cancel
  return k1.same_tables(k2);
}

TransformationGroupoid transformation_groupoid(const Actor& h) {
  if (!is_free(h))
    throw Error("transformation groupoid requires a free actor");
  if (!anchor_surjective(h))
    throw Error("transformation groupoid requires a surjective anchor");
  const FiniteGroupoid& g = *h.dom;
  const FiniteGroupoid& c = *h.cod;

  TransformationGroupoid out;
  std::map<std::pair<int, int>, int> index;
  for (int a = 0; a < g.size(); ++a)
    for (int t : c.units())
      if (g.src(a) == h.anchor[t]) {
        index[{a, t}] = static_cast<int>(out.arrows.size());
        out.arrows.emplace_back(a, t);
      }
  int n = static_cast<int>(out.arrows.size());
  // g acts on the unit space by t -> rng(g.t)
  auto dot = [&](int a, int t) { return c.rng(h.action(a, t)); };
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) {
    auto [a, t] = out.arrows[i];
    inv[i] = index.at({g.inv(a), dot(a, t)});
  }
  std::vector<std::tuple<int, int, int>> comps;
  for (int i = 0; i < n; ++i) {
    auto [a, x] = out.arrows[i];
    for (int j = 0; j < n; ++j) {
      auto [b, y] = out.arrows[j];
      if (!g.composable(a, b)) continue;
      if (x != dot(b, y)) continue;
      comps.emplace_back(i, j, index.at({g.comp(a, b), y}));
    }
  }
  out.k = make_groupoid(n, std::move(inv), comps);
  Report rep = validate_groupoid(*out.k);
  if (!rep.ok())
    throw Error("transformation groupoid invalid: " + rep.summary());
  out.i_map.resize(n);
  out.p_map.resize(n);
  for (int i = 0; i < n; ++i) {
    auto [a, t] = out.arrows[i];
    out.i_map[i] = h.action(a, t);
    out.p_map[i] = a;
  }
  // i is an injective homomorphism, p surjective and fibrewise bijective
  std::set<int> image;
  for (int i = 0; i < n; ++i)
    if (!image.insert(out.i_map[i]).second)
      throw Error("embedding of transformation groupoid not injective");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool dk = out.k->composable(i, j);
      if (!dk) continue;
      if (!c.composable(out.i_map[i], out.i_map[j]) ||
          c.comp(out.i_map[i], out.i_map[j]) != out.i_map[out.k->comp(i, j)])
        throw Error("embedding not multiplicative");
      if (!g.composable(out.p_map[i], out.p_map[j]) ||
          g.comp(out.p_map[i], out.p_map[j]) != out.p_map[out.k->comp(i, j)])
        throw Error("projection not multiplicative");
    }
  std::set<int> pimg(out.p_map.begin(), out.p_map.end());
  if (static_cast<int>(pimg.size()) != g.size())
    throw Error("projection not surjective");
  for (int t : out.k->units()) {
    std::set<int> fibre_img;
    for (int i : out.k->source_fibre(t))
      if (!fibre_img.insert(out.p_map[i]).second)
        throw Error("projection not fibrewise injective");
    if (fibre_img.size() !=
        g.source_fibre(g.src(out.p_map[t])).size())
      throw Error("projection not fibrewise surjective");
  }
  return out;
}

}  // namespace gact
