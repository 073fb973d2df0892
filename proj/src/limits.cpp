#include "gact/limits.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gact {

std::vector<GroupoidPtr> system_groupoids(const InductiveSystem& sys) {
  if (sys.chain.empty()) throw Error("empty inductive system");
  std::vector<GroupoidPtr> gs{sys.chain[0].dom};
  for (const Actor& h : sys.chain) gs.push_back(h.cod);
  return gs;
}

Report validate_system(const InductiveSystem& sys) {
  Report rep;
  if (sys.chain.empty()) {
    rep.fail("chain", "empty system");
    return rep;
  }
  for (size_t n = 0; n < sys.chain.size(); ++n) {
    const Actor& h = sys.chain[n];
    Report ar = validate_actor(h);
    if (!ar.ok()) {
      rep.fail("actor",
               "h_" + std::to_string(n) + ": " + ar.failures[0].check);
      continue;
    }
    if (!is_free(h)) rep.fail("free", "h_" + std::to_string(n));
    if (!anchor_surjective(h))
      rep.fail("anchor_surjective", "h_" + std::to_string(n));
    if (n + 1 < sys.chain.size() &&
        !same_groupoid(h.cod, sys.chain[n + 1].dom))
      rep.fail("chain", "cod(h_" + std::to_string(n) + ") != dom(h_" +
                            std::to_string(n + 1) + ")");
  }
  if (!sys.fell_chain.empty()) {
    if (sys.fell_chain.size() != sys.chain.size())
      rep.fail("fell_chain", "length differs from the actor chain");
    for (size_t n = 0; n < sys.fell_chain.size() && rep.ok(); ++n) {
      const FellActor& a = sys.fell_chain[n];
      if (!a.under.same_tables(sys.chain[n]))
        rep.fail("fell_chain",
                 "underlying actor differs at " + std::to_string(n));
      FellActorFlags flags;
      Report fr = validate_fell_actor(a, &flags);
      if (!fr.ok()) {
        rep.fail("fell_actor", "A_" + std::to_string(n));
        continue;
      }
      if (!flags.saturated) rep.fail("fell_saturated", std::to_string(n));
      if (!flags.free_actor) rep.fail("fell_free", std::to_string(n));
      FellFlags bf;
      Report br = validate_fell_bundle(*a.dom, &bf);
      if (!br.ok() || !bf.categorical || !bf.saturated)
        rep.fail("fell_bundle", "E_" + std::to_string(n));
      Report cr = validate_fell_bundle(*a.cod, &bf);
      if (!cr.ok() || !bf.categorical || !bf.saturated)
        rep.fail("fell_bundle", "E_" + std::to_string(n + 1));
    }
  }
  return rep;
}

namespace {

bool in_chain(const InductiveSystem& sys, int j) {
  if (j < static_cast<int>(sys.chain.size())) return true;
  if (!sys.stationary)
    throw Error("index beyond the chain of a non-stationary system");
  return false;  // identity slot of the stationary tail
}

Actor chain_step(const InductiveSystem& sys, int j) {
  if (in_chain(sys, j)) return sys.chain[j];
  return identity_actor(system_groupoids(sys).back());
}

FellActor fell_step(const InductiveSystem& sys, int j) {
  if (in_chain(sys, j)) return sys.fell_chain[j];
  return identity_fell_actor(sys.fell_chain.back().cod);
}

}  // namespace

Actor composite_actor(const InductiveSystem& sys, int n, int m) {
  if (n > m) throw Error("composite actor needs n <= m");
  auto gs = system_groupoids(sys);
  GroupoidPtr gn = n < static_cast<int>(gs.size()) ? gs[n] : gs.back();
  Actor acc = identity_actor(gn);
  for (int j = n; j < m; ++j) acc = compose_actors(chain_step(sys, j), acc);
  return acc;
}

FellActor composite_fell_actor(const InductiveSystem& sys, int n, int m) {
  if (sys.fell_chain.empty()) throw Error("system has no Fell chain");
  if (n > m) throw Error("composite actor needs n <= m");
  FellPtr en = n < static_cast<int>(sys.fell_chain.size())
                   ? sys.fell_chain[n].dom
                   : sys.fell_chain.back().cod;
  FellActor acc = identity_fell_actor(en);
  for (int j = n; j < m; ++j)
    acc = compose_fell_actors(fell_step(sys, j), acc);
  return acc;
}

StageGroupoid stage_groupoid(const InductiveSystem& sys, int n, int m) {
  Actor h = composite_actor(sys, n, n + m);
  const FiniteGroupoid& amb = *h.cod;
  const FiniteGroupoid& gn = *h.dom;

  std::set<int> arrows;
  std::map<int, std::pair<int, int>> factor;  // ambient arrow -> (gamma, t)
  for (int g = 0; g < gn.size(); ++g)
    for (int t : amb.units()) {
      if (!h.defined(g, t)) continue;
      int w = h.action(g, t);
      arrows.insert(w);
      factor[w] = {g, t};  // unique by freeness
    }
  std::vector<int> ambient(arrows.begin(), arrows.end());
  std::map<int, int> index;
  for (size_t i = 0; i < ambient.size(); ++i)
    index[ambient[i]] = static_cast<int>(i);

  int sz = static_cast<int>(ambient.size());
  std::vector<int> inv(sz);
  std::vector<std::tuple<int, int, int>> comps;
  for (int i = 0; i < sz; ++i) {
    auto it = index.find(amb.inv(ambient[i]));
    if (it == index.end())
      throw Error("stage groupoid not closed under inverses");
    inv[i] = it->second;
  }
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) {
      if (!amb.composable(ambient[i], ambient[j])) continue;
      auto it = index.find(amb.comp(ambient[i], ambient[j]));
      if (it == index.end())
        throw Error("stage groupoid not closed under composition");
      comps.emplace_back(i, j, it->second);
    }
  StageGroupoid out;
  out.g = make_groupoid(sz, std::move(inv), comps);
  out.ambient = std::move(ambient);
  Report rep = validate_groupoid(*out.g);
  if (!rep.ok()) throw Error("stage groupoid invalid: " + rep.summary());

  if (m >= 1) {
    // p(gamma . t) = gamma . rho_{n+m-1}(t), an arrow of G_{n,m-1}
    Actor prev = composite_actor(sys, n, n + m - 1);
    Actor last = chain_step(sys, n + m - 1);
    out.proj.resize(sz);
    for (int i = 0; i < sz; ++i) {
      auto [g, t] = factor.at(out.ambient[i]);
      out.proj[i] = prev.action(g, last.anchor[t]);
    }
    StageGroupoid prev_stage = stage_groupoid(sys, n, m - 1);
    std::set<int> hit(out.proj.begin(), out.proj.end());
    std::set<int> want(prev_stage.ambient.begin(), prev_stage.ambient.end());
    if (hit != want) throw Error("stage projection not surjective");
    for (int i = 0; i < sz; ++i)
      for (int j = 0; j < sz; ++j) {
        if (!out.g->composable(i, j)) continue;
        int pij = out.proj[out.g->comp(i, j)];
        if (!prev.cod->composable(out.proj[i], out.proj[j]) ||
            prev.cod->comp(out.proj[i], out.proj[j]) != pij)
          throw Error("stage projection not a homomorphism");
      }
    for (int t = 0; t < out.g->size(); ++t) {
      if (!out.g->is_unit(t)) continue;
      std::set<int> fibre;
      for (int i : out.g->source_fibre(t))
        if (!fibre.insert(out.proj[i]).second)
          throw Error("stage projection not fibrewise injective");
    }
  }
  return out;
}

bool tower_inclusion_check(const InductiveSystem& sys, int n, int m, int k) {
  StageGroupoid inner = stage_groupoid(sys, n, m + k);
  StageGroupoid outer = stage_groupoid(sys, n + k, m);
  std::set<int> outer_set(outer.ambient.begin(), outer.ambient.end());
  for (int w : inner.ambient)
    if (outer_set.find(w) == outer_set.end()) return false;
  return true;
}

LimitGroupoid limit_groupoid(const InductiveSystem& sys) {
  if (!sys.stationary)
    throw Error("limits exist only for stationary systems");
  Report rep = validate_system(sys);
  if (!rep.ok()) throw Error("invalid inductive system: " + rep.summary());
  int nsteps = static_cast<int>(sys.chain.size());

  LimitGroupoid out;
  out.limit = system_groupoids(sys).back();
  out.stabilization_depth = 0;
  // towers become constant at depth <= N - n; verify and record
  for (int n = 0; n <= nsteps; ++n) {
    int bound = std::max(nsteps - n, 0);
    StageGroupoid stable = stage_groupoid(sys, n, bound);
    StageGroupoid next = stage_groupoid(sys, n, bound + 1);
    if (stable.ambient != next.ambient)
      throw Error("tower failed to stabilize at the predicted depth");
    int depth = bound;
    while (depth > 0) {
      StageGroupoid prev = stage_groupoid(sys, n, depth - 1);
      StageGroupoid cur = stage_groupoid(sys, n, depth);
      if (cur.ambient.size() != prev.ambient.size()) break;
      depth--;
    }
    out.stabilization_depth = std::max(out.stabilization_depth, depth);
  }
  // stabilized stages are nested along the shift embeddings
  for (int n = 0; n + 1 <= nsteps; ++n)
    if (!tower_inclusion_check(sys, n, std::max(nsteps - n - 1, 0), 1))
      throw Error("stabilized stages are not nested");

  for (int k = 0; k <= nsteps; ++k)
    out.legs.push_back(composite_actor(sys, k, nsteps));
  for (int k = 0; k < nsteps; ++k) {
    Actor rhs = compose_actors(out.legs[k + 1], sys.chain[k]);
    if (!out.legs[k].same_tables(rhs))
      throw Error("cocone identity fails at leg " + std::to_string(k));
  }
  for (const Actor& j : out.legs)
    if (!is_free(j) || !anchor_surjective(j))
      throw Error("limit legs must be free with surjective anchors");
  return out;
}

Actor universality_check(const LimitGroupoid& l,
                         const std::vector<Actor>& family) {
  if (family.size() != l.legs.size())
    throw Error("family length does not match the system");
  for (size_t n = 0; n + 1 < family.size(); ++n) {
    if (!same_groupoid(family[n].dom, l.legs[n].dom))
      throw Error("family member " + std::to_string(n) +
                  " has the wrong domain");
    if (!same_groupoid(family[n].cod, family[n + 1].cod))
      throw Error("family members act on different groupoids");
  }
  Actor mediating = family.back();  // the stabilized member
  for (size_t n = 0; n < family.size(); ++n) {
    Actor through = compose_actors(mediating, l.legs[n]);
    if (!through.same_tables(family[n]))
      throw Error("family incompatible with the limit at index " +
                  std::to_string(n));
  }
  return mediating;
}

bool mediating_agrees(const LimitGroupoid& l, const std::vector<Actor>& family,
                      const Actor& candidate) {
  for (size_t n = 0; n < family.size(); ++n) {
    Actor through = compose_actors(candidate, l.legs[n]);
    if (!through.same_tables(family[n])) return false;
  }
  return candidate.same_tables(universality_check(l, family));
}

LimitAlgebra limit_algebra_check(const InductiveSystem& sys,
                                 const FieldPtr& field) {
  LimitGroupoid lg = limit_groupoid(sys);
  int nsteps = static_cast<int>(sys.chain.size());
  LimitAlgebra out;
  out.colimit = convolution_algebra(system_groupoids(sys).back(), field);

  for (int n = 0; n <= nsteps; ++n) {
    AlgebraHom lambda;
    if (n == nsteps) {
      lambda = AlgebraHom{out.colimit, out.colimit,
                          cmat_identity(field, out.colimit->dim)};
    } else {
      lambda = induced_hom(sys.chain[n], field);
      for (int j = n + 1; j < nsteps; ++j)
        lambda = compose_homs(induced_hom(sys.chain[j], field), lambda);
    }
    if (!kernel(lambda).empty())
      throw Error("colimit leg not injective at " + std::to_string(n));
    out.colimit_legs.push_back(std::move(lambda));
  }

  auto limit_alg = convolution_algebra(lg.limit, field);
  out.iso = AlgebraHom{out.colimit, limit_alg,
                       cmat_identity(field, out.colimit->dim)};
  Report hrep = verify_star_hom(out.iso);
  if (!hrep.ok())
    throw Error("limit comparison not a *-hom: " + hrep.summary());
  for (int n = 0; n <= nsteps; ++n) {
    out.limit_legs.push_back(induced_hom(lg.legs[n], field));
    CMat through = cmat_mul(out.iso.matrix, out.colimit_legs[n].matrix);
    if (!(through == out.limit_legs[n].matrix))
      throw Error("leg comparison fails at " + std::to_string(n));
  }
  return out;
}

LimitFell limit_fell_bundle(const InductiveSystem& sys) {
  if (sys.fell_chain.empty()) throw Error("system has no Fell chain");
  LimitGroupoid lg = limit_groupoid(sys);
  (void)lg;
  int nsteps = static_cast<int>(sys.chain.size());
  LimitFell out;
  out.limit = sys.fell_chain.back().cod;

  for (int k = 0; k <= nsteps; ++k)
    out.legs.push_back(composite_fell_actor(sys, k, nsteps));
  for (int k = 0; k < nsteps; ++k) {
    FellActor rhs = compose_fell_actors(out.legs[k + 1], sys.fell_chain[k]);
    if (!out.legs[k].same_tables(rhs))
      throw Error("Fell cocone identity fails at leg " + std::to_string(k));
  }
  for (const FellActor& j : out.legs) {
    FellActorFlags flags;
    Report rep = validate_fell_actor(j, &flags);
    if (!rep.ok() || !flags.saturated || !flags.free_actor)
      throw Error("limit Fell legs must be free and saturated");
  }

  const FieldPtr& field = out.limit->field;
  auto colimit = section_algebra(sys.fell_chain.back().cod, field);
  out.iso = AlgebraHom{colimit, section_algebra(out.limit, field),
                       cmat_identity(field, colimit->dim)};
  for (int n = 0; n <= nsteps; ++n) {
    AlgebraHom lambda;
    if (n == nsteps) {
      lambda =
          AlgebraHom{colimit, colimit, cmat_identity(field, colimit->dim)};
    } else {
      lambda = fell_hom(sys.fell_chain[n]);
      for (int j = n + 1; j < nsteps; ++j)
        lambda = compose_homs(fell_hom(sys.fell_chain[j]), lambda);
    }
    if (!kernel(lambda).empty())
      throw Error("Fell colimit leg not injective at " + std::to_string(n));
    AlgebraHom leg = fell_hom(out.legs[n]);
    CMat through = cmat_mul(out.iso.matrix, lambda.matrix);
    if (!(through == leg.matrix))
      throw Error("Fell leg comparison fails at " + std::to_string(n));
  }
  return out;
}

}  // namespace gact
