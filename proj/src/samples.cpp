#include "gact/samples.hpp"

#include <algorithm>
#include <numeric>

namespace gact {

namespace {

int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<std::vector<int>> cyclic_table(int m) {
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return t;
}

std::vector<std::vector<int>> klein_table() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      t[a][b] = ((a >> 1) ^ (b >> 1)) * 2 + ((a & 1) ^ (b & 1));
  return t;
}

// translation action of Z/m on a disjoint union of orbits Z/d with d | m
struct OrbitAction {
  int space = 0;
  std::vector<int> orbit_size;   // one entry per orbit
  std::vector<int> orbit_start;  // starting point index
  std::vector<std::vector<int>> table;  // group element -> permutation
};

OrbitAction orbit_action(int m, const std::vector<int>& orbit_sizes) {
  OrbitAction a;
  a.orbit_size = orbit_sizes;
  for (int d : orbit_sizes) {
    a.orbit_start.push_back(a.space);
    a.space += d;
  }
  a.table.assign(m, std::vector<int>(a.space));
  for (int g = 0; g < m; ++g)
    for (size_t o = 0; o < orbit_sizes.size(); ++o) {
      int d = orbit_sizes[o], s = a.orbit_start[o];
      for (int x = 0; x < d; ++x) a.table[g][s + x] = s + (x + g) % d;
    }
  return a;
}

std::vector<int> divisors(int m) {
  std::vector<int> out;
  for (int d = 1; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

}  // namespace

std::vector<std::vector<int>> sample_group_table(Rng& rng, int max_order) {
  int which = pick(rng, 0, std::min(max_order, 4));
  switch (which) {
    case 0:
    case 1:
      return cyclic_table(std::min(2, max_order));
    case 2:
      return cyclic_table(2);
    case 3:
      return cyclic_table(3);
    default:
      return pick(rng, 0, 1) ? cyclic_table(4) : klein_table();
  }
}

GroupoidPtr sample_groupoid(Rng& rng, int max_arrows) {
  std::vector<GroupoidPtr> pieces;
  int budget = max_arrows;
  int n_pieces = pick(rng, 1, 3);
  for (int i = 0; i < n_pieces && budget >= 1; ++i) {
    int kind = pick(rng, 0, 2);
    if (kind == 0) {
      auto t = sample_group_table(rng, std::min(4, budget));
      if (static_cast<int>(t.size()) > budget) t = cyclic_table(1);
      pieces.push_back(from_group(t));
      budget -= static_cast<int>(t.size());
    } else if (kind == 1) {
      int k = pick(rng, 1, 3);
      while (k * k > budget && k > 1) --k;
      pieces.push_back(pair_groupoid(k));
      budget -= k * k;
    } else {
      int m = pick(rng, 2, 3);
      auto divs = divisors(m);
      std::vector<int> orbits;
      int space_budget = budget / m;
      int n_orb = pick(rng, 1, 2);
      for (int o = 0; o < n_orb; ++o) {
        int d = divs[pick(rng, 0, static_cast<int>(divs.size()) - 1)];
        if (d <= space_budget) {
          orbits.push_back(d);
          space_budget -= d;
        }
      }
      if (orbits.empty()) orbits.push_back(1);
      OrbitAction act = orbit_action(m, orbits);
      pieces.push_back(
          group_transformation_groupoid(cyclic_table(m), act.space,
                                        act.table));
      budget -= m * act.space;
    }
  }
  if (pieces.empty()) pieces.push_back(from_group(cyclic_table(1)));
  return pieces.size() == 1 ? pieces[0] : disjoint_union(pieces);
}

GroupoidPtr sample_principal_groupoid(Rng& rng, int max_arrows) {
  std::vector<GroupoidPtr> pieces;
  int budget = max_arrows;
  while (true) {
    int k = pick(rng, 1, 3);
    while (k * k > budget && k > 0) --k;
    if (k == 0) break;
    pieces.push_back(pair_groupoid(k));
    budget -= k * k;
    if (budget < 1 || pick(rng, 0, 2) == 0) break;
  }
  if (pieces.empty()) pieces.push_back(pair_groupoid(1));
  return pieces.size() == 1 ? pieces[0] : disjoint_union(pieces);
}

namespace {

// equivariant-map actor of Z/m with chosen orbit patterns; any Y orbit
// divides the X orbit mapped onto it
Actor sample_equivariant(Rng& rng, int m, bool force_free, int max_arrows) {
  int space_budget = std::max(1, max_arrows / m);
  int n_orb = pick(rng, 1, std::max(1, space_budget / (force_free ? m : 1)));
  auto divs = divisors(m);
  std::vector<int> xs, ys, assign;
  int used = 0;
  for (int o = 0; o < n_orb; ++o) {
    int dx = force_free ? m : divs[pick(rng, 0, (int)divs.size() - 1)];
    if (used + dx > space_budget) break;
    xs.push_back(dx);
    used += dx;
  }
  if (xs.empty()) xs.push_back(force_free ? m : 1);
  // target orbits: a divisor of each source orbit, sometimes shared
  for (size_t i = 0; i < xs.size(); ++i) {
    auto dd = divisors(xs[i]);
    int e = dd[pick(rng, 0, (int)dd.size() - 1)];
    // reuse an existing compatible target orbit half the time
    int reuse = -1;
    if (!ys.empty() && pick(rng, 0, 1)) {
      for (size_t j = 0; j < ys.size(); ++j)
        if (xs[i] % ys[j] == 0) reuse = static_cast<int>(j);
    }
    if (reuse >= 0) {
      assign.push_back(reuse);
    } else {
      ys.push_back(e);
      assign.push_back(static_cast<int>(ys.size()) - 1);
    }
  }
  OrbitAction ax = orbit_action(m, xs);
  OrbitAction ay = orbit_action(m, ys);
  std::vector<int> rho0(ax.space);
  for (size_t i = 0; i < xs.size(); ++i) {
    int e = ay.orbit_size[assign[i]];
    int shift = pick(rng, 0, e - 1);
    for (int x = 0; x < xs[i]; ++x)
      rho0[ax.orbit_start[i] + x] = ay.orbit_start[assign[i]] + (x + shift) % e;
  }
  EquivariantActor ea = actor_from_equivariant_map(cyclic_table(m), ax.table,
                                                   ay.table, rho0);
  return ea.actor;
}

}  // namespace

CoverSample sample_cover(const GroupoidPtr& base, int copies) {
  std::vector<GroupoidPtr> pieces(copies, base);
  GroupoidPtr total = copies == 1 ? base : disjoint_union(pieces);
  std::vector<int> phi(total->size());
  for (int c = 0; c < copies; ++c)
    for (int a = 0; a < base->size(); ++a) phi[c * base->size() + a] = a;
  CoverSample out;
  out.phi = phi;
  out.h = actor_from_homomorphism(total, base, phi);
  return out;
}

Actor sample_free_surjective_actor(Rng& rng, int max_arrows) {
  switch (pick(rng, 0, 3)) {
    case 0: {
      return identity_actor(sample_groupoid(rng, max_arrows));
    }
    case 1: {
      int copies = pick(rng, 1, 3);
      GroupoidPtr base = sample_groupoid(rng, std::max(1, max_arrows / copies));
      return sample_cover(base, copies).h;
    }
    case 2: {
      int m = pick(rng, 2, 3);
      return sample_equivariant(rng, m, true, max_arrows);
    }
    default: {
      // composition of two covers
      GroupoidPtr base = sample_groupoid(rng, std::max(1, max_arrows / 4));
      CoverSample c1 = sample_cover(base, 2);
      CoverSample c2 = sample_cover(c1.h.cod, 2);
      return compose_actors(c2.h, c1.h);
    }
  }
}

Actor sample_non_free_actor(Rng& rng, int max_arrows) {
  // a nontrivial group acting trivially on a groupoid fixes every unit
  int m = pick(rng, 2, 3);
  GroupoidPtr grp = from_group(cyclic_table(m));
  GroupoidPtr target = sample_groupoid(rng, std::max(1, max_arrows - m));
  Actor h;
  h.dom = grp;
  h.cod = target;
  h.anchor.assign(target->size(), 0);
  h.act.assign(static_cast<size_t>(m) * target->size(), -1);
  for (int g = 0; g < m; ++g)
    for (int x = 0; x < target->size(); ++x) h.act[g * target->size() + x] = x;
  Report rep = validate_actor(h);
  if (!rep.ok()) throw Error("sampler bug: " + rep.summary());
  if (is_free(h)) throw Error("sampler bug: trivial action should fix units");
  return h;
}

Actor sample_actor(Rng& rng, int max_arrows) {
  if (pick(rng, 0, 2) == 0) return sample_non_free_actor(rng, max_arrows);
  return sample_free_surjective_actor(rng, max_arrows);
}

Actor sample_non_surjective_actor(Rng& rng, int max_arrows) {
  Actor h = sample_free_surjective_actor(rng, std::max(2, max_arrows / 2));
  // append an unused component to the domain
  GroupoidPtr extra = from_group(cyclic_table(pick(rng, 1, 2)));
  GroupoidPtr dom2 = disjoint_union({h.dom, extra});
  Actor out;
  out.dom = dom2;
  out.cod = h.cod;
  out.anchor = h.anchor;  // units of the old component keep their indices
  out.act.assign(static_cast<size_t>(dom2->size()) * h.cod->size(), -1);
  for (int a = 0; a < h.dom->size(); ++a)
    for (int x = 0; x < h.cod->size(); ++x)
      out.act[a * h.cod->size() + x] = h.action(a, x);
  Report rep = validate_actor(out);
  if (!rep.ok()) throw Error("sampler bug: " + rep.summary());
  return out;
}

std::pair<Actor, Actor> sample_composable_pair(Rng& rng, int max_arrows) {
  Actor h = sample_free_surjective_actor(rng, max_arrows / 2);
  int copies = pick(rng, 1, 2);
  CoverSample k = sample_cover(h.cod, copies);
  return {k.h, h};
}

Twist sample_cocycle(Rng& rng, const GroupoidPtr& g, const FieldPtr& f) {
  long m = std::lcm(2L, f->order());
  std::vector<Cyc> chain;
  chain.reserve(g->size());
  for (int a = 0; a < g->size(); ++a)
    chain.push_back(Cyc::context_root(f, pick(rng, 0, (int)m - 1)));
  Twist t = normalize_cocycle(coboundary_twist(trivial_twist(g, f), chain));
  Report rep = validate_twist(t);
  if (!rep.ok()) throw Error("sampler bug: invalid cocycle");
  return t;
}

FellActor sample_line_bundle_actor(Rng& rng, int max_arrows,
                                   const FieldPtr& f) {
  GroupoidPtr base = sample_groupoid(rng, std::max(1, max_arrows / 2));
  CoverSample c = sample_cover(base, pick(rng, 1, 2));
  Twist tau = sample_cocycle(rng, base, f);
  return pullback_line_bundle_actor(c.h, c.phi, tau);
}

std::pair<FellActor, FellActor> sample_composable_line_actors(
    Rng& rng, int max_arrows, const FieldPtr& f) {
  GroupoidPtr base = sample_groupoid(rng, std::max(1, max_arrows / 4));
  CoverSample c1 = sample_cover(base, pick(rng, 1, 2));
  CoverSample c2 = sample_cover(c1.h.cod, pick(rng, 1, 2));
  Twist tau = sample_cocycle(rng, base, f);
  FellActor a1 = pullback_line_bundle_actor(c1.h, c1.phi, tau);
  Twist tau1 = line_bundle_to_twist(*a1.cod);
  FellActor a2 = pullback_line_bundle_actor(c2.h, c2.phi, tau1);
  return {a2, a1};
}

InductiveSystem sample_stationary_system(Rng& rng, int max_len,
                                         int max_arrows, bool with_fell,
                                         const FieldPtr& f) {
  InductiveSystem sys;
  sys.stationary = true;
  int len = pick(rng, 1, max_len);
  GroupoidPtr g0 = sample_groupoid(rng, std::max(1, max_arrows / (1 << len)));
  GroupoidPtr cur = g0;
  std::vector<CoverSample> covers;
  for (int i = 0; i < len; ++i) {
    int copies = cur->size() * 2 <= max_arrows ? pick(rng, 1, 2) : 1;
    CoverSample c = sample_cover(cur, copies);
    covers.push_back(c);
    sys.chain.push_back(c.h);
    cur = c.h.cod;
  }
  if (with_fell) {
    Twist tau = trivial_twist(g0, f);
    for (int i = 0; i < len; ++i) {
      FellActor a =
          pullback_line_bundle_actor(covers[i].h, covers[i].phi, tau);
      sys.fell_chain.push_back(a);
      tau = line_bundle_to_twist(*a.cod);
    }
  }
  return sys;
}

}  // namespace gact
