#include "gact/cartan.hpp"

#include <algorithm>
#include <map>

namespace gact {

namespace {

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// d_y b d_x
CVec corner_part(const StarAlgebra& b, int dy, int dx, const CVec& v) {
  return b.mul(b.basis(dy), b.mul(v, b.basis(dx)));
}

CVec diag_sum(const StarAlgebra& b, const std::vector<int>& diag) {
  CVec u = b.zero();
  for (int x : diag) u[x] += Cyc::one(b.field);
  return u;
}

// the scalar c with w = c * v for a nonzero v; nullopt if not a multiple
std::optional<Cyc> scalar_multiple(const CVec& w, const CVec& v) {
  int j = -1;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) {
      j = static_cast<int>(i);
      break;
    }
  if (j < 0) return std::nullopt;
  Cyc c = w[j] * v[j].inverse();
  for (size_t i = 0; i < v.size(); ++i)
    if (!(w[i] == c * v[i])) return std::nullopt;
  return c;
}

}  // namespace

AlgebraHom cartan_expectation(const CartanPair& p) {
  const StarAlgebra& b = *p.algebra;
  AlgebraHom e;
  e.src = p.algebra;
  e.tgt = p.algebra;
  e.matrix = cmat_zero(b.field, b.dim, b.dim);
  for (int k = 0; k < b.dim; ++k) {
    CVec img = b.zero();
    for (int x : p.diag) {
      CVec part = corner_part(b, x, x, b.basis(k));
      for (int r = 0; r < b.dim; ++r) img[r] += part[r];
    }
    for (int r = 0; r < b.dim; ++r) e.matrix[r][k] = img[r];
  }
  return e;
}

Report check_cartan(const CartanPair& p) {
  Report rep;
  const StarAlgebra& b = *p.algebra;
  int m = static_cast<int>(p.diag.size());
  for (int x : p.diag) {
    if (x < 0 || x >= b.dim) {
      rep.fail("diag_range", std::to_string(x));
      return rep;
    }
    CVec d = b.basis(x);
    if (b.mul(d, d) != d) rep.fail("diag_idempotent", std::to_string(x));
    if (b.star_of(d) != d) rep.fail("diag_selfadjoint", std::to_string(x));
    for (int y : p.diag)
      if (b.mul(d, b.basis(y)) != b.mul(b.basis(y), d))
        rep.fail("diag_commuting", pair_str(x, y));
  }
  CVec u = diag_sum(b, p.diag);
  for (int k = 0; k < b.dim; ++k) {
    CVec d = b.basis(k);
    if (b.mul(u, d) != d || b.mul(d, u) != d) {
      rep.fail("diag_sum_unit", "fails on basis " + std::to_string(k));
      break;
    }
  }
  if (!rep.ok()) return rep;

  // maximal abelian: the commutant of the diagonal has dimension m
  CMat comm = cmat_zero(b.field, b.dim * m, b.dim);
  for (int xi = 0; xi < m; ++xi) {
    int x = p.diag[xi];
    for (int j = 0; j < b.dim; ++j) {
      for (const auto& [k, s] : b.prod[j][x]) comm[xi * b.dim + k][j] += s;
      for (const auto& [k, s] : b.prod[x][j]) comm[xi * b.dim + k][j] -= s;
    }
  }
  int cdim = static_cast<int>(cmat_kernel(std::move(comm)).size());
  if (cdim != m)
    rep.fail("maximal_abelian", "commutant dimension " + std::to_string(cdim) +
                                    " expected " + std::to_string(m));

  // regularity: corner dimensions at most one, summing to dim B
  int total = 0;
  for (int yi = 0; yi < m; ++yi)
    for (int xi = 0; xi < m; ++xi) {
      std::vector<CVec> images;
      for (int k = 0; k < b.dim; ++k) {
        CVec v = corner_part(b, p.diag[yi], p.diag[xi], b.basis(k));
        if (!cvec_is_zero(v)) images.push_back(std::move(v));
      }
      if (images.empty()) continue;
      CMat mtx = cmat_zero(b.field, static_cast<int>(images.size()), b.dim);
      for (size_t r = 0; r < images.size(); ++r) mtx[r] = images[r];
      int rank = cmat_rank(std::move(mtx));
      if (rank > 1)
        rep.fail("regularity", "corner " + pair_str(yi, xi) +
                                   " has dimension " + std::to_string(rank));
      total += rank;
    }
  if (total != b.dim)
    rep.fail("regularity", "corners span dimension " + std::to_string(total) +
                               " of " + std::to_string(b.dim));
  if (!rep.ok()) return rep;

  // faithfulness: v*v is a positive rational multiple of d_x per corner
  for (int yi = 0; yi < m; ++yi)
    for (int xi = 0; xi < m; ++xi) {
      CVec v;
      for (int k = 0; k < b.dim; ++k) {
        CVec c = corner_part(b, p.diag[yi], p.diag[xi], b.basis(k));
        if (!cvec_is_zero(c)) {
          v = std::move(c);
          break;
        }
      }
      if (v.empty()) continue;
      CVec vv = b.mul(b.star_of(v), v);
      for (int r = 0; r < b.dim; ++r)
        if (r != p.diag[xi] && !vv[r].is_zero())
          rep.fail("faithful_expectation",
                   "n*n not supported on the corner source at " +
                       pair_str(yi, xi));
      const Cyc& c = vv[p.diag[xi]];
      if (!c.is_rational() || c.rational_part() <= 0)
        rep.fail("faithful_expectation",
                 "n*n not a positive rational multiple at " +
                     pair_str(yi, xi));
    }
  return rep;
}

bool is_normaliser(const StarAlgebra& a, const CVec& n,
                   const std::vector<int>& diag) {
  std::vector<bool> dset(a.dim, false);
  for (int x : diag) dset[x] = true;
  auto in_span = [&](const CVec& v) {
    for (int i = 0; i < a.dim; ++i)
      if (!dset[i] && !v[i].is_zero()) return false;
    return true;
  };
  CVec ns = a.star_of(n);
  for (int x : diag) {
    CVec d = a.basis(x);
    if (!in_span(a.mul(ns, a.mul(d, n)))) return false;
    if (!in_span(a.mul(n, a.mul(d, ns)))) return false;
  }
  return true;
}

WeylTwist weyl_twist(const CartanPair& p) {
  Report rep = check_cartan(p);
  if (!rep.ok()) throw Error("not a Cartan pair: " + rep.summary());
  const StarAlgebra& b = *p.algebra;
  const FieldPtr& f = b.field;
  int m = static_cast<int>(p.diag.size());

  WeylTwist w;
  for (int yi = 0; yi < m; ++yi)
    for (int xi = 0; xi < m; ++xi) {
      if (yi == xi) {
        w.corners.emplace_back(yi, xi);
        w.corner_basis.push_back(b.basis(p.diag[xi]));
        continue;
      }
      CVec v;
      for (int k = 0; k < b.dim; ++k) {
        CVec c = corner_part(b, p.diag[yi], p.diag[xi], b.basis(k));
        if (!cvec_is_zero(c)) {
          v = std::move(c);
          break;
        }
      }
      if (v.empty()) continue;
      // gauge: first nonzero coordinate positive-real, then n* n = d_x
      int j = 0;
      while (v[j].is_zero()) ++j;
      Cyc scale = v[j].conj();
      CVec g = b.zero();
      for (int r = 0; r < b.dim; ++r) g[r] = scale * v[r];
      CVec gg = b.mul(b.star_of(g), g);
      const Cyc& q = gg[p.diag[xi]];
      Rat root;
      if (!q.is_rational() || !rational_sqrt(q.rational_part(), root) ||
          root == 0)
        throw Error("corner normalization needs a rational square root at " +
                    pair_str(yi, xi));
      Cyc inv = Cyc::rational(f, Rat(root.get_den(), root.get_num()));
      for (int r = 0; r < b.dim; ++r) g[r] *= inv;
      w.corners.emplace_back(yi, xi);
      w.corner_basis.push_back(std::move(g));
    }

  int n_arrows = static_cast<int>(w.corners.size());
  std::map<std::pair<int, int>, int> arrow_of;
  for (int a = 0; a < n_arrows; ++a) arrow_of[w.corners[a]] = a;

  for (int a = 0; a < n_arrows; ++a) {
    auto [yi, xi] = w.corners[a];
    const CVec& n = w.corner_basis[a];
    if (b.mul(b.star_of(n), n) != b.basis(p.diag[xi]) ||
        b.mul(n, b.star_of(n)) != b.basis(p.diag[yi]))
      throw Error("corner basis not normalizable at " + pair_str(yi, xi));
    if (arrow_of.find({xi, yi}) == arrow_of.end())
      throw Error("corner pattern not closed under adjoints");
  }

  std::vector<int> inv_tab(n_arrows);
  std::vector<std::tuple<int, int, int>> comps;
  for (int a = 0; a < n_arrows; ++a) {
    auto [yi, xi] = w.corners[a];
    inv_tab[a] = arrow_of.at({xi, yi});
  }
  for (int a1 = 0; a1 < n_arrows; ++a1)
    for (int a2 = 0; a2 < n_arrows; ++a2) {
      auto [z, y1] = w.corners[a1];
      auto [y2, x] = w.corners[a2];
      if (y1 != y2) continue;
      auto it = arrow_of.find({z, x});
      if (it == arrow_of.end())
        throw Error("corner pattern not closed under products");
      comps.emplace_back(a1, a2, it->second);
    }
  w.groupoid = make_groupoid(n_arrows, std::move(inv_tab), comps);
  Report grep = validate_groupoid(*w.groupoid);
  if (!grep.ok()) throw Error("Weyl groupoid invalid: " + grep.summary());
  if (!w.groupoid->is_principal())
    throw Error("Weyl groupoid not principal");

  w.twist.base = w.groupoid;
  w.twist.field = f;
  for (int a1 = 0; a1 < n_arrows; ++a1)
    for (int a2 = 0; a2 < n_arrows; ++a2) {
      if (!w.groupoid->composable(a1, a2)) continue;
      int a12 = w.groupoid->comp(a1, a2);
      CVec prod = b.mul(w.corner_basis[a1], w.corner_basis[a2]);
      auto c = scalar_multiple(prod, w.corner_basis[a12]);
      if (!c) throw Error("corner product escapes its corner");
      if (!c->is_root_of_unity())
        throw Error("Weyl cocycle value is not a context root of unity at " +
                    pair_str(a1, a2));
      w.twist.sigma.insert({{a1, a2}, *c});
    }
  Report trep = validate_twist(w.twist);
  if (!trep.ok()) throw Error("Weyl cocycle invalid: " + trep.summary());

  auto twisted = convolution_algebra(w.groupoid, f, w.twist);
  w.iso.src = twisted;
  w.iso.tgt = p.algebra;
  w.iso.matrix = cmat_zero(f, b.dim, n_arrows);
  for (int a = 0; a < n_arrows; ++a)
    for (int r = 0; r < b.dim; ++r) w.iso.matrix[r][a] = w.corner_basis[a][r];
  Report hrep = verify_star_hom(w.iso);
  if (!hrep.ok()) throw Error("Weyl iso not a *-hom: " + hrep.summary());
  if (cmat_rank(w.iso.matrix) != b.dim) throw Error("Weyl iso not bijective");
  AlgebraHom eb = cartan_expectation(p);
  for (int a = 0; a < n_arrows; ++a) {
    auto [yi, xi] = w.corners[a];
    CVec lhs = eb.apply(w.corner_basis[a]);
    CVec rhs = yi == xi ? w.corner_basis[a] : b.zero();
    if (lhs != rhs) throw Error("Weyl iso does not entwine expectations");
  }
  return w;
}

Twist transport_twist(const Twist& t, const GroupoidIso& iso) {
  Twist out{iso.to, t.field, {}};
  const FiniteGroupoid& g = *iso.from;
  for (int a = 0; a < g.size(); ++a)
    for (int c = 0; c < g.size(); ++c)
      if (g.composable(a, c))
        out.sigma.insert({{iso.map[a], iso.map[c]}, t.value(a, c)});
  return out;
}

GroupoidIso weyl_base_identification(const WeylTwist& w,
                                     const GroupoidPtr& base) {
  if (!base->is_principal())
    throw Error("base identification needs a principal groupoid");
  const auto& units = base->units();
  if (units.size() != w.groupoid->units().size())
    throw Error("unit counts differ");
  std::vector<int> map(w.groupoid->size(), -1);
  for (int a = 0; a < w.groupoid->size(); ++a) {
    auto [yi, xi] = w.corners[a];
    int found = -1;
    for (int arr = 0; arr < base->size(); ++arr)
      if (base->src(arr) == units[xi] && base->rng(arr) == units[yi]) {
        found = arr;
        break;
      }
    if (found < 0) throw Error("no base arrow matches corner");
    map[a] = found;
  }
  GroupoidIso iso{w.groupoid, base, std::move(map)};
  Report rep = verify_iso(iso);
  if (!rep.ok()) throw Error("base identification failed: " + rep.summary());
  return iso;
}

Report check_cartan_morphism(const AlgebraHom& phi, const CartanPair& p1,
                             const CartanPair& p2) {
  Report rep = verify_star_hom(phi);
  if (!rep.ok()) return rep;
  const StarAlgebra& b2 = *p2.algebra;
  std::vector<bool> dset(b2.dim, false);
  for (int x : p2.diag) dset[x] = true;

  for (int x : p1.diag) {
    CVec img = phi.apply(phi.src->basis(x));
    for (int r = 0; r < b2.dim; ++r)
      if (!dset[r] && !img[r].is_zero())
        rep.fail("diagonal_preserved", "image of " + std::to_string(x));
  }

  WeylTwist w1 = weyl_twist(p1);
  for (size_t a = 0; a < w1.corner_basis.size(); ++a) {
    CVec img = phi.apply(w1.corner_basis[a]);
    if (!is_normaliser(b2, img, p2.diag))
      rep.fail("normalisers_preserved", "corner " + std::to_string(a));
  }

  AlgebraHom e1 = cartan_expectation(p1);
  AlgebraHom e2 = cartan_expectation(p2);
  for (int k = 0; k < phi.src->dim; ++k) {
    CVec lhs = phi.apply(e1.apply(phi.src->basis(k)));
    CVec rhs = e2.apply(phi.apply(phi.src->basis(k)));
    if (lhs != rhs)
      rep.fail("expectation_entwined", "basis " + std::to_string(k));
  }

  CVec u1 = diag_sum(*p1.algebra, p1.diag);
  CVec u2 = diag_sum(b2, p2.diag);
  if (phi.apply(u1) != u2) rep.fail("non_degenerate", "phi(1) != 1");
  return rep;
}

CartanActor actor_from_cartan_morphism(const AlgebraHom& phi,
                                       const CartanPair& p1,
                                       const CartanPair& p2) {
  Report mrep = check_cartan_morphism(phi, p1, p2);
  if (!mrep.ok()) throw Error("not a Cartan morphism: " + mrep.summary());
  CartanActor out{weyl_twist(p1), weyl_twist(p2), {}, {}};
  const StarAlgebra& b2 = *p2.algebra;
  int m1 = static_cast<int>(p1.diag.size());
  int m2 = static_cast<int>(p2.diag.size());

  // rho0 on diagonal points, dual to phi restricted to the diagonal
  std::vector<int> rho0(m2, -1);
  for (int xi = 0; xi < m1; ++xi) {
    CVec img = phi.apply(phi.src->basis(p1.diag[xi]));
    if (cvec_is_zero(img))
      throw Error("degenerate morphism: a diagonal idempotent maps to zero");
    for (int yi = 0; yi < m2; ++yi) {
      const Cyc& c = img[p2.diag[yi]];
      if (c.is_zero()) continue;
      if (!(c == Cyc::one(b2.field)))
        throw Error("diagonal image is not a sum of idempotents");
      if (rho0[yi] >= 0) throw Error("diagonal images overlap");
      rho0[yi] = xi;
    }
  }
  for (int yi = 0; yi < m2; ++yi)
    if (rho0[yi] < 0)
      throw Error("diagonal images do not cover: phi(1) != 1");

  const GroupoidPtr& g1 = out.w1.groupoid;
  const GroupoidPtr& g2 = out.w2.groupoid;
  std::map<std::pair<int, int>, int> arrow1, arrow2;
  for (int a = 0; a < g1->size(); ++a) arrow1[out.w1.corners[a]] = a;
  for (int a = 0; a < g2->size(); ++a) arrow2[out.w2.corners[a]] = a;

  Actor h;
  h.dom = g1;
  h.cod = g2;
  h.anchor.resize(g2->size());
  for (int a = 0; a < g2->size(); ++a) {
    int y2 = out.w2.corners[a].first;
    h.anchor[a] = arrow1.at({rho0[y2], rho0[y2]});
  }
  h.act.assign(static_cast<size_t>(g1->size()) * g2->size(), -1);
  std::map<std::pair<int, int>, Tensor3> tensors;
  for (int a1 = 0; a1 < g1->size(); ++a1) {
    auto [y1, x1] = out.w1.corners[a1];
    CVec img = phi.apply(out.w1.corner_basis[a1]);
    for (int a2 = 0; a2 < g2->size(); ++a2) {
      auto [y2, x2] = out.w2.corners[a2];
      if (rho0[y2] != x1) continue;  // src(a1) = anchor(a2) required
      CVec prod = b2.mul(img, out.w2.corner_basis[a2]);
      int target = -1;
      Cyc coeff = Cyc::zero(b2.field);
      for (int z = 0; z < m2; ++z) {
        CVec part = b2.mul(b2.basis(p2.diag[z]),
                           b2.mul(prod, b2.basis(p2.diag[x2])));
        if (cvec_is_zero(part)) continue;
        if (target >= 0)
          throw Error("morphism product spreads over several corners");
        auto it = arrow2.find({z, x2});
        if (it == arrow2.end())
          throw Error("morphism product lands outside the corner pattern");
        auto c = scalar_multiple(part, out.w2.corner_basis[it->second]);
        if (!c) throw Error("morphism product is not a corner multiple");
        target = it->second;
        coeff = *c;
      }
      if (target < 0)
        throw Error("morphism product vanishes on a defined pair");
      if (prod != b2.mul(b2.basis(p2.diag[out.w2.corners[target].first]),
                         b2.mul(prod, b2.basis(p2.diag[x2]))))
        throw Error("morphism product has parts outside its corner");
      h.act[a1 * g2->size() + a2] = target;
      tensors[{a1, a2}] = Tensor3{{CVec{coeff}}};
    }
  }
  Report arep = validate_actor(h);
  if (!arep.ok()) throw Error("Cartan actor invalid: " + arep.summary());

  FellActor fa;
  fa.under = h;
  fa.dom = twist_to_line_bundle(out.w1.twist);
  fa.cod = twist_to_line_bundle(out.w2.twist);
  fa.mult = std::move(tensors);
  Report frep = validate_fell_actor(fa);
  if (!frep.ok()) throw Error("Cartan Fell actor invalid: " + frep.summary());
  out.actor = std::move(fa);

  auto iso2_inv = cmat_inverse(out.w2.iso.matrix);
  if (!iso2_inv) throw Error("Weyl iso not invertible");
  AlgebraHom transported;
  transported.src = out.w1.iso.src;
  transported.tgt = out.w2.iso.src;
  transported.matrix =
      cmat_mul(*iso2_inv, cmat_mul(phi.matrix, out.w1.iso.matrix));
  out.transported = std::move(transported);
  AlgebraHom via_actor = fell_hom(out.actor);
  if (!(via_actor.matrix == out.transported.matrix))
    throw Error("round trip fell_hom(actor) != transported morphism");
  return out;
}

AlgebraHom cartan_morphism_from_actor(const FellActor& a, const WeylTwist& w1,
                                      const WeylTwist& w2) {
  AlgebraHom inner = fell_hom(a);
  auto iso1_inv = cmat_inverse(w1.iso.matrix);
  if (!iso1_inv) throw Error("Weyl iso not invertible");
  AlgebraHom out;
  out.src = w1.iso.tgt;
  out.tgt = w2.iso.tgt;
  out.matrix = cmat_mul(w2.iso.matrix, cmat_mul(inner.matrix, *iso1_inv));
  return out;
}

}  // namespace gact
