#include "gact/fell.hpp"

#include <Eigen/Dense>
#include <algorithm>

namespace gact {

namespace {

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

CVec basis_vec(const FieldPtr& f, int dim, int i) {
  CVec v = cvec_zero(f, dim);
  v[i] = Cyc::one(f);
  return v;
}

// eigenvalues of the left-multiplication matrix must be real and >= -tol
bool spectrum_nonneg(const FellBundle& e, int unit, const CVec& v,
                     double tol) {
  int d = e.dim[unit];
  Eigen::MatrixXcd m(d, d);
  for (int j = 0; j < d; ++j) {
    CVec col = e.fibre_mul(unit, unit, v, basis_vec(e.field, d, j));
    for (int r = 0; r < d; ++r) m(r, j) = col[r].to_complex();
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  for (int i = 0; i < d; ++i) {
    auto ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) > tol || ev.real() < -tol) return false;
  }
  return true;
}

int span_rank(const FieldPtr& f, const std::vector<CVec>& vecs, int dim) {
  if (vecs.empty()) return 0;
  CMat m = cmat_zero(f, static_cast<int>(vecs.size()), dim);
  for (size_t i = 0; i < vecs.size(); ++i) m[i] = vecs[i];
  return cmat_rank(std::move(m));
}

}  // namespace

const Tensor3& FellBundle::mu(int a, int b) const {
  auto it = mult.find({a, b});
  if (it == mult.end())
    throw Error("multiplication tensor missing for pair " + pair_str(a, b));
  return it->second;
}

CVec FellBundle::fibre_mul(int a, int b, const CVec& xi,
                           const CVec& zeta) const {
  const Tensor3& t = mu(a, b);
  CVec out = cvec_zero(field, dim[base->comp(a, b)]);
  for (size_t i = 0; i < xi.size(); ++i) {
    if (xi[i].is_zero()) continue;
    for (size_t j = 0; j < zeta.size(); ++j) {
      if (zeta[j].is_zero()) continue;
      Cyc c = xi[i] * zeta[j];
      const CVec& w = t[i][j];
      for (size_t k = 0; k < w.size(); ++k)
        if (!w[k].is_zero()) out[k] += c * w[k];
    }
  }
  return out;
}

CVec FellBundle::fibre_star(int a, const CVec& xi) const {
  const CMat& j = invol[a];
  CVec out = cvec_zero(field, dim[base->inv(a)]);
  for (size_t i = 0; i < xi.size(); ++i) {
    if (xi[i].is_zero()) continue;
    Cyc c = xi[i].conj();
    for (size_t r = 0; r < out.size(); ++r)
      if (!j[r][i].is_zero()) out[r] += c * j[r][i];
  }
  return out;
}

bool FellBundle::has_units() const {
  for (int u : base->units())
    if (unit_vec.size() <= static_cast<size_t>(u) || unit_vec[u].empty())
      return false;
  return true;
}

Report validate_fell_bundle(const FellBundle& e, FellFlags* flags) {
  Report rep;
  const FiniteGroupoid& g = *e.base;
  if (static_cast<int>(e.dim.size()) != g.size() ||
      static_cast<int>(e.invol.size()) != g.size()) {
    rep.fail("shape", "dimension or involution table has wrong length");
    return rep;
  }
  for (int a = 0; a < g.size(); ++a) {
    if (e.dim[a] < 1) rep.fail("shape", "empty fibre at " + std::to_string(a));
    if (static_cast<int>(e.invol[a].size()) != e.dim[g.inv(a)])
      rep.fail("shape", "involution rows at " + std::to_string(a));
    else
      for (const auto& row : e.invol[a])
        if (static_cast<int>(row.size()) != e.dim[a])
          rep.fail("shape", "involution cols at " + std::to_string(a));
  }
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) {
      bool comp = g.composable(a, b);
      bool have = e.mult.count({a, b}) > 0;
      if (comp != have) {
        rep.fail("mult_domain", pair_str(a, b));
        continue;
      }
      if (!comp) continue;
      const Tensor3& t = e.mu(a, b);
      if (static_cast<int>(t.size()) != e.dim[a])
        rep.fail("shape", "tensor rows at " + pair_str(a, b));
      for (const auto& row : t) {
        if (static_cast<int>(row.size()) != e.dim[b])
          rep.fail("shape", "tensor cols at " + pair_str(a, b));
        for (const auto& v : row)
          if (static_cast<int>(v.size()) != e.dim[g.comp(a, b)])
            rep.fail("shape", "tensor target at " + pair_str(a, b));
      }
    }
  if (!rep.ok()) return rep;

  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) {
      if (!g.composable(a, b)) continue;
      int ab = g.comp(a, b);
      for (int c = 0; c < g.size(); ++c) {
        if (!g.composable(b, c)) continue;
        int bc = g.comp(b, c);
        for (int i = 0; i < e.dim[a]; ++i)
          for (int j = 0; j < e.dim[b]; ++j)
            for (int k = 0; k < e.dim[c]; ++k) {
              CVec lhs = e.fibre_mul(ab, c, e.mu(a, b)[i][j],
                                     basis_vec(e.field, e.dim[c], k));
              CVec rhs = e.fibre_mul(a, bc, basis_vec(e.field, e.dim[a], i),
                                     e.mu(b, c)[j][k]);
              if (lhs != rhs)
                rep.fail("mult_associative", "(" + std::to_string(a) + "," +
                                                 std::to_string(b) + "," +
                                                 std::to_string(c) + ")");
            }
      }
    }

  for (int a = 0; a < g.size(); ++a)
    for (int i = 0; i < e.dim[a]; ++i) {
      CVec ei = basis_vec(e.field, e.dim[a], i);
      if (e.fibre_star(g.inv(a), e.fibre_star(a, ei)) != ei)
        rep.fail("star_involutive", std::to_string(a));
    }
  for (const auto& [key, tensor] : e.mult) {
    auto [a, b] = key;
    int ab = g.comp(a, b);
    for (int i = 0; i < e.dim[a]; ++i)
      for (int j = 0; j < e.dim[b]; ++j) {
        CVec lhs = e.fibre_star(ab, tensor[i][j]);
        CVec rhs = e.fibre_mul(
            g.inv(b), g.inv(a),
            e.fibre_star(b, basis_vec(e.field, e.dim[b], j)),
            e.fibre_star(a, basis_vec(e.field, e.dim[a], i)));
        if (lhs != rhs) rep.fail("star_antimultiplicative", pair_str(a, b));
      }
  }

  // positivity of x*x in the unit-fibre regular representation (numeric)
  for (int a = 0; a < g.size(); ++a) {
    int u = g.src(a);
    std::vector<CVec> probes;
    for (int i = 0; i < e.dim[a]; ++i)
      probes.push_back(basis_vec(e.field, e.dim[a], i));
    Cyc imag = e.field->order() % 4 == 0
                   ? Cyc::root_of_unity(e.field, 1, 4)
                   : Cyc::one(e.field);
    for (int i = 0; i < e.dim[a]; ++i)
      for (int j = i + 1; j < e.dim[a]; ++j) {
        CVec v = basis_vec(e.field, e.dim[a], i);
        v[j] = Cyc::one(e.field);
        probes.push_back(v);
        v[j] = imag;
        probes.push_back(v);
      }
    for (const CVec& x : probes) {
      CVec xx = e.fibre_mul(g.inv(a), a, e.fibre_star(a, x), x);
      if (!spectrum_nonneg(e, u, xx, 1e-9)) {
        rep.fail("positivity", "fibre " + std::to_string(a));
        break;
      }
    }
  }

  FellFlags out;
  out.categorical = e.has_units();
  if (out.categorical) {
    for (int u : g.units()) {
      if (static_cast<int>(e.unit_vec[u].size()) != e.dim[u]) {
        rep.fail("unit_section", "wrong shape at " + std::to_string(u));
        out.categorical = false;
        continue;
      }
      if (e.fibre_star(u, e.unit_vec[u]) != e.unit_vec[u])
        rep.fail("unit_section",
                 "unit not self-adjoint at " + std::to_string(u));
      for (int a = 0; a < g.size(); ++a) {
        if (g.rng(a) == u)
          for (int i = 0; i < e.dim[a]; ++i)
            if (e.fibre_mul(u, a, e.unit_vec[u],
                            basis_vec(e.field, e.dim[a], i)) !=
                basis_vec(e.field, e.dim[a], i))
              rep.fail("unit_section",
                       "not a left unit on " + std::to_string(a));
        if (g.src(a) == u)
          for (int i = 0; i < e.dim[a]; ++i)
            if (e.fibre_mul(a, u, basis_vec(e.field, e.dim[a], i),
                            e.unit_vec[u]) !=
                basis_vec(e.field, e.dim[a], i))
              rep.fail("unit_section",
                       "not a right unit on " + std::to_string(a));
      }
    }
  }
  out.saturated = true;
  for (const auto& [key, tensor] : e.mult) {
    auto [a, b] = key;
    std::vector<CVec> image;
    for (const auto& row : tensor)
      for (const auto& v : row) image.push_back(v);
    if (span_rank(e.field, image, e.dim[g.comp(a, b)]) !=
        e.dim[g.comp(a, b)])
      out.saturated = false;
  }
  if (flags) *flags = out;
  return rep;
}

FellFlags fell_flags(const FellBundle& e) {
  FellFlags f;
  Report rep = validate_fell_bundle(e, &f);
  if (!rep.ok()) throw Error("invalid Fell bundle: " + rep.summary());
  return f;
}

FellPtr twist_to_line_bundle(const Twist& t) {
  Report rep = validate_twist(t);
  if (!rep.ok()) throw Error("invalid cocycle: " + rep.summary());
  auto e = std::make_shared<FellBundle>();
  e->base = t.base;
  e->field = t.field;
  const FiniteGroupoid& g = *t.base;
  e->dim.assign(g.size(), 1);
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      if (g.composable(a, b))
        e->mult[{a, b}] = Tensor3{{CVec{t.value(a, b)}}};
  e->invol.resize(g.size());
  for (int a = 0; a < g.size(); ++a)
    e->invol[a] = CMat{{t.value(a, g.inv(a)).conj()}};
  e->unit_vec.resize(g.size());
  for (int u : g.units()) e->unit_vec[u] = CVec{Cyc::one(t.field)};
  return e;
}

Twist line_bundle_to_twist(const FellBundle& l) {
  const FiniteGroupoid& g = *l.base;
  for (int a = 0; a < g.size(); ++a)
    if (l.dim[a] != 1)
      throw Error("not a line bundle: fibre dimension != 1 at " +
                  std::to_string(a));
  Twist t{l.base, l.field, {}};
  for (const auto& [key, tensor] : l.mult) {
    const Cyc& v = tensor[0][0][0];
    if (v.is_zero())
      throw Error("line bundle is not saturated: zero product at (" +
                  std::to_string(key.first) + "," +
                  std::to_string(key.second) + ")");
    t.sigma.insert({key, v});
  }
  if (!l.has_units()) throw Error("line bundle lacks unit sections");
  Cyc one = Cyc::one(l.field);
  for (int u : g.units())
    if (!(l.unit_vec[u][0] == one))
      throw Error("line bundle not normalized: unit section differs from "
                  "the basis at " +
                  std::to_string(u));
  for (int a = 0; a < g.size(); ++a) {
    CVec e = CVec{one};
    CVec ss = l.fibre_mul(g.inv(a), a, l.fibre_star(a, e), e);
    if (!(ss[0] == one))
      throw Error("line bundle not normalized: basis not unitary at " +
                  std::to_string(a));
  }
  Report rep = validate_twist(t);
  if (!rep.ok()) throw Error("extracted cocycle invalid: " + rep.summary());
  return t;
}

FellPtr direct_sum_bundles(const FellPtr& a, const FellPtr& b) {
  if (!same_groupoid(a->base, b->base))
    throw Error("direct sum over different base groupoids");
  auto e = std::make_shared<FellBundle>();
  e->base = a->base;
  e->field = a->field;
  const FiniteGroupoid& g = *a->base;
  e->dim.resize(g.size());
  for (int x = 0; x < g.size(); ++x) e->dim[x] = a->dim[x] + b->dim[x];
  for (const auto& [key, ta] : a->mult) {
    auto [p, q] = key;
    int pq = g.comp(p, q);
    const Tensor3& tb = b->mu(p, q);
    Tensor3 t(e->dim[p],
              std::vector<CVec>(e->dim[q], cvec_zero(e->field, e->dim[pq])));
    for (int i = 0; i < a->dim[p]; ++i)
      for (int j = 0; j < a->dim[q]; ++j)
        for (int k = 0; k < a->dim[pq]; ++k) t[i][j][k] = ta[i][j][k];
    for (int i = 0; i < b->dim[p]; ++i)
      for (int j = 0; j < b->dim[q]; ++j)
        for (int k = 0; k < b->dim[pq]; ++k)
          t[a->dim[p] + i][a->dim[q] + j][a->dim[pq] + k] = tb[i][j][k];
    e->mult[key] = std::move(t);
  }
  e->invol.resize(g.size());
  for (int x = 0; x < g.size(); ++x) {
    int xi = g.inv(x);
    CMat m = cmat_zero(e->field, e->dim[xi], e->dim[x]);
    for (int r = 0; r < a->dim[xi]; ++r)
      for (int c = 0; c < a->dim[x]; ++c) m[r][c] = a->invol[x][r][c];
    for (int r = 0; r < b->dim[xi]; ++r)
      for (int c = 0; c < b->dim[x]; ++c)
        m[a->dim[xi] + r][a->dim[x] + c] = b->invol[x][r][c];
    e->invol[x] = std::move(m);
  }
  e->unit_vec.resize(g.size());
  if (a->has_units() && b->has_units())
    for (int u : g.units()) {
      CVec v = cvec_zero(e->field, e->dim[u]);
      for (int i = 0; i < a->dim[u]; ++i) v[i] = a->unit_vec[u][i];
      for (int i = 0; i < b->dim[u]; ++i)
        v[a->dim[u] + i] = b->unit_vec[u][i];
      e->unit_vec[u] = std::move(v);
    }
  return e;
}

const Tensor3& FellActor::m(int g, int x) const {
  auto it = mult.find({g, x});
  if (it == mult.end())
    throw Error("actor tensor missing for pair " + pair_str(g, x));
  return it->second;
}

CVec FellActor::apply(int g, int x, const CVec& xi, const CVec& f) const {
  const Tensor3& t = m(g, x);
  CVec out = cvec_zero(dom->field, cod->dim[under.action(g, x)]);
  for (size_t i = 0; i < xi.size(); ++i) {
    if (xi[i].is_zero()) continue;
    for (size_t j = 0; j < f.size(); ++j) {
      if (f[j].is_zero()) continue;
      Cyc c = xi[i] * f[j];
      for (size_t k = 0; k < out.size(); ++k)
        if (!t[i][j][k].is_zero()) out[k] += c * t[i][j][k];
    }
  }
  return out;
}

bool FellActor::same_tables(const FellActor& o) const {
  if (!under.same_tables(o.under)) return false;
  if (mult.size() != o.mult.size()) return false;
  for (const auto& [key, t] : mult) {
    auto it = o.mult.find(key);
    if (it == o.mult.end() || !(t == it->second)) return false;
  }
  return true;
}

Report validate_fell_actor(const FellActor& a, FellActorFlags* flags) {
  Report rep = validate_actor(a.under);
  if (!rep.ok()) return rep;
  if (!same_groupoid(a.dom->base, a.under.dom) ||
      !same_groupoid(a.cod->base, a.under.cod)) {
    rep.fail("bundles", "bundle bases do not match the underlying actor");
    return rep;
  }
  const FellBundle& e = *a.dom;
  const FellBundle& f = *a.cod;
  const FiniteGroupoid& gg = *a.under.dom;
  const FiniteGroupoid& hh = *a.under.cod;
  const FieldPtr& fld = e.field;

  for (int g = 0; g < gg.size(); ++g)
    for (int x = 0; x < hh.size(); ++x) {
      bool want = a.under.defined(g, x);
      bool have = a.mult.count({g, x}) > 0;
      if (want != have) {
        rep.fail("tensor_domain", pair_str(g, x));
        continue;
      }
      if (!want) continue;
      const Tensor3& t = a.m(g, x);
      int gx = a.under.action(g, x);
      if (static_cast<int>(t.size()) != e.dim[g])
        rep.fail("tensor_shape", pair_str(g, x));
      for (const auto& row : t) {
        if (static_cast<int>(row.size()) != f.dim[x])
          rep.fail("tensor_shape", pair_str(g, x));
        for (const auto& v : row)
          if (static_cast<int>(v.size()) != f.dim[gx])
            rep.fail("tensor_shape", pair_str(g, x));
      }
    }
  if (!rep.ok()) return rep;

  // associativity over the domain bundle multiplication
  for (int g = 0; g < gg.size(); ++g)
    for (int h = 0; h < gg.size(); ++h) {
      if (!gg.composable(g, h)) continue;
      int gh = gg.comp(g, h);
      for (int x = 0; x < hh.size(); ++x) {
        if (!a.under.defined(h, x)) continue;
        int hx = a.under.action(h, x);
        for (int i = 0; i < e.dim[g]; ++i)
          for (int j = 0; j < e.dim[h]; ++j)
            for (int k = 0; k < f.dim[x]; ++k) {
              CVec lhs = a.apply(gh, x, e.mu(g, h)[i][j],
                                 basis_vec(fld, f.dim[x], k));
              CVec rhs =
                  a.apply(g, hx, basis_vec(fld, e.dim[g], i), a.m(h, x)[j][k]);
              if (lhs != rhs)
                rep.fail("actor_mult_associative",
                         "(" + std::to_string(g) + "," + std::to_string(h) +
                             "," + std::to_string(x) + ")");
            }
      }
    }

  // compatibility with right multiplication in the codomain bundle
  for (int g = 0; g < gg.size(); ++g)
    for (int x = 0; x < hh.size(); ++x) {
      if (!a.under.defined(g, x)) continue;
      int gx = a.under.action(g, x);
      for (int y = 0; y < hh.size(); ++y) {
        if (!hh.composable(x, y)) continue;
        int xy = hh.comp(x, y);
        for (int i = 0; i < e.dim[g]; ++i)
          for (int j = 0; j < f.dim[x]; ++j)
            for (int k = 0; k < f.dim[y]; ++k) {
              CVec lhs = a.apply(g, xy, basis_vec(fld, e.dim[g], i),
                                 f.mu(x, y)[j][k]);
              CVec rhs = f.fibre_mul(gx, y,
                                     a.apply(g, x, basis_vec(fld, e.dim[g], i),
                                             basis_vec(fld, f.dim[x], j)),
                                     basis_vec(fld, f.dim[y], k));
              if (lhs != rhs)
                rep.fail("actor_right_multiplication",
                         "(" + std::to_string(g) + "," + std::to_string(x) +
                             "," + std::to_string(y) + ")");
            }
      }
    }

  // adjoint axiom: M(g,x)(xi,w)* z = w* M(g^{-1}, y)(xi*, z)
  for (int g = 0; g < gg.size(); ++g)
    for (int x = 0; x < hh.size(); ++x) {
      if (!a.under.defined(g, x)) continue;
      int gx = a.under.action(g, x);
      int gi = gg.inv(g);
      for (int y = 0; y < hh.size(); ++y) {
        if (hh.rng(y) != hh.rng(gx)) continue;
        if (!a.under.defined(gi, y)) continue;
        for (int i = 0; i < e.dim[g]; ++i)
          for (int j = 0; j < f.dim[x]; ++j)
            for (int k = 0; k < f.dim[y]; ++k) {
              CVec left = f.fibre_mul(
                  hh.inv(gx), y,
                  f.fibre_star(gx, a.apply(g, x, basis_vec(fld, e.dim[g], i),
                                           basis_vec(fld, f.dim[x], j))),
                  basis_vec(fld, f.dim[y], k));
              CVec right = f.fibre_mul(
                  hh.inv(x), a.under.action(gi, y),
                  f.fibre_star(x, basis_vec(fld, f.dim[x], j)),
                  a.apply(gi, y, e.fibre_star(g, basis_vec(fld, e.dim[g], i)),
                          basis_vec(fld, f.dim[y], k)));
              if (left != right)
                rep.fail("actor_adjoint",
                         "(" + std::to_string(g) + "," + std::to_string(x) +
                             "," + std::to_string(y) + ")");
            }
      }
    }

  FellActorFlags out;
  out.saturated = true;
  for (const auto& [key, tensor] : a.mult) {
    int gx = a.under.action(key.first, key.second);
    std::vector<CVec> image;
    for (const auto& row : tensor)
      for (const auto& v : row) image.push_back(v);
    if (span_rank(fld, image, f.dim[gx]) != f.dim[gx]) out.saturated = false;
  }
  out.free_actor = is_free(a.under);
  if (out.free_actor) {
    for (int t : hh.units()) {
      int u = a.under.anchor[t];
      CMat m = cmat_zero(fld, f.dim[t] * f.dim[t], e.dim[u]);
      for (int i = 0; i < e.dim[u]; ++i)
        for (int j = 0; j < f.dim[t]; ++j) {
          CVec col = a.apply(u, t, basis_vec(fld, e.dim[u], i),
                             basis_vec(fld, f.dim[t], j));
          for (int r = 0; r < f.dim[t]; ++r) m[j * f.dim[t] + r][i] = col[r];
        }
      if (cmat_rank(std::move(m)) != e.dim[u]) out.free_actor = false;
    }
  }
  if (flags) *flags = out;
  return rep;
}

FellActor identity_fell_actor(const FellPtr& e) {
  FellActor a;
  a.under = identity_actor(e->base);
  a.dom = e;
  a.cod = e;
  const FiniteGroupoid& g = *e->base;
  for (int p = 0; p < g.size(); ++p)
    for (int x = 0; x < g.size(); ++x)
      if (g.composable(p, x)) a.mult[{p, x}] = e->mu(p, x);
  return a;
}

std::vector<CMat> nabla(const FellActor& a, int g, int x) {
  if (!a.under.defined(g, x))
    throw Error("nabla on an undefined pair " + pair_str(g, x));
  const FieldPtr& fld = a.dom->field;
  int gx = a.under.action(g, x);
  int de = a.dom->dim[g], dx = a.cod->dim[x], dy = a.cod->dim[gx];
  std::vector<CMat> out(de, cmat_zero(fld, dy, dx));
  for (int i = 0; i < de; ++i)
    for (int j = 0; j < dx; ++j) {
      CVec col = a.apply(g, x, basis_vec(fld, de, i), basis_vec(fld, dx, j));
      for (int r = 0; r < dy; ++r) out[i][r][j] = col[r];
    }
  return out;
}

std::vector<CMat> nabla_unit(const FellActor& a, int t) {
  if (!a.under.cod->is_unit(t)) throw Error("nabla_unit at a non-unit");
  return nabla(a, a.under.anchor[t], t);
}

Report verify_nabla(const FellActor& a) {
  Report rep;
  const FellBundle& e = *a.dom;
  const FellBundle& f = *a.cod;
  const FiniteGroupoid& gg = *a.under.dom;
  const FiniteGroupoid& hh = *a.under.cod;
  const FieldPtr& fld = e.field;

  // nabla_t is multiplicative on the unit fibre algebra
  for (int t : hh.units()) {
    int u = a.under.anchor[t];
    std::vector<CMat> n = nabla_unit(a, t);
    for (int i = 0; i < e.dim[u]; ++i)
      for (int j = 0; j < e.dim[u]; ++j) {
        const CVec& pij = e.mu(u, u)[i][j];
        CMat lhs = cmat_zero(fld, f.dim[t], f.dim[t]);
        for (int k = 0; k < e.dim[u]; ++k) {
          if (pij[k].is_zero()) continue;
          for (int r = 0; r < f.dim[t]; ++r)
            for (int c = 0; c < f.dim[t]; ++c)
              lhs[r][c] += pij[k] * n[k][r][c];
        }
        if (lhs != cmat_mul(n[i], n[j]))
          rep.fail("nabla_unit_multiplicative",
                   std::to_string(t) + " basis " + pair_str(i, j));
      }
  }

  // adjoint: z* (nabla_{g,x}(xi) w) = (nabla_{g^{-1}, g.x}(xi*) z)* w
  for (int g = 0; g < gg.size(); ++g)
    for (int x = 0; x < hh.size(); ++x) {
      if (!a.under.defined(g, x)) continue;
      int gx = a.under.action(g, x);
      int gi = gg.inv(g);
      for (int i = 0; i < e.dim[g]; ++i) {
        CVec xis = e.fibre_star(g, basis_vec(fld, e.dim[g], i));
        for (int j = 0; j < f.dim[x]; ++j)
          for (int k = 0; k < f.dim[gx]; ++k) {
            CVec lhs = f.fibre_mul(
                hh.inv(gx), gx,
                f.fibre_star(gx, basis_vec(fld, f.dim[gx], k)),
                a.apply(g, x, basis_vec(fld, e.dim[g], i),
                        basis_vec(fld, f.dim[x], j)));
            CVec rhs = f.fibre_mul(
                hh.inv(x), x,
                f.fibre_star(a.under.action(gi, gx),
                             a.apply(gi, gx, xis,
                                     basis_vec(fld, f.dim[gx], k))),
                basis_vec(fld, f.dim[x], j));
            if (lhs != rhs) rep.fail("nabla_adjoint", pair_str(g, x));
          }
      }
    }

  // nabla_{gh,x}(xi zeta) = nabla_{g,h.x}(xi) nabla_{h,x}(zeta)
  for (int g = 0; g < gg.size(); ++g)
    for (int h = 0; h < gg.size(); ++h) {
      if (!gg.composable(g, h)) continue;
      int gh = gg.comp(g, h);
      for (int x = 0; x < hh.size(); ++x) {
        if (!a.under.defined(h, x)) continue;
        int hx = a.under.action(h, x);
        std::vector<CMat> ngh = nabla(a, gh, x);
        std::vector<CMat> ng = nabla(a, g, hx);
        std::vector<CMat> nh = nabla(a, h, x);
        for (int i = 0; i < e.dim[g]; ++i)
          for (int j = 0; j < e.dim[h]; ++j) {
            const CVec& prod = e.mu(g, h)[i][j];
            CMat lhs =
                cmat_zero(fld, f.dim[a.under.action(gh, x)], f.dim[x]);
            for (int k = 0; k < e.dim[gh]; ++k) {
              if (prod[k].is_zero()) continue;
              for (size_t r = 0; r < lhs.size(); ++r)
                for (size_t c = 0; c < lhs[r].size(); ++c)
                  lhs[r][c] += prod[k] * ngh[k][r][c];
            }
            if (lhs != cmat_mul(ng[i], nh[j]))
              rep.fail("nabla_multiplicative",
                       "(" + std::to_string(g) + "," + std::to_string(h) +
                           "," + std::to_string(x) + ")");
          }
      }
    }

  // inner products: nabla_{g,t}(xi)* nabla_{g,t}(zeta) = nabla_t(xi* zeta)
  for (int g = 0; g < gg.size(); ++g)
    for (int t : hh.units()) {
      if (!a.under.defined(g, t)) continue;
      int gt = a.under.action(g, t);
      int gi = gg.inv(g);
      for (int i = 0; i < e.dim[g]; ++i)
        for (int j = 0; j < e.dim[g]; ++j) {
          CVec xis = e.fibre_star(g, basis_vec(fld, e.dim[g], i));
          CVec prod = e.fibre_mul(gi, g, xis, basis_vec(fld, e.dim[g], j));
          for (int k = 0; k < f.dim[t]; ++k) {
            CVec inner = a.apply(g, t, basis_vec(fld, e.dim[g], j),
                                 basis_vec(fld, f.dim[t], k));
            CVec lhs = a.apply(gi, gt, xis, inner);
            CVec rhs = a.apply(a.under.anchor[t], t, prod,
                               basis_vec(fld, f.dim[t], k));
            if (lhs != rhs) rep.fail("nabla_inner_product", pair_str(g, t));
          }
        }
    }
  return rep;
}

FellActor compose_fell_actors(const FellActor& b, const FellActor& a) {
  if (!same_groupoid(a.cod->base, b.dom->base))
    throw Error("Fell actors not composable");
  if (!a.cod->has_units())
    throw Error("composite needs a categorical middle bundle");
  FellActorFlags fa, fb;
  Report ra = validate_fell_actor(a, &fa);
  Report rb = validate_fell_actor(b, &fb);
  if (!ra.ok() || !rb.ok())
    throw Error("composite of invalid Fell actors");
  if (!fa.saturated || !fb.saturated)
    throw Error("composite needs saturated Fell actors");
  FellActor ba;
  ba.under = compose_actors(b.under, a.under);
  ba.dom = a.dom;
  ba.cod = b.cod;
  const FiniteGroupoid& gg = *a.under.dom;
  const FiniteGroupoid& kk = *b.under.cod;
  const FieldPtr& fld = a.dom->field;
  for (int g = 0; g < gg.size(); ++g)
    for (int t = 0; t < kk.size(); ++t) {
      if (!ba.under.defined(g, t)) continue;
      int u = b.under.anchor[t];      // unit of the middle groupoid
      int gu = a.under.action(g, u);  // arrow of the middle groupoid
      int de = a.dom->dim[g], dt = b.cod->dim[t];
      int dout = b.cod->dim[ba.under.action(g, t)];
      Tensor3 tens(de, std::vector<CVec>(dt, cvec_zero(fld, dout)));
      for (int i = 0; i < de; ++i) {
        CVec w = a.apply(g, u, basis_vec(fld, de, i), a.cod->unit_vec[u]);
        for (int j = 0; j < dt; ++j)
          tens[i][j] = b.apply(gu, t, w, basis_vec(fld, dt, j));
      }
      ba.mult[{g, t}] = std::move(tens);
    }
  return ba;
}

AlgebraPtr section_algebra(const FellPtr& e, const FieldPtr& field) {
  if (field->order() != e->field->order())
    throw Error("section algebra over a different context");
  const FiniteGroupoid& g = *e->base;
  auto a = std::make_shared<StarAlgebra>();
  a->field = field;
  a->base = e->base;
  a->arrow_offset.resize(g.size());
  a->fibre_dim = e->dim;
  int d = 0;
  for (int x = 0; x < g.size(); ++x) {
    a->arrow_offset[x] = d;
    d += e->dim[x];
  }
  a->dim = d;
  a->prod.assign(d, std::vector<SparseVec>(d));
  a->star.resize(d);
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) {
      if (!g.composable(x, y)) continue;
      int xy = g.comp(x, y);
      const Tensor3& t = e->mu(x, y);
      for (int i = 0; i < e->dim[x]; ++i)
        for (int j = 0; j < e->dim[y]; ++j)
          for (int k = 0; k < e->dim[xy]; ++k)
            if (!t[i][j][k].is_zero())
              a->prod[a->arrow_offset[x] + i][a->arrow_offset[y] + j]
                  .push_back({a->arrow_offset[xy] + k, t[i][j][k]});
    }
  for (int x = 0; x < g.size(); ++x) {
    int xi = g.inv(x);
    for (int i = 0; i < e->dim[x]; ++i)
      for (int r = 0; r < e->dim[xi]; ++r)
        if (!e->invol[x][r][i].is_zero())
          a->star[a->arrow_offset[x] + i].push_back(
              {a->arrow_offset[xi] + r, e->invol[x][r][i]});
  }
  for (int u : g.units())
    for (int i = 0; i < e->dim[u]; ++i)
      a->distinguished.push_back(a->arrow_offset[u] + i);
  return a;
}

AlgebraHom fell_hom(const FellActor& a) {
  if (!a.cod->has_units())
    throw Error("fell_hom needs a categorical codomain bundle");
  AlgebraHom phi;
  phi.src = section_algebra(a.dom, a.dom->field);
  phi.tgt = section_algebra(a.cod, a.cod->field);
  phi.matrix = cmat_zero(a.dom->field, phi.tgt->dim, phi.src->dim);
  const FiniteGroupoid& gg = *a.under.dom;
  const FiniteGroupoid& hh = *a.under.cod;
  for (int g = 0; g < gg.size(); ++g)
    for (int t : hh.units()) {
      if (!a.under.defined(g, t)) continue;
      int gt = a.under.action(g, t);
      for (int i = 0; i < a.dom->dim[g]; ++i) {
        CVec img = a.apply(g, t, basis_vec(a.dom->field, a.dom->dim[g], i),
                           a.cod->unit_vec[t]);
        for (size_t k = 0; k < img.size(); ++k)
          phi.matrix[phi.tgt->arrow_offset[gt] + static_cast<int>(k)]
                    [phi.src->arrow_offset[g] + i] += img[k];
      }
    }
  return phi;
}

bool fell_functoriality_check(const FellActor& b, const FellActor& a) {
  AlgebraHom lhs = fell_hom(compose_fell_actors(b, a));
  AlgebraHom rhs = compose_homs(fell_hom(b), fell_hom(a));
  return lhs.matrix == rhs.matrix;
}

bool fell_free_injectivity_check(const FellActor& a) {
  FellActorFlags flags;
  Report rep = validate_fell_actor(a, &flags);
  if (!rep.ok() || !flags.free_actor || !flags.saturated) return false;
  if (!anchor_surjective(a.under)) return false;
  return kernel(fell_hom(a)).empty();
}

bool fell_entwining_check(const FellActor& a) {
  return entwines_expectations(fell_hom(a));
}

FellActor pullback_line_bundle_actor(const Actor& h,
                                     const std::vector<int>& phi,
                                     const Twist& tau) {
  if (!same_groupoid(tau.base, h.dom))
    throw Error("twist must live over the domain groupoid");
  const FiniteGroupoid& gg = *h.dom;
  const FiniteGroupoid& hh = *h.cod;
  Twist pulled{h.cod, tau.field, {}};
  for (int x = 0; x < hh.size(); ++x)
    for (int y = 0; y < hh.size(); ++y)
      if (hh.composable(x, y))
        pulled.sigma.insert({{x, y}, tau.value(phi[x], phi[y])});
  FellActor a;
  a.under = h;
  a.dom = twist_to_line_bundle(tau);
  a.cod = twist_to_line_bundle(pulled);
  for (int g = 0; g < gg.size(); ++g)
    for (int x = 0; x < hh.size(); ++x)
      if (h.defined(g, x))
        a.mult[{g, x}] = Tensor3{{CVec{tau.value(g, phi[x])}}};
  Report rep = validate_fell_actor(a);
  if (!rep.ok())
    throw Error("pullback line bundle actor invalid: " + rep.summary());
  return a;
}

FellActor trivial_line_bundle_actor(const Actor& h, const FieldPtr& f) {
  FellActor a;
  a.under = h;
  a.dom = twist_to_line_bundle(trivial_twist(h.dom, f));
  a.cod = twist_to_line_bundle(trivial_twist(h.cod, f));
  for (int g = 0; g < h.dom->size(); ++g)
    for (int x = 0; x < h.cod->size(); ++x)
      if (h.defined(g, x)) a.mult[{g, x}] = Tensor3{{CVec{Cyc::one(f)}}};
  Report rep = validate_fell_actor(a);
  if (!rep.ok())
    throw Error("trivial line bundle actor invalid: " + rep.summary());
  return a;
}

FellActor direct_sum_fell_actors(const FellActor& a1, const FellActor& a2) {
  if (!a1.under.same_tables(a2.under))
    throw Error("direct sum needs a common underlying actor");
  FellActor s;
  s.under = a1.under;
  s.dom = direct_sum_bundles(a1.dom, a2.dom);
  s.cod = direct_sum_bundles(a1.cod, a2.cod);
  const FieldPtr& fld = s.dom->field;
  for (const auto& [key, t1] : a1.mult) {
    auto [g, x] = key;
    const Tensor3& t2 = a2.m(g, x);
    int gx = s.under.action(g, x);
    int de = s.dom->dim[g], dx = s.cod->dim[x], dout = s.cod->dim[gx];
    Tensor3 t(de, std::vector<CVec>(dx, cvec_zero(fld, dout)));
    int e1 = a1.dom->dim[g], x1 = a1.cod->dim[x], o1 = a1.cod->dim[gx];
    for (int i = 0; i < e1; ++i)
      for (int j = 0; j < x1; ++j)
        for (int k = 0; k < o1; ++k) t[i][j][k] = t1[i][j][k];
    for (int i = 0; i < a2.dom->dim[g]; ++i)
      for (int j = 0; j < a2.cod->dim[x]; ++j)
        for (int k = 0; k < a2.cod->dim[gx]; ++k)
          t[e1 + i][x1 + j][o1 + k] = t2[i][j][k];
    s.mult[key] = std::move(t);
  }
  return s;
}

}  // namespace gact
