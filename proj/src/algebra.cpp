#include "gact/algebra.hpp"

#include <map>

#include <Eigen/Dense>

namespace gact {

CVec StarAlgebra::basis(int i) const {
  CVec v = zero();
  v[i] = Cyc::one(field);
  return v;
}

CVec StarAlgebra::mul(const CVec& x, const CVec& y) const {
  CVec out = zero();
  for (int a = 0; a < dim; ++a) {
    if (x[a].is_zero()) continue;
    for (int b = 0; b < dim; ++b) {
      if (y[b].is_zero()) continue;
      Cyc c = x[a] * y[b];
      for (const auto& [k, s] : prod[a][b]) out[k] += c * s;
    }
  }
  return out;
}

CVec StarAlgebra::star_of(const CVec& x) const {
  CVec out = zero();
  for (int a = 0; a < dim; ++a) {
    if (x[a].is_zero()) continue;
    Cyc c = x[a].conj();
    for (const auto& [k, s] : star[a]) out[k] += c * s;
  }
  return out;
}

std::optional<CVec> StarAlgebra::unit() const {
  // stack the constraints u d_b = d_b and d_b u = d_b
  CMat m = cmat_zero(field, 2 * dim * dim, dim);
  CVec rhs = cvec_zero(field, 2 * dim * dim);
  for (int b = 0; b < dim; ++b) {
    for (int a = 0; a < dim; ++a) {
      for (const auto& [k, s] : prod[a][b]) m[b * dim + k][a] += s;
      for (const auto& [k, s] : prod[b][a])
        m[(dim + b) * dim + k][a] += s;
    }
    rhs[b * dim + b] = Cyc::one(field);
    rhs[(dim + b) * dim + b] = Cyc::one(field);
  }
  return cmat_solve(std::move(m), std::move(rhs));
}

bool StarAlgebra::same_structure(const StarAlgebra& o) const {
  if (dim != o.dim || field->order() != o.field->order()) return false;
  for (int a = 0; a < dim; ++a) {
    if (!(star[a] == o.star[a])) return false;
    for (int b = 0; b < dim; ++b)
      if (!(prod[a][b] == o.prod[a][b])) return false;
  }
  return distinguished == o.distinguished;
}

namespace {

using SparseAcc = std::map<int, Cyc>;

void acc_add(SparseAcc& acc, const Cyc& c, const SparseVec& v) {
  for (const auto& [k, s] : v) {
    auto it = acc.find(k);
    if (it == acc.end())
      acc.emplace(k, c * s);
    else
      it->second += c * s;
  }
}

void acc_trim(SparseAcc& acc) {
  for (auto it = acc.begin(); it != acc.end();)
    it = it->second.is_zero() ? acc.erase(it) : std::next(it);
}

bool acc_equal(SparseAcc a, SparseAcc b) {
  acc_trim(a);
  acc_trim(b);
  return a == b;
}

}  // namespace

Report validate_star_algebra(const StarAlgebra& a) {
  Report rep;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      const SparseVec& pij = a.prod[i][j];
      for (int k = 0; k < a.dim; ++k) {
        SparseAcc lhs, rhs;
        for (const auto& [m, c] : pij) acc_add(lhs, c, a.prod[m][k]);
        for (const auto& [m, c] : a.prod[j][k]) acc_add(rhs, c, a.prod[i][m]);
        if (!acc_equal(std::move(lhs), std::move(rhs)))
          rep.fail("associativity", "(" + std::to_string(i) + "," +
                                        std::to_string(j) + "," +
                                        std::to_string(k) + ")");
      }
    }
  for (int i = 0; i < a.dim; ++i) {
    SparseAcc twice;
    for (const auto& [m, c] : a.star[i]) acc_add(twice, c.conj(), a.star[m]);
    SparseAcc self;
    self.emplace(i, Cyc::one(a.field));
    if (!acc_equal(std::move(twice), std::move(self)))
      rep.fail("involution_involutive", std::to_string(i));
    for (int j = 0; j < a.dim; ++j) {
      SparseAcc lhs, rhs;
      for (const auto& [m, c] : a.prod[i][j]) acc_add(lhs, c.conj(), a.star[m]);
      for (const auto& [p, cp] : a.star[j])
        for (const auto& [q, cq] : a.star[i]) acc_add(rhs, cp * cq, a.prod[p][q]);
      if (!acc_equal(std::move(lhs), std::move(rhs)))
        rep.fail("involution_antimultiplicative",
                 "(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  CVec sum = a.zero();
  for (int x : a.distinguished) {
    CVec d = a.basis(x);
    if (a.mul(d, d) != d)
      rep.fail("distinguished_idempotent", std::to_string(x));
    if (a.star_of(d) != d)
      rep.fail("distinguished_selfadjoint", std::to_string(x));
    for (int y : a.distinguished)
      if (a.mul(d, a.basis(y)) != a.mul(a.basis(y), d))
        rep.fail("distinguished_commuting",
                 "(" + std::to_string(x) + "," + std::to_string(y) + ")");
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += d[i];
  }
  if (!a.distinguished.empty()) {
    // the distinguished idempotents must sum to a two-sided unit
    for (int b = 0; b < a.dim; ++b) {
      CVec d = a.basis(b);
      if (a.mul(sum, d) != d || a.mul(d, sum) != d) {
        rep.fail("distinguished_sum_to_unit", "fails on basis " +
                                                  std::to_string(b));
        break;
      }
    }
  }
  return rep;
}

AlgebraPtr convolution_algebra(const GroupoidPtr& g, const FieldPtr& field,
                               const std::optional<Twist>& twist) {
  if (twist) {
    if (!same_groupoid(twist->base, g))
      throw Error("twist over a different groupoid");
    Report rep = validate_twist(*twist);
    if (!rep.ok()) throw Error("invalid cocycle: " + rep.summary());
  }
  auto a = std::make_shared<StarAlgebra>();
  a->field = field;
  a->dim = g->size();
  a->base = g;
  a->arrow_offset.resize(g->size());
  a->fibre_dim.assign(g->size(), 1);
  for (int i = 0; i < g->size(); ++i) a->arrow_offset[i] = i;
  a->prod.assign(a->dim, std::vector<SparseVec>(a->dim));
  a->star.resize(a->dim);
  for (int x = 0; x < a->dim; ++x)
    for (int y = 0; y < a->dim; ++y)
      if (g->composable(x, y)) {
        Cyc c = twist ? twist->value(x, y) : Cyc::one(field);
        a->prod[x][y].push_back({g->comp(x, y), c});
      }
  for (int x = 0; x < a->dim; ++x) {
    Cyc c = twist ? twist->value(x, g->inv(x)).conj() : Cyc::one(field);
    a->star[x].push_back({g->inv(x), c});
  }
  a->distinguished = g->units();
  Report rep = validate_star_algebra(*a);
  if (!rep.ok())
    throw Error("convolution algebra failed validation: " + rep.summary());
  return a;
}

AlgebraHom induced_hom(const Actor& h, const FieldPtr& field) {
  Report rep = validate_actor(h);
  if (!rep.ok()) throw Error("invalid actor: " + rep.summary());
  AlgebraHom phi;
  phi.src = convolution_algebra(h.dom, field);
  phi.tgt = convolution_algebra(h.cod, field);
  phi.matrix = cmat_zero(field, phi.tgt->dim, phi.src->dim);
  for (int g = 0; g < h.dom->size(); ++g)
    for (int t : h.cod->units())
      if (h.anchor[t] == h.dom->src(g))
        phi.matrix[h.action(g, t)][g] += Cyc::one(field);
  return phi;
}

Report verify_star_hom(const AlgebraHom& phi) {
  Report rep;
  const StarAlgebra& s = *phi.src;
  const StarAlgebra& t = *phi.tgt;
  std::vector<CVec> img(s.dim, t.zero());
  for (int i = 0; i < s.dim; ++i)
    for (int r = 0; r < t.dim; ++r) img[i][r] = phi.matrix[r][i];
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < s.dim; ++j) {
      CVec lhs = t.zero();
      for (const auto& [m, c] : s.prod[i][j])
        for (int r = 0; r < t.dim; ++r)
          if (!img[m][r].is_zero()) lhs[r] += c * img[m][r];
      CVec rhs = t.mul(img[i], img[j]);
      if (lhs != rhs)
        rep.fail("multiplicative",
                 "(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  for (int i = 0; i < s.dim; ++i) {
    // d_i^* is already a formed element; phi acts linearly on it
    CVec lhs = t.zero();
    for (const auto& [m, c] : s.star[i])
      for (int r = 0; r < t.dim; ++r)
        if (!img[m][r].is_zero()) lhs[r] += c * img[m][r];
    CVec rhs = t.star_of(img[i]);
    if (lhs != rhs) rep.fail("star_preserving", std::to_string(i));
  }
  return rep;
}

AlgebraHom compose_homs(const AlgebraHom& phi2, const AlgebraHom& phi1) {
  if (!phi1.tgt->same_structure(*phi2.src))
    throw Error("homomorphisms not composable");
  return AlgebraHom{phi1.src, phi2.tgt, cmat_mul(phi2.matrix, phi1.matrix)};
}

bool functoriality_check(const Actor& k, const Actor& h,
                         const FieldPtr& field) {
  AlgebraHom lhs = induced_hom(compose_actors(k, h), field);
  AlgebraHom rhs = compose_homs(induced_hom(k, field), induced_hom(h, field));
  return lhs.matrix == rhs.matrix;
}

AlgebraHom expectation(const AlgebraPtr& a) {
  AlgebraHom e;
  e.src = a;
  e.tgt = a;
  e.matrix = cmat_zero(a->field, a->dim, a->dim);
  for (int x : a->distinguished) e.matrix[x][x] = Cyc::one(a->field);
  return e;
}

bool entwines_expectations(const AlgebraHom& phi) {
  AlgebraHom es = expectation(phi.src);
  AlgebraHom et = expectation(phi.tgt);
  for (int i = 0; i < phi.src->dim; ++i) {
    CVec lhs = et.apply(phi.apply(phi.src->basis(i)));
    CVec rhs = phi.apply(es.apply(phi.src->basis(i)));
    if (lhs != rhs) return false;
  }
  return true;
}

std::vector<CVec> kernel(const AlgebraHom& phi) {
  return cmat_kernel(phi.matrix);
}

bool injectivity_check(const Actor& h, const FieldPtr& field) {
  if (!is_free(h) || !anchor_surjective(h)) return false;
  return kernel(induced_hom(h, field)).empty();
}

namespace {

// span test against the distinguished subspace
bool in_distinguished_span(const StarAlgebra& a, const CVec& v) {
  std::vector<bool> dist(a.dim, false);
  for (int x : a.distinguished) dist[x] = true;
  for (int i = 0; i < a.dim; ++i)
    if (!dist[i] && !v[i].is_zero()) return false;
  return true;
}

}  // namespace

bool is_normaliser(const StarAlgebra& a, const CVec& n) {
  CVec ns = a.star_of(n);
  for (int x : a.distinguished) {
    CVec d = a.basis(x);
    if (!in_distinguished_span(a, a.mul(ns, a.mul(d, n)))) return false;
    if (!in_distinguished_span(a, a.mul(n, a.mul(d, ns)))) return false;
  }
  return true;
}

PartialBij alpha_of(const StarAlgebra& a, const CVec& n) {
  if (!is_normaliser(a, n)) throw Error("alpha_of on a non-normaliser");
  int npts = static_cast<int>(a.distinguished.size());
  std::vector<int> pos(a.dim, -1);
  for (int i = 0; i < npts; ++i) pos[a.distinguished[i]] = i;
  CVec ns = a.star_of(n);
  CVec nn = a.mul(ns, n);  // n* n, supported on the distinguished set
  if (!in_distinguished_span(a, nn))
    throw Error("n* n does not lie in the distinguished subalgebra");
  PartialBij alpha(npts);
  for (int yi = 0; yi < npts; ++yi) {
    int y = a.distinguished[yi];
    CVec v = a.mul(ns, a.mul(a.basis(y), n));  // n* d_y n
    for (int xi = 0; xi < npts; ++xi) {
      int x = a.distinguished[xi];
      if (v[x].is_zero()) continue;
      if (nn[x].is_zero() || !(v[x] == nn[x]))
        throw Error("normaliser identity fails at point " + std::to_string(x));
      if (alpha.img[xi] >= 0)
        throw Error("alpha not single-valued at point " + std::to_string(xi));
      alpha.img[xi] = yi;
    }
  }
  // domain must be exactly the support of n* n
  for (int xi = 0; xi < npts; ++xi) {
    bool in_supp = !nn[a.distinguished[xi]].is_zero();
    if (in_supp != alpha.defined(xi))
      throw Error("alpha domain mismatch at point " + std::to_string(xi));
  }
  if (!alpha.is_injective()) throw Error("alpha not injective");
  return alpha;
}

double regular_norm(const StarAlgebra& a, const CVec& f) {
  Eigen::MatrixXcd m(a.dim, a.dim);
  m.setZero();
  // column b of left multiplication by f
  for (int b = 0; b < a.dim; ++b) {
    CVec col = a.mul(f, a.basis(b));
    for (int r = 0; r < a.dim; ++r) m(r, b) = col[r].to_complex();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

int centre_dimension(const StarAlgebra& a) {
  // solve z d_b = d_b z for all b
  CMat m = cmat_zero(a.field, a.dim * a.dim, a.dim);
  for (int b = 0; b < a.dim; ++b)
    for (int j = 0; j < a.dim; ++j) {
      for (const auto& [k, s] : a.prod[j][b]) m[b * a.dim + k][j] += s;
      for (const auto& [k, s] : a.prod[b][j]) m[b * a.dim + k][j] -= s;
    }
  return static_cast<int>(cmat_kernel(std::move(m)).size());
}

}  // namespace gact
