#include "doctest.h"

#include <cmath>

#include "gact/algebra.hpp"

using namespace gact;

namespace {

std::vector<std::vector<int>> z2{{0, 1}, {1, 0}};

EquivariantActor flip_actor() {
  return actor_from_equivariant_map(z2, {{0, 1}, {1, 0}}, {{0}, {0}}, {0, 0});
}

GroupoidPtr klein_four() {
  std::vector<std::vector<int>> m(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      m[a][b] = ((a >> 1) ^ (b >> 1)) * 2 + ((a & 1) ^ (b & 1));
  return from_group(m);
}

// sigma((a,b),(c,d)) = (-1)^{b c} on the Klein four group, index = 2a+b
Twist klein_cocycle(const GroupoidPtr& k4, const FieldPtr& f) {
  Twist t{k4, f, {}};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      int b = x & 1, c = y >> 1;
      Cyc v = (b * c) % 2 ? -Cyc::one(f) : Cyc::one(f);
      t.sigma.insert({{x, y}, v});
    }
  return t;
}

}  // namespace

TEST_CASE("convolution algebra of the trivial groupoid is the scalars") {
  auto f = CycField::get(4);
  auto t = make_groupoid(1, {0}, {{0, 0, 0}});
  auto a = convolution_algebra(t, f);
  CHECK(a->dim == 1);
  CHECK(validate_star_algebra(*a).ok());
}

TEST_CASE("convolution algebra of P2 has matrix-unit relations") {
  auto f = CycField::get(4);
  auto p2 = pair_groupoid(2);
  auto a = convolution_algebra(p2, f);
  // arrow (i,j) = 2i+j; e_ij e_kl = [j==k] e_il
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          CVec prod = a->mul(a->basis(2 * i + j), a->basis(2 * k + l));
          CVec want = a->zero();
          if (j == k) want[2 * i + l] = Cyc::one(f);
          CHECK(prod == want);
        }
  CHECK(centre_dimension(*a) == 1);
}

TEST_CASE("Klein four cocycle: twisted algebra has trivial centre") {
  auto f = CycField::get(2);
  auto k4 = klein_four();
  Twist t = klein_cocycle(k4, f);
  CHECK(validate_twist(t).ok());
  auto a = convolution_algebra(k4, f, t);
  CHECK(validate_star_algebra(*a).ok());
  CHECK(centre_dimension(*a) == 1);
  // untwisted group algebra of an abelian group is commutative
  auto b = convolution_algebra(k4, f);
  CHECK(centre_dimension(*b) == 4);
}

TEST_CASE("invalid cocycle rejected") {
  auto f = CycField::get(2);
  auto k4 = klein_four();
  Twist t = klein_cocycle(k4, f);
  t.sigma.at({1, 1}) = -t.sigma.at({1, 1});
  CHECK_THROWS_AS(convolution_algebra(k4, f, t), Error);
}

TEST_CASE("induced hom of the identity actor is the identity") {
  auto f = CycField::get(4);
  auto g = pair_groupoid(2);
  AlgebraHom phi = induced_hom(identity_actor(g), f);
  CHECK(phi.matrix == cmat_identity(f, g->size()));
  CHECK(verify_star_hom(phi).ok());
}

TEST_CASE("flip actor: phi(nu) takes values 1 and -i") {
  auto f = CycField::get(4);
  EquivariantActor ea = flip_actor();
  AlgebraHom phi = induced_hom(ea.actor, f);
  CHECK(verify_star_hom(phi).ok());

  Cyc i = Cyc::root_of_unity(f, 1, 4);
  CVec nu = phi.src->zero();
  nu[0] = Cyc::one(f);  // delta_1
  nu[1] = -i;           // -i delta_{-1}
  CHECK(is_normaliser(*phi.src, nu));
  CVec img = phi.apply(nu);
  // codomain arrows (g, x) indexed g*2+x; value 1 at g=1, -i at g=-1
  CHECK(img[0] == Cyc::one(f));
  CHECK(img[1] == Cyc::one(f));
  CHECK(img[2] == -i);
  CHECK(img[3] == -i);
  CHECK_FALSE(is_normaliser(*phi.tgt, img));
}

TEST_CASE("verify_star_hom flags corrupted matrices") {
  auto f = CycField::get(4);
  EquivariantActor ea = flip_actor();
  AlgebraHom phi = induced_hom(ea.actor, f);
  phi.matrix[0][1] += Cyc::one(f);
  Report rep = verify_star_hom(phi);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("functoriality through identity compositions") {
  auto f = CycField::get(4);
  EquivariantActor ea = flip_actor();
  Actor idg = identity_actor(ea.actor.dom);
  Actor idh = identity_actor(ea.actor.cod);
  CHECK(functoriality_check(ea.actor, idg, f));
  CHECK(functoriality_check(idh, ea.actor, f));
}

TEST_CASE("functoriality on a nontrivial composable pair") {
  auto f = CycField::get(4);
  std::vector<std::vector<int>> act_x4{{0, 1, 2, 3}, {1, 0, 3, 2}};
  std::vector<std::vector<int>> act_x2{{0, 1}, {1, 0}};
  std::vector<std::vector<int>> act_pt{{0}, {0}};
  EquivariantActor a = actor_from_equivariant_map(z2, act_x4, act_x2,
                                                  {0, 1, 0, 1});
  EquivariantActor b = actor_from_equivariant_map(z2, act_x2, act_pt, {0, 0});
  CHECK(functoriality_check(a.actor, b.actor, f));
}

TEST_CASE("expectation is an idempotent projection onto the diagonal") {
  auto f = CycField::get(4);
  auto g = pair_groupoid(2);
  auto a = convolution_algebra(g, f);
  AlgebraHom e = expectation(a);
  CHECK(cmat_mul(e.matrix, e.matrix) == e.matrix);
  for (int x : a->distinguished)
    CHECK(e.apply(a->basis(x)) == a->basis(x));
}

TEST_CASE("entwining iff free") {
  auto f = CycField::get(4);
  EquivariantActor ea = flip_actor();
  CHECK(is_free(ea.actor));
  CHECK(entwines_expectations(induced_hom(ea.actor, f)));

  // non-free: Z/2 acting trivially on the one-point groupoid
  Actor t;
  t.dom = from_group(z2);
  t.cod = make_groupoid(1, {0}, {{0, 0, 0}});
  t.anchor = {0};
  t.act = {0, 0};
  REQUIRE(validate_actor(t).ok());
  CHECK_FALSE(is_free(t));
  AlgebraHom phi = induced_hom(t, f);
  CHECK(verify_star_hom(phi).ok());
  CHECK_FALSE(entwines_expectations(phi));
  // witness: the basis element on the non-unit arrow maps into the diagonal
  CVec img = phi.apply(phi.src->basis(1));
  CHECK_FALSE(img[0].is_zero());
}

TEST_CASE("kernels: injective for free surjective anchors") {
  auto f = CycField::get(4);
  EquivariantActor ea = flip_actor();
  CHECK(injectivity_check(ea.actor, f));
  CHECK(kernel(induced_hom(ea.actor, f)).empty());
}

TEST_CASE("free surjective actors are injective on the diagonal too") {
  auto f = CycField::get(4);
  EquivariantActor ea = flip_actor();
  AlgebraHom phi = induced_hom(ea.actor, f);
  // restrict the matrix to the diagonal columns
  CMat restricted;
  for (int r = 0; r < phi.tgt->dim; ++r) {
    CVec row;
    for (int x : phi.src->distinguished) row.push_back(phi.matrix[r][x]);
    restricted.push_back(std::move(row));
  }
  CHECK(cmat_kernel(restricted).empty());
  CHECK(kernel(phi).empty());
}

TEST_CASE("kernels: missing source fibre gives kernel witnesses") {
  auto f = CycField::get(4);
  auto g = disjoint_union({from_group(z2), from_group(z2)});
  auto h_grpd = from_group(z2);
  Actor h;
  h.dom = g;
  h.cod = h_grpd;
  h.anchor = {0, 0};  // both arrows of H anchor at the first copy's unit
  h.act.assign(g->size() * h_grpd->size(), -1);
  for (int a = 0; a < 2; ++a)
    for (int x = 0; x < 2; ++x) h.act[a * 2 + x] = (a + x) % 2;
  REQUIRE(validate_actor(h).ok());
  CHECK(is_free(h));
  CHECK_FALSE(anchor_surjective(h));
  AlgebraHom phi = induced_hom(h, f);
  auto ker = kernel(phi);
  CHECK(ker.size() == 2);
  // delta functions on the missing fibre are killed
  CHECK(cvec_is_zero(phi.apply(phi.src->basis(2))));
  CHECK(cvec_is_zero(phi.apply(phi.src->basis(3))));
}

TEST_CASE("normalisers: distinguished idempotents and alpha maps") {
  auto f = CycField::get(4);
  auto p2 = pair_groupoid(2);
  auto a = convolution_algebra(p2, f);
  for (size_t i = 0; i < a->distinguished.size(); ++i) {
    CVec d = a->basis(a->distinguished[i]);
    CHECK(is_normaliser(*a, d));
    PartialBij alpha = alpha_of(*a, d);
    for (int x = 0; x < alpha.size(); ++x)
      if (alpha.defined(x)) CHECK(alpha(x) == x);
  }
  // the off-diagonal matrix unit e_01 (arrow (0,1) = index 1)
  CVec n = a->basis(1);
  CHECK(is_normaliser(*a, n));
  PartialBij alpha = alpha_of(*a, n);
  // n* d_y n = (n*n)(x) at alpha(x) = y: alpha maps src point to rng point
  CHECK(alpha.defined(1));
  CHECK(alpha(1) == 0);
  CHECK_FALSE(alpha.defined(0));
  CVec not_norm = a->basis(0);
  not_norm[1] = -Cyc::one(f);
  CHECK_THROWS_AS(alpha_of(*a, not_norm), Error);
}

TEST_CASE("regular norm") {
  auto f = CycField::get(4);
  auto p3 = pair_groupoid(3);
  auto a = convolution_algebra(p3, f);
  CVec unit = a->basis(0);  // arrow (0,0) is a unit
  CHECK(std::abs(regular_norm(*a, unit) - 1.0) < 1e-9);
  CVec ones = a->zero();
  for (int i = 0; i < a->dim; ++i) ones[i] = Cyc::one(f);
  CHECK(std::abs(regular_norm(*a, ones) - 3.0) < 1e-9);
  // C*-identity on a fixed element
  Cyc i = Cyc::root_of_unity(f, 1, 4);
  CVec v = a->zero();
  v[1] = Cyc::one(f) + i;
  v[3] = Rat(1, 2) * i;
  v[4] = -Cyc::one(f);
  double n1 = regular_norm(*a, a->mul(a->star_of(v), v));
  double n2 = regular_norm(*a, v);
  CHECK(std::abs(n1 - n2 * n2) < 1e-9);
}
