#include "doctest.h"

#include "gact/groupoid.hpp"

using namespace gact;

namespace {

std::vector<std::vector<int>> z2_table() { return {{0, 1}, {1, 0}}; }

std::vector<std::vector<int>> klein_table() {
  // Z/2 x Z/2 with elements 0..3, index = 2a+b
  std::vector<std::vector<int>> m(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      m[a][b] = ((a >> 1) ^ (b >> 1)) * 2 + ((a & 1) ^ (b & 1));
  return m;
}

}  // namespace

TEST_CASE("trivial groupoid is valid") {
  auto g = make_groupoid(1, {0}, {{0, 0, 0}});
  CHECK(validate_groupoid(*g).ok());
  CHECK(g->units() == std::vector<int>{0});
}

TEST_CASE("bad composition tables rejected with witnesses") {
  // comp(a,b) defined where src(a) != rng(b): two units composed crosswise
  auto g = make_groupoid(2, {0, 1}, {{0, 0, 0}, {1, 1, 1}, {0, 1, 1}});
  Report r = validate_groupoid(*g);
  CHECK_FALSE(r.ok());
  bool found = false;
  for (const auto& f : r.failures)
    if (f.check == "comp_domain") found = true;
  CHECK(found);
}

TEST_CASE("pair groupoid on 2 points is valid and principal") {
  auto g = pair_groupoid(2);
  CHECK(g->size() == 4);
  CHECK(validate_groupoid(*g).ok());
  CHECK(g->units().size() == 2);
  CHECK(g->is_principal());
}

TEST_CASE("from_group: Z/2, Z/1, Klein four") {
  auto z2 = from_group(z2_table());
  CHECK(z2->size() == 2);
  CHECK(z2->units().size() == 1);
  CHECK(validate_groupoid(*z2).ok());
  CHECK_FALSE(z2->is_principal());

  auto z1 = from_group({{0}});
  CHECK(z1->size() == 1);

  auto k4 = from_group(klein_table());
  CHECK(k4->size() == 4);
  CHECK(k4->units().size() == 1);
  CHECK(validate_groupoid(*k4).ok());
}

TEST_CASE("from_group rejects non-groups") {
  // no identity
  CHECK_THROWS_AS(from_group({{1, 1}, {1, 1}}), Error);
  // identity exists but 1 is not invertible
  CHECK_THROWS_AS(from_group({{0, 1}, {1, 1}}), Error);
  // not associative
  CHECK_THROWS_AS(from_group({{0, 1, 2}, {1, 0, 0}, {2, 0, 1}}), Error);
}

TEST_CASE("group transformation groupoid: flip of two points") {
  auto g = group_transformation_groupoid(z2_table(), 2, {{0, 1}, {1, 0}});
  CHECK(g->size() == 4);
  CHECK(g->units().size() == 2);
  CHECK(validate_groupoid(*g).ok());
  CHECK(g->is_principal());
}

TEST_CASE("group transformation groupoid: trivial action is the group") {
  auto g = group_transformation_groupoid(z2_table(), 1, {{0}, {0}});
  auto z2 = from_group(z2_table());
  auto iso = find_isomorphism(g, z2);
  REQUIRE(iso.has_value());
  CHECK(verify_iso(*iso).ok());
}

TEST_CASE("group transformation groupoid: Z/3 rotating 3 points") {
  std::vector<std::vector<int>> z3{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  auto g = group_transformation_groupoid(z3, 3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(g->size() == 9);
  CHECK(g->units().size() == 3);
  CHECK(validate_groupoid(*g).ok());
  CHECK(g->is_principal());
}

TEST_CASE("non-homomorphic action rejected") {
  // the generator acts by a 3-cycle, which has order 3, not 2
  CHECK_THROWS_AS(
      group_transformation_groupoid(z2_table(), 3, {{0, 1, 2}, {1, 2, 0}}),
      Error);
}

TEST_CASE("bisection product and inverse") {
  auto p2 = pair_groupoid(2);
  // arrows (i,j) = 2i+j; e12 = arrow (0,1) = 1; e21 = arrow (1,0) = 2
  Bisection e12(p2, {1});
  Bisection e21(p2, {2});
  Bisection prod = bisection_product(e12, e21);
  CHECK(prod.arrows == std::vector<int>{0});  // unit at point 0
  Bisection u = units_bisection(p2);
  CHECK(bisection_product(u, e12).arrows == e12.arrows);
  CHECK(bisection_product(e12, u).arrows == e12.arrows);
  CHECK(bisection_inverse(e12).arrows == e21.arrows);
  // full diagonal {e12, e21} is a bisection; its square is the unit set
  Bisection flip(p2, {1, 2});
  CHECK(bisection_product(flip, flip).arrows == u.arrows);
  // not a bisection: two arrows with the same source
  CHECK_THROWS_AS(Bisection(p2, {0, 1}), Error);
}

TEST_CASE("(UV)^{-1} = V^{-1} U^{-1} over a generated family") {
  auto p3 = pair_groupoid(3);
  std::vector<Bisection> gens;
  for (int a = 0; a < p3->size(); ++a) gens.push_back(Bisection(p3, {a}));
  for (const auto& u : gens)
    for (const auto& v : gens) {
      Bisection lhs = bisection_inverse(bisection_product(u, v));
      Bisection rhs =
          bisection_product(bisection_inverse(v), bisection_inverse(u));
      CHECK(lhs.arrows == rhs.arrows);
    }
}

TEST_CASE("disjoint union validates") {
  auto g = disjoint_union({pair_groupoid(2), from_group(z2_table())});
  CHECK(g->size() == 6);
  CHECK(validate_groupoid(*g).ok());
  CHECK_FALSE(g->is_principal());
}
