#include "doctest.h"

#include "gact/io.hpp"
#include "gact/samples.hpp"

using namespace gact;

namespace {

Workspace demo_workspace() {
  Json j;
  j["context_order"] = 4;
  j["groupoids"]["p2"] = {
      {"n_arrows", 4},
      {"inv", {0, 2, 1, 3}},
      {"comp",
       {{0, 0, 0}, {0, 1, 1}, {1, 2, 0}, {1, 3, 1}, {2, 0, 2}, {2, 1, 3},
        {3, 2, 2}, {3, 3, 3}}}};
  j["groupoids"]["z2"] = {
      {"n_arrows", 2},
      {"inv", {0, 1}},
      {"comp", {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}}};
  return Workspace::load(j);
}

}  // namespace

TEST_CASE("groupoid documents round-trip") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    GroupoidPtr g = sample_groupoid(rng, 16);
    GroupoidPtr back = groupoid_from_json(groupoid_to_json(*g));
    CHECK(same_groupoid(g, back));
  }
}

TEST_CASE("duplicate comp entries are rejected") {
  Json j = {{"n_arrows", 1},
            {"inv", {0}},
            {"comp", {{0, 0, 0}, {0, 0, 0}}}};
  CHECK_THROWS_AS(groupoid_from_json(j), Error);
}

TEST_CASE("workspace loads and validates documents") {
  Workspace ws = demo_workspace();
  CHECK(ws.groupoids.size() == 2);
  CHECK(validate_groupoid(*ws.groupoids.at("p2")).ok());
  CHECK(ws.groupoids.at("p2")->is_principal());
}

TEST_CASE("unresolved references are reported") {
  Json j;
  j["context_order"] = 4;
  j["actors"]["a"] = {{"dom", "missing"},
                      {"cod", "missing"},
                      {"anchor", Json::array()},
                      {"act", Json::array()}};
  CHECK_THROWS_AS(Workspace::load(j), Error);
}

TEST_CASE("element and matrix documents round-trip") {
  auto f = CycField::get(4);
  Cyc i = Cyc::root_of_unity(f, 1, 4);
  CVec v = cvec_zero(f, 3);
  v[0] = Cyc::one(f) + i;
  v[2] = Rat(-2, 3) * i;
  CVec back = element_from_json(element_to_json(v), f, 3);
  CHECK(back == v);

  CMat m = cmat_identity(f, 2);
  m[0][1] = -i;
  CHECK(matrix_from_json(matrix_to_json(m), f) == m);
}

TEST_CASE("actor and twist documents round-trip through a workspace") {
  std::mt19937_64 rng(9);
  Workspace ws = demo_workspace();
  ws.actors.emplace("id_p2", identity_actor(ws.groupoids.at("p2")));
  ws.twists.emplace("tau",
                    sample_cocycle(rng, ws.groupoids.at("p2"), ws.field));
  Json out = ws.to_json();
  Workspace back = Workspace::load(out);
  CHECK(back.actors.at("id_p2").same_tables(ws.actors.at("id_p2")));
  CHECK(back.twists.at("tau").sigma == ws.twists.at("tau").sigma);
}

TEST_CASE("convolution shorthand and cartan pairs load") {
  Json j;
  j["context_order"] = 4;
  j["groupoids"]["p2"] = groupoid_to_json(*pair_groupoid(2));
  j["algebras"]["m2"] = {{"groupoid", "p2"}};
  j["pairs"]["diag"] = {{"algebra", "m2"}, {"diag", {0, 3}}};
  Workspace ws = Workspace::load(j);
  CHECK(ws.algebras.at("m2")->dim == 4);
  CHECK(check_cartan(ws.pairs.at("diag")).ok());
}

TEST_CASE("systems load with stationary markers") {
  Json j;
  j["context_order"] = 4;
  auto p2 = pair_groupoid(2);
  j["groupoids"]["p2"] = groupoid_to_json(*p2);
  j["actors"]["id"] = actor_to_json(identity_actor(p2), "p2", "p2");
  j["systems"]["s"] = {{"actors", {"id"}}, {"stationary", true}};
  Workspace ws = Workspace::load(j);
  CHECK(ws.systems.at("s").stationary);
  CHECK(validate_system(ws.systems.at("s")).ok());
}
