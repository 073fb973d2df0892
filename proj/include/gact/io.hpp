#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "gact/limits.hpp"

namespace gact {

using Json = nlohmann::json;

// Document encoders. Scalars serialize as canonical strings, exact
// round-trip; structural documents follow the fixed schemas below.
Json groupoid_to_json(const FiniteGroupoid& g);
GroupoidPtr groupoid_from_json(const Json& j);

Json element_to_json(const CVec& v);
CVec element_from_json(const Json& j, const FieldPtr& f, int dim);

Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j, const FieldPtr& f);

Json twist_to_json(const Twist& t);
Json algebra_to_json(const StarAlgebra& a);
Json bundle_to_json(const FellBundle& e);
Json actor_to_json(const Actor& h, const std::string& dom_name,
                   const std::string& cod_name);

/// Named documents sharing one cyclotomic context.
struct Workspace {
  FieldPtr field;
  std::map<std::string, GroupoidPtr> groupoids;
  std::map<std::string, Actor> actors;
  std::map<std::string, Twist> twists;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, FellPtr> bundles;
  std::map<std::string, FellActor> fell_actors;
  std::map<std::string, AlgebraHom> homs;
  std::map<std::string, CartanPair> pairs;
  std::map<std::string, InductiveSystem> systems;

  static Workspace load(const Json& j);
  static Workspace load_file(const std::string& path);
  Json to_json() const;
};

}  // namespace gact
