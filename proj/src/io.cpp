#include "gact/io.hpp"

#include <fstream>
#include <set>

namespace gact {

Json groupoid_to_json(const FiniteGroupoid& g) {
  Json j;
  j["n_arrows"] = g.size();
  j["inv"] = Json::array();
  for (int a = 0; a < g.size(); ++a) j["inv"].push_back(g.inv(a));
  j["comp"] = Json::array();
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      if (g.composable(a, b))
        j["comp"].push_back(Json::array({a, b, g.comp(a, b)}));
  return j;
}

GroupoidPtr groupoid_from_json(const Json& j) {
  int n = j.at("n_arrows").get<int>();
  std::vector<int> inv = j.at("inv").get<std::vector<int>>();
  std::vector<std::tuple<int, int, int>> comps;
  std::set<std::pair<int, int>> seen;
  for (const auto& entry : j.at("comp")) {
    int a = entry.at(0).get<int>();
    int b = entry.at(1).get<int>();
    int c = entry.at(2).get<int>();
    if (!seen.insert({a, b}).second)
      throw Error("duplicate comp entry for pair (" + std::to_string(a) +
                  "," + std::to_string(b) + ")");
    comps.emplace_back(a, b, c);
  }
  return make_groupoid(n, std::move(inv), comps);
}

Json element_to_json(const CVec& v) {
  Json coeffs = Json::object();
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) coeffs[std::to_string(i)] = v[i].to_string();
  return Json{{"coeffs", coeffs}};
}

CVec element_from_json(const Json& j, const FieldPtr& f, int dim) {
  CVec v = cvec_zero(f, dim);
  for (const auto& [key, val] : j.at("coeffs").items()) {
    int idx = std::stoi(key);
    if (idx < 0 || idx >= dim) throw Error("element index out of range");
    v[idx] = Cyc::parse(f, val.get<std::string>());
  }
  return v;
}

Json matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(c.to_string());
    rows.push_back(r);
  }
  return rows;
}

CMat matrix_from_json(const Json& j, const FieldPtr& f) {
  CMat m;
  for (const auto& row : j) {
    CVec r;
    for (const auto& c : row) r.push_back(Cyc::parse(f, c.get<std::string>()));
    m.push_back(std::move(r));
  }
  return m;
}

Json twist_to_json(const Twist& t) {
  Json sig = Json::array();
  for (const auto& [key, val] : t.sigma)
    sig.push_back(Json{{"pair", Json::array({key.first, key.second})},
                       {"value", val.to_string()}});
  return Json{{"sigma", sig}};
}

Json algebra_to_json(const StarAlgebra& a) {
  Json j;
  j["dim"] = a.dim;
  Json prods = Json::array();
  for (int x = 0; x < a.dim; ++x)
    for (int y = 0; y < a.dim; ++y) {
      if (a.prod[x][y].empty()) continue;
      Json terms = Json::array();
      for (const auto& [k, c] : a.prod[x][y])
        terms.push_back(Json::array({k, c.to_string()}));
      prods.push_back(Json{{"pair", Json::array({x, y})}, {"terms", terms}});
    }
  j["products"] = prods;
  Json stars = Json::array();
  for (int x = 0; x < a.dim; ++x) {
    Json terms = Json::array();
    for (const auto& [k, c] : a.star[x])
      terms.push_back(Json::array({k, c.to_string()}));
    stars.push_back(terms);
  }
  j["star"] = stars;
  j["distinguished"] = a.distinguished;
  return j;
}

Json bundle_to_json(const FellBundle& e) {
  Json j;
  j["dim"] = e.dim;
  Json mult = Json::array();
  for (const auto& [key, tensor] : e.mult) {
    Json t = Json::array();
    for (const auto& row : tensor) {
      Json r = Json::array();
      for (const auto& v : row) {
        Json vec = Json::array();
        for (const auto& c : v) vec.push_back(c.to_string());
        r.push_back(vec);
      }
      t.push_back(r);
    }
    mult.push_back(Json{{"pair", Json::array({key.first, key.second})},
                        {"tensor", t}});
  }
  j["mult"] = mult;
  Json invol = Json::array();
  for (const auto& m : e.invol) invol.push_back(matrix_to_json(m));
  j["invol"] = invol;
  Json units = Json::array();
  for (size_t u = 0; u < e.unit_vec.size(); ++u) {
    if (e.unit_vec[u].empty()) {
      units.push_back(nullptr);
    } else {
      Json vec = Json::array();
      for (const auto& c : e.unit_vec[u]) vec.push_back(c.to_string());
      units.push_back(vec);
    }
  }
  j["unit"] = units;
  return j;
}

Json actor_to_json(const Actor& h, const std::string& dom_name,
                   const std::string& cod_name) {
  Json j;
  j["dom"] = dom_name;
  j["cod"] = cod_name;
  j["anchor"] = h.anchor;
  Json act = Json::array();
  for (int g = 0; g < h.dom->size(); ++g)
    for (int x = 0; x < h.cod->size(); ++x)
      if (h.defined(g, x))
        act.push_back(Json::array({g, x, h.action(g, x)}));
  j["act"] = act;
  return j;
}

namespace {

GroupoidPtr resolve_groupoid(const Workspace& ws, const Json& ref) {
  std::string name = ref.get<std::string>();
  auto it = ws.groupoids.find(name);
  if (it == ws.groupoids.end())
    throw Error("unresolved groupoid reference: " + name);
  return it->second;
}

Actor actor_from_json(const Workspace& ws, const Json& j) {
  Actor h;
  h.dom = resolve_groupoid(ws, j.at("dom"));
  h.cod = resolve_groupoid(ws, j.at("cod"));
  h.anchor = j.at("anchor").get<std::vector<int>>();
  if (static_cast<int>(h.anchor.size()) != h.cod->size())
    throw Error("anchor table has wrong length");
  h.act.assign(static_cast<size_t>(h.dom->size()) * h.cod->size(), -1);
  for (const auto& entry : j.at("act")) {
    int g = entry.at(0).get<int>();
    int x = entry.at(1).get<int>();
    int y = entry.at(2).get<int>();
    if (g < 0 || g >= h.dom->size() || x < 0 || x >= h.cod->size() || y < 0 ||
        y >= h.cod->size())
      throw Error("act entry out of range");
    h.act[g * h.cod->size() + x] = y;
  }
  return h;
}

Twist twist_from_json(const Workspace& ws, const Json& j) {
  Twist t;
  t.base = resolve_groupoid(ws, j.at("base"));
  t.field = ws.field;
  for (const auto& entry : j.at("sigma")) {
    int a = entry.at("pair").at(0).get<int>();
    int b = entry.at("pair").at(1).get<int>();
    t.sigma.insert(
        {{a, b}, Cyc::parse(ws.field, entry.at("value").get<std::string>())});
  }
  return t;
}

AlgebraPtr algebra_from_json(const Workspace& ws, const Json& j) {
  if (j.contains("groupoid")) {
    GroupoidPtr g = resolve_groupoid(ws, j.at("groupoid"));
    std::optional<Twist> tw;
    if (j.contains("twist") && !j.at("twist").is_null()) {
      auto it = ws.twists.find(j.at("twist").get<std::string>());
      if (it == ws.twists.end()) throw Error("unresolved twist reference");
      tw = it->second;
    }
    return convolution_algebra(g, ws.field, tw);
  }
  auto a = std::make_shared<StarAlgebra>();
  a->field = ws.field;
  a->dim = j.at("dim").get<int>();
  a->prod.assign(a->dim, std::vector<SparseVec>(a->dim));
  for (const auto& entry : j.at("products")) {
    int x = entry.at("pair").at(0).get<int>();
    int y = entry.at("pair").at(1).get<int>();
    SparseVec v;
    for (const auto& term : entry.at("terms"))
      v.push_back({term.at(0).get<int>(),
                   Cyc::parse(ws.field, term.at(1).get<std::string>())});
    a->prod.at(x).at(y) = std::move(v);
  }
  a->star.resize(a->dim);
  const Json& stars = j.at("star");
  for (int x = 0; x < a->dim; ++x) {
    SparseVec v;
    for (const auto& term : stars.at(x))
      v.push_back({term.at(0).get<int>(),
                   Cyc::parse(ws.field, term.at(1).get<std::string>())});
    a->star[x] = std::move(v);
  }
  a->distinguished = j.at("distinguished").get<std::vector<int>>();
  return a;
}

FellPtr bundle_from_json(const Workspace& ws, const Json& j) {
  auto e = std::make_shared<FellBundle>();
  e->base = resolve_groupoid(ws, j.at("base"));
  e->field = ws.field;
  e->dim = j.at("dim").get<std::vector<int>>();
  for (const auto& entry : j.at("mult")) {
    int a = entry.at("pair").at(0).get<int>();
    int b = entry.at("pair").at(1).get<int>();
    Tensor3 t;
    for (const auto& row : entry.at("tensor")) {
      std::vector<CVec> r;
      for (const auto& vec : row) {
        CVec v;
        for (const auto& c : vec)
          v.push_back(Cyc::parse(ws.field, c.get<std::string>()));
        r.push_back(std::move(v));
      }
      t.push_back(std::move(r));
    }
    e->mult[{a, b}] = std::move(t);
  }
  for (const auto& m : j.at("invol"))
    e->invol.push_back(matrix_from_json(m, ws.field));
  for (const auto& u : j.at("unit")) {
    if (u.is_null()) {
      e->unit_vec.emplace_back();
    } else {
      CVec v;
      for (const auto& c : u)
        v.push_back(Cyc::parse(ws.field, c.get<std::string>()));
      e->unit_vec.push_back(std::move(v));
    }
  }
  return e;
}

FellActor fell_actor_from_json(const Workspace& ws, const Json& j) {
  FellActor a;
  auto ait = ws.actors.find(j.at("under").get<std::string>());
  if (ait == ws.actors.end()) throw Error("unresolved actor reference");
  a.under = ait->second;
  auto dit = ws.bundles.find(j.at("dom").get<std::string>());
  auto cit = ws.bundles.find(j.at("cod").get<std::string>());
  if (dit == ws.bundles.end() || cit == ws.bundles.end())
    throw Error("unresolved bundle reference");
  a.dom = dit->second;
  a.cod = cit->second;
  for (const auto& entry : j.at("mult")) {
    int g = entry.at("pair").at(0).get<int>();
    int x = entry.at("pair").at(1).get<int>();
    Tensor3 t;
    for (const auto& row : entry.at("tensor")) {
      std::vector<CVec> r;
      for (const auto& vec : row) {
        CVec v;
        for (const auto& c : vec)
          v.push_back(Cyc::parse(ws.field, c.get<std::string>()));
        r.push_back(std::move(v));
      }
      t.push_back(std::move(r));
    }
    a.mult[{g, x}] = std::move(t);
  }
  return a;
}

AlgebraHom hom_from_json(const Workspace& ws, const Json& j) {
  AlgebraHom phi;
  auto sit = ws.algebras.find(j.at("src").get<std::string>());
  auto tit = ws.algebras.find(j.at("tgt").get<std::string>());
  if (sit == ws.algebras.end() || tit == ws.algebras.end())
    throw Error("unresolved algebra reference");
  phi.src = sit->second;
  phi.tgt = tit->second;
  phi.matrix = matrix_from_json(j.at("matrix"), ws.field);
  if (static_cast<int>(phi.matrix.size()) != phi.tgt->dim)
    throw Error("hom matrix has wrong shape");
  for (const auto& row : phi.matrix)
    if (static_cast<int>(row.size()) != phi.src->dim)
      throw Error("hom matrix has wrong shape");
  return phi;
}

CartanPair pair_from_json(const Workspace& ws, const Json& j) {
  CartanPair p;
  auto it = ws.algebras.find(j.at("algebra").get<std::string>());
  if (it == ws.algebras.end()) throw Error("unresolved algebra reference");
  p.algebra = it->second;
  p.diag = j.at("diag").get<std::vector<int>>();
  return p;
}

InductiveSystem system_from_json(const Workspace& ws, const Json& j) {
  InductiveSystem sys;
  for (const auto& name : j.at("actors")) {
    auto it = ws.actors.find(name.get<std::string>());
    if (it == ws.actors.end()) throw Error("unresolved actor reference");
    sys.chain.push_back(it->second);
  }
  sys.stationary = j.at("stationary").get<bool>();
  if (j.contains("fell_actors"))
    for (const auto& name : j.at("fell_actors")) {
      auto it = ws.fell_actors.find(name.get<std::string>());
      if (it == ws.fell_actors.end())
        throw Error("unresolved Fell actor reference");
      sys.fell_chain.push_back(it->second);
    }
  return sys;
}

}  // namespace

Workspace Workspace::load(const Json& j) {
  Workspace ws;
  long order = j.value("context_order", 1L);
  ws.field = CycField::get(order);
  if (j.contains("groupoids"))
    for (const auto& [name, doc] : j.at("groupoids").items())
      ws.groupoids[name] = groupoid_from_json(doc);
  if (j.contains("twists"))
    for (const auto& [name, doc] : j.at("twists").items())
      ws.twists.emplace(name, twist_from_json(ws, doc));
  if (j.contains("algebras"))
    for (const auto& [name, doc] : j.at("algebras").items())
      ws.algebras[name] = algebra_from_json(ws, doc);
  if (j.contains("bundles"))
    for (const auto& [name, doc] : j.at("bundles").items())
      ws.bundles[name] = bundle_from_json(ws, doc);
  if (j.contains("actors"))
    for (const auto& [name, doc] : j.at("actors").items())
      ws.actors.emplace(name, actor_from_json(ws, doc));
  if (j.contains("fell_actors"))
    for (const auto& [name, doc] : j.at("fell_actors").items())
      ws.fell_actors.emplace(name, fell_actor_from_json(ws, doc));
  if (j.contains("homs"))
    for (const auto& [name, doc] : j.at("homs").items())
      ws.homs.emplace(name, hom_from_json(ws, doc));
  if (j.contains("pairs"))
    for (const auto& [name, doc] : j.at("pairs").items())
      ws.pairs.emplace(name, pair_from_json(ws, doc));
  if (j.contains("systems"))
    for (const auto& [name, doc] : j.at("systems").items())
      ws.systems.emplace(name, system_from_json(ws, doc));
  return ws;
}

Workspace Workspace::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open workspace file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("workspace parse error: " + std::string(e.what()));
  }
  return load(j);
}

Json Workspace::to_json() const {
  Json j;
  j["context_order"] = field->order();
  Json gs = Json::object();
  for (const auto& [name, g] : groupoids) gs[name] = groupoid_to_json(*g);
  j["groupoids"] = gs;
  Json ts = Json::object();
  for (const auto& [name, t] : twists) {
    Json doc = twist_to_json(t);
    for (const auto& [gname, g] : groupoids)
      if (same_groupoid(g, t.base)) doc["base"] = gname;
    ts[name] = doc;
  }
  j["twists"] = ts;
  Json as = Json::object();
  for (const auto& [name, a] : algebras) as[name] = algebra_to_json(*a);
  j["algebras"] = as;
  Json bs = Json::object();
  for (const auto& [name, e] : bundles) {
    Json doc = bundle_to_json(*e);
    for (const auto& [gname, g] : groupoids)
      if (same_groupoid(g, e->base)) doc["base"] = gname;
    bs[name] = doc;
  }
  j["bundles"] = bs;
  Json hs = Json::object();
  for (const auto& [name, h] : actors) {
    std::string dn, cn;
    for (const auto& [gname, g] : groupoids) {
      if (same_groupoid(g, h.dom)) dn = gname;
      if (same_groupoid(g, h.cod)) cn = gname;
    }
    hs[name] = actor_to_json(h, dn, cn);
  }
  j["actors"] = hs;
  return j;
}

}  // namespace gact
