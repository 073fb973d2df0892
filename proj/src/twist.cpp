#include "gact/twist.hpp"

#include <numeric>

#include "gact/linalg.hpp"

namespace gact {

const Cyc& Twist::value(int a, int b) const {
  auto it = sigma.find({a, b});
  if (it == sigma.end())
    throw Error("cocycle undefined on composable pair (" + std::to_string(a) +
                "," + std::to_string(b) + ")");
  return it->second;
}

Twist trivial_twist(const GroupoidPtr& g, const FieldPtr& f) {
  Twist t{g, f, {}};
  for (int a = 0; a < g->size(); ++a)
    for (int b = 0; b < g->size(); ++b)
      if (g->composable(a, b)) t.sigma.insert({{a, b}, Cyc::one(f)});
  return t;
}

Report validate_twist(const Twist& t) {
  Report rep;
  const FiniteGroupoid& g = *t.base;
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) {
      bool comp = g.composable(a, b);
      bool have = t.sigma.count({a, b}) > 0;
      if (comp && !have)
        rep.fail("cocycle_domain", "missing composable pair (" +
                                       std::to_string(a) + "," +
                                       std::to_string(b) + ")");
      if (!comp && have)
        rep.fail("cocycle_domain", "value on non-composable pair (" +
                                       std::to_string(a) + "," +
                                       std::to_string(b) + ")");
    }
  if (!rep.ok()) return rep;
  for (const auto& [key, val] : t.sigma)
    if (!val.is_root_of_unity())
      rep.fail("unit_modulus", "sigma(" + std::to_string(key.first) + "," +
                                   std::to_string(key.second) +
                                   ") is not a root of unity");
  for (int a = 0; a < g.size(); ++a) {
    if (!(t.value(g.rng(a), a) == Cyc::one(t.field)))
      rep.fail("normalized", "sigma(rng, a) != 1 at a=" + std::to_string(a));
    if (!(t.value(a, g.src(a)) == Cyc::one(t.field)))
      rep.fail("normalized", "sigma(a, src) != 1 at a=" + std::to_string(a));
  }
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) {
      if (!g.composable(a, b)) continue;
      int ab = g.comp(a, b);
      for (int c = 0; c < g.size(); ++c) {
        if (!g.composable(b, c)) continue;
        if (!(t.value(a, b) * t.value(ab, c) ==
              t.value(b, c) * t.value(a, g.comp(b, c))))
          rep.fail("cocycle_identity",
                   "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                       std::to_string(c) + ")");
      }
    }
  return rep;
}

Twist coboundary_twist(const Twist& t, const std::vector<Cyc>& chain) {
  Twist out{t.base, t.field, {}};
  const FiniteGroupoid& g = *t.base;
  for (const auto& [key, val] : t.sigma) {
    int ab = g.comp(key.first, key.second);
    out.sigma.insert({key, chain[key.first] * chain[key.second] *
                               chain[ab].inverse() * val});
  }
  return out;
}

Twist normalize_cocycle(const Twist& t) {
  const FiniteGroupoid& g = *t.base;
  std::vector<Cyc> chain;
  chain.reserve(g.size());
  for (int a = 0; a < g.size(); ++a)
    chain.push_back(t.value(g.rng(a), g.rng(a)).inverse());
  return coboundary_twist(t, chain);
}

std::optional<std::vector<Cyc>> cocycles_cohomologous(const Twist& s1,
                                                      const Twist& s2) {
  if (!same_groupoid(s1.base, s2.base))
    throw Error("cocycles over different groupoids");
  if (s1.field->order() != s2.field->order())
    throw Error("cocycles over different contexts");
  const FieldPtr& f = s1.field;
  const FiniteGroupoid& g = *s1.base;
  long m = std::lcm(2L, f->order());

  // express every ratio as a power of the primitive m-th root
  std::vector<Cyc> roots;
  for (long k = 0; k < m; ++k) roots.push_back(Cyc::context_root(f, k));
  auto log_root = [&](const Cyc& z) -> long {
    for (long k = 0; k < m; ++k)
      if (roots[k] == z) return k;
    return -1;
  };

  std::vector<std::vector<long>> rows;
  std::vector<long> rhs;
  for (const auto& [key, val] : s1.sigma) {
    auto [a, b] = key;
    Cyc ratio = s2.value(a, b) * val.inverse();
    long d = log_root(ratio);
    if (d < 0) return std::nullopt;  // ratio not a context root of unity
    std::vector<long> row(g.size(), 0);
    row[a] += 1;
    row[b] += 1;
    row[g.comp(a, b)] -= 1;
    rows.push_back(std::move(row));
    rhs.push_back(d);
  }
  auto sol = solve_mod(rows, rhs, m);
  if (!sol) return std::nullopt;
  std::vector<Cyc> chain;
  chain.reserve(g.size());
  for (int a = 0; a < g.size(); ++a) chain.push_back(roots[(*sol)[a]]);
  return chain;
}

}  // namespace gact
