#include "catkit/semidirect.hpp"

#include <map>
#include <numeric>

namespace catkit {

ValidationReport validate_action(const GroupAction& a) {
  ValidationReport r;
  const int n = static_cast<int>(a.group.order());
  if (static_cast<int>(a.rho.size()) != n) {
    r.add("expected one functor per group element");
    return r;
  }
  for (int g = 0; g < n; ++g) {
    const CatFunctor& f = a.rho[g];
    if (!(*f.dom == *a.target) || !(*f.cod == *a.target)) {
      r.add("rho_" + a.group.name(g) + " is not an endofunctor of the target");
      return r;
    }
    r.merge(validate_functor(f), "rho_" + a.group.name(g) + ": ");
  }
  if (!r.ok()) return r;
  if (!(a.rho[a.group.identity()] == identity_functor(a.target))) r.add("rho_e is not the identity");
  for (int g = 0; g < n; ++g) {
    if (!is_isomorphism(a.rho[g])) r.add("rho_" + a.group.name(g) + " is not an isomorphism");
    for (int h = 0; h < n; ++h)
      if (!(compose(a.rho[g], a.rho[h]) == a.rho[a.group.mul(g, h)]))
        r.add("rho_" + a.group.name(g) + " rho_" + a.group.name(h) + " != rho_" + a.group.name(a.group.mul(g, h)));
  }
  return r;
}

GroupAction trivial_action(CatRef c, FiniteGroup g) {
  GroupAction a{std::move(g), c, {}};
  a.rho.assign(a.group.order(), identity_functor(c));
  return a;
}

GroupAction permutation_action(FiniteGroup g, CatRef discrete,
                               const std::function<std::string(int, const std::string&)>& act) {
  GroupAction a{std::move(g), discrete, {}};
  for (int e = 0; e < static_cast<int>(a.group.order()); ++e) {
    CatFunctor f{discrete, discrete, {}, {}};
    for (const auto& x : discrete->object_names()) f.obj_map.push_back(discrete->object(act(e, x)));
    f.mor_map.resize(discrete->num_morphisms());
    for (Ob x = 0; x < static_cast<Ob>(discrete->num_objects()); ++x)
      f.mor_map[discrete->identity(x)] = discrete->identity(f.obj_map[x]);
    a.rho.push_back(std::move(f));
  }
  return a;
}

Mor SemidirectCategory::pair(Mor phi, int g) const {
  return category->morphism("(" + action.target->morphism_name(phi) + "," + action.group.name(g) + ")");
}

SemidirectCategory semidirect(const GroupAction& a) {
  const FiniteCategory& c = *a.target;
  const FiniteGroup& g = a.group;
  const int ng = static_cast<int>(g.order());
  const int nm = static_cast<int>(c.num_morphisms());
  std::vector<std::string> mors;
  std::vector<Ob> src, tgt;
  for (Mor phi = 0; phi < nm; ++phi)
    for (int x = 0; x < ng; ++x) {
      mors.push_back("(" + c.morphism_name(phi) + "," + g.name(x) + ")");
      src.push_back(a.rho[g.inverse(x)].on_object(c.source(phi)));
      tgt.push_back(c.target(phi));
    }
  std::vector<Mor> ids;
  for (Ob o = 0; o < static_cast<Ob>(c.num_objects()); ++o) ids.push_back(c.identity(o) * ng + g.identity());
  auto comp = [&](Mor lhs, Mor rhs) {
    const Mor phi = lhs / ng, psi = rhs / ng;
    const int x = lhs % ng, y = rhs % ng;
    const Mor m = c.compose(phi, a.rho[x].on_morphism(psi));
    if (m == kNone) throw InternalError("twisted composite undefined");
    return m * ng + g.mul(x, y);
  };
  SemidirectCategory s;
  s.action = a;
  s.category = std::make_shared<const FiniteCategory>(
      FiniteCategory::from_indexed(c.object_names(), mors, src, tgt, ids, comp));
  s.parts.resize(s.category->num_morphisms());
  for (Mor phi = 0; phi < nm; ++phi)
    for (int x = 0; x < ng; ++x) s.parts[s.category->morphism(mors[phi * ng + x])] = {phi, x};
  return s;
}

CatFunctor inclusion_iota(const SemidirectCategory& s) {
  const FiniteCategory& c = *s.action.target;
  CatFunctor f{s.action.target, s.category, {}, {}};
  for (Ob o = 0; o < static_cast<Ob>(c.num_objects()); ++o) f.obj_map.push_back(o);
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m)
    f.mor_map.push_back(s.pair(m, s.action.group.identity()));
  return f;
}

GroupAction kappa_action(const GroupAction& a) {
  GroupAction k{a.group.opposite(), opposite(a.target), {}};
  for (int g = 0; g < static_cast<int>(a.group.order()); ++g)
    k.rho.push_back(opposite(a.rho[a.group.inverse(g)], k.target, k.target));
  return k;
}

CatFunctor opposite_comparison(const SemidirectCategory& s, const SemidirectCategory& kappa) {
  auto dom = opposite(s.category);
  CatFunctor f{dom, kappa.category, {}, {}};
  for (Ob o = 0; o < static_cast<Ob>(dom->num_objects()); ++o) f.obj_map.push_back(o);
  for (const auto& [phi, g] : s.parts)
    f.mor_map.push_back(kappa.pair(s.action.rho[s.action.group.inverse(g)].on_morphism(phi), g));
  return f;
}

LanFormulaReport verify_lan_formula(const SemidirectCategory& s, const SetDiagram& f) {
  LanFormulaReport rep;
  const GroupAction& a = s.action;
  const FiniteCategory& c = *a.target;
  const FiniteGroup& grp = a.group;
  const int ng = static_cast<int>(grp.order());
  const CatFunctor iota = inclusion_iota(s);

  rep.lhs = restrict(iota, lan(iota, f));
  std::vector<DiagRef> parts;
  std::vector<std::string> tags;
  for (int g = 0; g < ng; ++g) {
    parts.push_back(share(restrict(a.rho[grp.inverse(g)], f)));
    tags.push_back(grp.name(g));
  }
  const CoproductDiagram cp = coproduct(parts, tags);
  rep.rhs = *cp.diagram;

  DiagramMap cmp{cp.diagram, share(SetDiagram(rep.lhs)), {}};
  cmp.components.resize(c.num_objects());
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) {
    const std::string at = "object " + c.object_name(x);
    const CommaCategory k = comma_over(iota, x);
    const FiniteCategory& kc = *k.category;
    const ColimitResult col = colimit(restrict(k.projection, f));
    if (col.apex != rep.lhs.sets[x]) rep.problems.add(at + ": colimit over the comma category differs from lan");

    // connected components
    std::vector<int> comp(kc.num_objects());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int v) { return comp[v] == v ? v : comp[v] = find(comp[v]); };
    for (Mor m = 0; m < static_cast<Mor>(kc.num_morphisms()); ++m) comp[find(kc.source(m))] = find(kc.target(m));
    std::map<int, int> component_terminal;
    std::size_t ncomp = 0;
    for (Ob o = 0; o < static_cast<Ob>(kc.num_objects()); ++o)
      if (find(o) == o) ++ncomp;
    rep.components += ncomp;
    if (ncomp != static_cast<std::size_t>(ng))
      rep.problems.add(at + ": " + std::to_string(ncomp) + " components in the comma category, expected " +
                       std::to_string(ng));

    cmp.components[x].assign(rep.rhs.sets[x].size(), 0);
    for (int g = 0; g < ng; ++g) {
      const Ob src = a.rho[grp.inverse(g)].on_object(x);
      const Mor arrow = s.pair(c.identity(x), g);
      Ob t = kNone;
      for (Ob o = 0; o < static_cast<Ob>(kc.num_objects()); ++o)
        if (k.base_object[o] == src && k.arrow[o] == arrow) t = o;
      if (t == kNone) {
        rep.problems.add(at + ": no comma object (id, " + grp.name(g) + ")");
        continue;
      }
      if (!component_terminal.emplace(find(t), t).second)
        rep.problems.add(at + ": two distinguished objects share a component");
      for (Ob o = 0; o < static_cast<Ob>(kc.num_objects()); ++o)
        if (find(o) == find(t) && kc.hom(o, t).size() != 1)
          rep.problems.add(at + ": (id, " + grp.name(g) + ") is not terminal in its component");
      const auto& inj = cp.injections[g].components[x];
      for (std::size_t e = 0; e < inj.size(); ++e) cmp.components[x][inj[e]] = col.injections[t][e];
    }
  }
  rep.problems.merge(validate_map(cmp), "comparison: ");
  if (rep.problems.ok() && !is_levelwise_bijective(cmp)) rep.problems.add("comparison is not a bijection");
  rep.comparison = std::move(cmp);
  return rep;
}

HypothesisReport check_semidirect_hypotheses(const GroupAction& a,
                                             const std::vector<std::pair<std::string, MapPredicate>>& predicates,
                                             const std::vector<DiagramMap>& corpus) {
  HypothesisReport rep;
  for (const auto& [name, pred] : predicates)
    for (int g = 0; g < static_cast<int>(a.group.order()); ++g) {
      bool preserved = true;
      for (const auto& f : corpus) {
        if (!pred(f)) continue;
        ++rep.checks;
        if (!pred(restrict(a.rho[g], f))) {
          preserved = false;
          rep.problems.add(name + " not preserved by restriction along rho_" + a.group.name(g));
          break;
        }
      }
      rep.lines.push_back(name + " " + a.group.name(g) + ": " + (preserved ? "preserved" : "violated"));
    }
  return rep;
}

}  // namespace catkit
