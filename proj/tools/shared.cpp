#include "shared.hpp"

namespace catkit::cli {

using nlohmann::json;

std::vector<BuiltinCategory> builtin_categories() {
  return {{"empty", shapes::empty()},
          {"terminal", shapes::terminal()},
          {"discrete2", shapes::discrete({"a", "b"})},
          {"arrow", shapes::walking_arrow()},
          {"iso", shapes::walking_iso()},
          {"parallel", shapes::parallel_pair()},
          {"ordinal2", shapes::ordinal(2)},
          {"indiscrete3", shapes::indiscrete({"x", "x'", "y"})},
          {"C2", group_category(FiniteGroup::cyclic(2))}};
}

json violations_json(const ValidationReport& r, std::size_t max) {
  json a = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < max; ++i) a.push_back(r.violations[i]);
  return a;
}

json diagram_json(const SetDiagram& d) {
  const FiniteCategory& c = *d.shape;
  json sets = json::object(), maps = json::object();
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) sets[c.object_name(x)] = d.sets[x];
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    if (c.is_identity(m)) continue;
    json f = json::object();
    for (std::size_t e = 0; e < d.sets[c.source(m)].size(); ++e)
      f[d.sets[c.source(m)][e]] = d.sets[c.target(m)][d.maps[m][e]];
    maps[c.morphism_name(m)] = f;
  }
  return {{"maps", maps}, {"sets", sets}};
}

json functor_json(const CatFunctor& f) {
  json obs = json::object(), mors = json::object();
  for (Ob x = 0; x < static_cast<Ob>(f.dom->num_objects()); ++x)
    obs[f.dom->object_name(x)] = f.cod->object_name(f.on_object(x));
  for (Mor m = 0; m < static_cast<Mor>(f.dom->num_morphisms()); ++m)
    mors[f.dom->morphism_name(m)] = f.cod->morphism_name(f.on_morphism(m));
  return {{"morphisms", mors}, {"objects", obs}};
}

}  // namespace catkit::cli
