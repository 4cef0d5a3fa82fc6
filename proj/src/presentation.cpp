#include "catkit/presentation.hpp"

#include <algorithm>
#include <map>

#include "catkit/detail/disjoint_set.hpp"

namespace catkit {

int Presentation::path_source(const Path& p) const {
  return p.gens.empty() ? p.object : generators[p.gens.front()].source;
}

int Presentation::path_target(const Path& p) const {
  return p.gens.empty() ? p.object : generators[p.gens.back()].target;
}

namespace {

using Key = std::pair<int, std::vector<int>>;  // (source object, generators)

struct PathTable {
  std::vector<Key> paths;
  std::map<Key, int> index;
  std::vector<int> source, target;

  int find(int src, const std::vector<int>& gens) const {
    auto it = index.find({src, gens});
    return it == index.end() ? -1 : it->second;
  }
};

PathTable enumerate_paths(const Presentation& p, int max_len, std::size_t max_paths) {
  PathTable t;
  auto push = [&](Key k, int s, int e) {
    t.index.emplace(k, static_cast<int>(t.paths.size()));
    t.paths.push_back(std::move(k));
    t.source.push_back(s);
    t.target.push_back(e);
    if (t.paths.size() > max_paths) throw BudgetExceeded("presentation: path budget exceeded");
  };
  for (int x = 0; x < static_cast<int>(p.objects.size()); ++x) push({x, {}}, x, x);
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = t.paths.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int g = 0; g < static_cast<int>(p.generators.size()); ++g) {
        if (p.generators[g].source != t.target[i]) continue;
        Key k = t.paths[i];
        k.second.push_back(g);
        push(std::move(k), t.source[i], p.generators[g].target);
      }
    }
    begin = end;
  }
  return t;
}

// Object reached after the first `pos` generators of a path.
int object_at(const Presentation& p, const Key& k, std::size_t pos) {
  return pos == 0 ? k.first : p.generators[k.second[pos - 1]].target;
}

void apply_relation(const Presentation& p, const PathTable& t, detail::DisjointSet& dsu,
                    const Presentation::Path& from, const Presentation::Path& to, int max_len) {
  const std::size_t lf = from.gens.size();
  for (std::size_t i = 0; i < t.paths.size(); ++i) {
    const auto& [src, gens] = t.paths[i];
    if (gens.size() < lf) continue;
    for (std::size_t pos = 0; pos + lf <= gens.size(); ++pos) {
      if (lf == 0) {
        if (object_at(p, t.paths[i], pos) != from.object) continue;
      } else if (!std::equal(from.gens.begin(), from.gens.end(), gens.begin() + static_cast<std::ptrdiff_t>(pos))) {
        continue;
      }
      const std::size_t new_len = gens.size() - lf + to.gens.size();
      if (static_cast<int>(new_len) > max_len) continue;
      std::vector<int> w(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(pos));
      w.insert(w.end(), to.gens.begin(), to.gens.end());
      w.insert(w.end(), gens.begin() + static_cast<std::ptrdiff_t>(pos + lf), gens.end());
      const int j = t.find(src, w);
      if (j >= 0) dsu.unite(static_cast<int>(i), j);
    }
  }
}

}  // namespace

PresentedCategory complete_presentation(const Presentation& p, const ClosureBudget& budget) {
  const int nobj = static_cast<int>(p.objects.size());
  if (static_cast<int>(p.identity_names.size()) != nobj)
    throw InputError("presentation: one identity name per object required");
  for (const auto& g : p.generators)
    if (g.source < 0 || g.source >= nobj || g.target < 0 || g.target >= nobj)
      throw InputError("presentation: generator '" + g.name + "' has an invalid endpoint");
  auto check_path = [&](const Presentation::Path& path) {
    int at = path.object;
    for (std::size_t k = 0; k < path.gens.size(); ++k) {
      const auto& g = p.generators.at(path.gens[k]);
      if (k == 0) at = g.source;
      if (g.source != at) throw InputError("presentation: relation path is not composable");
      at = g.target;
    }
  };
  for (const auto& [l, r] : p.relations) {
    check_path(l);
    check_path(r);
    if (p.path_source(l) != p.path_source(r) || p.path_target(l) != p.path_target(r))
      throw InputError("presentation: relation sides have different endpoints");
  }

  for (int len = 1; len <= budget.max_length; ++len) {
    const PathTable t = enumerate_paths(p, len, budget.max_paths);
    const int n = static_cast<int>(t.paths.size());
    detail::DisjointSet dsu(static_cast<std::size_t>(n));
    for (const auto& [l, r] : p.relations) {
      apply_relation(p, t, dsu, l, r, len);
      apply_relation(p, t, dsu, r, l, len);
    }

    // Congruence closure: composites of equivalent pairs must agree.
    std::map<std::pair<int, int>, int> comp;  // (root of v, root of u) -> root of v∘u
    bool changed = true;
    while (changed) {
      changed = false;
      comp.clear();
      for (int u = 0; u < n; ++u) {
        const auto& ku = t.paths[u];
        for (int v = 0; v < n; ++v) {
          if (t.source[v] != t.target[u]) continue;
          const auto& kv = t.paths[v];
          if (static_cast<int>(ku.second.size() + kv.second.size()) > len) continue;
          std::vector<int> w = ku.second;
          w.insert(w.end(), kv.second.begin(), kv.second.end());
          const int uv = t.find(ku.first, w);
          const int ru = dsu.find(u), rv = dsu.find(v), rw = dsu.find(uv);
          auto [it, fresh] = comp.emplace(std::make_pair(rv, ru), rw);
          if (!fresh && dsu.find(it->second) != rw) {
            dsu.unite(it->second, rw);
            changed = true;
          }
        }
      }
    }

    // Collect classes and pick canonical representatives.
    std::map<int, int> rep;  // root -> best path
    auto better = [&](int a, int b) {
      const auto& ka = t.paths[a].second;
      const auto& kb = t.paths[b].second;
      if (ka.size() != kb.size()) return ka.size() < kb.size();
      return ka < kb;
    };
    for (int i = 0; i < n; ++i) {
      const int r = dsu.find(i);
      auto it = rep.find(r);
      if (it == rep.end()) rep.emplace(r, i);
      else if (better(i, it->second)) it->second = i;
    }
    if (rep.size() > budget.max_morphisms)
      throw BudgetExceeded("presentation: more than " + std::to_string(budget.max_morphisms) + " morphisms");

    // Closed iff every composable class pair has a composite within the bound.
    std::vector<int> roots;
    std::map<int, int> class_of_root;
    for (const auto& [r, _] : rep) {
      class_of_root[r] = static_cast<int>(roots.size());
      roots.push_back(r);
    }
    bool closed = true;
    for (int a : roots) {
      for (int b : roots) {
        if (t.source[rep[b]] != t.target[rep[a]]) continue;
        if (!comp.count({dsu.find(b), dsu.find(a)})) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
    if (!closed) continue;

    std::vector<std::string> names;
    std::vector<Ob> src, tgt;
    for (int r : roots) {
      const int path = rep[r];
      const auto& gens = t.paths[path].second;
      std::string name;
      if (gens.empty()) {
        name = p.identity_names[t.paths[path].first];
      } else {
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
          if (!name.empty()) name += "*";
          name += p.generators[*it].name;
        }
      }
      names.push_back(std::move(name));
      src.push_back(t.source[path]);
      tgt.push_back(t.target[path]);
    }
    std::vector<Mor> ids(nobj);
    for (int x = 0; x < nobj; ++x) ids[x] = class_of_root.at(dsu.find(t.find(x, {})));
    FiniteCategory cat =
        FiniteCategory::from_indexed(p.objects, names, src, tgt, ids, [&](Mor g, Mor f) -> Mor {
          auto it = comp.find({dsu.find(roots[g]), dsu.find(roots[f])});
          return it == comp.end() ? kNone : class_of_root.at(dsu.find(it->second));
        });
    if (!validate_category(cat).ok()) continue;

    PresentedCategory out;
    out.category = std::make_shared<const FiniteCategory>(std::move(cat));
    out.path_length = len;
    for (int g = 0; g < static_cast<int>(p.generators.size()); ++g) {
      const int path = t.find(p.generators[g].source, {g});
      out.generator_image.push_back(out.category->morphism(names[class_of_root.at(dsu.find(path))]));
    }
    return out;
  }
  throw BudgetExceeded("presentation: closure did not stabilise within path length " +
                       std::to_string(budget.max_length));
}

}  // namespace catkit
