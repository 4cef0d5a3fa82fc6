#include "support/oracles.hpp"

#include <deque>
#include <functional>
#include <map>

namespace catkit::testing {

namespace {

// Calls visit for every tuple in the product of [0, sizes[i]).
void product_tuples(const std::vector<std::size_t>& sizes, const std::function<void(const std::vector<int>&)>& visit) {
  for (std::size_t s : sizes)
    if (s == 0) return;
  std::vector<int> t(sizes.size(), 0);
  for (;;) {
    visit(t);
    std::size_t i = 0;
    while (i < t.size() && ++t[i] == static_cast<int>(sizes[i])) t[i++] = 0;
    if (i == t.size()) return;
  }
}

}  // namespace

std::size_t brute_functor_count(const FiniteCategory& c, const FiniteCategory& d) {
  std::size_t count = 0;
  std::vector<std::size_t> osz(c.num_objects(), d.num_objects());
  product_tuples(osz, [&](const std::vector<int>& om) {
    std::vector<std::size_t> msz;
    std::vector<std::vector<Mor>> cands;
    for (Mor f = 0; f < static_cast<Mor>(c.num_morphisms()); ++f) {
      cands.push_back(d.hom(om[c.source(f)], om[c.target(f)]));
      msz.push_back(cands.back().size());
    }
    product_tuples(msz, [&](const std::vector<int>& pick) {
      auto img = [&](Mor f) { return cands[f][pick[f]]; };
      for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x)
        if (img(c.identity(x)) != d.identity(om[x])) return;
      for (Mor g = 0; g < static_cast<Mor>(c.num_morphisms()); ++g)
        for (Mor f = 0; f < static_cast<Mor>(c.num_morphisms()); ++f) {
          const Mor h = c.compose(g, f);
          if (h != kNone && img(h) != d.compose(img(g), img(f))) return;
        }
      ++count;
    });
    if (c.num_morphisms() == 0) ++count;
  });
  if (c.num_objects() == 0) return 1;
  return count;
}

std::size_t brute_natural_count(const CatFunctor& f, const CatFunctor& g) {
  const FiniteCategory& c = *f.dom;
  const FiniteCategory& d = *f.cod;
  std::vector<std::vector<Mor>> cands;
  std::vector<std::size_t> sz;
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) {
    cands.push_back(d.hom(f.on_object(x), g.on_object(x)));
    sz.push_back(cands.back().size());
  }
  if (c.num_objects() == 0) return 1;
  std::size_t count = 0;
  product_tuples(sz, [&](const std::vector<int>& pick) {
    for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
      const Mor a = cands[c.target(m)][pick[c.target(m)]];
      const Mor b = cands[c.source(m)][pick[c.source(m)]];
      if (d.compose(a, f.on_morphism(m)) != d.compose(g.on_morphism(m), b)) return;
    }
    ++count;
  });
  return count;
}

std::vector<std::vector<int>> brute_limit(const SetDiagram& x) {
  const FiniteCategory& c = *x.shape;
  std::vector<std::size_t> sz;
  for (const auto& s : x.sets) sz.push_back(s.size());
  std::vector<std::vector<int>> out;
  if (sz.empty()) return {{}};
  product_tuples(sz, [&](const std::vector<int>& t) {
    for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m)
      if (x.maps[m][t[c.source(m)]] != t[c.target(m)]) return;
    out.push_back(t);
  });
  return out;
}

std::set<std::set<std::pair<int, int>>> bfs_colimit(const SetDiagram& x) {
  const FiniteCategory& c = *x.shape;
  // Undirected adjacency between (object, element) nodes.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> adj;
  for (Ob o = 0; o < static_cast<Ob>(c.num_objects()); ++o)
    for (int e = 0; e < static_cast<int>(x.sets[o].size()); ++e) adj[{o, e}];
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m)
    for (int e = 0; e < static_cast<int>(x.maps[m].size()); ++e) {
      const std::pair<int, int> a{c.source(m), e}, b{c.target(m), x.maps[m][e]};
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  std::set<std::pair<int, int>> seen;
  std::set<std::set<std::pair<int, int>>> out;
  for (const auto& [start, _] : adj) {
    if (seen.count(start)) continue;
    std::set<std::pair<int, int>> comp;
    std::deque<std::pair<int, int>> q{start};
    seen.insert(start);
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      comp.insert(v);
      for (auto w : adj[v])
        if (seen.insert(w).second) q.push_back(w);
    }
    out.insert(comp);
  }
  return out;
}

std::size_t brute_map_count(const SetDiagram& a, const SetDiagram& b) {
  const FiniteCategory& c = *a.shape;
  // Flatten: one slot per element of A, valued in the matching set of B.
  std::vector<std::pair<int, int>> slots;
  std::vector<std::size_t> sz;
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x)
    for (int e = 0; e < static_cast<int>(a.sets[x].size()); ++e) {
      slots.emplace_back(x, e);
      sz.push_back(b.sets[x].size());
    }
  if (slots.empty()) return 1;
  std::vector<std::vector<int>> slot_of(c.num_objects());
  for (std::size_t k = 0; k < slots.size(); ++k) slot_of[slots[k].first].push_back(static_cast<int>(k));
  std::size_t count = 0;
  product_tuples(sz, [&](const std::vector<int>& t) {
    for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
      const Ob x = c.source(m), y = c.target(m);
      for (int e = 0; e < static_cast<int>(a.sets[x].size()); ++e)
        if (t[slot_of[y][a.maps[m][e]]] != b.maps[m][t[slot_of[x][e]]]) return;
    }
    ++count;
  });
  return count;
}

bool brute_is_equivalence(const CatFunctor& f) {
  const FiniteCategory& c = *f.dom;
  const FiniteCategory& d = *f.cod;
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x)
    for (Ob y = 0; y < static_cast<Ob>(c.num_objects()); ++y) {
      std::set<Mor> img;
      for (Mor m : c.hom(x, y)) img.insert(f.on_morphism(m));
      if (img.size() != c.hom(x, y).size()) return false;
      if (img.size() != d.hom(f.on_object(x), f.on_object(y)).size()) return false;
    }
  for (Ob z = 0; z < static_cast<Ob>(d.num_objects()); ++z) {
    bool hit = false;
    for (Ob x = 0; x < static_cast<Ob>(c.num_objects()) && !hit; ++x)
      for (Mor u : d.hom(f.on_object(x), z))
        for (Mor v : d.hom(z, f.on_object(x)))
          if (d.compose(u, v) == d.identity(z) && d.compose(v, u) == d.identity(f.on_object(x))) hit = true;
    if (!hit) return false;
  }
  return true;
}

}  // namespace catkit::testing
