#include "support/corpus.hpp"

#include <algorithm>
#include <map>

#include "catkit/detail/disjoint_set.hpp"

namespace catkit::testing {

CatRef idempotent_monoid() {
  return CategoryBuilder{}
      .add_object("*")
      .add_identity("*", "1")
      .add_morphism("e", "*", "*")
      .set_composite("e", "e", "e")
      .build_ref();
}

namespace {

CatRef span() {
  return CategoryBuilder{}
      .add_object("a").add_object("b").add_object("c")
      .add_identity("a", "id_a").add_identity("b", "id_b").add_identity("c", "id_c")
      .add_morphism("f", "c", "a").add_morphism("g", "c", "b")
      .build_ref();
}

CatRef commutative_square() {
  auto b = CategoryBuilder{};
  for (auto x : {"00", "01", "10", "11"}) b.add_object(x).add_identity(x, std::string("id") + x);
  b.add_morphism("h0", "00", "10").add_morphism("h1", "01", "11");
  b.add_morphism("v0", "00", "01").add_morphism("v1", "10", "11");
  b.add_morphism("d", "00", "11");
  b.set_composite("v1", "h0", "d").set_composite("h1", "v0", "d");
  return b.build_ref();
}

}  // namespace

std::vector<NamedCategory> small_categories() {
  std::vector<NamedCategory> out = {
      {"empty", shapes::empty()},
      {"terminal", shapes::terminal()},
      {"discrete2", shapes::discrete({"a", "b"})},
      {"arrow", shapes::walking_arrow()},
      {"iso", shapes::walking_iso()},
      {"ord2", shapes::ordinal(2)},
      {"ord3", shapes::ordinal(3)},
      {"parallel", shapes::parallel_pair()},
      {"span", span()},
      {"square", commutative_square()},
      {"indiscrete3", shapes::indiscrete({"x", "y", "z"})},
      {"idempotent", idempotent_monoid()},
      {"C2", group_category(FiniteGroup::cyclic(2))},
      {"C3", group_category(FiniteGroup::cyclic(3))},
      {"klein", group_category(FiniteGroup::klein())},
      {"S3", group_category(FiniteGroup::symmetric3())},
  };
  out.push_back({"arrow+iso", coproduct(shapes::walking_arrow(), shapes::walking_iso()).category});
  out.push_back({"arrowxarrow", product(shapes::walking_arrow(), shapes::walking_arrow()).category});
  out.push_back({"C2+terminal", coproduct(group_category(FiniteGroup::cyclic(2)), shapes::terminal()).category});
  return out;
}

CatRef random_poset(std::mt19937& rng, int n) {
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  std::bernoulli_distribution coin(0.4);
  for (int i = 0; i < n; ++i) {
    le[i][i] = true;
    for (int j = i + 1; j < n; ++j) le[i][j] = coin(rng);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  CategoryBuilder b;
  auto name = [](int i) { return "p" + std::to_string(i); };
  auto mor = [](int i, int j) { return std::to_string(i) + "<=" + std::to_string(j); };
  for (int i = 0; i < n; ++i) b.add_object(name(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j]) {
        b.add_morphism(mor(i, j), name(i), name(j));
        if (i == j) b.set_identity(name(i), mor(i, i));
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (le[i][j] && le[j][k] && i != j && j != k) b.set_composite(mor(j, k), mor(i, j), mor(i, k));
  return b.build_ref();
}

CatRef random_category(std::mt19937& rng, std::size_t max_morphisms) {
  const auto corpus = small_categories();
  std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
  std::uniform_int_distribution<int> kind(0, 3);
  for (;;) {
    CatRef c;
    switch (kind(rng)) {
      case 0: c = corpus[pick(rng)].cat; break;
      case 1: c = random_poset(rng, std::uniform_int_distribution<int>(1, 4)(rng)); break;
      case 2: c = coproduct(corpus[pick(rng)].cat, corpus[pick(rng)].cat).category; break;
      default: c = product(corpus[pick(rng)].cat, corpus[pick(rng)].cat).category; break;
    }
    if (c->num_morphisms() <= max_morphisms) return c;
  }
}

std::optional<CatFunctor> random_functor(std::mt19937& rng, const CatRef& c, const CatRef& d) {
  std::vector<CatFunctor> all;
  try {
    all = enumerate_functors(c, d, SearchBudget{20000, 2'000'000});
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  if (all.empty()) return std::nullopt;
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

SetDiagram constant_diagram(const CatRef& shape, const std::vector<std::string>& elements) {
  std::vector<std::string> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  SetDiagram d;
  d.shape = shape;
  d.sets.assign(shape->num_objects(), sorted);
  std::vector<int> id(sorted.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  d.maps.assign(shape->num_morphisms(), id);
  return d;
}

SetDiagram random_diagram(std::mt19937& rng, const CatRef& shape, std::size_t max_elements) {
  const FiniteCategory& c = *shape;
  const int n = static_cast<int>(c.num_objects());
  if (n == 0 || max_elements == 0) return empty_diagram(shape);

  // Coproduct of representables hom(c, -), as flat element lists.
  std::vector<std::vector<std::string>> sets(n);
  std::vector<std::vector<std::pair<int, Mor>>> origin(n);  // (summand, morphism)
  std::uniform_int_distribution<int> pick_obj(0, n - 1);
  int summands = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int s = 0, tries = 0; s < summands && tries < 20; ++tries) {
    const Ob x = pick_obj(rng);
    std::size_t size = 0;
    for (Ob y = 0; y < n; ++y) size += c.hom(x, y).size();
    std::size_t total = 0;
    for (const auto& v : sets) total += v.size();
    if (total + size > max_elements) continue;
    for (Ob y = 0; y < n; ++y)
      for (Mor u : c.hom(x, y)) {
        sets[y].push_back("g" + std::to_string(s) + ":" + c.morphism_name(u));
        origin[y].emplace_back(s, u);
      }
    ++s;
  }
  std::vector<int> offset(n + 1, 0);
  for (int x = 0; x < n; ++x) offset[x + 1] = offset[x] + static_cast<int>(sets[x].size());
  auto act = [&](Mor m, int e) {
    const Ob x = c.source(m), y = c.target(m);
    const auto [s, u] = origin[x][e];
    const Mor v = c.compose(m, u);
    for (std::size_t k = 0; k < origin[y].size(); ++k)
      if (origin[y][k] == std::make_pair(s, v)) return static_cast<int>(k);
    return -1;
  };

  // Subfunctor generated by a random subset.
  std::vector<char> keep(offset[n], 0);
  std::bernoulli_distribution coin(0.6);
  std::vector<int> stack;
  for (int k = 0; k < offset[n]; ++k)
    if (coin(rng)) stack.push_back(k);
  while (!stack.empty()) {
    const int k = stack.back();
    stack.pop_back();
    if (keep[k]) continue;
    keep[k] = 1;
    Ob x = 0;
    while (offset[x + 1] <= k) ++x;
    for (Mor m : c.outgoing(x)) stack.push_back(offset[c.target(m)] + act(m, k - offset[x]));
  }

  // Random congruence.
  detail::DisjointSet dsu(static_cast<std::size_t>(offset[n]));
  const int merges = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int t = 0; t < merges; ++t) {
    const Ob x = pick_obj(rng);
    std::vector<int> live;
    for (int k = offset[x]; k < offset[x + 1]; ++k)
      if (keep[k]) live.push_back(k);
    if (live.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pe(0, live.size() - 1);
    dsu.unite(live[pe(rng)], live[pe(rng)]);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
      const Ob x = c.source(m), y = c.target(m);
      std::map<int, int> image;  // class -> image class
      for (int k = offset[x]; k < offset[x + 1]; ++k) {
        if (!keep[k]) continue;
        const int img = offset[y] + act(m, k - offset[x]);
        auto [it, fresh] = image.emplace(dsu.find(k), img);
        if (!fresh && dsu.find(it->second) != dsu.find(img)) {
          dsu.unite(it->second, img);
          changed = true;
        }
      }
    }
  }

  // Quotient, classes named by their least member.
  std::vector<std::vector<std::string>> qsets(n);
  std::vector<std::map<int, int>> cls(n);  // root -> provisional index
  std::vector<std::vector<int>> rep(n);
  for (int x = 0; x < n; ++x)
    for (int k = offset[x]; k < offset[x + 1]; ++k) {
      if (!keep[k]) continue;
      const int r = dsu.find(k);
      auto [it, fresh] = cls[x].emplace(r, static_cast<int>(qsets[x].size()));
      const std::string& name = sets[x][k - offset[x]];
      if (fresh) {
        qsets[x].push_back(name);
        rep[x].push_back(k - offset[x]);
      } else if (name < qsets[x][it->second]) {
        qsets[x][it->second] = name;
      }
    }
  std::vector<std::vector<int>> qmaps(c.num_morphisms());
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    const Ob x = c.source(m), y = c.target(m);
    for (int e : rep[x]) qmaps[m].push_back(cls[y].at(dsu.find(offset[y] + act(m, e))));
  }
  return normalize_diagram(shape, std::move(qsets), std::move(qmaps));
}

}  // namespace catkit::testing
