#include <doctest.h>

#include <random>

#include "catkit/setval.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace catkit;
using namespace catkit::testing;

namespace {

std::optional<Ob> terminal_object(const FiniteCategory& c) {
  for (Ob t = 0; t < static_cast<Ob>(c.num_objects()); ++t) {
    bool ok = true;
    for (Ob x = 0; x < static_cast<Ob>(c.num_objects()) && ok; ++x) ok = c.hom(x, t).size() == 1;
    if (ok) return t;
  }
  return std::nullopt;
}

SetDiagram parallel_functions() {
  // f, g : {a,b,c} -> {x,y}
  return DiagramBuilder(shapes::parallel_pair())
      .set("a", {"a", "b", "c"})
      .set("b", {"x", "y"})
      .map("f", "a", "x").map("f", "b", "x").map("f", "c", "y")
      .map("g", "a", "x").map("g", "b", "y").map("g", "c", "y")
      .build();
}

std::vector<SetDiagram> diagram_corpus(std::mt19937& rng, std::size_t per_shape) {
  std::vector<SetDiagram> out;
  for (const auto& [name, c] : small_categories())
    for (std::size_t k = 0; k < per_shape; ++k) out.push_back(random_diagram(rng, c, 20));
  return out;
}

}  // namespace

TEST_CASE("diagram builder and validation") {
  auto d = parallel_functions();
  CHECK(validate_diagram(d).ok());
  CHECK(d.total_elements() == 5);
  auto bad = d;
  bad.maps[bad.shape->morphism("f")][0] = 7;
  CHECK_FALSE(validate_diagram(bad).ok());
  CHECK_THROWS_AS(DiagramBuilder(shapes::walking_arrow()).set("a", {"p"}).set("b", {"q"}).build(), InputError);

  auto sq = DiagramBuilder(shapes::ordinal(2))
                .set("0", {"u"}).set("1", {"v", "w"}).set("2", {"z"})
                .map("0<=1", "u", "v").map("1<=2", "v", "z").map("1<=2", "w", "z").map("0<=2", "u", "z")
                .build();
  CHECK(validate_diagram(sq).ok());
  auto broken = sq;
  broken.sets[1] = {"v", "w"};
  broken.sets[2] = {"z", "zz"};
  broken.maps[broken.shape->morphism("0<=2")] = {1};
  broken.maps[broken.shape->morphism("1<=2")] = {0, 0};
  broken.maps[broken.shape->morphism("2<=2")] = {0, 1};
  auto r = validate_diagram(broken);
  CHECK_FALSE(r.ok());
  CHECK(r.summary().find("composite") != std::string::npos);
}

TEST_CASE("limits on simple shapes") {
  auto pt = shapes::terminal();
  auto x = constant_diagram(pt, {"p", "q", "r"});
  CHECK(limit(x).apex.size() == 3);
  CHECK(colimit(x).apex.size() == 3);

  auto two = shapes::discrete({"a", "b"});
  auto y = DiagramBuilder(two).set("a", {"1", "2"}).set("b", {"x", "y", "z"}).build();
  auto lim = limit(y);
  CHECK(lim.apex.size() == 6);
  CHECK(lim.apex.front() == "(1,x)");
  CHECK(colimit(y).apex.size() == 5);

  auto eq = parallel_functions();
  CHECK(limit(eq).apex.size() == brute_limit(eq).size());
  CHECK(limit(eq).apex.size() == 2);
  auto coeq = colimit(eq);
  CHECK(coeq.apex.size() == bfs_colimit(eq).size());
  CHECK(coeq.apex.size() == 1);
}

TEST_CASE("empty shape conventions") {
  auto e = empty_diagram(shapes::empty());
  auto lim = limit(e);
  CHECK(lim.apex == std::vector<std::string>{"()"});
  CHECK(colimit(e).apex.empty());
}

TEST_CASE("colimit over a shape with a terminal object is the terminal value") {
  std::mt19937 rng(3);
  for (const auto& [name, c] : small_categories()) {
    auto t = terminal_object(*c);
    if (!t) continue;
    INFO(name);
    for (int k = 0; k < 5; ++k) {
      auto x = random_diagram(rng, c, 20);
      CHECK(colimit(x).apex.size() == x.sets[*t].size());
    }
  }
}

TEST_CASE("limit and colimit agree with brute-force oracles") {
  std::mt19937 rng(11);
  std::size_t n = 0;
  for (const auto& x : diagram_corpus(rng, 8)) {
    REQUIRE(validate_diagram(x).ok());
    REQUIRE(x.total_elements() <= 20);
    const auto lim = limit(x);
    const auto fams = brute_limit(x);
    REQUIRE(lim.apex.size() == fams.size());
    std::set<std::vector<int>> mine;
    for (std::size_t i = 0; i < lim.apex.size(); ++i) {
      std::vector<int> fam;
      for (const auto& p : lim.projections) fam.push_back(p[i]);
      mine.insert(fam);
    }
    CHECK(mine == std::set<std::vector<int>>(fams.begin(), fams.end()));

    const auto col = colimit(x);
    const auto comps = bfs_colimit(x);
    CHECK(col.apex.size() == comps.size());
    for (const auto& comp : comps) {
      std::set<int> classes;
      for (auto [o, e] : comp) classes.insert(col.injections[o][e]);
      CHECK(classes.size() == 1);
    }
    CHECK(std::is_sorted(col.apex.begin(), col.apex.end()));
    ++n;
  }
  CHECK(n > 100);
}

TEST_CASE("colimit classes take the least member name") {
  auto x = DiagramBuilder(shapes::walking_arrow())
               .set("a", {"p", "q"})
               .set("b", {"r"})
               .map("f", "p", "r").map("f", "q", "r")
               .build();
  auto col = colimit(x);
  REQUIRE(col.apex.size() == 1);
  CHECK(col.apex[0] == "(a,p)");
}

TEST_CASE("map search agrees with brute force") {
  std::mt19937 rng(5);
  for (const auto& [name, c] : small_categories()) {
    if (c->num_objects() > 4) continue;
    for (int k = 0; k < 4; ++k) {
      auto a = share(random_diagram(rng, c, 6));
      auto b = share(random_diagram(rng, c, 8));
      INFO(name);
      const auto maps = enumerate_maps(a, b);
      CHECK(maps.size() == brute_map_count(*a, *b));
      for (const auto& f : maps) CHECK(validate_map(f).ok());
      for (std::size_t i = 1; i < maps.size(); ++i) CHECK(maps[i - 1].components < maps[i].components);
    }
  }
}

TEST_CASE("comma categories") {
  std::mt19937 rng(19);
  for (const auto& [name, c] : small_categories()) {
    INFO(name);
    auto id = identity_functor(c);
    for (Ob d = 0; d < static_cast<Ob>(c->num_objects()); ++d) {
      auto over = comma_over(id, d);
      CHECK(validate_category(*over.category).ok());
      CHECK(validate_functor(over.projection).ok());
      std::size_t expect = 0;
      for (Ob x = 0; x < static_cast<Ob>(c->num_objects()); ++x) expect += c->hom(x, d).size();
      CHECK(over.category->num_objects() == expect);
      // Slice C/d has the terminal object (d, id_d).
      Ob t = kNone;
      for (Ob o = 0; o < static_cast<Ob>(over.arrow.size()); ++o)
        if (over.arrow[o] == c->identity(d)) t = o;
      REQUIRE(t != kNone);
      for (Ob o = 0; o < static_cast<Ob>(over.arrow.size()); ++o) CHECK(over.category->hom(o, t).size() == 1);
      auto under = comma_under(d, id);
      CHECK(validate_category(*under.category).ok());
    }
  }
  for (int k = 0; k < 30; ++k) {
    auto c = random_category(rng, 10);
    auto d = random_category(rng, 10);
    auto f = random_functor(rng, c, d);
    if (!f) continue;
    for (Ob y = 0; y < static_cast<Ob>(d->num_objects()); ++y) {
      auto over = comma_over(*f, y);
      auto under = comma_under(y, *f);
      CHECK(validate_category(*over.category).ok());
      CHECK(validate_category(*under.category).ok());
      CHECK(validate_functor(over.projection).ok());
      CHECK(validate_functor(under.projection).ok());
      std::size_t no = 0, nu = 0;
      for (Ob x = 0; x < static_cast<Ob>(c->num_objects()); ++x) {
        no += d->hom(f->on_object(x), y).size();
        nu += d->hom(y, f->on_object(x)).size();
      }
      CHECK(over.category->num_objects() == no);
      CHECK(under.category->num_objects() == nu);
    }
  }
}

TEST_CASE("fully faithful functors have terminal identity objects in the comma") {
  auto arrow = shapes::walking_arrow();
  auto sq = product(arrow, arrow).category;
  for (const auto& sub : {std::vector<std::string>{"(a,a)", "(b,b)"}, std::vector<std::string>{"(a,b)", "(b,b)"}}) {
    std::vector<Ob> obs;
    for (const auto& s : sub) obs.push_back(sq->object(s));
    auto full = std::make_shared<const FiniteCategory>(full_subcategory(*sq, obs));
    auto iota = inclusion(full, sq);
    REQUIRE(is_full(iota));
    for (Ob c = 0; c < static_cast<Ob>(full->num_objects()); ++c) {
      auto k = comma_over(iota, iota.on_object(c));
      auto t = terminal_object(*k.category);
      REQUIRE(t);
      CHECK(k.base_object[*t] == c);
      CHECK(k.arrow[*t] == sq->identity(iota.on_object(c)));
    }
  }
}

TEST_CASE("Kan extensions along special functors") {
  std::mt19937 rng(23);
  for (const auto& [name, c] : small_categories()) {
    INFO(name);
    auto id = identity_functor(c);
    for (int k = 0; k < 3; ++k) {
      auto x = share(random_diagram(rng, c, 12));
      auto unit = lan_unit(id, x);
      CHECK(validate_map(unit).ok());
      CHECK(is_levelwise_bijective(unit));
      auto runit = ran_counit(id, x);
      CHECK(is_levelwise_bijective(runit));
      CHECK(restrict(id, *x) == *x);
      if (c->num_objects() > 0) {
        auto bang = enumerate_functors(c, shapes::terminal()).front();
        CHECK(lan(bang, *x).sets[0].size() == colimit(*x).apex.size());
        CHECK(ran(bang, *x).sets[0].size() == limit(*x).apex.size());
      }
    }
  }
}

TEST_CASE("restriction along fully faithful functors undoes Kan extension") {
  std::mt19937 rng(29);
  auto sq = product(shapes::walking_arrow(), shapes::ordinal(2)).category;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Ob> obs;
    for (Ob x = 0; x < static_cast<Ob>(sq->num_objects()); ++x)
      if (std::bernoulli_distribution(0.5)(rng)) obs.push_back(x);
    if (obs.empty()) continue;
    auto full = std::make_shared<const FiniteCategory>(full_subcategory(*sq, obs));
    auto iota = inclusion(full, sq);
    auto x = share(random_diagram(rng, full, 12));
    auto l = lan(iota, *x);
    auto r = ran(iota, *x);
    CHECK(validate_diagram(l).ok());
    CHECK(validate_diagram(r).ok());
    CHECK(is_levelwise_bijective(lan_unit(iota, x)));
    CHECK(is_levelwise_bijective(ran_counit(iota, x)));
  }
}

TEST_CASE("restriction is functorial in the functor") {
  std::mt19937 rng(31);
  for (int k = 0; k < 30; ++k) {
    auto a = random_category(rng, 8), b = random_category(rng, 8), c = random_category(rng, 8);
    auto f = random_functor(rng, a, b);
    auto g = random_functor(rng, b, c);
    if (!f || !g) continue;
    auto y = random_diagram(rng, c, 12);
    CHECK(restrict(*f, restrict(*g, y)) == restrict(compose(*g, *f), y));
  }
}

TEST_CASE("coproduct and pushout of diagrams") {
  auto arrow = shapes::walking_arrow();
  auto a = share(corepresentable(arrow, arrow->object("b")));
  auto b = share(corepresentable(arrow, arrow->object("a")));
  CHECK(validate_diagram(*a).ok());
  CHECK(b->total_elements() == 2);
  auto cp = coproduct({a, b}, {"l", "r"});
  CHECK(validate_diagram(*cp.diagram).ok());
  CHECK(cp.diagram->total_elements() == 3);
  for (const auto& inj : cp.injections) CHECK(validate_map(inj).ok());
  // Glue b along hom(b,-) -> hom(a,-), precomposition with f.
  auto maps = enumerate_maps(a, b);
  REQUIRE(maps.size() == 1);
  auto po = pushout(maps[0], identity_map(a));
  CHECK(validate_diagram(*po.diagram).ok());
  CHECK(validate_map(po.from_b).ok());
  CHECK(validate_map(po.from_c).ok());
  CHECK(compose(po.from_b, maps[0]) == compose(po.from_c, identity_map(a)));
  CHECK(po.diagram->total_elements() == 2);
  CHECK(is_levelwise_bijective(po.from_b));
}

TEST_CASE("pushouts agree with the colimit of the span") {
  std::mt19937 rng(37);
  for (int k = 0; k < 40; ++k) {
    auto c = random_category(rng, 8);
    if (c->num_objects() == 0) continue;
    auto a = share(random_diagram(rng, c, 5));
    auto b = share(random_diagram(rng, c, 8));
    auto d = share(random_diagram(rng, c, 8));
    auto is = enumerate_maps(a, b, SearchBudget{50, 1'000'000});
    auto gs = enumerate_maps(a, d, SearchBudget{50, 1'000'000});
    if (is.empty() || gs.empty()) continue;
    auto po = pushout(is.front(), gs.back());
    CHECK(validate_diagram(*po.diagram).ok());
    CHECK(compose(po.from_b, is.front()) == compose(po.from_c, gs.back()));
    // Universal property against a test target: maps out of P are pairs agreeing on A.
    auto t = share(random_diagram(rng, c, 6));
    std::size_t pairs = 0;
    for (const auto& u : enumerate_maps(b, t))
      for (const auto& v : enumerate_maps(d, t))
        if (compose(u, is.front()).components == compose(v, gs.back()).components) ++pairs;
    CHECK(count_maps(po.diagram, t) == pairs);
  }
}

TEST_CASE("identity adjunction certifies") {
  std::mt19937 rng(41);
  auto c = shapes::walking_arrow();
  std::vector<DiagRef> xs;
  for (int k = 0; k < 3; ++k) xs.push_back(share(random_diagram(rng, c, 5)));
  auto rep = certify_adjunction(identity_adjunction(), xs, xs, {}, {});
  CHECK(rep.ok());
  CHECK(rep.hom_pairs == 9);
}

namespace {

struct AdjCorpus {
  std::vector<DiagRef> left, right;
  std::vector<DiagramMap> left_maps, right_maps;
};

AdjCorpus corpus_for(std::mt19937& rng, const CatRef& c, const CatRef& d, std::size_t left_size, std::size_t right_size) {
  AdjCorpus k;
  for (int i = 0; i < 2; ++i) k.left.push_back(share(random_diagram(rng, c, left_size)));
  for (int i = 0; i < 2; ++i) k.right.push_back(share(random_diagram(rng, d, right_size)));
  auto some_maps = [](const DiagRef& a, const DiagRef& b, std::vector<DiagramMap>& out) {
    search_maps(a, b, [&](const DiagramMap& f) {
      out.push_back(f);
      return out.size() % 2 != 0;
    });
  };
  some_maps(k.left[0], k.left[1], k.left_maps);
  some_maps(k.left[1], k.left[0], k.left_maps);
  some_maps(k.right[0], k.right[1], k.right_maps);
  some_maps(k.right[1], k.right[0], k.right_maps);
  return k;
}

}  // namespace

TEST_CASE("Kan extension adjunctions certify on random functors") {
  std::mt19937 rng(43);
  int done = 0;
  for (int trial = 0; done < 25 && trial < 200; ++trial) {
    auto c = random_category(rng, 12);
    auto d = random_category(rng, 12);
    auto f = random_functor(rng, c, d);
    if (!f) continue;
    auto lk = corpus_for(rng, c, d, 8, 6);
    auto rl = certify_adjunction(lan_restrict_adjunction(*f), lk.left, lk.right, lk.left_maps, lk.right_maps);
    CHECK_MESSAGE(rl.ok(), rl.problems.summary());
    auto rk = corpus_for(rng, d, c, 4, 8);
    auto rr = certify_adjunction(restrict_ran_adjunction(*f), rk.left, rk.right, rk.left_maps, rk.right_maps);
    CHECK_MESSAGE(rr.ok(), rr.problems.summary());
    CHECK(rl.hom_pairs == 4);
    ++done;
  }
  CHECK(done == 25);
}

TEST_CASE("a corrupted unit is caught and located") {
  auto c = shapes::discrete({"a", "b"});
  auto d = shapes::walking_arrow();
  auto iota = make_functor(c, d, {{"a", "a"}, {"b", "b"}}, {{"id_a", "id_a"}, {"id_b", "id_b"}});
  auto adj = lan_restrict_adjunction(iota);
  auto good_unit = adj.unit;
  adj.unit = [good_unit](const DiagRef& x) {
    auto u = good_unit(x);
    // Send every element over b to the first element.
    for (auto& v : u.components[1]) v = 0;
    return u;
  };
  auto x = share(DiagramBuilder(c).set("a", {"p"}).set("b", {"q", "r"}).build());
  auto y = share(DiagramBuilder(d).set("a", {"s"}).set("b", {"t", "u"}).map("f", "s", "t").build());
  auto rep = certify_adjunction(adj, {x}, {y}, {}, {});
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.problems.summary().find("object b") != std::string::npos);
}
