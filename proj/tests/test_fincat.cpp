#include <doctest.h>

#include <algorithm>
#include <random>

#include "catkit/fincat.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace catkit;
using namespace catkit::testing;

namespace {

bool mentions(const ValidationReport& r, const std::string& s) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(s) != std::string::npos; });
}

CatRef broken_monoid() {
  return CategoryBuilder{}
      .add_object("*")
      .add_identity("*", "1")
      .add_morphism("x", "*", "*")
      .add_morphism("y", "*", "*")
      .set_composite("x", "x", "y")
      .set_composite("x", "y", "x")
      .set_composite("y", "x", "y")
      .set_composite("y", "y", "y")
      .build_ref();
}

}  // namespace

TEST_CASE("walking arrow is a valid category") {
  auto a = shapes::walking_arrow();
  CHECK(a->num_objects() == 2);
  CHECK(a->num_morphisms() == 3);
  CHECK(validate_category(*a).ok());
  const Mor f = a->morphism("f");
  CHECK(a->object_name(a->source(f)) == "a");
  CHECK(a->object_name(a->target(f)) == "b");
}

TEST_CASE("injected associativity violation is reported with its triple") {
  auto r = validate_category(*broken_monoid());
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "(x, x, x)"));
}

TEST_CASE("builder rejects incomplete or malformed tables") {
  CHECK_THROWS_AS(CategoryBuilder{}.add_object("a").build(), InputError);
  CHECK_THROWS_AS(CategoryBuilder{}
                      .add_object("*")
                      .add_identity("*", "1")
                      .add_morphism("x", "*", "*")
                      .build(),
                  InputError);
  CHECK_THROWS_AS(CategoryBuilder{}.add_object("a").add_object("a").add_identity("a", "1").build(), InputError);
}

TEST_CASE("every corpus category validates") {
  for (const auto& [name, c] : small_categories()) {
    INFO(name);
    CHECK(validate_category(*c).ok());
  }
}

TEST_CASE("opposite is an involution and swaps hom-sets") {
  for (const auto& [name, c] : small_categories()) {
    INFO(name);
    const FiniteCategory op = opposite(*c);
    CHECK(validate_category(op).ok());
    CHECK(opposite(op) == *c);
    for (Ob x = 0; x < static_cast<Ob>(c->num_objects()); ++x)
      for (Ob y = 0; y < static_cast<Ob>(c->num_objects()); ++y) CHECK(op.hom(x, y).size() == c->hom(y, x).size());
  }
  const FiniteCategory op = opposite(*shapes::walking_arrow());
  const Mor f = op.morphism("f");
  CHECK(op.object_name(op.source(f)) == "b");
  CHECK(op.object_name(op.target(f)) == "a");
}

TEST_CASE("coproduct and product sizes") {
  for (const auto& [name, c] : small_categories()) {
    INFO(name);
    auto op = opposite(c);
    auto cp = coproduct(c, op);
    CHECK(validate_category(*cp.category).ok());
    CHECK(cp.category->num_morphisms() == 2 * c->num_morphisms());
    CHECK(validate_functor(cp.inl).ok());
    CHECK(validate_functor(cp.inr).ok());
    auto pr = product(c, op);
    CHECK(validate_category(*pr.category).ok());
    CHECK(pr.category->num_objects() == c->num_objects() * c->num_objects());
    CHECK(validate_functor(pr.proj1).ok());
    auto unit = product(c, shapes::terminal());
    CHECK(is_isomorphism(unit.proj1));
  }
}

TEST_CASE("coproduct renames on collision") {
  auto a = shapes::walking_arrow();
  auto cp = coproduct(a, a);
  CHECK(cp.category->find_object("a.0"));
  CHECK(cp.category->find_morphism("f.1"));
  auto clean = coproduct(a, shapes::discrete({"z"}));
  CHECK(clean.category->find_object("a"));
  CHECK(clean.category->find_object("z"));
}

TEST_CASE("equivalence predicates") {
  auto e = shapes::walking_iso();
  auto pt = CategoryBuilder{}.add_object("0").add_identity("0", "0>0").build_ref();
  auto inc = inclusion(pt, e);
  CHECK(is_equivalence(inc));
  CHECK(is_equivalence(identity_functor(e)));

  auto arrow = shapes::walking_arrow();
  auto collapse = enumerate_functors(arrow, shapes::terminal());
  REQUIRE(collapse.size() == 1);
  CHECK_FALSE(is_full(collapse[0]));
  CHECK(is_faithful(collapse[0]));
  CHECK_FALSE(is_equivalence(collapse[0]));
}

TEST_CASE("equivalence agrees with pseudo-inverse search and hom counting") {
  const auto corpus = small_categories();
  std::size_t checked = 0, equivalences = 0;
  for (const auto& [n1, c] : corpus) {
    if (c->num_objects() > 4 || c->num_morphisms() > 12) continue;
    for (const auto& [n2, d] : corpus) {
      if (d->num_objects() > 4 || d->num_morphisms() > 12) continue;
      std::vector<CatFunctor> fs;
      try {
        fs = enumerate_functors(c, d, SearchBudget{400, 1'000'000});
      } catch (const BudgetExceeded&) {
        continue;
      }
      for (const auto& f : fs) {
        INFO(n1 << " -> " << n2);
        const bool eq = is_equivalence(f);
        CHECK(eq == has_pseudo_inverse(f));
        CHECK(eq == brute_is_equivalence(f));
        ++checked;
        equivalences += eq;
      }
    }
  }
  CHECK(checked > 500);
  CHECK(equivalences > 20);
}

TEST_CASE("core") {
  auto e = shapes::walking_iso();
  CHECK(core(*e) == *e);
  const FiniteCategory c = core(*shapes::walking_arrow());
  CHECK(c == *shapes::discrete({"a", "b"}));
  CHECK(c.num_objects() == 2);
  CHECK(c.num_morphisms() == 2);
  auto s3 = group_category(FiniteGroup::symmetric3());
  CHECK(core(*s3) == *s3);
  for (const auto& [name, x] : small_categories()) {
    INFO(name);
    const FiniteCategory k = core(*x);
    CHECK(validate_category(k).ok());
    CHECK(is_groupoid(k));
  }
  CHECK_FALSE(is_groupoid(*idempotent_monoid()));
}

TEST_CASE("functor and natural transformation enumeration") {
  auto arrow = shapes::walking_arrow();
  for (const auto& [name, d] : small_categories()) {
    INFO(name);
    CHECK(enumerate_functors(shapes::terminal(), d).size() == d->num_objects());
  }
  const auto ff = enumerate_functors(arrow, arrow);
  CHECK(ff.size() == 3);
  CHECK(std::is_sorted(ff.begin(), ff.end(), [](const CatFunctor& a, const CatFunctor& b) {
    return std::tie(a.obj_map, a.mor_map) < std::tie(b.obj_map, b.mor_map);
  }));
  auto id = identity_functor(arrow);
  CHECK(enumerate_naturals(id, id).size() == 1);
}

TEST_CASE("enumeration counts match brute force") {
  const auto corpus = small_categories();
  for (const auto& [n1, c] : corpus) {
    if (c->num_morphisms() > 6) continue;
    for (const auto& [n2, d] : corpus) {
      if (d->num_morphisms() > 6) continue;
      INFO(n1 << " -> " << n2);
      const auto fs = enumerate_functors(c, d);
      CHECK(fs.size() == brute_functor_count(*c, *d));
      for (const auto& f : fs) CHECK(validate_functor(f).ok());
      if (fs.size() <= 6)
        for (const auto& f : fs)
          for (const auto& g : fs) CHECK(enumerate_naturals(f, g).size() == brute_natural_count(f, g));
    }
  }
}

TEST_CASE("functor search budget is explicit") {
  auto big = shapes::indiscrete({"a", "b", "c", "d"});
  CHECK_THROWS_AS(enumerate_functors(big, big, SearchBudget{10, 1'000'000}), BudgetExceeded);
}

TEST_CASE("groups") {
  for (auto g : {FiniteGroup::cyclic(1), FiniteGroup::cyclic(4), FiniteGroup::klein(), FiniteGroup::symmetric3()}) {
    CHECK(validate_group(g).ok());
    CHECK(validate_group(g.opposite()).ok());
    CHECK(validate_category(*group_category(g)).ok());
    for (int a = 0; a < static_cast<int>(g.order()); ++a) CHECK(g.mul(a, g.inverse(a)) == g.identity());
  }
  CHECK(FiniteGroup::symmetric3().order() == 6);
}

TEST_CASE("random categories and functors are valid") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto c = random_category(rng, 12);
    CHECK(validate_category(*c).ok());
    auto d = random_category(rng, 12);
    if (auto f = random_functor(rng, c, d)) {
      CHECK(validate_functor(*f).ok());
      auto g = compose(identity_functor(d), *f);
      CHECK(g == *f);
    }
  }
}
