#include <doctest.h>

#include <random>

#include "catkit/nabla.hpp"
#include "support/corpus.hpp"

using namespace catkit;
using namespace catkit::testing;

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const Nabla& nabla3() {
  static const Nabla nb = build_nabla(3);
  return nb;
}

// Random real simplicial set with at most `max` simplices.
SetDiagram random_rsset(std::mt19937& rng, const Nabla& nb, std::size_t max) {
  return random_diagram(rng, nb.nabla_op, max);
}

}  // namespace

TEST_CASE("simplex category hom counts") {
  auto d = simplex_category(3);
  CHECK(validate_category(*d).ok());
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) CHECK(static_cast<long>(d->hom(m, n).size()) == binom(m + n + 1, m + 1));
  CHECK(d->morphism_name(d->identity(2)) == "2>2:012");
  CHECK_THROWS_AS(simplex_category(10), InputError);
}

TEST_CASE("reversal is an involutive automorphism") {
  auto d = simplex_category(3);
  auto f = reversal(d);
  CHECK(validate_functor(f).ok());
  CHECK(compose(f, f) == identity_functor(d));
  CHECK(d->morphism_name(f.on_morphism(d->morphism("1>2:01"))) == "1>2:12");
  CHECK(d->morphism_name(f.on_morphism(d->morphism("2>1:001"))) == "2>1:011");
}

TEST_CASE("monotone pairs") {
  CHECK(monotone_sign({0, 1, 1}) == 1);
  CHECK(monotone_sign({2, 0}) == -1);
  CHECK(monotone_sign({1, 1}) == 0);
  CHECK_THROWS_AS(monotone_sign({0, 1, 0}), InputError);
  CHECK(validate_monotone_pair({{1, 1}, 1, -1}).ok());
  CHECK_FALSE(validate_monotone_pair({{0, 1}, 1, -1}).ok());
  CHECK_FALSE(validate_monotone_pair({{0, 2}, 1, 1}).ok());
}

TEST_CASE("two presentations of nabla agree") {
  for (int n = 0; n <= 4; ++n) {
    auto nb = build_nabla(n);
    CHECK(validate_category(*nb.nabla.category).ok());
    CHECK(validate_category(*nb.monotone).ok());
    CHECK(validate_functor(nb.iso).ok());
    CHECK(is_isomorphism(nb.iso));
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b)
        CHECK(nabla_hom_count(nb, a, b) == 2 * nb.delta->hom(a, b).size());
  }
  auto nb = build_nabla(1);
  CHECK(nabla_hom_count(nb, 0, 0) == 2);
  CHECK(nabla_hom_count(nb, 1, 1) == 6);
  // (id,s) on [1] is the reversal, sign -1
  CHECK(nb.monotone->morphism_name(nb.iso.on_morphism(nb.flip(1))) == "1>1:10:-");
  CHECK(nb.monotone->morphism_name(nb.iso.on_morphism(nb.flip(0))) == "0>0:0:-");
}

TEST_CASE("twisted composition in nabla") {
  const auto& nb = nabla3();
  const auto& c = *nb.nabla.category;
  // (id_[n], s)∘(α, e) = (𝓕α, s) = (𝓕α, e)∘(id_[m], s)
  for (Mor a = 0; a < static_cast<Mor>(nb.delta->num_morphisms()); ++a) {
    const Ob m = nb.delta->source(a), n = nb.delta->target(a);
    const Mor fa = nb.action.rho[1].on_morphism(a);
    CHECK(c.compose(nb.flip(n), nb.nabla.pair(a, 0)) == nb.nabla.pair(fa, 1));
    CHECK(c.compose(nb.nabla.pair(fa, 0), nb.flip(m)) == nb.nabla.pair(fa, 1));
  }
}

TEST_CASE("representable real simplicial set at [1]") {
  const auto& nb = nabla3();
  auto y = corepresentable(nb.nabla_op, 1);
  auto a = to_involutive(nb, y);
  CHECK(validate_involutive_sset(nb, a).ok());
  for (int k = 0; k <= 3; ++k) CHECK(a.a.sets[k].size() == 2 * static_cast<std::size_t>(k + 2));
  CHECK(a.a.sets[1].size() == 6);
  // σ is free on the representable
  for (int k = 0; k <= 3; ++k)
    for (std::size_t e = 0; e < a.sigma[k].size(); ++e) CHECK(a.sigma[k][e] != static_cast<int>(e));
}

TEST_CASE("to_involutive and from_involutive are inverse") {
  const auto& nb = nabla3();
  std::mt19937 rng(17);
  for (int i = 0; i < 20; ++i) {
    auto x = random_rsset(rng, nb, 30);
    REQUIRE(validate_diagram(x).ok());
    auto a = to_involutive(nb, x);
    CHECK(validate_involutive_sset(nb, a).ok());
    for (int k = 0; k <= 3; ++k)
      for (std::size_t e = 0; e < a.sigma[k].size(); ++e) CHECK(a.sigma[k][a.sigma[k][e]] == static_cast<int>(e));
    CHECK(from_involutive(nb, a) == x);
    CHECK(to_involutive(nb, from_involutive(nb, a)).sigma == a.sigma);
  }
}

TEST_CASE("trivial involution on a constant simplicial set") {
  const auto& nb = nabla3();
  InvolutiveSSet a{constant_diagram(nb.delta_op, {"p", "q"}), {}};
  for (int k = 0; k <= 3; ++k) a.sigma.push_back({0, 1});
  CHECK(validate_involutive_sset(nb, a).ok());
  auto x = from_involutive(nb, a);
  CHECK(validate_diagram(x).ok());
  // swapping p and q is also fine
  for (auto& s : a.sigma) s = {1, 0};
  CHECK(validate_diagram(from_involutive(nb, a)).ok());
}

TEST_CASE("non-involutive sigma is rejected") {
  const auto& nb = nabla3();
  InvolutiveSSet a{constant_diagram(nb.delta_op, {"p", "q", "r"}), {}};
  for (int k = 0; k <= 3; ++k) a.sigma.push_back({1, 2, 0});
  CHECK_FALSE(validate_involutive_sset(nb, a).ok());
  CHECK_THROWS_AS(from_involutive(nb, a), InputError);
  // involutive levelwise but not compatible with faces: Δ^1 with σ the identity
  InvolutiveSSet b{simplex(nb, 1), {}};
  for (int k = 0; k <= 3; ++k) {
    std::vector<int> id(b.a.sets[k].size());
    for (std::size_t e = 0; e < id.size(); ++e) id[e] = static_cast<int>(e);
    b.sigma.push_back(id);
  }
  CHECK_FALSE(validate_involutive_sset(nb, b).ok());
}

TEST_CASE("boundary inclusions") {
  const auto& nb = nabla3();
  for (int k = 0; k <= 3; ++k) {
    auto b = boundary_inclusion(nb, k);
    CHECK(validate_map(b).ok());
    CHECK(is_levelwise_injective(b));
    // ∂Δ^k misses exactly the surjections [j] -> [k], C(j, k) of them
    for (int j = 0; j <= 3; ++j)
      CHECK(static_cast<long>(b.target->sets[j].size() - b.source->sets[j].size()) == (j >= k ? binom(j, k) : 0));
  }
}

TEST_CASE("degenerate simplices of a simplex") {
  const auto& nb = nabla3();
  auto s = simplex(nb, 1);
  auto deg = degenerate_simplices(nb, s);
  // nondegenerate simplices of Δ^1: 2 vertices, 1 edge
  std::size_t nondeg = 0;
  for (const auto& level : deg)
    for (bool b : level) nondeg += !b;
  CHECK(nondeg == 3);
}

TEST_CASE("normal monomorphisms") {
  const auto& nb = nabla3();
  auto gens = generating_cofibrations(nb);
  REQUIRE(gens.size() == 4);
  // ι_! of ∅ -> Δ^0: two vertices swapped by σ
  CHECK(gens[0].source->total_elements() == 0);
  CHECK(gens[0].target->sets[0].size() == 2);
  const auto& s0 = gens[0].target->maps[nb.flip(0)];
  CHECK(s0 == std::vector<int>{1, 0});
  for (const auto& g : gens) {
    CHECK(validate_map(g).ok());
    CHECK(is_normal_mono(nb, g));
  }
  // identity
  std::mt19937 rng(2);
  for (int i = 0; i < 10; ++i) CHECK(is_normal_mono(nb, identity_map(share(random_rsset(rng, nb, 20)))));
  // ∅ -> point: the fixed vertex is outside the image
  auto pt = share(terminal_diagram(nb.nabla_op));
  DiagramMap e{share(empty_diagram(nb.nabla_op)), pt, std::vector<std::vector<int>>(4)};
  REQUIRE(validate_map(e).ok());
  CHECK_FALSE(is_normal_mono(nb, e));
  auto v = normality(nb, e);
  CHECK(v.injective);
  CHECK_FALSE(v.free_all);
  CHECK_FALSE(v.free_nondegenerate);
}

TEST_CASE("normal monos are closed under pushout and composition (sampled)") {
  const auto& nb = build_nabla(2);
  auto gens = generating_cofibrations(nb);
  std::mt19937 rng(8);
  std::size_t pushouts = 0, agree = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto& i = gens[trial % gens.size()];
    auto y = share(random_diagram(rng, nb.nabla_op, 16));
    std::vector<DiagramMap> maps;
    search_maps(i.source, y, [&](const DiagramMap& f) {
      maps.push_back(f);
      return maps.size() < 3;
    });
    for (const auto& g : maps) {
      auto po = pushout(i, g);
      CHECK(validate_map(po.from_c).ok());
      CHECK(is_normal_mono(nb, po.from_c));
      ++pushouts;
      // compose with another generator pushout when possible
      const auto& j = gens[(trial + 1) % gens.size()];
      std::vector<DiagramMap> next;
      search_maps(j.source, po.diagram, [&](const DiagramMap& f) {
        next.push_back(f);
        return false;
      });
      if (!next.empty()) {
        auto po2 = pushout(j, next.front());
        CHECK(is_normal_mono(nb, compose(po2.from_c, po.from_c)));
        ++agree;
      }
    }
  }
  CHECK(pushouts >= 10);
  CHECK(agree >= 5);
}

TEST_CASE("the two normality criteria agree on random maps") {
  const auto& nb = build_nabla(2);
  std::mt19937 rng(23);
  std::size_t n = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto x = share(random_diagram(rng, nb.nabla_op, 6));
    auto y = share(random_diagram(rng, nb.nabla_op, 14));
    search_maps(x, y, [&](const DiagramMap& f) {
      auto v = normality(nb, f);
      CHECK(v.free_all == v.free_nondegenerate);
      ++n;
      return n % 5 != 0;
    });
  }
  CHECK(n > 20);
}

TEST_CASE("reversal preserves levelwise monos of simplicial sets") {
  const auto& nb = nabla3();
  auto kappa = kappa_action(nb.action);
  REQUIRE(validate_action(kappa).ok());
  std::vector<DiagramMap> corpus;
  for (int k = 0; k <= 3; ++k) corpus.push_back(boundary_inclusion(nb, k));
  std::mt19937 rng(4);
  for (int i = 0; i < 10; ++i) {
    auto x = share(random_diagram(rng, nb.delta_op, 8));
    auto y = share(random_diagram(rng, nb.delta_op, 12));
    search_maps(x, y, [&](const DiagramMap& f) {
      corpus.push_back(f);
      return false;
    });
  }
  MapPredicate mono = [](const DiagramMap& f) { return is_levelwise_injective(f); };
  auto rep = check_semidirect_hypotheses(kappa, {{"mono", mono}}, corpus);
  CHECK(rep.ok());
  CHECK(rep.lines == std::vector<std::string>{"mono e: preserved", "mono s: preserved"});
  // the reversed boundary inclusion is again a boundary inclusion
  for (int k = 0; k <= 3; ++k) {
    auto r = restrict(kappa.rho[1], boundary_inclusion(nb, k));
    for (int j = 0; j <= 3; ++j) CHECK(r.source->sets[j].size() == boundary_inclusion(nb, k).source->sets[j].size());
  }
}
