#pragma once

// Test corpora: fixed small categories plus seeded random generators.

#include <random>
#include <string>
#include <vector>

#include "catkit/fincat.hpp"
#include "catkit/setval.hpp"

namespace catkit::testing {

struct NamedCategory {
  std::string name;
  CatRef cat;
};

/// One-object monoid {1, e} with e∘e = e.
CatRef idempotent_monoid();

/// Fixed corpus of categories with at most 4 objects and 12 morphisms.
std::vector<NamedCategory> small_categories();

/// Random finite poset on `n` objects (transitively closed random relation).
CatRef random_poset(std::mt19937& rng, int n);

/// Random category with at most `max_morphisms` morphisms drawn from the
/// small corpus, random posets, and coproducts of those.
CatRef random_category(std::mt19937& rng, std::size_t max_morphisms);

/// Uniformly chosen functor C -> D, or nullopt when there is none.
std::optional<CatFunctor> random_functor(std::mt19937& rng, const CatRef& c, const CatRef& d);

/// Random functor C -> Set: quotient of a subfunctor of a coproduct of
/// representables, with at most `max_elements` elements in total.
SetDiagram random_diagram(std::mt19937& rng, const CatRef& shape, std::size_t max_elements);

/// Constant diagram with the given value set.
SetDiagram constant_diagram(const CatRef& shape, const std::vector<std::string>& elements);

}  // namespace catkit::testing
