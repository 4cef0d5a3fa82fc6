#pragma once

// Categories from generators and relations, completed by bounded closure.
//
// The word problem is undecidable in general, so completion works on paths
// of bounded length: relations are applied in every context that fits, the
// resulting classes are closed under composition, and the candidate table
// is validated. A successful result is exact (every identification made is
// forced by the relations and the result is a category generated by the
// generators); failure to stabilise within the budget is reported as
// BudgetExceeded rather than returning an approximation.

#include <string>
#include <vector>

#include "catkit/fincat.hpp"

namespace catkit {

struct Presentation {
  struct Generator {
    std::string name;
    int source = 0;
    int target = 0;
  };
  /// A path starting at `object`; generators listed in application order
  /// (gens[0] first). The empty path is the identity of `object`.
  struct Path {
    int object = 0;
    std::vector<int> gens;
  };

  std::vector<std::string> objects;
  std::vector<std::string> identity_names;  // one per object
  /// Generators earlier in this list win ties when naming a class.
  std::vector<Generator> generators;
  std::vector<std::pair<Path, Path>> relations;

  int path_source(const Path& p) const;
  int path_target(const Path& p) const;
};

struct ClosureBudget {
  int max_length = 6;
  std::size_t max_paths = 200'000;
  std::size_t max_morphisms = 256;
};

struct PresentedCategory {
  CatRef category;
  std::vector<Mor> generator_image;  // morphism of the result per generator
  int path_length = 0;               // bound at which the closure stabilised
};

/// Class names: identity name for the empty path, the generator name for a
/// single generator, otherwise generator names joined by '*' in composition
/// order ("g*f" = g after f), using the shortest, then index-least path.
PresentedCategory complete_presentation(const Presentation& p, const ClosureBudget& budget = {});

}  // namespace catkit
