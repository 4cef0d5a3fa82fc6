#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "catkit/fincat.hpp"
#include "catkit/setval.hpp"

namespace catkit::cli {

struct BuiltinCategory {
  std::string name;
  CatRef cat;
};

/// Small fixed categories used by corpus-wide checks.
std::vector<BuiltinCategory> builtin_categories();

nlohmann::json violations_json(const ValidationReport& r, std::size_t max = 10);
/// {"sets": {object: [...]}, "maps": {morphism: {element: image}}}, identities omitted.
nlohmann::json diagram_json(const SetDiagram& d);
nlohmann::json functor_json(const CatFunctor& f);

}  // namespace catkit::cli
