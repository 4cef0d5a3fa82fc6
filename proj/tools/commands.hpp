#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "catkit/fincat.hpp"

namespace catkit::cli {

using nlohmann::json;

struct Outcome {
  json out;
  int code = 0;  // 0 success, 1 falsified property
};

/// Budget from CATKIT_MAX_NODES, when set.
SearchBudget budget_from_env();

Outcome cmd_validate(const std::string& file);
/// Canonical catspec text of the file.
std::string cmd_emit(const std::string& file);
Outcome cmd_kan(const std::string& file, const std::string& functor, const std::string& diagram, bool right);
Outcome cmd_adjoint(const std::string& file, const std::string& functor, std::size_t max_maps);
Outcome cmd_lift(const std::string& file, const std::string& i, const std::string& p, const std::string& top,
                 const std::string& bottom);
Outcome cmd_rlp(const std::string& file, const std::string& functor, const std::string& set);
/// Cross-validation of the generating sets on built-in categories.
Outcome cmd_rlp_corpus(std::size_t max_morphisms);
Outcome cmd_soa(int dim, std::size_t max_stages);
Outcome cmd_semidirect(const std::string& file, const std::string& action, const std::optional<std::string>& diagram);
Outcome cmd_nabla(int dim, const std::optional<std::pair<int, int>>& homcount);
Outcome cmd_rsset(const std::string& file, const std::string& name);
Outcome cmd_cyclic_file(const std::string& file, const std::string& operad, const std::optional<std::string>& target);
Outcome cmd_cyclic_builtin(const std::string& which, int arity_bound, std::uint32_t seed);
Outcome cmd_chain_complex(const std::string& file, const std::string& complex);
Outcome cmd_chain_counterexample(int p);
Outcome cmd_chain_adjunction(int p, int vars, std::uint32_t seed);

std::vector<std::string> paper_cases();
/// One case, or every case when `name` is empty. Throws InputError for an
/// unknown case.
Outcome cmd_paper_suite(const std::string& name);

/// Flat "path = value" lines.
std::string pretty(const json& j);

}  // namespace catkit::cli
