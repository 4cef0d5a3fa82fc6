#include <iostream>

#include <CLI11.hpp>

#include "catkit/catspec.hpp"
#include "commands.hpp"

using namespace catkit;
using namespace catkit::cli;

namespace {

int emit(const Outcome& o, bool as_pretty) {
  std::cout << (as_pretty ? pretty(o.out) : o.out.dump(2) + "\n");
  return o.code;
}

int input_error(const std::string& what, const json& extra = json::object()) {
  json j = extra;
  j["error"] = what;
  std::cout << j.dump(2) << "\n";
  std::cerr << "catkit: " << what << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catkit: finite category theory workbench"};
  app.require_subcommand(1);
  bool as_pretty = false;
  app.add_flag("--pretty", as_pretty, "Flat human-readable output instead of JSON");

  std::string file, functor, diagram, action, name, operad, target, set = "J", builtin, which_case;
  std::string i_name, p_name, top_name, bottom_name;
  bool right = false, emit_text = false, counterexample = false, adjunction = false, list = false;
  int dim = 1, arity_bound = 3, prime = 2, vars = 1;
  std::size_t max_stages = 4, max_morphisms = 12, max_maps = 3;
  std::uint32_t seed = 1;
  std::vector<int> homcount;

  auto* validate = app.add_subcommand("validate", "Load a catspec file and run every validator");
  validate->add_option("file", file)->required();
  validate->add_flag("--emit", emit_text, "Print the canonical catspec text instead");

  auto* kan = app.add_subcommand("kan", "Left or right Kan extension of a diagram along a functor");
  kan->add_option("file", file)->required();
  kan->add_option("--functor", functor)->required();
  kan->add_option("--diagram", diagram)->required();
  kan->add_flag("--right", right, "Right Kan extension");

  auto* adjoint = app.add_subcommand("adjoint", "Certify lan ⊣ restrict ⊣ ran along a functor");
  adjoint->add_option("file", file)->required();
  adjoint->add_option("--functor", functor)->required();
  adjoint->add_option("--max-maps", max_maps, "Maps per corpus pair used for naturality");

  auto* lift = app.add_subcommand("lift", "Solve a lifting problem");
  lift->add_option("file", file)->required();
  lift->add_option("--i", i_name)->required();
  lift->add_option("--p", p_name)->required();
  lift->add_option("--top", top_name)->required();
  lift->add_option("--bottom", bottom_name)->required();

  auto* rlp = app.add_subcommand("rlp", "Right lifting property against a generating set");
  rlp->add_option("file", file);
  rlp->add_option("--functor", functor);
  rlp->add_option("--set", set, "I or J");
  rlp->add_option("--max-morphisms", max_morphisms, "Corpus bound when no file is given");

  auto* soa = app.add_subcommand("soa", "Bounded small object argument for simplex dim -> simplex 0");
  soa->add_option("--dim", dim);
  soa->add_option("--max-stages", max_stages);

  auto* semi = app.add_subcommand("semidirect", "Semidirect product and the Lan coproduct formula");
  semi->add_option("file", file)->required();
  semi->add_option("--action", action)->required();
  semi->add_option("--diagram", diagram);

  auto* nab = app.add_subcommand("nabla", "The category ∇ truncated at dim");
  nab->add_option("--dim", dim);
  nab->add_option("--homcount", homcount)->expected(2);

  auto* rss = app.add_subcommand("rsset", "Real simplicial set: involution round trip");
  rss->add_option("file", file)->required();
  rss->add_option("--name", name)->required();

  auto* cyc = app.add_subcommand("cyclic", "The right adjoint R and the operad/cyclic adjunction");
  cyc->add_option("file", file);
  cyc->add_option("--operad", operad);
  cyc->add_option("--target", target);
  cyc->add_option("--builtin", builtin, "terminal, ass, ass-nonunital or random");
  cyc->add_option("--arity-bound", arity_bound);
  cyc->add_option("--seed", seed);

  auto* chain = app.add_subcommand("chain", "Complexes over F_p, truncations and change of rings");
  chain->add_option("file", file);
  chain->add_option("--complex", name);
  chain->add_flag("--counterexample", counterexample);
  chain->add_flag("--adjunction", adjunction);
  chain->add_option("--p", prime);
  chain->add_option("--vars", vars);
  chain->add_option("--seed", seed);

  auto* suite = app.add_subcommand("paper-suite", "Fixed reference checks");
  suite->add_option("--case", which_case);
  suite->add_flag("--list", list);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate) {
      if (emit_text) {
        std::cout << cmd_emit(file);
        return 0;
      }
      return emit(cmd_validate(file), as_pretty);
    }
    if (*kan) return emit(cmd_kan(file, functor, diagram, right), as_pretty);
    if (*adjoint) return emit(cmd_adjoint(file, functor, max_maps), as_pretty);
    if (*lift) return emit(cmd_lift(file, i_name, p_name, top_name, bottom_name), as_pretty);
    if (*rlp) {
      if (file.empty()) return emit(cmd_rlp_corpus(max_morphisms), as_pretty);
      if (functor.empty()) throw InputError("rlp with a file needs --functor");
      return emit(cmd_rlp(file, functor, set), as_pretty);
    }
    if (*soa) return emit(cmd_soa(dim, max_stages), as_pretty);
    if (*semi)
      return emit(cmd_semidirect(file, action, diagram.empty() ? std::nullopt : std::optional(diagram)), as_pretty);
    if (*nab) {
      std::optional<std::pair<int, int>> hc;
      if (!homcount.empty()) hc = std::pair(homcount[0], homcount[1]);
      return emit(cmd_nabla(dim, hc), as_pretty);
    }
    if (*rss) return emit(cmd_rsset(file, name), as_pretty);
    if (*cyc) {
      if (!builtin.empty()) return emit(cmd_cyclic_builtin(builtin, arity_bound, seed), as_pretty);
      if (file.empty() || operad.empty()) throw InputError("cyclic needs --builtin, or a file with --operad");
      return emit(cmd_cyclic_file(file, operad, target.empty() ? std::nullopt : std::optional(target)), as_pretty);
    }
    if (*chain) {
      if (counterexample) return emit(cmd_chain_counterexample(prime), as_pretty);
      if (adjunction) return emit(cmd_chain_adjunction(prime, vars, seed), as_pretty);
      if (file.empty() || name.empty()) throw InputError("chain needs --counterexample, --adjunction, or a file with --complex");
      return emit(cmd_chain_complex(file, name), as_pretty);
    }
    if (*suite) {
      if (list) return emit({json(paper_cases()), 0}, as_pretty);
      return emit(cmd_paper_suite(which_case), as_pretty);
    }
  } catch (const CatspecError& e) {
    return input_error(e.what(), {{"line", e.line()}, {"column", e.column()}});
  } catch (const InputError& e) {
    return input_error(e.what());
  } catch (const BudgetExceeded& e) {
    return input_error(std::string("budget exceeded: ") + e.what());
  } catch (const InternalError& e) {
    std::cout << json{{"internal_error", e.what()}}.dump(2) << "\n";
    std::cerr << "catkit: internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
