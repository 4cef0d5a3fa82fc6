#include "commands.hpp"

#include <cstdlib>
#include <random>
#include <sstream>

#include "catkit/catmodel.hpp"
#include "catkit/catspec.hpp"
#include "catkit/chaincx.hpp"
#include "catkit/cycops.hpp"
#include "catkit/nabla.hpp"
#include "catkit/semidirect.hpp"
#include "catkit/setval.hpp"
#include "shared.hpp"

namespace catkit::cli {

SearchBudget budget_from_env() {
  SearchBudget b;
  if (const char* v = std::getenv("CATKIT_MAX_NODES")) {
    try {
      b.max_nodes = std::stoull(v);
    } catch (const std::exception&) {
      throw InputError(std::string("CATKIT_MAX_NODES is not a number: ") + v);
    }
  }
  return b;
}

namespace {

template <class M>
const typename M::mapped_type& find_block(const M& m, const std::string& kind, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) throw InputError("no " + kind + " named '" + name + "'");
  return it->second;
}

std::vector<DiagRef> diagrams_on(const CatspecDocument& doc, const std::string& category) {
  std::vector<DiagRef> out;
  for (const auto& [name, db] : doc.diagrams)
    if (db.shape == category) out.push_back(share(db.diagram));
  return out;
}

std::vector<DiagramMap> some_maps(const std::vector<DiagRef>& corpus, std::size_t per_pair, const SearchBudget& budget) {
  std::vector<DiagramMap> out;
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      std::size_t n = 0;
      search_maps(a, b, [&](const DiagramMap& f) {
        out.push_back(f);
        return ++n < per_pair;
      }, budget);
    }
  return out;
}

json adjunction_json(const AdjunctionReport& r) {
  return {{"ok", r.ok()},
          {"hom_pairs", r.hom_pairs},
          {"maps_transposed", r.maps_transposed},
          {"naturality_checks", r.naturality_checks},
          {"violations", violations_json(r.problems)}};
}

json sizes_json(const TruncatedOperad& p) {
  json a = json::array();
  for (int n = 0; n <= p.bound; ++n) a.push_back(p.size(n));
  return a;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

json r_report(const TruncatedOperad& p, bool& ok) {
  const auto q = right_adjoint_R(p);
  json expected = json::array();
  bool sizes = true;
  for (int n = 0; n <= p.bound; ++n) {
    expected.push_back(ipow(p.size(n), n + 1));
    sizes = sizes && q.op.size(n) == ipow(p.size(n), n + 1);
  }
  const auto r = validate_cyclic(q);
  ok = ok && sizes && r.ok();
  return {{"R_sizes", sizes_json(q.op)},
          {"R_sizes_expected", expected},
          {"R_valid", r.ok()},
          {"R_violations", violations_json(r)}};
}

json adjunction_count_json(const AdjunctionCountReport& r) {
  return {{"agree", r.ok()}, {"cyclic_maps", r.cyclic_maps}, {"operad_maps", r.operad_maps}, {"pi0_bijective", r.pi0_bijective}};
}

json vec_json(const std::vector<int>& v) { return json(v); }

}  // namespace

Outcome cmd_validate(const std::string& file) {
  try {
    const auto doc = load_catspec_file(file);
    json blocks = json::object();
    auto names = [](const auto& m) {
      json a = json::array();
      for (const auto& kv : m) a.push_back(kv.first);
      return a;
    };
    blocks["action"] = names(doc.actions);
    blocks["category"] = names(doc.categories);
    blocks["complex"] = names(doc.complexes);
    blocks["diagram"] = names(doc.diagrams);
    blocks["functor"] = names(doc.functors);
    blocks["group"] = names(doc.groups);
    blocks["involution"] = names(doc.involutions);
    blocks["operad"] = names(doc.operads);
    blocks["rsset"] = names(doc.rssets);
    blocks["sset"] = names(doc.ssets);
    return {{{"blocks", blocks}, {"valid", true}}, 0};
  } catch (const CatspecInvalid& e) {
    return {{{"valid", false},
             {"kind", e.kind()},
             {"block", e.block()},
             {"line", e.line()},
             {"violations", violations_json(e.report())}},
            1};
  }
}

std::string cmd_emit(const std::string& file) { return emit_catspec(load_catspec_file(file)); }

Outcome cmd_kan(const std::string& file, const std::string& functor, const std::string& diagram, bool right) {
  const auto doc = load_catspec_file(file);
  const auto& fb = find_block(doc.functors, "functor", functor);
  const auto& db = find_block(doc.diagrams, "diagram", diagram);
  if (db.shape != fb.dom)
    throw InputError("diagram '" + diagram + "' lives on '" + db.shape + "', not on the domain '" + fb.dom + "'");
  const SetDiagram r = right ? ran(fb.functor, db.diagram) : lan(fb.functor, db.diagram);
  const bool valid = validate_diagram(r).ok();
  return {{{"functor", functor},
           {"diagram", diagram},
           {"side", right ? "right" : "left"},
           {"result", diagram_json(r)},
           {"valid", valid}},
          valid ? 0 : 1};
}

Outcome cmd_adjoint(const std::string& file, const std::string& functor, std::size_t max_maps) {
  const auto doc = load_catspec_file(file);
  const auto& fb = find_block(doc.functors, "functor", functor);
  const CatFunctor& iota = fb.functor;
  const SearchBudget budget = budget_from_env();
  auto corpus = [&](const std::string& name, const CatRef& c) {
    auto out = diagrams_on(doc, name);
    out.push_back(share(empty_diagram(c)));
    out.push_back(share(terminal_diagram(c)));
    if (c->num_objects() > 0) out.push_back(share(corepresentable(c, 0)));
    return out;
  };
  const auto on_dom = corpus(fb.dom, iota.dom);
  const auto on_cod = corpus(fb.cod, iota.cod);
  const auto dom_maps = some_maps(on_dom, max_maps, budget);
  const auto cod_maps = some_maps(on_cod, max_maps, budget);
  const auto lr = certify_adjunction(lan_restrict_adjunction(iota), on_dom, on_cod, dom_maps, cod_maps, budget);
  const auto rr = certify_adjunction(restrict_ran_adjunction(iota), on_cod, on_dom, cod_maps, dom_maps, budget);
  json out = {{"functor", functor}, {"lan_restrict", adjunction_json(lr)}, {"restrict_ran", adjunction_json(rr)}};
  bool ok = lr.ok() && rr.ok();
  const bool ff = is_full(iota) && is_faithful(iota);
  out["fully_faithful"] = ff;
  if (ff) {
    bool unit_iso = true, counit_iso = true;
    for (const auto& x : on_dom) {
      unit_iso = unit_iso && is_levelwise_bijective(lan_unit(iota, x));
      counit_iso = counit_iso && is_levelwise_bijective(ran_counit(iota, x));
    }
    out["unit_iso"] = unit_iso;
    out["counit_iso"] = counit_iso;
    ok = ok && unit_iso && counit_iso;
  }
  return {out, ok ? 0 : 1};
}

Outcome cmd_lift(const std::string& file, const std::string& i, const std::string& p, const std::string& top,
                 const std::string& bottom) {
  const auto doc = load_catspec_file(file);
  LiftingSquare sq{find_block(doc.functors, "functor", i).functor, find_block(doc.functors, "functor", p).functor,
                   find_block(doc.functors, "functor", top).functor,
                   find_block(doc.functors, "functor", bottom).functor};
  const auto r = validate_square(sq);
  if (!r.ok()) throw InputError("not a commutative square: " + r.summary(3));
  const auto d = solve_lifting(sq, budget_from_env());
  return {{{"lift", d.has_value()}, {"diagonal", d ? functor_json(*d) : json(nullptr)}}, d ? 0 : 1};
}

Outcome cmd_rlp(const std::string& file, const std::string& functor, const std::string& set) {
  if (set != "I" && set != "J") throw InputError("--set must be I or J");
  const auto doc = load_catspec_file(file);
  const CatFunctor& p = find_block(doc.functors, "functor", functor).functor;
  const auto gens = default_generating_sets();
  const auto& tests = set == "J" ? gens.acyclic_cofibrations : gens.cofibrations;
  const auto budget = budget_from_env();
  json failing = json::array();
  for (std::size_t k = 0; k < tests.size(); ++k)
    if (find_unliftable(tests[k], p, budget)) failing.push_back(k);
  const bool rlp = failing.empty();
  const bool oracle = set == "J" ? is_isofibration(p) : is_acyclic_fibration(p);
  return {{{"functor", functor},
           {"set", set},
           {"rlp", rlp},
           {"failing_generators", failing},
           {set == "J" ? "is_isofibration" : "is_acyclic_fibration", oracle},
           {"agree", rlp == oracle}},
          rlp && rlp == oracle ? 0 : 1};
}

Outcome cmd_rlp_corpus(std::size_t max_morphisms) {
  std::vector<CatRef> cats;
  for (const auto& c : builtin_categories())
    if (c.cat->num_morphisms() <= max_morphisms && c.cat->num_objects() <= 4) cats.push_back(c.cat);
  const auto r = cross_validate(default_generating_sets(), cats, budget_from_env());
  json d = json::array();
  for (const auto& s : r.discrepancies) d.push_back(s);
  return {{{"categories", cats.size()},
           {"functors", r.functors},
           {"isofibrations", r.isofibrations},
           {"acyclic_fibrations", r.acyclic_fibrations},
           {"discrepancies", d}},
          r.ok() ? 0 : 1};
}

Outcome cmd_soa(int dim, std::size_t max_stages) {
  if (dim < 0 || dim > 3) throw InputError("--dim must lie in 0..3");
  const Nabla nb = build_nabla(dim);
  std::vector<DiagramMap> gens;
  for (int k = 0; k <= dim; ++k) gens.push_back(boundary_inclusion(nb, k));
  const DiagRef src = share(simplex(nb, dim));
  const DiagRef tgt = share(simplex(nb, 0));
  DiagramMap f{src, tgt, {}};
  for (const auto& s : src->sets) f.components.emplace_back(s.size(), 0);
  const auto r = bounded_soa(gens, f, max_stages, budget_from_env());
  const auto v = validate_factorization(gens, f, r);
  json cells = json::array();
  for (const auto& stage : r.cells) cells.push_back(stage.size());
  json levels = json::array();
  for (const auto& s : r.intermediate->sets) levels.push_back(s.size());
  return {{{"dim", dim},
           {"map", "simplex " + std::to_string(dim) + " -> simplex 0"},
           {"stages", r.stages},
           {"saturated", r.saturated},
           {"cells_per_stage", cells},
           {"intermediate_levels", levels},
           {"factorization_valid", v.ok()},
           {"violations", violations_json(v)}},
          v.ok() ? 0 : 1};
}

Outcome cmd_semidirect(const std::string& file, const std::string& action, const std::optional<std::string>& diagram) {
  const auto doc = load_catspec_file(file);
  const auto& ab = find_block(doc.actions, "action", action);
  const auto s = semidirect(ab.action);
  std::vector<std::pair<std::string, SetDiagram>> xs;
  if (diagram) {
    const auto& db = find_block(doc.diagrams, "diagram", *diagram);
    if (db.shape != ab.category) throw InputError("diagram '" + *diagram + "' does not live on '" + ab.category + "'");
    xs.emplace_back(*diagram, db.diagram);
  } else {
    for (const auto& [name, db] : doc.diagrams)
      if (db.shape == ab.category) xs.emplace_back(name, db.diagram);
    xs.emplace_back("(terminal)", terminal_diagram(ab.action.target));
    for (Ob x = 0; x < static_cast<Ob>(ab.action.target->num_objects()); ++x)
      xs.emplace_back("(corepresentable " + ab.action.target->object_name(x) + ")", corepresentable(ab.action.target, x));
  }
  json checks = json::object();
  bool ok = true;
  for (const auto& [name, x] : xs) {
    const auto r = verify_lan_formula(s, x);
    ok = ok && r.ok();
    checks[name] = {{"ok", r.ok()}, {"components", r.components}, {"violations", violations_json(r.problems)}};
  }
  return {{{"action", action},
           {"group_order", ab.action.group.order()},
           {"objects", s.category->num_objects()},
           {"morphisms", s.category->num_morphisms()},
           {"lan_formula", checks},
           {"ok", ok}},
          ok ? 0 : 1};
}

Outcome cmd_nabla(int dim, const std::optional<std::pair<int, int>>& homcount) {
  if (dim < 0 || dim > 4) throw InputError("--dim must lie in 0..4");
  const Nabla nb = build_nabla(dim);
  if (homcount) {
    const auto [m, n] = *homcount;
    if (m < 0 || n < 0 || m > dim || n > dim) throw InputError("--homcount objects must lie in 0..dim");
    return {{{"dim", dim}, {"m", m}, {"n", n}, {"homcount", nabla_hom_count(nb, m, n)}}, 0};
  }
  json hom = json::object();
  bool twice = true;
  for (int m = 0; m <= dim; ++m)
    for (int n = 0; n <= dim; ++n) {
      const std::size_t h = nabla_hom_count(nb, m, n);
      const std::size_t hd = nb.delta->hom(m, n).size();
      twice = twice && h == 2 * hd;
      hom["[" + std::to_string(m) + "],[" + std::to_string(n) + "]"] = h;
    }
  return {{{"dim", dim},
           {"objects", nb.nabla.category->num_objects()},
           {"morphisms", nb.nabla.category->num_morphisms()},
           {"delta_morphisms", nb.delta->num_morphisms()},
           {"hom", hom},
           {"hom_is_twice_delta", twice},
           {"presentations_isomorphic", is_isomorphism(nb.iso)}},
          twice && is_isomorphism(nb.iso) ? 0 : 1};
}

Outcome cmd_rsset(const std::string& file, const std::string& name) {
  const auto doc = load_catspec_file(file);
  const auto& sb = find_block(doc.rssets, "rsset", name);
  const Nabla nb = build_nabla(sb.dim);
  SetDiagram x = sb.diagram;
  x.shape = nb.nabla_op;
  const auto a = to_involutive(nb, x);
  const auto r = validate_involutive_sset(nb, a);
  bool roundtrip = false;
  if (r.ok()) {
    const auto back = from_involutive(nb, a);
    roundtrip = back.sets == x.sets && back.maps == x.maps;
  }
  const auto degenerate = degenerate_simplices(nb, a.a);
  json levels = json::array(), fixed = json::array(), nondeg = json::array();
  for (int k = 0; k <= sb.dim; ++k) {
    const Ob o = nb.delta->object("[" + std::to_string(k) + "]");
    levels.push_back(a.a.sets[o].size());
    std::size_t f = 0, nd = 0;
    for (std::size_t e = 0; e < a.sigma[k].size(); ++e) f += a.sigma[k][e] == static_cast<int>(e);
    for (bool d : degenerate[o]) nd += !d;
    fixed.push_back(f);
    nondeg.push_back(nd);
  }
  const bool ok = r.ok() && roundtrip;
  return {{{"rsset", name},
           {"dim", sb.dim},
           {"levels", levels},
           {"nondegenerate", nondeg},
           {"sigma_fixed", fixed},
           {"involution_valid", r.ok()},
           {"roundtrip", roundtrip}},
          ok ? 0 : 1};
}

Outcome cmd_cyclic_file(const std::string& file, const std::string& operad, const std::optional<std::string>& target) {
  const auto doc = load_catspec_file(file);
  const auto& ob = find_block(doc.operads, "operad", operad);
  bool ok = true;
  json out = r_report(ob.op, ok);
  out["operad"] = operad;
  out["arity_bound"] = ob.op.bound;
  out["sizes"] = sizes_json(ob.op);
  out["cyclic"] = ob.cyclic.has_value();
  if (target) {
    if (!ob.cyclic) throw InputError("operad '" + operad + "' is not cyclic");
    const auto& tb = find_block(doc.operads, "operad", *target);
    if (tb.op.bound != ob.op.bound) throw InputError("arity bounds differ");
    const auto a = check_adjunction_count(*ob.cyclic, tb.op);
    out["adjunction"] = adjunction_count_json(a);
    ok = ok && a.ok();
  }
  return {out, ok ? 0 : 1};
}

Outcome cmd_cyclic_builtin(const std::string& which, int A, std::uint32_t seed) {
  if (A < 1 || A > 3) throw InputError("--arity-bound must lie in 1..3");
  TruncatedOperad p;
  if (which == "terminal")
    p = terminal_operad(A);
  else if (which == "ass")
    p = associative_operad(A, true);
  else if (which == "ass-nonunital")
    p = associative_operad(A, false);
  else if (which == "random") {
    std::mt19937 rng(seed);
    p = random_two_element_operad(rng, A);
  } else {
    throw InputError("unknown operad '" + which + "' (terminal, ass, ass-nonunital, random)");
  }
  bool ok = validate_operad(p).ok();
  json out = r_report(p, ok);
  out["operad"] = which;
  out["arity_bound"] = A;
  out["sizes"] = sizes_json(p);
  const auto a = check_adjunction_count(terminal_cyclic(A), p);
  out["adjunction_from_terminal"] = adjunction_count_json(a);
  ok = ok && a.ok();
  return {out, ok ? 0 : 1};
}

Outcome cmd_chain_complex(const std::string& file, const std::string& name) {
  const auto doc = load_catspec_file(file);
  const auto& c = find_block(doc.complexes, "complex", name);
  const auto h = homology_dims(c);
  const auto naive = naive_truncate(c);
  const auto htpy = homotopy_truncate(c);
  const bool acyclic = std::all_of(h.begin(), h.end(), [](int x) { return x == 0; });
  return {{{"complex", name},
           {"p", c.p},
           {"lo", c.lo},
           {"dims", vec_json(c.dims)},
           {"homology", vec_json(h)},
           {"acyclic", acyclic},
           {"naive_truncation", {{"lo", naive.lo}, {"dims", vec_json(naive.dims)}}},
           {"homotopy_truncation", {{"lo", htpy.lo}, {"dims", vec_json(htpy.dims)}}}},
          0};
}

Outcome cmd_chain_counterexample(int p) {
  if (!is_prime(p)) throw InputError("--p must be prime");
  const auto r = reproduce_truncation_counterexample(p);
  return {{{"p", p},
           {"epi", r.epi},
           {"quasi_iso", r.quasi_iso},
           {"acyclic_fib", r.acyclic_fib},
           {"FR_acyclic_fib", r.FR_acyclic_fib},
           {"FR_quasi_iso", r.FR_quasi_iso},
           {"L_quasi_iso", r.L_quasi_iso},
           {"FR_source_dims", vec_json(r.FR_source_dims)},
           {"L_source_dims", vec_json(r.L_source_dims)},
           {"reproduced", r.reproduced()}},
          r.reproduced() ? 0 : 1};
}

Outcome cmd_chain_adjunction(int p, int vars, std::uint32_t seed) {
  if (p != 2 && p != 3) throw InputError("--p must be 2 or 3");
  if (vars < 1 || vars > 2) throw InputError("--vars must be 1 or 2");
  const AlgebraMap f = polynomial_inclusion(p, vars - 1, vars);
  std::mt19937 rng(seed);
  std::size_t pairs = 0;
  bool ok = true;
  for (int t = 0; t < 6; ++t) {
    const auto m = random_module_complex(rng, f.src, 0, 1, 3);
    const auto n = random_module_complex(rng, f.tgt, 0, 1, 3);
    const auto c = adjunction_counts(f, m, n);
    ok = ok && c.ok();
    ++pairs;
  }
  std::vector<ModuleComplexMap> maps;
  for (int t = 0; t < 6; ++t) {
    const auto m = random_module_complex(rng, f.tgt, 0, 1, 3);
    const auto n = random_module_complex(rng, f.tgt, 0, 1, 3);
    maps.push_back(random_module_map(rng, f.tgt, m, n));
    maps.push_back(module_to_zero(f.tgt, m));
    maps.push_back(module_identity(m));
  }
  const bool free = is_free_over_source(f);
  const auto pres = check_preservation(f, maps);
  json failures = json::array();
  for (const auto& s : pres.failures) failures.push_back(s);
  ok = ok && (!free || pres.ok());
  return {{{"p", p},
           {"source_dim", f.src.dim},
           {"target_dim", f.tgt.dim},
           {"free_over_source", free},
           {"adjunction_pairs", pairs},
           {"adjunction_counts_agree", ok},
           {"preservation",
            {{"epis", pres.epis},
             {"epis_preserved", pres.epis_preserved},
             {"monos", pres.monos},
             {"monos_preserved", pres.monos_preserved},
             {"quasi_isos", pres.quasi_isos},
             {"coinduce_qi_preserved", pres.coinduce_qi_preserved},
             {"induce_qi_preserved", pres.induce_qi_preserved},
             {"failures", failures}}}},
          ok ? 0 : 1};
}

std::string pretty(const json& j) {
  std::ostringstream out;
  std::function<void(const json&, const std::string&)> walk = [&](const json& v, const std::string& path) {
    if (v.is_object() && !v.empty()) {
      for (auto it = v.begin(); it != v.end(); ++it) walk(it.value(), path.empty() ? it.key() : path + "." + it.key());
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
      for (std::size_t i = 0; i < v.size(); ++i) walk(v[i], path + "[" + std::to_string(i) + "]");
    } else {
      out << path << " = " << v.dump() << "\n";
    }
  };
  walk(j, "");
  return out.str();
}

}  // namespace catkit::cli
