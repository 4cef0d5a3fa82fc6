#include <functional>

#include "catkit/catmodel.hpp"
#include "catkit/chaincx.hpp"
#include "catkit/cycops.hpp"
#include "catkit/invcat.hpp"
#include "catkit/nabla.hpp"
#include "catkit/semidirect.hpp"
#include "catkit/setval.hpp"
#include "commands.hpp"
#include "shared.hpp"

namespace catkit::cli {

namespace {

struct CaseResult {
  json data;
  bool pass = false;
};

struct Case {
  std::string name;
  std::function<CaseResult()> run;
};

// Fully faithful functors: full-subcategory inclusions and Δ≤1 -> Δ≤2.
std::vector<CatFunctor> ff_functors() {
  std::vector<CatFunctor> out;
  auto arrow = shapes::walking_arrow();
  for (Ob x = 0; x < 2; ++x) {
    auto sub = std::make_shared<const FiniteCategory>(full_subcategory(*arrow, {x}));
    out.push_back(inclusion(sub, arrow));
  }
  auto ind = shapes::indiscrete({"x", "x'", "y"});
  auto sub = std::make_shared<const FiniteCategory>(full_subcategory(*ind, {0, 2}));
  out.push_back(inclusion(sub, ind));
  auto d1 = simplex_category(1), d2 = simplex_category(2);
  std::vector<std::pair<std::string, std::string>> obs, mors;
  for (const auto& o : d1->object_names()) obs.emplace_back(o, o);
  for (const auto& m : d1->morphism_names()) mors.emplace_back(m, m);
  out.push_back(make_functor(d1, d2, obs, mors));
  return out;
}

bool is_terminal(const FiniteCategory& c, Ob t) {
  for (Ob o = 0; o < static_cast<Ob>(c.num_objects()); ++o)
    if (c.hom(o, t).size() != 1) return false;
  return true;
}

bool is_initial(const FiniteCategory& c, Ob t) {
  for (Ob o = 0; o < static_cast<Ob>(c.num_objects()); ++o)
    if (c.hom(t, o).size() != 1) return false;
  return true;
}

CaseResult comma_terminal() {
  std::size_t checked = 0;
  bool ok = true;
  for (const auto& iota : ff_functors()) {
    for (Ob c = 0; c < static_cast<Ob>(iota.dom->num_objects()); ++c) {
      const Ob d = iota.on_object(c);
      const Mor id = iota.cod->identity(d);
      const auto over = comma_over(iota, d);
      const auto under = comma_under(d, iota);
      bool found_over = false, found_under = false;
      for (Ob t = 0; t < static_cast<Ob>(over.category->num_objects()); ++t)
        if (over.base_object[t] == c && over.arrow[t] == id) found_over = is_terminal(*over.category, t);
      for (Ob t = 0; t < static_cast<Ob>(under.category->num_objects()); ++t)
        if (under.base_object[t] == c && under.arrow[t] == id) found_under = is_initial(*under.category, t);
      ok = ok && found_over && found_under;
      ++checked;
    }
  }
  return {{{"objects_checked", checked}, {"identity_is_terminal", ok}}, ok};
}

CaseResult ff_corollary() {
  std::size_t diagrams = 0;
  bool unit = true, counit = true;
  for (const auto& iota : ff_functors()) {
    std::vector<DiagRef> xs = {share(terminal_diagram(iota.dom)), share(empty_diagram(iota.dom))};
    for (Ob c = 0; c < static_cast<Ob>(iota.dom->num_objects()); ++c) xs.push_back(share(corepresentable(iota.dom, c)));
    for (const auto& x : xs) {
      unit = unit && is_levelwise_bijective(lan_unit(iota, x));
      counit = counit && is_levelwise_bijective(ran_counit(iota, x));
      ++diagrams;
    }
  }
  return {{{"diagrams", diagrams}, {"lan_unit_iso", unit}, {"ran_counit_iso", counit}}, unit && counit};
}

std::vector<GroupAction> lemma_actions() {
  std::vector<GroupAction> out;
  out.push_back(build_nabla(1).action);
  auto three = shapes::discrete({"0", "1", "2"});
  out.push_back(permutation_action(FiniteGroup::cyclic(3), three,
                                   [](int g, const std::string& x) { return std::to_string((std::stoi(x) + g) % 3); }));
  out.push_back(trivial_action(shapes::walking_arrow(), FiniteGroup::klein()));
  out.push_back(trivial_action(shapes::walking_arrow(), FiniteGroup::symmetric3()));
  return out;
}

CaseResult semidirect_lemma() {
  std::size_t checks = 0;
  bool ok = true;
  for (const auto& a : lemma_actions()) {
    const auto s = semidirect(a);
    std::vector<SetDiagram> xs = {terminal_diagram(a.target)};
    for (Ob x = 0; x < static_cast<Ob>(a.target->num_objects()); ++x) xs.push_back(corepresentable(a.target, x));
    for (const auto& x : xs) {
      ok = ok && verify_lan_formula(s, x).ok();
      ++checks;
    }
  }
  return {{{"actions", lemma_actions().size()}, {"diagrams_checked", checks}, {"coproduct_formula", ok}}, ok};
}

CaseResult dagger() {
  const auto r = dagger_counterexample();
  return {{{"p_isofib", r.p_isofib}, {"Rp_isofib", r.rp_isofib}}, r.p_isofib && !r.rp_isofib};
}

CaseResult dagger_coreflection() {
  const auto r = dagger_counterexample();
  const auto rx = dagger_R(r.p.source);
  const auto& names = rx.dagger.base->object_names();
  return {{{"RX_objects", names}}, names == std::vector<std::string>{"y"}};
}

CaseResult adjoint_string_sizes() {
  bool ok = true;
  json sizes = json::object();
  for (const auto& [name, x] : builtin_categories()) {
    const auto l = L_inv(x), r = R_inv(x);
    const auto op = opposite(x);
    const auto sum = coproduct(x, op).category;
    const auto prod = product(x, op).category;
    const std::size_t n = x->num_objects();
    const bool here = l.base->num_objects() == 2 * n && r.base->num_objects() == n * n &&
                      l.base->num_morphisms() == sum->num_morphisms() &&
                      l.base->num_composable_pairs() == sum->num_composable_pairs() &&
                      r.base->num_morphisms() == prod->num_morphisms() &&
                      r.base->num_composable_pairs() == prod->num_composable_pairs();
    ok = ok && here;
    sizes[name] = {{"objects", n}, {"L_objects", l.base->num_objects()}, {"R_objects", r.base->num_objects()}};
  }
  return {{{"sizes", sizes}, {"ok", ok}}, ok};
}

std::vector<InvolutiveCategory> small_involutive() {
  std::vector<InvolutiveCategory> out;
  for (const auto& [name, c] : builtin_categories())
    if (c->num_objects() <= 2)
      for (auto& x : enumerate_involutions(c)) out.push_back(std::move(x));
  return out;
}

CaseResult icat_adjunction() {
  const std::vector<CatRef> cats = {shapes::empty(), shapes::terminal(), shapes::walking_arrow(),
                                    shapes::discrete({"a", "b"})};
  const auto rep = check_inv_adjunctions(cats, small_involutive());
  return {{{"pairs", rep.pairs},
           {"functors_transposed", rep.functors_transposed},
           {"naturality_checks", rep.naturality_checks},
           {"ok", rep.ok()}},
          rep.ok()};
}

CaseResult exercise_fixed_object() {
  const auto empty = make_involutive(shapes::empty(), {}, {});
  const auto point = make_involutive(shapes::terminal(), {{"*", "*"}}, {});
  const auto fs = enumerate_equivariant(empty, point);
  if (fs.size() != 1) return {{{"error", "expected one functor from the empty category"}}, false};
  const bool cof = is_inv_cofibration(fs.front());
  const bool llp = has_inv_llp(fs.front(), acyclic_fibrations(small_involutive()));
  return {{{"cofibration", cof}, {"llp_against_acyclic_fibrations", llp}}, !cof && !llp};
}

CaseResult joyal_boundaries() {
  const Nabla nb = build_nabla(2);
  const auto kappa = kappa_action(nb.action);
  std::vector<DiagramMap> corpus;
  for (int k = 0; k <= 2; ++k) corpus.push_back(boundary_inclusion(nb, k));
  MapPredicate mono = [](const DiagramMap& f) { return is_levelwise_injective(f); };
  const auto rep = check_semidirect_hypotheses(kappa, {{"mono", mono}}, corpus);
  return {{{"lines", rep.lines}, {"ok", rep.ok()}}, rep.ok()};
}

CaseResult nabla_aut() {
  const Nabla nb = build_nabla(1);
  const std::size_t n = nabla_hom_count(nb, 0, 0);
  return {{{"automorphisms_of_0", n}}, n == 2};
}

CaseResult normal_mono() {
  const Nabla nb = build_nabla(2);
  json verdicts = json::array();
  bool ok = true;
  for (int k = 0; k <= 2; ++k) {
    const bool v = is_normal_mono(nb, lan(nb.iota_op, boundary_inclusion(nb, k)));
    verdicts.push_back(v);
    ok = ok && v;
  }
  return {{{"lan_boundary_inclusions_normal", verdicts}}, ok};
}

CaseResult cyclic_size() {
  bool ok = true;
  json out = json::object();
  auto check = [&](const std::string& name, const TruncatedOperad& p) {
    const auto q = right_adjoint_R(p);
    const auto u = forget_cyclic(q);
    json sizes = json::array();
    for (int n = 0; n <= p.bound; ++n) {
      std::size_t expect = 1;
      for (int k = 0; k <= n; ++k) expect *= p.size(n);
      ok = ok && q.op.size(n) == expect && u.size(n) == expect;
      sizes.push_back(q.op.size(n));
    }
    out[name] = sizes;
  };
  check("terminal", terminal_operad(3));
  check("associative", associative_operad(3));
  return {{{"R_sizes", out}}, ok};
}

CaseResult identity_cone_case() {
  bool ok = true;
  json out = json::object();
  for (int p : {2, 5}) {
    const auto c = identity_cone(p);
    const auto h = homology_dims(c);
    const auto naive = naive_truncate(c);
    const auto htpy = homotopy_truncate(c);
    const bool acyclic = std::all_of(h.begin(), h.end(), [](int x) { return x == 0; });
    const bool naive_field = naive.lo == 0 && naive.dims == std::vector<int>{1};
    const bool htpy_zero = std::all_of(htpy.dims.begin(), htpy.dims.end(), [](int x) { return x == 0; });
    ok = ok && acyclic && naive_field && htpy_zero;
    out[std::to_string(p)] = {{"acyclic", acyclic}, {"naive_is_field_in_degree_0", naive_field}, {"homotopy_is_zero", htpy_zero}};
  }
  return {out, ok};
}

CaseResult truncation() {
  bool ok = true;
  json out = json::object();
  for (int p : {2, 5}) {
    const auto r = reproduce_truncation_counterexample(p);
    ok = ok && r.reproduced();
    out[std::to_string(p)] = {{"acyclic_fib", r.acyclic_fib}, {"FR_acyclic_fib", r.FR_acyclic_fib}};
  }
  return {out, ok};
}

const std::vector<Case>& cases() {
  static const std::vector<Case> all = {
      {"adjoint-string-sizes", adjoint_string_sizes},
      {"comma-terminal", comma_terminal},
      {"cyclic-size", cyclic_size},
      {"dagger", dagger},
      {"dagger-coreflection", dagger_coreflection},
      {"exercise-fixed-object", exercise_fixed_object},
      {"ff-corollary", ff_corollary},
      {"icat-adjunction", icat_adjunction},
      {"joyal-boundaries", joyal_boundaries},
      {"nabla-aut", nabla_aut},
      {"normal-mono", normal_mono},
      {"identity-cone", identity_cone_case},
      {"semidirect-lemma", semidirect_lemma},
      {"truncation", truncation},
  };
  return all;
}

}  // namespace

std::vector<std::string> paper_cases() {
  std::vector<std::string> out;
  for (const auto& c : cases()) out.push_back(c.name);
  return out;
}

Outcome cmd_paper_suite(const std::string& name) {
  if (!name.empty()) {
    for (const auto& c : cases())
      if (c.name == name) {
        const auto r = c.run();
        return {r.data, r.pass ? 0 : 1};
      }
    throw InputError("unknown case '" + name + "'");
  }
  json results = json::object();
  json failed = json::array();
  for (const auto& c : cases()) {
    const auto r = c.run();
    results[c.name] = r.data;
    if (!r.pass) failed.push_back(c.name);
  }
  return {{{"cases", results}, {"failed", failed}, {"total", cases().size()}}, failed.empty() ? 0 : 1};
}

}  // namespace catkit::cli
