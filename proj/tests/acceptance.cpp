// One line per acceptance criterion; exit status 1 if any is red.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "catkit/catmodel.hpp"
#include "catkit/chaincx.hpp"
#include "catkit/cycops.hpp"
#include "catkit/invcat.hpp"
#include "catkit/nabla.hpp"
#include "catkit/semidirect.hpp"
#include "catkit/setval.hpp"
#include "support/corpus.hpp"

using namespace catkit;
using namespace catkit::testing;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << "s";
  return o.str();
}

std::pair<std::string, int> run_cli(const std::string& args) {
  const std::string cmd = std::string(CATKIT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {"", -1};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

std::vector<DiagramMap> some_maps(const DiagRef& a, const DiagRef& b, std::size_t k) {
  std::vector<DiagramMap> out;
  search_maps(a, b, [&](const DiagramMap& f) {
    out.push_back(f);
    return out.size() < k;
  });
  return out;
}

// ---- 1 -------------------------------------------------------------------------------

Verdict kan_adjunction() {
  const auto t0 = Clock::now();
  std::mt19937 rng(20241);
  std::size_t done = 0, failed = 0, tries = 0, over_budget = 0;
  std::string first;
  while (done < 100 && tries < 2000) {
    ++tries;
    CatRef c = random_category(rng, 12);
    CatRef d = random_category(rng, 12);
    auto f = random_functor(rng, c, d);
    if (!f) continue;
    std::vector<DiagRef> xs, ys;
    for (int i = 0; i < 2; ++i) xs.push_back(share(random_diagram(rng, c, 5)));
    for (int i = 0; i < 2; ++i) ys.push_back(share(random_diagram(rng, d, 5)));
    std::vector<DiagramMap> xm, ym;
    for (auto& m : some_maps(xs[0], xs[1], 2)) xm.push_back(m);
    for (auto& m : some_maps(xs[1], xs[0], 2)) xm.push_back(m);
    for (auto& m : some_maps(ys[0], ys[1], 2)) ym.push_back(m);
    for (auto& m : some_maps(ys[1], ys[0], 2)) ym.push_back(m);
    AdjunctionReport l, r;
    try {
      l = certify_adjunction(lan_restrict_adjunction(*f), xs, ys, xm, ym);
      r = certify_adjunction(restrict_ran_adjunction(*f), ys, xs, ym, xm);
    } catch (const BudgetExceeded&) {
      ++over_budget;
      continue;
    }
    if (!l.ok() || !r.ok()) {
      ++failed;
      if (first.empty()) first = (l.ok() ? r : l).problems.summary(1);
    }
    ++done;
  }
  const double s = seconds_since(t0);
  const bool pass = done >= 100 && failed == 0 && s < 60;
  return {pass, std::to_string(done) + " functors, " + std::to_string(failed) + " failures, " +
                    std::to_string(over_budget) + " redrawn over the search budget, " + fmt_seconds(s) +
                    (first.empty() ? "" : "; " + first)};
}

// ---- 2 -------------------------------------------------------------------------------

Verdict ff_corollary() {
  std::mt19937 rng(7);
  std::size_t functors = 0, checks = 0, failed = 0;
  const auto cats = small_categories();
  for (const auto& a : cats)
    for (const auto& b : cats) {
      SearchBudget budget;
      budget.max_results = 200;
      std::vector<CatFunctor> fs;
      try {
        fs = enumerate_functors(a.cat, b.cat, budget);
      } catch (const BudgetExceeded&) {
        continue;
      }
      for (const auto& f : fs) {
        if (!is_full(f) || !is_faithful(f)) continue;
        ++functors;
        std::vector<DiagRef> xs = {share(terminal_diagram(a.cat)), share(random_diagram(rng, a.cat, 8))};
        for (Ob x = 0; x < static_cast<Ob>(a.cat->num_objects()); ++x) xs.push_back(share(corepresentable(a.cat, x)));
        for (const auto& x : xs) {
          const auto u = lan_unit(f, x);
          const auto c = ran_counit(f, x);
          ++checks;
          if (!validate_map(u).ok() || !is_levelwise_bijective(u) || !validate_map(c).ok() || !is_levelwise_bijective(c))
            ++failed;
        }
      }
    }
  return {functors > 50 && failed == 0, std::to_string(functors) + " fully faithful functors, " +
                                            std::to_string(checks) + " diagrams, " + std::to_string(failed) + " failures"};
}

// ---- 3 -------------------------------------------------------------------------------

GroupAction regular_on_discrete(const FiniteGroup& g) {
  auto disc = shapes::discrete(g.names());
  return permutation_action(g, disc, [g](int e, const std::string& x) { return g.name(g.mul(e, *g.find(x))); });
}

// G acting on discrete(G) × c through the first factor.
GroupAction regular_times(const FiniteGroup& g, const CatRef& c) {
  auto disc = shapes::discrete(g.names());
  const auto pr = product(disc, c);
  const FiniteCategory& p = *pr.category;
  std::map<std::pair<Ob, Ob>, Ob> obj;
  std::map<std::pair<Mor, Mor>, Mor> mor;
  for (Ob o = 0; o < static_cast<Ob>(p.num_objects()); ++o) obj[{pr.proj1.on_object(o), pr.proj2.on_object(o)}] = o;
  for (Mor m = 0; m < static_cast<Mor>(p.num_morphisms()); ++m) mor[{pr.proj1.on_morphism(m), pr.proj2.on_morphism(m)}] = m;
  GroupAction a{g, pr.category, {}};
  for (int e = 0; e < static_cast<int>(g.order()); ++e) {
    CatFunctor f{pr.category, pr.category, std::vector<Ob>(p.num_objects()), std::vector<Mor>(p.num_morphisms())};
    auto move = [&](Ob x) { return disc->object(g.name(g.mul(e, *g.find(disc->object_name(x))))); };
    for (Ob o = 0; o < static_cast<Ob>(p.num_objects()); ++o)
      f.obj_map[o] = obj.at({move(pr.proj1.on_object(o)), pr.proj2.on_object(o)});
    for (Mor m = 0; m < static_cast<Mor>(p.num_morphisms()); ++m) {
      const Ob x = disc->source(pr.proj1.on_morphism(m));
      f.mor_map[m] = mor.at({disc->identity(move(x)), pr.proj2.on_morphism(m)});
    }
    a.rho.push_back(std::move(f));
  }
  return a;
}

GroupAction swap_parallel() {
  auto pp = shapes::parallel_pair();
  const FiniteGroup c2 = FiniteGroup::cyclic(2);
  GroupAction a{c2, pp, std::vector<CatFunctor>(2)};
  a.rho[c2.identity()] = identity_functor(pp);
  a.rho[1 - c2.identity()] = make_functor(pp, pp, {{"a", "a"}, {"b", "b"}}, {{"f", "g"}, {"g", "f"}});
  return a;
}

Verdict semidirect_lemma() {
  std::vector<std::pair<std::string, GroupAction>> corpus;
  const std::vector<std::pair<std::string, FiniteGroup>> groups = {{"C2", FiniteGroup::cyclic(2)},
                                                                   {"C3", FiniteGroup::cyclic(3)},
                                                                   {"C2xC2", FiniteGroup::klein()},
                                                                   {"S3", FiniteGroup::symmetric3()}};
  for (const auto& [gn, g] : groups) {
    corpus.emplace_back(gn + " regular", regular_on_discrete(g));
    corpus.emplace_back(gn + " trivial on arrow", trivial_action(shapes::walking_arrow(), g));
    corpus.emplace_back(gn + " trivial on square", trivial_action(small_categories()[9].cat, g));
    if (g.order() <= 4) corpus.emplace_back(gn + " on G x arrow", regular_times(g, shapes::walking_arrow()));
  }
  const FiniteGroup s3 = FiniteGroup::symmetric3();
  corpus.emplace_back("S3 on three points", permutation_action(s3, shapes::discrete({"0", "1", "2"}),
                                                               [s3](int e, const std::string& x) {
                                                                 return std::string(1, s3.name(e)[std::stoi(x)]);
                                                               }));
  corpus.emplace_back("C2 reversal on simplex 1", build_nabla(1).action);
  corpus.emplace_back("C2 swapping parallel arrows", swap_parallel());

  std::mt19937 rng(3);
  std::size_t checks = 0, failed = 0;
  std::string first;
  for (const auto& [name, a] : corpus) {
    if (a.target->num_morphisms() > 12 || !validate_action(a).ok()) {
      ++failed;
      if (first.empty()) first = name + " is not a valid corpus action";
      continue;
    }
    const auto s = semidirect(a);
    std::vector<SetDiagram> xs = {terminal_diagram(a.target), empty_diagram(a.target)};
    for (Ob x = 0; x < static_cast<Ob>(a.target->num_objects()); ++x) xs.push_back(corepresentable(a.target, x));
    for (int i = 0; i < 3; ++i) xs.push_back(random_diagram(rng, a.target, 10));
    for (const auto& x : xs) {
      const auto r = verify_lan_formula(s, x);
      ++checks;
      if (!r.ok() || !is_levelwise_bijective(r.comparison)) {
        ++failed;
        if (first.empty()) first = name + ": " + r.problems.summary(1);
      }
    }
  }
  return {failed == 0, std::to_string(corpus.size()) + " actions, " + std::to_string(checks) + " comparisons, " +
                           std::to_string(failed) + " failures" + (first.empty() ? "" : "; " + first)};
}

// ---- 4 -------------------------------------------------------------------------------

Verdict nabla_consistency() {
  bool ok = true;
  std::size_t pairs = 0;
  std::size_t aut0 = 0;
  for (int n = 0; n <= 4; ++n) {
    Nabla nb;
    try {
      nb = build_nabla(n);
    } catch (const std::exception&) {
      return {false, "build_nabla(" + std::to_string(n) + ") failed"};
    }
    ok = ok && validate_functor(nb.iso).ok() && is_isomorphism(nb.iso);
    if (n == 0) aut0 = nabla_hom_count(nb, 0, 0);
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) {
        ok = ok && nabla_hom_count(nb, a, b) == 2 * nb.delta->hom(a, b).size();
        ++pairs;
      }
  }
  ok = ok && aut0 == 2;
  return {ok, "N <= 4, " + std::to_string(pairs) + " hom-sets, |hom([0],[0])| = " + std::to_string(aut0)};
}

// ---- 5 -------------------------------------------------------------------------------

Verdict isset_equivalence() {
  const Nabla nb = build_nabla(3);
  const int s = *nb.action.group.find("s");
  const int e = nb.action.group.identity();
  std::mt19937 rng(55);
  std::size_t ok_rt = 0, square_checks = 0, square_fail = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    const SetDiagram x = random_diagram(rng, nb.nabla_op, 30);
    const auto a = to_involutive(nb, x);
    if (validate_involutive_sset(nb, a).ok()) {
      const auto back = from_involutive(nb, a);
      ok_rt += back.sets == x.sets && back.maps == x.maps;
    }
    // (α,1)* ∘ (id_[n],σ)* = (id_[m],σ)* ∘ (𝓕α,1)*
    const FiniteCategory& d = *nb.delta;
    for (Mor alpha = 0; alpha < static_cast<Mor>(d.num_morphisms()); ++alpha) {
      const Ob m = d.source(alpha), n = d.target(alpha);
      const Mor fa = nb.action.rho[s].on_morphism(alpha);
      const Mor lhs_a = nb.nabla.pair(alpha, e), rhs_a = nb.nabla.pair(fa, e);
      for (std::size_t v = 0; v < x.sets[n].size(); ++v) {
        ++square_checks;
        const int lhs = x.apply(lhs_a, x.apply(nb.flip(n), static_cast<int>(v)));
        const int rhs = x.apply(nb.flip(m), x.apply(rhs_a, static_cast<int>(v)));
        square_fail += lhs != rhs;
      }
    }
  }
  return {ok_rt == trials && square_fail == 0 && square_checks > 0,
          std::to_string(ok_rt) + "/" + std::to_string(trials) + " round trips, " + std::to_string(square_checks) +
              " square checks, " + std::to_string(square_fail) + " failures"};
}

// ---- 6 -------------------------------------------------------------------------------

Verdict dagger() {
  const auto [out, code] = run_cli("paper-suite --case dagger");
  try {
    const auto j = nlohmann::json::parse(out);
    const bool ok = code == 0 && j.at("p_isofib") == true && j.at("Rp_isofib") == false;
    const auto lib = dagger_counterexample();
    return {ok && lib.p_isofib && !lib.rp_isofib,
            "catkit paper-suite --case dagger -> " + j.dump() + ", exit " + std::to_string(code)};
  } catch (const std::exception& ex) {
    return {false, std::string("could not read CLI output: ") + ex.what()};
  }
}

// ---- 7 -------------------------------------------------------------------------------

std::vector<CatRef> bases_upto3() {
  std::vector<CatRef> out;
  for (const auto& c : small_categories())
    if (c.cat->num_objects() <= 3) out.push_back(c.cat);
  return out;
}

Verdict icat() {
  const auto t0 = Clock::now();
  const auto cats = bases_upto3();
  std::vector<InvolutiveCategory> invs;
  for (const auto& c : cats)
    for (auto& x : enumerate_involutions(c)) invs.push_back(std::move(x));
  const auto rep = check_inv_adjunctions(cats, invs);

  // Exercise characterization against the LLP oracle
  std::vector<InvolutiveCategory> wide = invs;
  for (const CatRef& c : {shapes::indiscrete({"x", "x'", "y"}),
                          coproduct(shapes::walking_iso(), shapes::terminal()).category})
    for (auto& x : enumerate_involutions(c)) wide.push_back(std::move(x));
  const auto tests = acyclic_fibrations(wide);
  std::size_t checked = 0, disagree = 0;
  for (const auto& a : invs)
    for (const auto& b : invs) {
      for (const auto& i : enumerate_equivariant(a, b)) {
        ++checked;
        disagree += is_inv_cofibration(i) != has_inv_llp(i, tests);
      }
    }
  return {rep.ok() && disagree == 0 && checked > 0,
          std::to_string(cats.size()) + " categories, " + std::to_string(invs.size()) + " involutions, " +
              std::to_string(rep.functors_transposed) + " transposes; Exercise vs LLP on " + std::to_string(checked) +
              " maps, " + std::to_string(disagree) + " disagreements, " + fmt_seconds(seconds_since(t0))};
}

// ---- 8 -------------------------------------------------------------------------------

Verdict model_oracle() {
  std::vector<CatRef> cats;
  for (const auto& c : small_categories())
    if (c.cat->num_objects() <= 4 && c.cat->num_morphisms() <= 8) cats.push_back(c.cat);
  const auto r = cross_validate(default_generating_sets(), cats);

  // bounded SOA on simplicial sets with the boundary inclusions
  std::size_t factorizations = 0, bad = 0;
  std::mt19937 rng(8);
  for (int dim = 1; dim <= 2; ++dim) {
    const Nabla nb = build_nabla(dim);
    std::vector<DiagramMap> gens;
    for (int k = 0; k <= dim; ++k) gens.push_back(boundary_inclusion(nb, k));
    std::vector<DiagramMap> maps = gens;
    const DiagRef pt = share(simplex(nb, 0));
    auto to_point = [&](const DiagRef& x) {
      DiagramMap f{x, pt, {}};
      for (const auto& s : x->sets) f.components.emplace_back(s.size(), 0);
      return f;
    };
    maps.push_back(to_point(share(simplex(nb, dim))));
    for (int i = 0; i < 3; ++i) maps.push_back(to_point(share(random_diagram(rng, nb.delta_op, 6))));
    for (const auto& f : maps) {
      const auto res = bounded_soa(gens, f, 3);
      ++factorizations;
      bad += !validate_factorization(gens, f, res).ok();
    }
  }
  return {r.ok() && bad == 0, std::to_string(r.functors) + " functors (" + std::to_string(r.discrepancies.size()) +
                                  " discrepancies), " + std::to_string(factorizations) + " factorizations, " +
                                  std::to_string(bad) + " invalid"};
}

// ---- 9 -------------------------------------------------------------------------------

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Verdict cyclic_operads() {
  std::mt19937 rng(9);
  const std::vector<std::pair<std::string, TruncatedOperad>> ps = {
      {"terminal", terminal_operad(3)}, {"associative", associative_operad(3)}, {"random", random_two_element_operad(rng, 3)}};
  bool ok = true;
  for (const auto& [name, p] : ps) {
    const auto q = right_adjoint_R(p);
    ok = ok && validate_cyclic(q).ok();
    for (int n = 0; n <= 3; ++n) ok = ok && q.op.size(n) == ipow(p.size(n), n + 1);
  }

  // every instance with at most 3 elements per arity
  const std::vector<std::vector<int>> z2 = {{0, 1}, {1, 0}}, mult = {{0, 0}, {0, 1}}, z3 = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}},
                                      mx = {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}};
  std::size_t instances = 0, bad = 0, pi0 = 0;
  for (int a = 1; a <= 3; ++a) {
    std::vector<TruncatedCyclicOperad> qs = {terminal_cyclic(a)};
    std::vector<TruncatedOperad> targets = {terminal_operad(a)};
    for (bool zero : {true, false}) {
      qs.push_back(monoid_cyclic(a, {"0", "1"}, z2, zero));
      qs.push_back(monoid_cyclic(a, {"0", "1"}, mult, zero));
      qs.push_back(monoid_cyclic(a, {"0", "1", "2"}, z3, zero));
      targets.push_back(monoid_operad(a, {"0", "1"}, z2, zero));
      targets.push_back(monoid_operad(a, {"0", "1"}, mult, zero));
      targets.push_back(monoid_operad(a, {"0", "1", "2"}, mx, zero));
    }
    if (a <= 2) {
      targets.push_back(associative_operad(a, true));
      targets.push_back(associative_operad(a, false));
    }
    for (const auto& q : qs)
      for (const auto& p : targets) {
        ++instances;
        const auto rep = check_adjunction_count(q, p);
        bad += !rep.ok();
        pi0 += rep.pi0_bijective;
      }
  }
  return {ok && bad == 0, "R P valid with |RP(n)| = |P(n)|^(n+1) for terminal, associative, random; " +
                              std::to_string(instances) + " adjunction instances, " + std::to_string(bad) + " mismatches, pi_0 bijective on " +
                              std::to_string(pi0)};
}

// ---- 10 ------------------------------------------------------------------------------

Verdict chain() {
  bool counter = true;
  for (int p : {2, 5}) {
    const auto r = reproduce_truncation_counterexample(p);
    counter = counter && r.epi && r.acyclic_fib && !r.FR_quasi_iso && r.reproduced();
  }
  std::mt19937 rng(10);
  const std::vector<AlgebraMap> fs = {polynomial_inclusion(2, 1, 2), polynomial_inclusion(3, 0, 1), augmentation(2),
                                      identity_algebra_map(truncated_polynomial(2, 1))};
  std::size_t pairs = 0, bad = 0;
  for (const auto& f : fs)
    for (int t = 0; t < 8; ++t) {
      const int hi = t % 2;
      const auto m = random_module_complex(rng, f.src, 0, hi, 3 - hi);
      const auto n = random_module_complex(rng, f.tgt, 0, hi, 3 - hi);
      ++pairs;
      bad += !adjunction_counts(f, m, n).ok();
    }
  const AlgebraMap free = polynomial_inclusion(2, 1, 2);
  std::vector<ModuleComplexMap> maps;
  for (int t = 0; t < 10; ++t) {
    const auto m = random_module_complex(rng, free.tgt, 0, 1, 3);
    const auto n = random_module_complex(rng, free.tgt, 0, 1, 3);
    maps.push_back(random_module_map(rng, free.tgt, m, n));
    maps.push_back(module_to_zero(free.tgt, m));
  }
  const bool is_free = is_free_over_source(free);
  const auto pres = check_preservation(free, maps);
  return {counter && bad == 0 && is_free && pres.ok() && pres.epis > 0 && pres.quasi_isos > 0,
          std::string("counterexample p=2,5 ") + (counter ? "reproduced" : "NOT reproduced") + "; " +
              std::to_string(pairs) + " adjunction pairs, " + std::to_string(bad) + " mismatches; preservation " +
              std::to_string(pres.epis_preserved) + "/" + std::to_string(pres.epis) + " epis, " +
              std::to_string(pres.coinduce_qi_preserved) + "/" + std::to_string(pres.quasi_isos) + " quasi-isos"};
}

// ---- 11 ------------------------------------------------------------------------------

Verdict determinism() {
  const std::string d = CATKIT_DATA;
  const std::vector<std::string> calls = {
      "validate " + d + "/walking-arrow.catspec",
      "validate --emit " + d + "/operads.catspec",
      "validate " + d + "/bad-involution.catspec",
      "validate " + d + "/bad-reference.catspec",
      "kan " + d + "/kan.catspec --functor incl --diagram X",
      "kan " + d + "/kan.catspec --functor pick_b --diagram X --right",
      "adjoint " + d + "/kan.catspec --functor incl",
      "lift " + d + "/lifting.catspec --i i --p collapse --top i --bottom collapse",
      "lift " + d + "/lifting.catspec --i i --p i --top idpt --bottom idE",
      "rlp " + d + "/lifting.catspec --functor i",
      "rlp --max-morphisms 12",
      "soa --dim 2 --max-stages 3",
      "semidirect " + d + "/action.catspec --action swap",
      "nabla --dim 1 --homcount 1 1",
      "nabla --dim 3",
      "rsset " + d + "/real-interval.catspec --name interval",
      "cyclic --builtin ass --arity-bound 3",
      "cyclic --builtin random --arity-bound 3 --seed 4",
      "cyclic " + d + "/operads.catspec --operad point --target mult",
      "chain " + d + "/complex.catspec --complex K",
      "chain --counterexample --p 5",
      "chain --adjunction --p 2 --vars 2",
      "paper-suite",
      "paper-suite --case dagger",
  };
  std::size_t same = 0;
  std::string first;
  for (const auto& c : calls) {
    const auto a = run_cli(c);
    const auto b = run_cli(c);
    if (a == b && !a.first.empty())
      ++same;
    else if (first.empty())
      first = c;
  }
  return {same == calls.size(), std::to_string(same) + "/" + std::to_string(calls.size()) +
                                    " invocations byte-identical across two runs" +
                                    (first.empty() ? "" : "; first difference: " + first)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"Kan-extension adjunctions", kan_adjunction},
      {"fully faithful corollary", ff_corollary},
      {"semidirect Lan lemma", semidirect_lemma},
      {"nabla consistency", nabla_consistency},
      {"isSet equivalence", isset_equivalence},
      {"dagger counterexample", dagger},
      {"iCat adjunction and cofibrations", icat},
      {"model-structure oracle", model_oracle},
      {"cyclic operads", cyclic_operads},
      {"chain and cochain", chain},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (k + 1 < 10 ? " " : "") << k + 1 << "  " << criteria[k].first
              << ": " << v.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
