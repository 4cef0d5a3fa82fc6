#include "catkit/catmodel.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "catkit/detail/disjoint_set.hpp"

namespace catkit {

ValidationReport validate_square(const LiftingSquare& sq) {
  ValidationReport r;
  auto check = [&](const CatFunctor& f, const char* name) {
    const ValidationReport v = validate_functor(f);
    r.merge(v, std::string(name) + ": ");
  };
  check(sq.i, "i");
  check(sq.p, "p");
  check(sq.top, "top");
  check(sq.bottom, "bottom");
  if (!r.ok()) return r;
  if (!(*sq.top.dom == *sq.i.dom) || !(*sq.top.cod == *sq.p.dom) || !(*sq.bottom.dom == *sq.i.cod) ||
      !(*sq.bottom.cod == *sq.p.cod)) {
    r.add("functors do not form a square");
    return r;
  }
  const FiniteCategory& a = *sq.i.dom;
  for (Ob x = 0; x < static_cast<Ob>(a.num_objects()); ++x)
    if (sq.p.on_object(sq.top.on_object(x)) != sq.bottom.on_object(sq.i.on_object(x)))
      r.add("square does not commute at object " + a.object_name(x));
  for (Mor m = 0; m < static_cast<Mor>(a.num_morphisms()); ++m)
    if (sq.p.on_morphism(sq.top.on_morphism(m)) != sq.bottom.on_morphism(sq.i.on_morphism(m)))
      r.add("square does not commute at morphism " + a.morphism_name(m));
  return r;
}

bool is_isofibration(const CatFunctor& p) {
  const FiniteCategory& x = *p.dom;
  const FiniteCategory& y = *p.cod;
  for (Ob a = 0; a < static_cast<Ob>(x.num_objects()); ++a) {
    for (Mor u : y.outgoing(p.on_object(a))) {
      if (!y.is_invertible(u)) continue;
      bool lifted = false;
      for (Mor v : x.outgoing(a))
        if (p.on_morphism(v) == u && x.is_invertible(v)) {
          lifted = true;
          break;
        }
      if (!lifted) return false;
    }
  }
  return true;
}

bool is_acyclic_fibration(const CatFunctor& p) {
  return is_surjective_on_objects(p) && is_full(p) && is_faithful(p);
}

std::optional<FunctorConstraints> lifting_constraints(const CatFunctor& i, const CatFunctor& p,
                                                      const CatFunctor& top, const CatFunctor& bottom) {
  const FiniteCategory& b = *i.cod;
  const FiniteCategory& x = *p.dom;
  const FiniteCategory& a = *i.dom;
  FunctorConstraints cons;
  cons.objects.resize(b.num_objects());
  cons.morphisms.resize(b.num_morphisms());
  std::vector<Ob> forced_obj(b.num_objects(), kNone);
  std::vector<Mor> forced_mor(b.num_morphisms(), kNone);
  for (Ob o = 0; o < static_cast<Ob>(a.num_objects()); ++o) {
    Ob& slot = forced_obj[i.on_object(o)];
    if (slot != kNone && slot != top.on_object(o)) return std::nullopt;
    slot = top.on_object(o);
  }
  for (Mor m = 0; m < static_cast<Mor>(a.num_morphisms()); ++m) {
    Mor& slot = forced_mor[i.on_morphism(m)];
    if (slot != kNone && slot != top.on_morphism(m)) return std::nullopt;
    slot = top.on_morphism(m);
  }
  for (Ob o = 0; o < static_cast<Ob>(b.num_objects()); ++o) {
    std::vector<Ob> c;
    for (Ob t = 0; t < static_cast<Ob>(x.num_objects()); ++t)
      if (p.on_object(t) == bottom.on_object(o) && (forced_obj[o] == kNone || forced_obj[o] == t)) c.push_back(t);
    cons.objects[o] = std::move(c);
  }
  for (Mor m = 0; m < static_cast<Mor>(b.num_morphisms()); ++m) {
    std::vector<Mor> c;
    for (Mor t = 0; t < static_cast<Mor>(x.num_morphisms()); ++t)
      if (p.on_morphism(t) == bottom.on_morphism(m) && (forced_mor[m] == kNone || forced_mor[m] == t)) c.push_back(t);
    cons.morphisms[m] = std::move(c);
  }
  return cons;
}

std::optional<CatFunctor> solve_lifting(const LiftingSquare& sq, const SearchBudget& budget) {
  auto cons = lifting_constraints(sq.i, sq.p, sq.top, sq.bottom);
  if (!cons) return std::nullopt;
  std::optional<CatFunctor> out;
  search_functors(sq.i.cod, sq.p.dom, *cons, [&](const CatFunctor& d) {
    out = d;
    return false;
  }, budget);
  return out;
}

namespace {

// Visits commutative squares from i to p; the visitor returns false to stop.
void search_squares(const CatFunctor& i, const CatFunctor& p, const std::function<bool(const LiftingSquare&)>& visit,
                    const SearchBudget& budget) {
  const FiniteCategory& a = *i.dom;
  const FiniteCategory& x = *p.dom;
  bool stop = false;
  search_functors(i.cod, p.cod, FunctorConstraints{}, [&](const CatFunctor& bottom) {
    FunctorConstraints cons;
    cons.objects.resize(a.num_objects());
    cons.morphisms.resize(a.num_morphisms());
    for (Ob o = 0; o < static_cast<Ob>(a.num_objects()); ++o) {
      std::vector<Ob> c;
      for (Ob t = 0; t < static_cast<Ob>(x.num_objects()); ++t)
        if (p.on_object(t) == bottom.on_object(i.on_object(o))) c.push_back(t);
      cons.objects[o] = std::move(c);
    }
    for (Mor m = 0; m < static_cast<Mor>(a.num_morphisms()); ++m) {
      std::vector<Mor> c;
      for (Mor t = 0; t < static_cast<Mor>(x.num_morphisms()); ++t)
        if (p.on_morphism(t) == bottom.on_morphism(i.on_morphism(m))) c.push_back(t);
      cons.morphisms[m] = std::move(c);
    }
    search_functors(i.dom, p.dom, cons, [&](const CatFunctor& top) {
      if (!visit(LiftingSquare{i, p, top, bottom})) stop = true;
      return !stop;
    }, budget);
    return !stop;
  }, budget);
}

}  // namespace

std::vector<LiftingSquare> enumerate_squares(const CatFunctor& i, const CatFunctor& p, const SearchBudget& budget) {
  std::vector<LiftingSquare> out;
  search_squares(i, p, [&](const LiftingSquare& sq) {
    if (out.size() >= budget.max_results) throw BudgetExceeded("square enumeration exceeded result budget");
    out.push_back(sq);
    return true;
  }, budget);
  return out;
}

std::optional<LiftingSquare> find_unliftable(const CatFunctor& i, const CatFunctor& p, const SearchBudget& budget) {
  std::optional<LiftingSquare> out;
  search_squares(i, p, [&](const LiftingSquare& sq) {
    if (!solve_lifting(sq, budget)) out = sq;
    return !out;
  }, budget);
  return out;
}

bool has_rlp(const std::vector<CatFunctor>& tests, const CatFunctor& p, const SearchBudget& budget) {
  for (const auto& i : tests)
    if (find_unliftable(i, p, budget)) return false;
  return true;
}

bool has_llp(const CatFunctor& i, const std::vector<CatFunctor>& tests, const SearchBudget& budget) {
  for (const auto& p : tests)
    if (find_unliftable(i, p, budget)) return false;
  return true;
}

// ---- pushouts ------------------------------------------------------------------------

CatPushout pushout_category(const CatFunctor& i, const CatFunctor& f, const ClosureBudget& budget) {
  if (!(*i.dom == *f.dom)) throw InputError("pushout: functors have different domains");
  const FiniteCategory& a = *i.dom;
  const FiniteCategory& b = *i.cod;
  const FiniteCategory& c = *f.cod;
  const int nc = static_cast<int>(c.num_objects());
  const int nb = static_cast<int>(b.num_objects());

  // Objects: C first, then B, glued along A.
  detail::DisjointSet dsu(static_cast<std::size_t>(nc + nb));
  for (Ob o = 0; o < static_cast<Ob>(a.num_objects()); ++o) dsu.unite(f.on_object(o), nc + i.on_object(o));
  std::set<std::string> obj_taken, mor_taken;
  auto fresh = [](std::set<std::string>& taken, std::string name) {
    while (taken.count(name)) name += "'";
    taken.insert(name);
    return name;
  };
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) mor_taken.insert(c.morphism_name(m));
  Presentation pres;
  std::map<int, int> class_index;
  std::vector<int> obj_class(nc + nb);
  for (int k = 0; k < nc + nb; ++k) {
    const int r = dsu.find(k);
    auto it = class_index.find(r);
    if (it == class_index.end()) {
      it = class_index.emplace(r, static_cast<int>(pres.objects.size())).first;
      if (k < nc) {
        pres.objects.push_back(fresh(obj_taken, c.object_name(k)));
        pres.identity_names.push_back(c.morphism_name(c.identity(k)));
      } else {
        pres.objects.push_back(fresh(obj_taken, b.object_name(k - nc)));
        pres.identity_names.push_back(fresh(mor_taken, b.morphism_name(b.identity(k - nc))));
      }
    }
    obj_class[k] = it->second;
  }
  // Generators: non-identity morphisms of C, then of B.
  std::vector<int> gen_c(c.num_morphisms(), -1), gen_b(b.num_morphisms(), -1);
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    if (c.is_identity(m)) continue;
    gen_c[m] = static_cast<int>(pres.generators.size());
    pres.generators.push_back({c.morphism_name(m), obj_class[c.source(m)], obj_class[c.target(m)]});
  }
  for (Mor m = 0; m < static_cast<Mor>(b.num_morphisms()); ++m) {
    if (b.is_identity(m)) continue;
    gen_b[m] = static_cast<int>(pres.generators.size());
    pres.generators.push_back({fresh(mor_taken, b.morphism_name(m)), obj_class[nc + b.source(m)], obj_class[nc + b.target(m)]});
  }
  auto path_c = [&](Mor m) {
    return c.is_identity(m) ? Presentation::Path{obj_class[c.source(m)], {}}
                            : Presentation::Path{obj_class[c.source(m)], {gen_c[m]}};
  };
  auto path_b = [&](Mor m) {
    return b.is_identity(m) ? Presentation::Path{obj_class[nc + b.source(m)], {}}
                            : Presentation::Path{obj_class[nc + b.source(m)], {gen_b[m]}};
  };
  for (Mor g = 0; g < static_cast<Mor>(c.num_morphisms()); ++g)
    for (Mor h : c.incoming(c.source(g))) {
      if (c.is_identity(g) || c.is_identity(h)) continue;
      pres.relations.push_back({Presentation::Path{obj_class[c.source(h)], {gen_c[h], gen_c[g]}}, path_c(c.compose(g, h))});
    }
  for (Mor g = 0; g < static_cast<Mor>(b.num_morphisms()); ++g)
    for (Mor h : b.incoming(b.source(g))) {
      if (b.is_identity(g) || b.is_identity(h)) continue;
      pres.relations.push_back(
          {Presentation::Path{obj_class[nc + b.source(h)], {gen_b[h], gen_b[g]}}, path_b(b.compose(g, h))});
    }
  for (Mor m = 0; m < static_cast<Mor>(a.num_morphisms()); ++m) {
    if (a.is_identity(m)) continue;
    pres.relations.push_back({path_b(i.on_morphism(m)), path_c(f.on_morphism(m))});
  }

  const PresentedCategory pc = complete_presentation(pres, budget);
  const FiniteCategory& p = *pc.category;
  CatPushout out;
  out.category = pc.category;
  auto build = [&](const CatRef& src, int base, const std::vector<int>& gens) {
    CatFunctor F{src, pc.category, {}, {}};
    const FiniteCategory& s = *src;
    for (Ob o = 0; o < static_cast<Ob>(s.num_objects()); ++o) F.obj_map.push_back(p.object(pres.objects[obj_class[base + o]]));
    for (Mor m = 0; m < static_cast<Mor>(s.num_morphisms()); ++m)
      F.mor_map.push_back(s.is_identity(m) ? p.identity(F.obj_map[s.source(m)]) : pc.generator_image[gens[m]]);
    return F;
  };
  out.from_b = build(i.cod, nc, gen_b);
  out.from_c = build(f.cod, 0, gen_c);
  return out;
}

std::optional<bool> pushout_preserves_equivalence(const CatFunctor& i, const CatFunctor& w,
                                                  const ClosureBudget& budget) {
  try {
    const CatPushout po = pushout_category(w, i, budget);
    return is_equivalence(po.from_c);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

// ---- generating sets -------------------------------------------------------------------

GeneratingSets default_generating_sets() {
  GeneratingSets g;
  auto pt = shapes::terminal();
  auto arrow = shapes::walking_arrow();
  g.cofibrations.push_back(make_functor(shapes::empty(), pt, {}, {}));
  g.cofibrations.push_back(make_functor(shapes::discrete({"a", "b"}), arrow, {{"a", "a"}, {"b", "b"}},
                                        {{"id_a", "id_a"}, {"id_b", "id_b"}}));
  g.cofibrations.push_back(make_functor(shapes::parallel_pair(), arrow, {{"a", "a"}, {"b", "b"}},
                                        {{"f", "f"}, {"g", "f"}}));
  g.acyclic_cofibrations.push_back(make_functor(pt, shapes::walking_iso(), {{"*", "0"}}, {{"id", "0>0"}}));
  return g;
}

GeneratingSetCheck cross_validate(const GeneratingSets& sets, const std::vector<CatRef>& categories,
                                  const SearchBudget& budget) {
  GeneratingSetCheck out;
  for (const auto& x : categories)
    for (const auto& y : categories)
      for (const auto& p : enumerate_functors(x, y, budget)) {
        ++out.functors;
        const bool iso = is_isofibration(p);
        const bool acyc = is_acyclic_fibration(p);
        out.isofibrations += iso;
        out.acyclic_fibrations += acyc;
        const bool rj = has_rlp(sets.acyclic_cofibrations, p, budget);
        const bool ri = has_rlp(sets.cofibrations, p, budget);
        auto describe = [&] {
          std::string s;
          for (std::size_t o = 0; o < p.obj_map.size(); ++o)
            s += (o ? "," : "") + x->object_name(static_cast<Ob>(o)) + "->" + y->object_name(p.obj_map[o]);
          return "functor {" + s + "}";
        };
        if (rj != iso) out.discrepancies.push_back(describe() + ": rlp(J) = " + (rj ? "true" : "false") + " but isofibration = " + (iso ? "true" : "false"));
        if (ri != acyc) out.discrepancies.push_back(describe() + ": rlp(I) = " + (ri ? "true" : "false") + " but acyclic fibration = " + (acyc ? "true" : "false"));
      }
  return out;
}

// ---- small object argument ----------------------------------------------------------------

bool diagram_lift_exists(const DiagramMap& i, const DiagramMap& p, const DiagramMap& top, const DiagramMap& bottom,
                         const SearchBudget& budget) {
  bool found = false;
  search_maps(i.target, p.source, [&](const DiagramMap& d) {
    if (compose(d, i).components == top.components && compose(p, d).components == bottom.components) found = true;
    return !found;
  }, budget);
  return found;
}

namespace {

struct Stage {
  DiagRef next;
  DiagramMap step;       // Z -> Z'
  DiagramMap remainder;  // Z' -> Y
};

// Squares from each generator to r : Z -> Y without a diagonal.
std::vector<CellAttachment> unsolved_squares(const std::vector<DiagramMap>& gens, const DiagramMap& r,
                                             const SearchBudget& budget) {
  std::vector<CellAttachment> out;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const DiagramMap& i = gens[k];
    const auto bottoms = enumerate_maps(i.target, r.target, budget);
    for (const auto& top : enumerate_maps(i.source, r.source, budget)) {
      const DiagramMap rt = compose(r, top);
      for (const auto& bottom : bottoms) {
        if (compose(bottom, i).components != rt.components) continue;
        if (!diagram_lift_exists(i, r, top, bottom, budget)) out.push_back({k, top, bottom});
      }
    }
  }
  return out;
}

Stage attach(const std::vector<DiagramMap>& gens, const std::vector<CellAttachment>& cells, const DiagramMap& r,
             std::size_t stage) {
  std::vector<DiagRef> as, bs;
  std::vector<std::string> tags;
  for (std::size_t s = 0; s < cells.size(); ++s) {
    as.push_back(gens[cells[s].generator].source);
    bs.push_back(gens[cells[s].generator].target);
    tags.push_back("s" + std::to_string(s));
  }
  const CoproductDiagram ca = coproduct(as, tags);
  const CoproductDiagram cb = coproduct(bs, tags);
  const FiniteCategory& shape = *r.source->shape;
  const std::size_t n = shape.num_objects();
  DiagramMap ci{ca.diagram, cb.diagram, std::vector<std::vector<int>>(n)};
  DiagramMap attaching{ca.diagram, r.source, std::vector<std::vector<int>>(n)};
  for (Ob x = 0; x < static_cast<Ob>(n); ++x) {
    ci.components[x].assign(ca.diagram->sets[x].size(), -1);
    attaching.components[x].assign(ca.diagram->sets[x].size(), -1);
    for (std::size_t s = 0; s < cells.size(); ++s) {
      const DiagramMap& i = gens[cells[s].generator];
      for (std::size_t e = 0; e < i.source->sets[x].size(); ++e) {
        const int at = ca.injections[s].components[x][e];
        ci.components[x][at] = cb.injections[s].components[x][i.components[x][e]];
        attaching.components[x][at] = cells[s].top.components[x][e];
      }
    }
  }
  const PushoutDiagram po = pushout(ci, attaching, "c" + std::to_string(stage) + ".");
  DiagramMap rem{po.diagram, r.target, std::vector<std::vector<int>>(n)};
  for (Ob x = 0; x < static_cast<Ob>(n); ++x) {
    rem.components[x].assign(po.diagram->sets[x].size(), -1);
    for (std::size_t z = 0; z < r.source->sets[x].size(); ++z)
      rem.components[x][po.from_c.components[x][z]] = r.components[x][z];
    for (std::size_t s = 0; s < cells.size(); ++s) {
      const DiagramMap& i = gens[cells[s].generator];
      for (std::size_t e = 0; e < i.target->sets[x].size(); ++e)
        rem.components[x][po.from_b.components[x][cb.injections[s].components[x][e]]] = cells[s].bottom.components[x][e];
    }
  }
  return {po.diagram, po.from_c, rem};
}

}  // namespace

FactorizationResult bounded_soa(const std::vector<DiagramMap>& generators, const DiagramMap& f,
                                std::size_t max_stages, const SearchBudget& budget) {
  for (const auto& g : generators)
    if (!(*g.source->shape == *f.source->shape)) throw InputError("soa: generators over a different shape");
  FactorizationResult r;
  r.intermediate = f.source;
  r.left = identity_map(f.source);
  r.right = f;
  for (;;) {
    auto cells = unsolved_squares(generators, r.right, budget);
    if (cells.empty()) {
      r.saturated = true;
      break;
    }
    if (r.stages == max_stages) break;
    ++r.stages;
    Stage s = attach(generators, cells, r.right, r.stages);
    r.left = compose(s.step, r.left);
    r.intermediate = s.next;
    r.right = s.remainder;
    r.stage_maps.push_back(s.step);
    r.cells.push_back(std::move(cells));
  }
  return r;
}

ValidationReport validate_factorization(const std::vector<DiagramMap>& generators, const DiagramMap& f,
                                        const FactorizationResult& r) {
  ValidationReport rep;
  if (r.cells.size() != r.stages || r.stage_maps.size() != r.stages) {
    rep.add("cell record has the wrong number of stages");
    return rep;
  }
  DiagramMap rem = f;
  DiagramMap left = identity_map(f.source);
  for (std::size_t k = 0; k < r.stages; ++k) {
    const std::string where = "stage " + std::to_string(k + 1) + ": ";
    for (const auto& cell : r.cells[k]) {
      if (cell.generator >= generators.size()) {
        rep.add(where + "unknown generator");
        return rep;
      }
      const DiagramMap& i = generators[cell.generator];
      if (!validate_map(cell.top).ok() || !validate_map(cell.bottom).ok() ||
          compose(rem, cell.top).components != compose(cell.bottom, i).components)
        rep.add(where + "attaching square does not commute");
    }
    if (!rep.ok()) return rep;
    const Stage s = attach(generators, r.cells[k], rem, k + 1);
    if (!(s.step == r.stage_maps[k])) rep.add(where + "stage map is not the pushout of its cells");
    left = compose(s.step, left);
    rem = s.remainder;
  }
  if (!(left == r.left)) rep.add("left factor is not the composite of the stage maps");
  if (!(rem == r.right)) rep.add("right factor differs from the recomputed remainder");
  if (!(compose(r.right, r.left) == f)) rep.add("factors do not recompose to the input map");
  if (!validate_map(r.left).ok() || !validate_map(r.right).ok()) rep.add("factor is not a natural map");
  return rep;
}

}  // namespace catkit
