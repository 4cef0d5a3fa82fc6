#include "catkit/invcat.hpp"

#include <map>
#include <set>

namespace catkit {

ValidationReport validate_involutive(const InvolutiveCategory& x) {
  ValidationReport r;
  if (!x.base || !x.base_op) {
    r.add("missing base category");
    return r;
  }
  if (!(*x.base_op == opposite(*x.base))) r.add("base_op is not the opposite of base");
  if (!(*x.tau.dom == *x.base_op) || !(*x.tau.cod == *x.base)) {
    r.add("tau must be a functor from the opposite to the base");
    return r;
  }
  r.merge(validate_functor(x.tau), "tau: ");
  if (!r.ok()) return r;
  const FiniteCategory& c = *x.base;
  for (Ob o = 0; o < static_cast<Ob>(c.num_objects()); ++o)
    if (x.tau_object(x.tau_object(o)) != o) r.add("tau is not an involution at object " + c.object_name(o));
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m)
    if (x.tau_morphism(x.tau_morphism(m)) != m) r.add("tau is not an involution at morphism " + c.morphism_name(m));
  return r;
}

InvolutiveCategory make_involutive(CatRef base, CatFunctor tau) {
  InvolutiveCategory x;
  x.base = std::move(base);
  x.base_op = tau.dom;
  x.tau = std::move(tau);
  return x;
}

InvolutiveCategory make_involutive(CatRef base, const std::vector<std::pair<std::string, std::string>>& objects,
                                   const std::vector<std::pair<std::string, std::string>>& morphisms) {
  auto op = opposite(base);
  return make_involutive(base, make_functor(op, base, objects, morphisms));
}

namespace {

bool involutive(const CatFunctor& tau) {
  for (std::size_t o = 0; o < tau.obj_map.size(); ++o)
    if (tau.obj_map[tau.obj_map[o]] != static_cast<Ob>(o)) return false;
  for (std::size_t m = 0; m < tau.mor_map.size(); ++m)
    if (tau.mor_map[tau.mor_map[m]] != static_cast<Mor>(m)) return false;
  return true;
}

}  // namespace

std::vector<InvolutiveCategory> enumerate_involutions(const CatRef& base, const SearchBudget& budget) {
  auto op = opposite(base);
  FunctorConstraints cons;
  cons.accept = involutive;
  std::vector<InvolutiveCategory> out;
  search_functors(op, base, cons, [&](const CatFunctor& tau) {
    out.push_back(make_involutive(base, tau));
    return true;
  }, budget);
  return out;
}

bool is_dagger(const InvolutiveCategory& x) {
  for (Ob o = 0; o < static_cast<Ob>(x.base->num_objects()); ++o)
    if (x.tau_object(o) != o) return false;
  return true;
}

bool is_equivariant(const InvolutiveCategory& src, const InvolutiveCategory& tgt, const CatFunctor& f) {
  for (Ob o = 0; o < static_cast<Ob>(src.base->num_objects()); ++o)
    if (tgt.tau_object(f.on_object(o)) != f.on_object(src.tau_object(o))) return false;
  for (Mor m = 0; m < static_cast<Mor>(src.base->num_morphisms()); ++m)
    if (tgt.tau_morphism(f.on_morphism(m)) != f.on_morphism(src.tau_morphism(m))) return false;
  return true;
}

ValidationReport validate_equivariant(const EquivariantFunctor& f) {
  ValidationReport r = validate_functor(f.f);
  if (!r.ok()) return r;
  if (!(*f.f.dom == *f.source.base) || !(*f.f.cod == *f.target.base)) {
    r.add("functor does not match the involutive categories");
    return r;
  }
  const FiniteCategory& c = *f.source.base;
  for (Ob o = 0; o < static_cast<Ob>(c.num_objects()); ++o)
    if (f.target.tau_object(f.f.on_object(o)) != f.f.on_object(f.source.tau_object(o)))
      r.add("not equivariant at object " + c.object_name(o));
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m)
    if (f.target.tau_morphism(f.f.on_morphism(m)) != f.f.on_morphism(f.source.tau_morphism(m)))
      r.add("not equivariant at morphism " + c.morphism_name(m));
  return r;
}

std::vector<EquivariantFunctor> enumerate_equivariant(const InvolutiveCategory& src, const InvolutiveCategory& tgt,
                                                      const SearchBudget& budget) {
  FunctorConstraints cons;
  cons.accept = [&](const CatFunctor& f) { return is_equivariant(src, tgt, f); };
  std::vector<EquivariantFunctor> out;
  search_functors(src.base, tgt.base, cons, [&](const CatFunctor& f) {
    out.push_back({src, tgt, f});
    return true;
  }, budget);
  return out;
}

EquivariantFunctor compose(const EquivariantFunctor& g, const EquivariantFunctor& f) {
  return {f.source, g.target, compose(g.f, f.f)};
}

EquivariantFunctor identity_equivariant(const InvolutiveCategory& x) { return {x, x, identity_functor(x.base)}; }

// ---- L and R -----------------------------------------------------------------

namespace {

// Which summand and which element of X each index of X ⊔ X^op comes from.
struct Sides {
  std::vector<std::pair<int, int>> obj;  // (side, index)
  std::vector<std::pair<int, int>> mor;
};

Sides sides(const CoproductResult& cp) {
  Sides s;
  s.obj.resize(cp.category->num_objects());
  s.mor.resize(cp.category->num_morphisms());
  for (std::size_t o = 0; o < cp.inl.obj_map.size(); ++o) s.obj[cp.inl.obj_map[o]] = {0, static_cast<int>(o)};
  for (std::size_t o = 0; o < cp.inr.obj_map.size(); ++o) s.obj[cp.inr.obj_map[o]] = {1, static_cast<int>(o)};
  for (std::size_t m = 0; m < cp.inl.mor_map.size(); ++m) s.mor[cp.inl.mor_map[m]] = {0, static_cast<int>(m)};
  for (std::size_t m = 0; m < cp.inr.mor_map.size(); ++m) s.mor[cp.inr.mor_map[m]] = {1, static_cast<int>(m)};
  return s;
}

CoproductResult l_coproduct(const CatRef& x) { return coproduct(x, opposite(x)); }

}  // namespace

InvolutiveCategory L_inv(const CatRef& x) {
  const CoproductResult cp = l_coproduct(x);
  const Sides s = sides(cp);
  auto op = opposite(cp.category);
  CatFunctor tau{op, cp.category, {}, {}};
  for (const auto& [side, o] : s.obj) tau.obj_map.push_back(side == 0 ? cp.inr.obj_map[o] : cp.inl.obj_map[o]);
  for (const auto& [side, m] : s.mor) tau.mor_map.push_back(side == 0 ? cp.inr.mor_map[m] : cp.inl.mor_map[m]);
  return make_involutive(cp.category, std::move(tau));
}

InvolutiveCategory R_inv(const CatRef& x) {
  const ProductResult pr = product(x, opposite(x));
  const FiniteCategory& p = *pr.category;
  std::map<std::pair<int, int>, int> obj, mor;
  for (Ob o = 0; o < static_cast<Ob>(p.num_objects()); ++o) obj[{pr.proj1.obj_map[o], pr.proj2.obj_map[o]}] = o;
  for (Mor m = 0; m < static_cast<Mor>(p.num_morphisms()); ++m) mor[{pr.proj1.mor_map[m], pr.proj2.mor_map[m]}] = m;
  CatFunctor tau{opposite(pr.category), pr.category, {}, {}};
  for (Ob o = 0; o < static_cast<Ob>(p.num_objects()); ++o)
    tau.obj_map.push_back(obj.at({pr.proj2.obj_map[o], pr.proj1.obj_map[o]}));
  for (Mor m = 0; m < static_cast<Mor>(p.num_morphisms()); ++m)
    tau.mor_map.push_back(mor.at({pr.proj2.mor_map[m], pr.proj1.mor_map[m]}));
  return make_involutive(pr.category, std::move(tau));
}

EquivariantFunctor L_inv(const CatFunctor& f) {
  const CoproductResult cx = l_coproduct(f.dom);
  const CoproductResult cy = l_coproduct(f.cod);
  const Sides s = sides(cx);
  EquivariantFunctor out{L_inv(f.dom), L_inv(f.cod), {}};
  out.f = CatFunctor{out.source.base, out.target.base, {}, {}};
  for (const auto& [side, o] : s.obj) out.f.obj_map.push_back((side == 0 ? cy.inl : cy.inr).obj_map[f.on_object(o)]);
  for (const auto& [side, m] : s.mor) out.f.mor_map.push_back((side == 0 ? cy.inl : cy.inr).mor_map[f.on_morphism(m)]);
  return out;
}

EquivariantFunctor R_inv(const CatFunctor& f) {
  EquivariantFunctor out{R_inv(f.dom), R_inv(f.cod), {}};
  const ProductResult px = product(f.dom, opposite(f.dom));
  const ProductResult py = product(f.cod, opposite(f.cod));
  std::map<std::pair<int, int>, int> obj, mor;
  for (Ob o = 0; o < static_cast<Ob>(py.category->num_objects()); ++o) obj[{py.proj1.obj_map[o], py.proj2.obj_map[o]}] = o;
  for (Mor m = 0; m < static_cast<Mor>(py.category->num_morphisms()); ++m)
    mor[{py.proj1.mor_map[m], py.proj2.mor_map[m]}] = m;
  out.f = CatFunctor{out.source.base, out.target.base, {}, {}};
  for (Ob o = 0; o < static_cast<Ob>(px.category->num_objects()); ++o)
    out.f.obj_map.push_back(obj.at({f.on_object(px.proj1.obj_map[o]), f.on_object(px.proj2.obj_map[o])}));
  for (Mor m = 0; m < static_cast<Mor>(px.category->num_morphisms()); ++m)
    out.f.mor_map.push_back(mor.at({f.on_morphism(px.proj1.mor_map[m]), f.on_morphism(px.proj2.mor_map[m])}));
  return out;
}

CatRef forget_inv(const InvolutiveCategory& x) { return x.base; }

EquivariantFunctor left_transpose(const CatFunctor& f, const InvolutiveCategory& y) {
  const CoproductResult cx = l_coproduct(f.dom);
  const Sides s = sides(cx);
  EquivariantFunctor out{L_inv(f.dom), y, {}};
  out.f = CatFunctor{out.source.base, y.base, {}, {}};
  for (const auto& [side, o] : s.obj)
    out.f.obj_map.push_back(side == 0 ? f.on_object(o) : y.tau_object(f.on_object(o)));
  for (const auto& [side, m] : s.mor)
    out.f.mor_map.push_back(side == 0 ? f.on_morphism(m) : y.tau_morphism(f.on_morphism(m)));
  return out;
}

EquivariantFunctor right_transpose(const InvolutiveCategory& x, const CatFunctor& g) {
  EquivariantFunctor out{x, R_inv(g.cod), {}};
  const ProductResult py = product(g.cod, opposite(g.cod));
  std::map<std::pair<int, int>, int> obj, mor;
  for (Ob o = 0; o < static_cast<Ob>(py.category->num_objects()); ++o) obj[{py.proj1.obj_map[o], py.proj2.obj_map[o]}] = o;
  for (Mor m = 0; m < static_cast<Mor>(py.category->num_morphisms()); ++m)
    mor[{py.proj1.mor_map[m], py.proj2.mor_map[m]}] = m;
  out.f = CatFunctor{x.base, out.target.base, {}, {}};
  for (Ob o = 0; o < static_cast<Ob>(x.base->num_objects()); ++o)
    out.f.obj_map.push_back(obj.at({g.on_object(o), g.on_object(x.tau_object(o))}));
  for (Mor m = 0; m < static_cast<Mor>(x.base->num_morphisms()); ++m)
    out.f.mor_map.push_back(mor.at({g.on_morphism(m), g.on_morphism(x.tau_morphism(m))}));
  return out;
}

InvAdjunctionReport check_inv_adjunctions(const std::vector<CatRef>& cats, const std::vector<InvolutiveCategory>& invs,
                                          const SearchBudget& budget) {
  InvAdjunctionReport rep;
  auto fail = [&](const std::string& s) {
    if (rep.problems.violations.size() < 64) rep.problems.add(s);
  };
  auto label = [](const char* kind, std::size_t a, std::size_t b) {
    return std::string(kind) + " (" + std::to_string(a) + "," + std::to_string(b) + ")";
  };

  // L ⊣ F.
  for (std::size_t xi = 0; xi < cats.size(); ++xi) {
    const CatRef& x = cats[xi];
    const InvolutiveCategory lx = L_inv(x);
    const CoproductResult cp = l_coproduct(x);
    for (std::size_t yi = 0; yi < invs.size(); ++yi) {
      const InvolutiveCategory& y = invs[yi];
      ++rep.pairs;
      const std::string where = label("L pair", xi, yi);
      std::set<std::vector<int>> seen;
      const auto fs = enumerate_functors(x, y.base, budget);
      for (const auto& f : fs) {
        ++rep.functors_transposed;
        const EquivariantFunctor t = left_transpose(f, y);
        if (!validate_equivariant(t).ok()) fail(where + ": transpose is not an equivariant functor");
        if (!(compose(t.f, cp.inl) == f)) fail(where + ": restriction to X does not recover f");
        std::vector<int> key = t.f.obj_map;
        key.insert(key.end(), t.f.mor_map.begin(), t.f.mor_map.end());
        seen.insert(std::move(key));
      }
      if (seen.size() != fs.size()) fail(where + ": transpose is not injective");
      const std::size_t n = enumerate_equivariant(lx, y, budget).size();
      if (n != fs.size())
        fail(where + ": " + std::to_string(n) + " equivariant functors LX->Y but " + std::to_string(fs.size()) +
             " functors X->FY");
    }
  }
  // Naturality of the L-transpose.
  for (std::size_t a = 0; a < cats.size(); ++a)
    for (std::size_t b = 0; b < cats.size(); ++b)
      for (const auto& u : enumerate_functors(cats[a], cats[b], budget)) {
        const EquivariantFunctor lu = L_inv(u);
        for (const auto& y : invs)
          for (const auto& f : enumerate_functors(cats[b], y.base, budget)) {
            ++rep.naturality_checks;
            if (!(left_transpose(compose(f, u), y).f == compose(left_transpose(f, y).f, lu.f)))
              fail(label("L naturality in X", a, b));
          }
      }
  for (std::size_t a = 0; a < invs.size(); ++a)
    for (std::size_t b = 0; b < invs.size(); ++b)
      for (const auto& v : enumerate_equivariant(invs[a], invs[b], budget))
        for (const auto& x : cats)
          for (const auto& f : enumerate_functors(x, invs[a].base, budget)) {
            ++rep.naturality_checks;
            if (!(left_transpose(compose(v.f, f), invs[b]).f == compose(v.f, left_transpose(f, invs[a]).f)))
              fail(label("L naturality in Y", a, b));
          }

  // F ⊣ R.
  for (std::size_t xi = 0; xi < invs.size(); ++xi) {
    const InvolutiveCategory& x = invs[xi];
    for (std::size_t yi = 0; yi < cats.size(); ++yi) {
      const CatRef& y = cats[yi];
      ++rep.pairs;
      const std::string where = label("R pair", xi, yi);
      const InvolutiveCategory ry = R_inv(y);
      const ProductResult py = product(y, opposite(y));
      std::set<std::vector<int>> seen;
      const auto gs = enumerate_functors(x.base, y, budget);
      for (const auto& g : gs) {
        ++rep.functors_transposed;
        const EquivariantFunctor t = right_transpose(x, g);
        if (!validate_equivariant(t).ok()) fail(where + ": transpose is not an equivariant functor");
        if (!(compose(py.proj1, t.f) == g)) fail(where + ": first projection does not recover g");
        std::vector<int> key = t.f.obj_map;
        key.insert(key.end(), t.f.mor_map.begin(), t.f.mor_map.end());
        seen.insert(std::move(key));
      }
      if (seen.size() != gs.size()) fail(where + ": transpose is not injective");
      const std::size_t n = enumerate_equivariant(x, ry, budget).size();
      if (n != gs.size())
        fail(where + ": " + std::to_string(n) + " equivariant functors X->RY but " + std::to_string(gs.size()) +
             " functors FX->Y");
    }
  }
  for (std::size_t a = 0; a < invs.size(); ++a)
    for (std::size_t b = 0; b < invs.size(); ++b)
      for (const auto& v : enumerate_equivariant(invs[a], invs[b], budget))
        for (const auto& y : cats)
          for (const auto& g : enumerate_functors(invs[b].base, y, budget)) {
            ++rep.naturality_checks;
            if (!(right_transpose(invs[a], compose(g, v.f)).f == compose(right_transpose(invs[b], g).f, v.f)))
              fail(label("R naturality in X", a, b));
          }
  for (std::size_t a = 0; a < cats.size(); ++a)
    for (std::size_t b = 0; b < cats.size(); ++b)
      for (const auto& u : enumerate_functors(cats[a], cats[b], budget)) {
        const EquivariantFunctor ru = R_inv(u);
        for (const auto& x : invs)
          for (const auto& g : enumerate_functors(x.base, cats[a], budget)) {
            ++rep.naturality_checks;
            if (!(right_transpose(x, compose(u, g)).f == compose(ru.f, right_transpose(x, g).f)))
              fail(label("R naturality in Y", a, b));
          }
      }
  return rep;
}

// ---- cofibrations --------------------------------------------------------------------

bool is_inv_cofibration(const EquivariantFunctor& f) {
  if (!is_injective_on_objects(f.f)) return false;
  std::vector<char> hit(f.target.base->num_objects(), 0);
  for (Ob o : f.f.obj_map) hit[o] = 1;
  for (Ob y = 0; y < static_cast<Ob>(hit.size()); ++y)
    if (!hit[y] && f.target.tau_object(y) == y) return false;
  return true;
}

std::vector<EquivariantFunctor> acyclic_fibrations(const std::vector<InvolutiveCategory>& corpus,
                                                   const SearchBudget& budget) {
  std::vector<EquivariantFunctor> out;
  for (const auto& x : corpus)
    for (const auto& y : corpus)
      for (auto& p : enumerate_equivariant(x, y, budget))
        if (is_equivalence(p.f) && is_isofibration(p.f)) out.push_back(std::move(p));
  return out;
}

bool has_inv_llp(const EquivariantFunctor& i, const std::vector<EquivariantFunctor>& tests, const SearchBudget& budget) {
  const FiniteCategory& a = *i.source.base;
  for (const auto& p : tests) {
    const FiniteCategory& x = *p.source.base;
    for (const auto& bottom : enumerate_equivariant(i.target, p.target, budget)) {
      FunctorConstraints cons;
      cons.objects.resize(a.num_objects());
      cons.morphisms.resize(a.num_morphisms());
      for (Ob o = 0; o < static_cast<Ob>(a.num_objects()); ++o) {
        std::vector<Ob> c;
        for (Ob t = 0; t < static_cast<Ob>(x.num_objects()); ++t)
          if (p.f.on_object(t) == bottom.f.on_object(i.f.on_object(o))) c.push_back(t);
        cons.objects[o] = std::move(c);
      }
      for (Mor m = 0; m < static_cast<Mor>(a.num_morphisms()); ++m) {
        std::vector<Mor> c;
        for (Mor t = 0; t < static_cast<Mor>(x.num_morphisms()); ++t)
          if (p.f.on_morphism(t) == bottom.f.on_morphism(i.f.on_morphism(m))) c.push_back(t);
        cons.morphisms[m] = std::move(c);
      }
      cons.accept = [&](const CatFunctor& top) { return is_equivariant(i.source, p.source, top); };
      bool unliftable = false;
      search_functors(i.source.base, p.source.base, cons, [&](const CatFunctor& top) {
        auto lc = lifting_constraints(i.f, p.f, top, bottom.f);
        bool found = false;
        if (lc) {
          lc->accept = [&](const CatFunctor& d) { return is_equivariant(i.target, p.source, d); };
          search_functors(i.target.base, p.source.base, *lc, [&](const CatFunctor&) {
            found = true;
            return false;
          }, budget);
        }
        unliftable = !found;
        return !unliftable;
      }, budget);
      if (unliftable) return false;
    }
  }
  return true;
}

// ---- dagger categories -----------------------------------------------------------------

DaggerCoreflection dagger_R(const InvolutiveCategory& x) {
  const FiniteCategory& c = *x.base;
  std::vector<Ob> fixed;
  for (Ob o = 0; o < static_cast<Ob>(c.num_objects()); ++o)
    if (x.tau_object(o) == o) fixed.push_back(o);
  auto sub = std::make_shared<const FiniteCategory>(full_subcategory(c, fixed));
  auto sub_op = opposite(sub);
  CatFunctor tau{sub_op, sub, {}, {}};
  for (Ob o = 0; o < static_cast<Ob>(sub->num_objects()); ++o) tau.obj_map.push_back(o);
  for (Mor m = 0; m < static_cast<Mor>(sub->num_morphisms()); ++m)
    tau.mor_map.push_back(sub->morphism(c.morphism_name(x.tau_morphism(c.morphism(sub->morphism_name(m))))));
  DaggerCoreflection out;
  out.dagger = make_involutive(sub, std::move(tau));
  out.counit = EquivariantFunctor{out.dagger, x, inclusion(sub, x.base)};
  return out;
}

CatFunctor dagger_R(const EquivariantFunctor& f) {
  const DaggerCoreflection rx = dagger_R(f.source);
  const DaggerCoreflection ry = dagger_R(f.target);
  const FiniteCategory& a = *rx.dagger.base;
  const FiniteCategory& b = *ry.dagger.base;
  CatFunctor g{rx.dagger.base, ry.dagger.base, {}, {}};
  for (Ob o = 0; o < static_cast<Ob>(a.num_objects()); ++o)
    g.obj_map.push_back(b.object(f.target.base->object_name(f.f.on_object(f.source.base->object(a.object_name(o))))));
  for (Mor m = 0; m < static_cast<Mor>(a.num_morphisms()); ++m)
    g.mor_map.push_back(
        b.morphism(f.target.base->morphism_name(f.f.on_morphism(f.source.base->morphism(a.morphism_name(m))))));
  return g;
}

namespace {

// Involution of an indiscrete category induced by an object permutation.
InvolutiveCategory indiscrete_involution(const CatRef& c, const std::map<std::string, std::string>& swap) {
  auto t = [&](const std::string& s) {
    auto it = swap.find(s);
    return it == swap.end() ? s : it->second;
  };
  std::vector<std::pair<std::string, std::string>> obj, mor;
  for (const auto& a : c->object_names()) {
    obj.emplace_back(a, t(a));
    for (const auto& b : c->object_names()) mor.emplace_back(a + ">" + b, t(b) + ">" + t(a));
  }
  return make_involutive(c, obj, mor);
}

}  // namespace

DaggerCounterexample dagger_counterexample(DaggerVariant v) {
  auto xc = shapes::indiscrete({"x", "x'", "y"});
  const bool swap_target = v == DaggerVariant::SwapTarget;
  auto yc = swap_target ? shapes::indiscrete({"y", "z", "z'"}) : shapes::indiscrete({"y", "z"});
  const bool trivial = v == DaggerVariant::TrivialInvolutions;
  auto x = indiscrete_involution(xc, trivial ? std::map<std::string, std::string>{}
                                             : std::map<std::string, std::string>{{"x", "x'"}, {"x'", "x"}});
  auto y = indiscrete_involution(yc, swap_target ? std::map<std::string, std::string>{{"z", "z'"}, {"z'", "z"}}
                                                 : std::map<std::string, std::string>{});
  std::map<std::string, std::string> pobj = {{"x", "z"}, {"x'", swap_target ? "z'" : "z"}, {"y", "y"}};
  std::vector<std::pair<std::string, std::string>> obj(pobj.begin(), pobj.end()), mor;
  for (const auto& [a, pa] : pobj)
    for (const auto& [b, pb] : pobj) mor.emplace_back(a + ">" + b, pa + ">" + pb);
  DaggerCounterexample out;
  out.p = EquivariantFunctor{x, y, make_functor(xc, yc, obj, mor)};
  if (!validate_equivariant(out.p).ok()) throw InternalError("counterexample functor is not equivariant");
  out.rp = dagger_R(out.p);
  out.p_isofib = is_isofibration(out.p.f);
  out.rp_isofib = is_isofibration(out.rp);
  return out;
}

}  // namespace catkit
