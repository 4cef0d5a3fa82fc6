#include "catkit/setval.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "catkit/detail/disjoint_set.hpp"

namespace catkit {

namespace {

constexpr std::size_t kMaxReported = 64;

// Sorting permutation: order[i] is the old index of the i-th smallest name.
std::vector<int> sort_order(const std::vector<std::string>& names) {
  std::vector<int> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return names[a] < names[b]; });
  return order;
}

std::vector<int> invert(const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  return pos;
}

std::string tuple_name(const std::vector<std::string>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  return s + ")";
}

bool same_shape(const SetDiagram& a, const SetDiagram& b) {
  return a.shape == b.shape || (a.shape && b.shape && *a.shape == *b.shape);
}

// First disagreement between two maps with the same source, as a message.
std::optional<std::string> difference(const DiagramMap& f, const DiagramMap& g) {
  const SetDiagram& a = *f.source;
  const FiniteCategory& c = *a.shape;
  if (f.components.size() != g.components.size()) return "maps have different shapes";
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) {
    if (f.components[x].size() != g.components[x].size()) return "object " + c.object_name(x) + ": size mismatch";
    for (std::size_t e = 0; e < f.components[x].size(); ++e) {
      if (f.components[x][e] != g.components[x][e]) {
        const auto& tf = f.target->sets[x];
        const auto& tg = g.target->sets[x];
        return "object " + c.object_name(x) + ", element " + a.sets[x][e] + ": " + tf[f.components[x][e]] +
               " vs " + tg[g.components[x][e]];
      }
    }
  }
  return std::nullopt;
}

}  // namespace

// ---- SetDiagram -----------------------------------------------------------------

std::size_t SetDiagram::total_elements() const {
  std::size_t n = 0;
  for (const auto& s : sets) n += s.size();
  return n;
}

int SetDiagram::element(Ob x, std::string_view name) const {
  const auto& s = sets.at(x);
  auto it = std::lower_bound(s.begin(), s.end(), name, [](const std::string& a, std::string_view b) { return a < b; });
  if (it == s.end() || *it != name)
    throw InputError("no element '" + std::string(name) + "' at object '" + shape->object_name(x) + "'");
  return static_cast<int>(it - s.begin());
}

bool operator==(const SetDiagram& a, const SetDiagram& b) {
  return same_shape(a, b) && a.sets == b.sets && a.maps == b.maps;
}

DiagramBuilder::DiagramBuilder(CatRef shape)
    : shape_(std::move(shape)), sets_(shape_->num_objects()), maps_(shape_->num_morphisms()) {}

DiagramBuilder& DiagramBuilder::set(const std::string& object, std::vector<std::string> elements) {
  sets_[shape_->object(object)] = std::move(elements);
  return *this;
}

DiagramBuilder& DiagramBuilder::map(const std::string& morphism, const std::string& from, const std::string& to) {
  maps_[shape_->morphism(morphism)].emplace_back(from, to);
  return *this;
}

SetDiagram DiagramBuilder::build() const {
  const FiniteCategory& c = *shape_;
  SetDiagram d;
  d.shape = shape_;
  d.sets = sets_;
  for (auto& s : d.sets) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InputError("diagram: duplicate element '" + *std::adjacent_find(s.begin(), s.end()) + "'");
  }
  d.maps.resize(c.num_morphisms());
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    const Ob x = c.source(m), y = c.target(m);
    auto& fn = d.maps[m];
    fn.assign(d.sets[x].size(), -1);
    if (c.is_identity(m) && maps_[m].empty()) {
      std::iota(fn.begin(), fn.end(), 0);
      continue;
    }
    for (const auto& [from, to] : maps_[m]) {
      const int e = d.element(x, from);
      const int v = d.element(y, to);
      if (fn[e] >= 0 && fn[e] != v)
        throw InputError("diagram: morphism '" + c.morphism_name(m) + "' maps '" + from + "' twice");
      fn[e] = v;
    }
    for (std::size_t e = 0; e < fn.size(); ++e)
      if (fn[e] < 0)
        throw InputError("diagram: morphism '" + c.morphism_name(m) + "' undefined on '" + d.sets[x][e] + "'");
  }
  return d;
}

SetDiagram normalize_diagram(CatRef shape, std::vector<std::vector<std::string>> sets,
                             std::vector<std::vector<int>> maps) {
  const FiniteCategory& c = *shape;
  std::vector<std::vector<int>> order(sets.size()), pos(sets.size());
  SetDiagram d;
  d.shape = std::move(shape);
  d.sets.resize(sets.size());
  for (std::size_t x = 0; x < sets.size(); ++x) {
    order[x] = sort_order(sets[x]);
    pos[x] = invert(order[x]);
    for (int i : order[x]) d.sets[x].push_back(std::move(sets[x][i]));
  }
  d.maps.resize(maps.size());
  for (Mor m = 0; m < static_cast<Mor>(maps.size()); ++m) {
    const Ob x = c.source(m), y = c.target(m);
    auto& fn = d.maps[m];
    fn.resize(maps[m].size());
    for (std::size_t i = 0; i < fn.size(); ++i) fn[i] = pos[y][maps[m][order[x][i]]];
  }
  return d;
}

ValidationReport validate_diagram(const SetDiagram& d) {
  ValidationReport r;
  if (!d.shape) {
    r.add("diagram has no shape");
    return r;
  }
  const FiniteCategory& c = *d.shape;
  if (d.sets.size() != c.num_objects() || d.maps.size() != c.num_morphisms()) {
    r.add("diagram sizes do not match the shape");
    return r;
  }
  std::size_t count = 0;
  auto note = [&](std::string s) {
    if (count++ < kMaxReported) r.add(std::move(s));
  };
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) {
    const auto& s = d.sets[x];
    for (std::size_t i = 1; i < s.size(); ++i)
      if (!(s[i - 1] < s[i])) note("object " + c.object_name(x) + ": elements not strictly sorted");
  }
  bool shaped = true;
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    const auto& fn = d.maps[m];
    const std::size_t ns = d.sets[c.source(m)].size(), nt = d.sets[c.target(m)].size();
    if (fn.size() != ns) {
      note("morphism " + c.morphism_name(m) + ": function has wrong domain size");
      shaped = false;
      continue;
    }
    for (std::size_t e = 0; e < ns; ++e) {
      if (fn[e] < 0 || static_cast<std::size_t>(fn[e]) >= nt) {
        note("morphism " + c.morphism_name(m) + ": value out of range");
        shaped = false;
        break;
      }
      if (c.is_identity(m) && fn[e] != static_cast<int>(e))
        note("identity " + c.morphism_name(m) + " is not the identity function at " + d.sets[c.source(m)][e]);
    }
  }
  if (shaped) {
    for (Mor g = 0; g < static_cast<Mor>(c.num_morphisms()); ++g) {
      for (Mor f : c.incoming(c.source(g))) {
        const Mor h = c.compose(g, f);
        for (std::size_t e = 0; e < d.maps[f].size(); ++e) {
          if (d.maps[h][e] != d.maps[g][d.maps[f][e]]) {
            note("composite " + c.morphism_name(g) + " o " + c.morphism_name(f) + " not preserved at " +
                 d.sets[c.source(f)][e]);
            break;
          }
        }
      }
    }
  }
  if (count > r.violations.size()) r.add("... and " + std::to_string(count - r.violations.size()) + " more");
  return r;
}

SetDiagram empty_diagram(CatRef shape) {
  SetDiagram d;
  d.sets.assign(shape->num_objects(), {});
  d.maps.assign(shape->num_morphisms(), {});
  d.shape = std::move(shape);
  return d;
}

SetDiagram terminal_diagram(CatRef shape) {
  SetDiagram d;
  d.sets.assign(shape->num_objects(), {"*"});
  d.maps.assign(shape->num_morphisms(), {0});
  d.shape = std::move(shape);
  return d;
}

SetDiagram corepresentable(CatRef shape, Ob c) {
  const FiniteCategory& cat = *shape;
  const std::size_t n = cat.num_objects();
  SetDiagram d;
  d.sets.resize(n);
  std::vector<int> pos(cat.num_morphisms(), -1);
  for (Ob x = 0; x < static_cast<Ob>(n); ++x) {
    for (Mor u : cat.hom(c, x)) {
      pos[u] = static_cast<int>(d.sets[x].size());
      d.sets[x].push_back(cat.morphism_name(u));
    }
  }
  d.maps.resize(cat.num_morphisms());
  for (Mor m = 0; m < static_cast<Mor>(cat.num_morphisms()); ++m)
    for (Mor u : cat.hom(c, cat.source(m))) d.maps[m].push_back(pos[cat.compose(m, u)]);
  d.shape = std::move(shape);
  return d;
}

// ---- DiagramMap -----------------------------------------------------------------

bool operator==(const DiagramMap& a, const DiagramMap& b) {
  return a.components == b.components && *a.source == *b.source && *a.target == *b.target;
}

ValidationReport validate_map(const DiagramMap& f) {
  ValidationReport r;
  if (!f.source || !f.target) {
    r.add("map without source or target");
    return r;
  }
  const SetDiagram& a = *f.source;
  const SetDiagram& b = *f.target;
  if (!same_shape(a, b)) {
    r.add("source and target have different shapes");
    return r;
  }
  const FiniteCategory& c = *a.shape;
  if (f.components.size() != c.num_objects()) {
    r.add("wrong number of components");
    return r;
  }
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) {
    if (f.components[x].size() != a.sets[x].size()) {
      r.add("component at " + c.object_name(x) + " has wrong domain size");
      return r;
    }
    for (int v : f.components[x])
      if (v < 0 || static_cast<std::size_t>(v) >= b.sets[x].size()) {
        r.add("component at " + c.object_name(x) + " out of range");
        return r;
      }
  }
  std::size_t count = 0;
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    const Ob x = c.source(m), y = c.target(m);
    for (std::size_t e = 0; e < a.sets[x].size(); ++e) {
      if (f.components[y][a.maps[m][e]] != b.maps[m][f.components[x][e]]) {
        if (count++ < kMaxReported)
          r.add("naturality fails for " + c.morphism_name(m) + " at " + a.sets[x][e]);
        break;
      }
    }
  }
  if (count > r.violations.size()) r.add("... and " + std::to_string(count - r.violations.size()) + " more");
  return r;
}

DiagramMap identity_map(const DiagRef& d) {
  DiagramMap f{d, d, {}};
  for (const auto& s : d->sets) {
    f.components.emplace_back(s.size());
    std::iota(f.components.back().begin(), f.components.back().end(), 0);
  }
  return f;
}

DiagramMap compose(const DiagramMap& g, const DiagramMap& f) {
  if (f.components.size() != g.components.size()) throw InputError("compose: maps over different shapes");
  DiagramMap h{f.source, g.target, f.components};
  for (std::size_t x = 0; x < h.components.size(); ++x) {
    if (f.target->sets[x].size() != g.components[x].size()) throw InputError("compose: maps not composable");
    for (int& v : h.components[x]) v = g.components[x][v];
  }
  return h;
}

bool is_levelwise_injective(const DiagramMap& f) {
  for (std::size_t x = 0; x < f.components.size(); ++x) {
    std::vector<char> seen(f.target->sets[x].size(), 0);
    for (int v : f.components[x]) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool is_levelwise_surjective(const DiagramMap& f) {
  for (std::size_t x = 0; x < f.components.size(); ++x) {
    std::vector<char> seen(f.target->sets[x].size(), 0);
    for (int v : f.components[x]) seen[v] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
  }
  return true;
}

bool is_levelwise_bijective(const DiagramMap& f) { return is_levelwise_injective(f) && is_levelwise_surjective(f); }

void search_maps(const DiagRef& a, const DiagRef& b, const std::function<bool(const DiagramMap&)>& visit,
                 const SearchBudget& budget) {
  if (!same_shape(*a, *b)) throw InputError("search_maps: diagrams over different shapes");
  const FiniteCategory& c = *a->shape;
  const std::size_t n = c.num_objects();
  std::vector<int> offset(n + 1, 0), obj_of;
  for (Ob x = 0; x < static_cast<Ob>(n); ++x) {
    offset[x + 1] = offset[x] + static_cast<int>(a->sets[x].size());
    for (std::size_t e = 0; e < a->sets[x].size(); ++e) obj_of.push_back(x);
  }
  const int total = offset[n];
  std::vector<int> val(total, -1), trail, stack;
  std::size_t nodes = 0, results = 0;
  bool stop = false;

  auto assign = [&](int k, int v) {
    val[k] = v;
    trail.push_back(k);
    stack.assign(1, k);
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      const Ob x = obj_of[i];
      const int e = i - offset[x];
      for (Mor m : c.outgoing(x)) {
        if (c.is_identity(m)) continue;
        const Ob y = c.target(m);
        const int j = offset[y] + a->maps[m][e];
        const int w = b->maps[m][val[i]];
        if (val[j] < 0) {
          val[j] = w;
          trail.push_back(j);
          stack.push_back(j);
        } else if (val[j] != w) {
          return false;
        }
      }
    }
    return true;
  };

  std::function<void(int)> rec = [&](int pos) {
    while (pos < total && val[pos] >= 0) ++pos;
    if (pos == total) {
      if (++results > budget.max_results) throw BudgetExceeded("map search exceeded result budget");
      DiagramMap f{a, b, std::vector<std::vector<int>>(n)};
      for (Ob x = 0; x < static_cast<Ob>(n); ++x) f.components[x].assign(val.begin() + offset[x], val.begin() + offset[x + 1]);
      if (!visit(f)) stop = true;
      return;
    }
    const Ob x = obj_of[pos];
    for (int v = 0; v < static_cast<int>(b->sets[x].size()) && !stop; ++v) {
      if (++nodes > budget.max_nodes) throw BudgetExceeded("map search exceeded node budget");
      const std::size_t mark = trail.size();
      if (assign(pos, v)) rec(pos + 1);
      while (trail.size() > mark) {
        val[trail.back()] = -1;
        trail.pop_back();
      }
    }
  };
  rec(0);
}

std::vector<DiagramMap> enumerate_maps(const DiagRef& a, const DiagRef& b, const SearchBudget& budget) {
  std::vector<DiagramMap> out;
  search_maps(a, b, [&](const DiagramMap& f) {
    out.push_back(f);
    return true;
  }, budget);
  return out;
}

std::size_t count_maps(const DiagRef& a, const DiagRef& b, const SearchBudget& budget) {
  std::size_t n = 0;
  search_maps(a, b, [&](const DiagramMap&) {
    ++n;
    return true;
  }, budget);
  return n;
}

// ---- limits and colimits ----------------------------------------------------------

LimitResult limit(const SetDiagram& x) {
  auto src = share(terminal_diagram(x.shape));
  auto tgt = std::make_shared<const SetDiagram>(x);
  LimitResult out;
  out.projections.assign(x.shape->num_objects(), {});
  search_maps(src, tgt, [&](const DiagramMap& f) {
    std::vector<std::string> parts;
    for (std::size_t c = 0; c < f.components.size(); ++c) {
      parts.push_back(x.sets[c][f.components[c][0]]);
      out.projections[c].push_back(f.components[c][0]);
    }
    out.apex.push_back(tuple_name(parts));
    return true;
  });
  return out;
}

ColimitResult colimit(const SetDiagram& x) {
  const FiniteCategory& c = *x.shape;
  const std::size_t n = c.num_objects();
  std::vector<int> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + static_cast<int>(x.sets[i].size());
  detail::DisjointSet dsu(static_cast<std::size_t>(offset[n]));
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    if (c.is_identity(m)) continue;
    const Ob s = c.source(m), t = c.target(m);
    for (std::size_t e = 0; e < x.sets[s].size(); ++e)
      dsu.unite(offset[s] + static_cast<int>(e), offset[t] + x.maps[m][e]);
  }
  std::map<int, std::string> best;
  for (Ob i = 0; i < static_cast<Ob>(n); ++i) {
    for (std::size_t e = 0; e < x.sets[i].size(); ++e) {
      std::string name = "(" + c.object_name(i) + "," + x.sets[i][e] + ")";
      const int r = dsu.find(offset[i] + static_cast<int>(e));
      auto it = best.find(r);
      if (it == best.end()) best.emplace(r, std::move(name));
      else if (name < it->second) it->second = std::move(name);
    }
  }
  std::vector<std::pair<std::string, int>> classes;
  for (auto& [r, name] : best) classes.emplace_back(name, r);
  std::sort(classes.begin(), classes.end());
  std::map<int, int> index;
  ColimitResult out;
  for (auto& [name, r] : classes) {
    index[r] = static_cast<int>(out.apex.size());
    out.apex.push_back(name);
  }
  out.injections.resize(n);
  for (Ob i = 0; i < static_cast<Ob>(n); ++i)
    for (std::size_t e = 0; e < x.sets[i].size(); ++e)
      out.injections[i].push_back(index.at(dsu.find(offset[i] + static_cast<int>(e))));
  return out;
}

// ---- comma categories -------------------------------------------------------------

namespace {

// Shared construction: `over` selects ι↓d, otherwise d↓ι.
CommaCategory build_comma(const CatFunctor& iota, Ob d, bool over) {
  const FiniteCategory& c = *iota.dom;
  const FiniteCategory& dd = *iota.cod;
  std::vector<std::string> onames;
  std::vector<Ob> base;
  std::vector<Mor> arrow;
  std::map<std::pair<Ob, Mor>, int> index;
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) {
    const auto& hs = over ? dd.hom(iota.on_object(x), d) : dd.hom(d, iota.on_object(x));
    for (Mor u : hs) {
      index[{x, u}] = static_cast<int>(base.size());
      base.push_back(x);
      arrow.push_back(u);
      onames.push_back(over ? "(" + c.object_name(x) + "," + dd.morphism_name(u) + ")"
                            : "(" + dd.morphism_name(u) + "," + c.object_name(x) + ")");
    }
  }
  std::vector<std::string> mnames;
  std::vector<Ob> msrc, mtgt;
  std::vector<Mor> mbase;
  std::vector<Mor> ids(base.size(), kNone);
  for (int o = 0; o < static_cast<int>(base.size()); ++o) {
    for (Mor m : c.outgoing(base[o])) {
      const Ob y = c.target(m);
      const Mor im = iota.on_morphism(m);
      if (over) {
        // u'∘ι(m) = u.
        for (Mor u2 : dd.hom(iota.on_object(y), d)) {
          if (dd.compose(u2, im) != arrow[o]) continue;
          const int t = index.at({y, u2});
          if (c.is_identity(m) && t == o) ids[o] = static_cast<Mor>(mnames.size());
          mnames.push_back(c.morphism_name(m) + ":" + dd.morphism_name(arrow[o]) + ">" + dd.morphism_name(u2));
          msrc.push_back(o);
          mtgt.push_back(t);
          mbase.push_back(m);
        }
      } else {
        const Mor u2 = dd.compose(im, arrow[o]);
        const int t = index.at({y, u2});
        if (c.is_identity(m)) ids[o] = static_cast<Mor>(mnames.size());
        mnames.push_back(c.morphism_name(m) + ":" + dd.morphism_name(arrow[o]) + ">" + dd.morphism_name(u2));
        msrc.push_back(o);
        mtgt.push_back(t);
        mbase.push_back(m);
      }
    }
  }
  std::map<std::tuple<Mor, int, int>, int> by_key;  // (m, src, tgt)
  for (int k = 0; k < static_cast<int>(mbase.size()); ++k) by_key[{mbase[k], msrc[k], mtgt[k]}] = k;
  const std::vector<Mor> mbase_copy = mbase;
  FiniteCategory cat = FiniteCategory::from_indexed(onames, mnames, msrc, mtgt, ids, [&](Mor g, Mor f) -> Mor {
    if (mtgt[f] != msrc[g]) return kNone;
    auto it = by_key.find({c.compose(mbase_copy[g], mbase_copy[f]), msrc[f], mtgt[g]});
    return it == by_key.end() ? kNone : it->second;
  });
  CommaCategory out;
  out.category = std::make_shared<const FiniteCategory>(std::move(cat));
  const FiniteCategory& k = *out.category;
  out.base_object.resize(k.num_objects());
  out.arrow.resize(k.num_objects());
  for (int o = 0; o < static_cast<int>(base.size()); ++o) {
    const Ob ko = k.object(onames[o]);
    out.base_object[ko] = base[o];
    out.arrow[ko] = arrow[o];
  }
  out.projection.dom = out.category;
  out.projection.cod = iota.dom;
  out.projection.obj_map = out.base_object;
  out.projection.mor_map.resize(k.num_morphisms());
  for (int j = 0; j < static_cast<int>(mnames.size()); ++j) out.projection.mor_map[k.morphism(mnames[j])] = mbase[j];
  return out;
}

// Comma object lookup by (base object, arrow).
std::map<std::pair<Ob, Mor>, Ob> comma_index(const CommaCategory& k) {
  std::map<std::pair<Ob, Mor>, Ob> idx;
  for (Ob o = 0; o < static_cast<Ob>(k.base_object.size()); ++o) idx[{k.base_object[o], k.arrow[o]}] = o;
  return idx;
}

}  // namespace

CommaCategory comma_over(const CatFunctor& iota, Ob d) { return build_comma(iota, d, true); }
CommaCategory comma_under(Ob d, const CatFunctor& iota) { return build_comma(iota, d, false); }

// ---- Kan extensions ----------------------------------------------------------------

SetDiagram restrict(const CatFunctor& iota, const SetDiagram& y) {
  const FiniteCategory& c = *iota.dom;
  SetDiagram d;
  d.shape = iota.dom;
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) d.sets.push_back(y.sets[iota.on_object(x)]);
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) d.maps.push_back(y.maps[iota.on_morphism(m)]);
  return d;
}

DiagramMap restrict(const CatFunctor& iota, const DiagramMap& f) {
  DiagramMap g{share(restrict(iota, *f.source)), share(restrict(iota, *f.target)), {}};
  for (Ob x = 0; x < static_cast<Ob>(iota.dom->num_objects()); ++x) g.components.push_back(f.components[iota.on_object(x)]);
  return g;
}

namespace {

struct LanData {
  std::vector<CommaCategory> commas;                   // per d
  std::vector<std::map<std::pair<Ob, Mor>, Ob>> index;  // per d
  std::vector<ColimitResult> colims;                   // per d
  std::vector<std::vector<std::pair<Ob, int>>> rep;    // per d, per class: (comma object, element)
  SetDiagram result;
};

LanData lan_data(const CatFunctor& iota, const SetDiagram& x) {
  const FiniteCategory& dd = *iota.cod;
  const std::size_t nd = dd.num_objects();
  LanData L;
  L.result.shape = iota.cod;
  for (Ob d = 0; d < static_cast<Ob>(nd); ++d) {
    L.commas.push_back(comma_over(iota, d));
    const CommaCategory& k = L.commas.back();
    L.index.push_back(comma_index(k));
    L.colims.push_back(colimit(restrict(k.projection, x)));
    const ColimitResult& col = L.colims.back();
    std::vector<std::pair<Ob, int>> rep(col.apex.size(), {kNone, -1});
    for (Ob o = 0; o < static_cast<Ob>(k.base_object.size()); ++o)
      for (int e = 0; e < static_cast<int>(col.injections[o].size()); ++e)
        if (rep[col.injections[o][e]].first == kNone) rep[col.injections[o][e]] = {o, e};
    L.rep.push_back(std::move(rep));
    L.result.sets.push_back(col.apex);
  }
  for (Mor m = 0; m < static_cast<Mor>(dd.num_morphisms()); ++m) {
    const Ob d = dd.source(m), d2 = dd.target(m);
    std::vector<int> fn;
    for (const auto& [o, e] : L.rep[d]) {
      const Ob c = L.commas[d].base_object[o];
      const Ob o2 = L.index[d2].at({c, dd.compose(m, L.commas[d].arrow[o])});
      fn.push_back(L.colims[d2].injections[o2][e]);
    }
    L.result.maps.push_back(std::move(fn));
  }
  return L;
}

struct RanData {
  std::vector<CommaCategory> commas;
  std::vector<std::map<std::pair<Ob, Mor>, Ob>> index;
  std::vector<std::vector<std::vector<int>>> families;   // per d, sorted position -> family
  std::vector<std::map<std::vector<int>, int>> lookup;   // per d
  SetDiagram result;
};

RanData ran_data(const CatFunctor& iota, const SetDiagram& x) {
  const FiniteCategory& dd = *iota.cod;
  const std::size_t nd = dd.num_objects();
  RanData R;
  R.result.shape = iota.cod;
  for (Ob d = 0; d < static_cast<Ob>(nd); ++d) {
    R.commas.push_back(comma_under(d, iota));
    const CommaCategory& k = R.commas.back();
    R.index.push_back(comma_index(k));
    const LimitResult lim = limit(restrict(k.projection, x));
    const std::vector<int> order = sort_order(lim.apex);
    std::vector<std::vector<int>> fams;
    std::map<std::vector<int>, int> look;
    std::vector<std::string> names;
    for (int i : order) {
      std::vector<int> fam;
      for (std::size_t o = 0; o < k.base_object.size(); ++o) fam.push_back(lim.projections[o][i]);
      look[fam] = static_cast<int>(fams.size());
      fams.push_back(std::move(fam));
      names.push_back(lim.apex[i]);
    }
    R.families.push_back(std::move(fams));
    R.lookup.push_back(std::move(look));
    R.result.sets.push_back(std::move(names));
  }
  for (Mor m = 0; m < static_cast<Mor>(dd.num_morphisms()); ++m) {
    const Ob d = dd.source(m), d2 = dd.target(m);
    const CommaCategory& k2 = R.commas[d2];
    std::vector<int> fn;
    for (const auto& fam : R.families[d]) {
      std::vector<int> img;
      for (std::size_t o2 = 0; o2 < k2.base_object.size(); ++o2) {
        const Ob o = R.index[d].at({k2.base_object[o2], dd.compose(k2.arrow[o2], m)});
        img.push_back(fam[o]);
      }
      fn.push_back(R.lookup[d2].at(img));
    }
    R.result.maps.push_back(std::move(fn));
  }
  return R;
}

}  // namespace

SetDiagram lan(const CatFunctor& iota, const SetDiagram& x) { return lan_data(iota, x).result; }
SetDiagram ran(const CatFunctor& iota, const SetDiagram& x) { return ran_data(iota, x).result; }

DiagramMap lan(const CatFunctor& iota, const DiagramMap& f) {
  LanData a = lan_data(iota, *f.source);
  LanData b = lan_data(iota, *f.target);
  DiagramMap g;
  for (Ob d = 0; d < static_cast<Ob>(iota.cod->num_objects()); ++d) {
    std::vector<int> comp;
    for (const auto& [o, e] : a.rep[d]) {
      const Ob c = a.commas[d].base_object[o];
      comp.push_back(b.colims[d].injections[o][f.components[c][e]]);
    }
    g.components.push_back(std::move(comp));
  }
  g.source = share(std::move(a.result));
  g.target = share(std::move(b.result));
  return g;
}

DiagramMap ran(const CatFunctor& iota, const DiagramMap& f) {
  RanData a = ran_data(iota, *f.source);
  RanData b = ran_data(iota, *f.target);
  DiagramMap g;
  for (Ob d = 0; d < static_cast<Ob>(iota.cod->num_objects()); ++d) {
    std::vector<int> comp;
    for (const auto& fam : a.families[d]) {
      std::vector<int> img(fam.size());
      for (std::size_t o = 0; o < fam.size(); ++o) img[o] = f.components[a.commas[d].base_object[o]][fam[o]];
      comp.push_back(b.lookup[d].at(img));
    }
    g.components.push_back(std::move(comp));
  }
  g.source = share(std::move(a.result));
  g.target = share(std::move(b.result));
  return g;
}

DiagramMap lan_unit(const CatFunctor& iota, const DiagRef& x) {
  LanData L = lan_data(iota, *x);
  DiagramMap f;
  f.source = x;
  const FiniteCategory& dd = *iota.cod;
  for (Ob c = 0; c < static_cast<Ob>(iota.dom->num_objects()); ++c) {
    const Ob d = iota.on_object(c);
    const Ob o = L.index[d].at({c, dd.identity(d)});
    f.components.push_back(L.colims[d].injections[o]);
  }
  f.target = share(restrict(iota, L.result));
  return f;
}

DiagramMap lan_counit(const CatFunctor& iota, const DiagRef& y) {
  const SetDiagram ry = restrict(iota, *y);
  LanData L = lan_data(iota, ry);
  DiagramMap f;
  for (Ob d = 0; d < static_cast<Ob>(iota.cod->num_objects()); ++d) {
    std::vector<int> comp;
    for (const auto& [o, e] : L.rep[d]) comp.push_back(y->maps[L.commas[d].arrow[o]][e]);
    f.components.push_back(std::move(comp));
  }
  f.source = share(std::move(L.result));
  f.target = y;
  return f;
}

DiagramMap ran_unit(const CatFunctor& iota, const DiagRef& y) {
  const SetDiagram ry = restrict(iota, *y);
  RanData R = ran_data(iota, ry);
  DiagramMap f;
  for (Ob d = 0; d < static_cast<Ob>(iota.cod->num_objects()); ++d) {
    const CommaCategory& k = R.commas[d];
    std::vector<int> comp;
    for (std::size_t e = 0; e < y->sets[d].size(); ++e) {
      std::vector<int> fam;
      for (std::size_t o = 0; o < k.base_object.size(); ++o) fam.push_back(y->maps[k.arrow[o]][e]);
      comp.push_back(R.lookup[d].at(fam));
    }
    f.components.push_back(std::move(comp));
  }
  f.source = y;
  f.target = share(std::move(R.result));
  return f;
}

DiagramMap ran_counit(const CatFunctor& iota, const DiagRef& x) {
  RanData R = ran_data(iota, *x);
  DiagramMap f;
  const FiniteCategory& dd = *iota.cod;
  for (Ob c = 0; c < static_cast<Ob>(iota.dom->num_objects()); ++c) {
    const Ob d = iota.on_object(c);
    const Ob o = R.index[d].at({c, dd.identity(d)});
    std::vector<int> comp;
    for (const auto& fam : R.families[d]) comp.push_back(fam[o]);
    f.components.push_back(std::move(comp));
  }
  f.source = share(restrict(iota, R.result));
  f.target = x;
  return f;
}

// ---- coproducts and pushouts ---------------------------------------------------------

CoproductDiagram coproduct(const std::vector<DiagRef>& parts, const std::vector<std::string>& tags) {
  if (parts.empty()) throw InputError("coproduct: no summands");
  if (parts.size() != tags.size()) throw InputError("coproduct: one tag per summand required");
  if (std::set<std::string>(tags.begin(), tags.end()).size() != tags.size())
    throw InputError("coproduct: duplicate tag");
  const CatRef shape = parts.front()->shape;
  const FiniteCategory& c = *shape;
  for (const auto& p : parts)
    if (!same_shape(*p, *parts.front())) throw InputError("coproduct: summands over different shapes");
  const std::size_t n = c.num_objects();
  std::vector<std::vector<std::string>> sets(n);
  std::vector<std::vector<int>> maps(c.num_morphisms());
  std::vector<std::vector<int>> offset(parts.size(), std::vector<int>(n));
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (Ob x = 0; x < static_cast<Ob>(n); ++x) {
      offset[p][x] = static_cast<int>(sets[x].size());
      for (const auto& e : parts[p]->sets[x]) sets[x].push_back(tags[p] + ":" + e);
    }
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m)
    for (std::size_t p = 0; p < parts.size(); ++p)
      for (int v : parts[p]->maps[m]) maps[m].push_back(offset[p][c.target(m)] + v);
  std::vector<std::vector<int>> pos(n);
  for (Ob x = 0; x < static_cast<Ob>(n); ++x) pos[x] = invert(sort_order(sets[x]));
  CoproductDiagram out;
  out.diagram = share(normalize_diagram(shape, std::move(sets), std::move(maps)));
  for (std::size_t p = 0; p < parts.size(); ++p) {
    DiagramMap inj{parts[p], out.diagram, {}};
    for (Ob x = 0; x < static_cast<Ob>(n); ++x) {
      std::vector<int> comp;
      for (std::size_t e = 0; e < parts[p]->sets[x].size(); ++e) comp.push_back(pos[x][offset[p][x] + e]);
      inj.components.push_back(std::move(comp));
    }
    out.injections.push_back(std::move(inj));
  }
  return out;
}

PushoutDiagram pushout(const DiagramMap& i, const DiagramMap& g, const std::string& new_prefix) {
  const SetDiagram& a = *i.source;
  const SetDiagram& b = *i.target;
  const SetDiagram& cc = *g.target;
  if (!(*g.source == a)) throw InputError("pushout: maps have different sources");
  const CatRef shape = a.shape;
  const FiniteCategory& c = *shape;
  const std::size_t n = c.num_objects();
  std::vector<std::vector<std::string>> sets(n);
  std::vector<std::vector<int>> from_b(n), from_c(n);
  std::vector<std::vector<int>> rep_is_c(n), rep_elem(n);  // per class: origin of a representative
  for (Ob x = 0; x < static_cast<Ob>(n); ++x) {
    const int nb = static_cast<int>(b.sets[x].size()), nc = static_cast<int>(cc.sets[x].size());
    detail::DisjointSet dsu(static_cast<std::size_t>(nb + nc));  // C first, then B
    for (std::size_t e = 0; e < a.sets[x].size(); ++e) dsu.unite(g.components[x][e], nc + i.components[x][e]);
    std::map<int, std::string> name;
    std::map<int, int> rep;
    for (int k = 0; k < nc + nb; ++k) {
      const int r = dsu.find(k);
      std::string s = k < nc ? cc.sets[x][k] : new_prefix + b.sets[x][k - nc];
      auto it = name.find(r);
      if (it == name.end()) {
        name.emplace(r, std::move(s));
        rep.emplace(r, k);
      } else if (k < nc && (rep[r] >= nc || s < it->second)) {
        it->second = std::move(s);
        rep[r] = k;
      } else if (k >= nc && rep[r] >= nc && s < it->second) {
        it->second = std::move(s);
        rep[r] = k;
      }
    }
    std::vector<std::pair<std::string, int>> classes;
    for (auto& [r, s] : name) classes.emplace_back(s, r);
    std::sort(classes.begin(), classes.end());
    for (std::size_t k = 1; k < classes.size(); ++k)
      if (classes[k].first == classes[k - 1].first)
        throw InputError("pushout: class name '" + classes[k].first + "' is ambiguous; choose another prefix");
    std::map<int, int> index;
    for (auto& [s, r] : classes) {
      index[r] = static_cast<int>(sets[x].size());
      sets[x].push_back(s);
      rep_is_c[x].push_back(rep[r] < nc);
      rep_elem[x].push_back(rep[r] < nc ? rep[r] : rep[r] - nc);
    }
    for (int k = 0; k < nc; ++k) from_c[x].push_back(index.at(dsu.find(k)));
    for (int k = 0; k < nb; ++k) from_b[x].push_back(index.at(dsu.find(nc + k)));
  }
  SetDiagram p;
  p.shape = shape;
  p.sets = std::move(sets);
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    const Ob x = c.source(m), y = c.target(m);
    std::vector<int> fn;
    for (std::size_t k = 0; k < p.sets[x].size(); ++k) {
      const int e = rep_elem[x][k];
      fn.push_back(rep_is_c[x][k] ? from_c[y][cc.maps[m][e]] : from_b[y][b.maps[m][e]]);
    }
    p.maps.push_back(std::move(fn));
  }
  PushoutDiagram out;
  out.diagram = share(std::move(p));
  out.from_b = DiagramMap{i.target, out.diagram, std::move(from_b)};
  out.from_c = DiagramMap{g.target, out.diagram, std::move(from_c)};
  return out;
}

// ---- adjunctions -------------------------------------------------------------------------

AdjunctionReport certify_adjunction(const DiagramAdjunction& adj, const std::vector<DiagRef>& left_corpus,
                                    const std::vector<DiagRef>& right_corpus,
                                    const std::vector<DiagramMap>& left_maps,
                                    const std::vector<DiagramMap>& right_maps, const SearchBudget& budget) {
  AdjunctionReport rep;
  auto fail = [&](const std::string& what, const std::optional<std::string>& where) {
    if (where && rep.problems.violations.size() < kMaxReported) rep.problems.add(what + ": " + *where);
  };
  auto check_valid = [&](const std::string& what, const DiagramMap& f) {
    const ValidationReport v = validate_map(f);
    if (!v.ok()) fail(what, v.summary(2));
    return v.ok();
  };

  std::vector<DiagRef> lx, ry;
  std::vector<DiagramMap> units, counits;
  for (std::size_t k = 0; k < left_corpus.size(); ++k) {
    lx.push_back(share(adj.left(*left_corpus[k])));
    units.push_back(adj.unit(left_corpus[k]));
    check_valid("unit at left object " + std::to_string(k), units.back());
  }
  for (std::size_t k = 0; k < right_corpus.size(); ++k) {
    ry.push_back(share(adj.right(*right_corpus[k])));
    counits.push_back(adj.counit(right_corpus[k]));
    check_valid("counit at right object " + std::to_string(k), counits.back());
  }
  if (!rep.ok()) return rep;

  // Naturality of unit and counit.
  for (std::size_t k = 0; k < left_maps.size(); ++k) {
    const DiagramMap& f = left_maps[k];
    ++rep.naturality_checks;
    const DiagramMap lhs = compose(adj.right_map(adj.left_map(f)), adj.unit(f.source));
    const DiagramMap rhs = compose(adj.unit(f.target), f);
    fail("unit naturality along left map " + std::to_string(k), difference(lhs, rhs));
  }
  for (std::size_t k = 0; k < right_maps.size(); ++k) {
    const DiagramMap& g = right_maps[k];
    ++rep.naturality_checks;
    const DiagramMap lhs = compose(g, adj.counit(g.source));
    const DiagramMap rhs = compose(adj.counit(g.target), adj.left_map(adj.right_map(g)));
    fail("counit naturality along right map " + std::to_string(k), difference(lhs, rhs));
  }

  // Triangle identities.
  for (std::size_t k = 0; k < left_corpus.size(); ++k) {
    const DiagramMap t = compose(adj.counit(lx[k]), adj.left_map(units[k]));
    fail("triangle counit_L o L(unit) at left object " + std::to_string(k), difference(t, identity_map(lx[k])));
  }
  for (std::size_t k = 0; k < right_corpus.size(); ++k) {
    const DiagramMap t = compose(adj.right_map(counits[k]), adj.unit(ry[k]));
    fail("triangle R(counit) o unit_R at right object " + std::to_string(k), difference(t, identity_map(ry[k])));
  }

  // Hom-set bijection φ |-> R(φ)∘η_X, with inverse ψ |-> ε_Y∘L(ψ).
  auto transpose = [&](const DiagramMap& phi, std::size_t xi) { return compose(adj.right_map(phi), units[xi]); };
  for (std::size_t xi = 0; xi < left_corpus.size(); ++xi) {
    for (std::size_t yi = 0; yi < right_corpus.size(); ++yi) {
      ++rep.hom_pairs;
      const std::string where = " for left object " + std::to_string(xi) + ", right object " + std::to_string(yi);
      const auto lhs = enumerate_maps(lx[xi], right_corpus[yi], budget);
      const std::size_t rhs_count = count_maps(left_corpus[xi], ry[yi], budget);
      std::set<std::vector<std::vector<int>>> images;
      for (const auto& phi : lhs) {
        ++rep.maps_transposed;
        const DiagramMap psi = transpose(phi, xi);
        if (!check_valid("transpose not natural" + where, psi)) continue;
        images.insert(psi.components);
        const DiagramMap back = compose(counits[yi], adj.left_map(psi));
        fail("transpose not invertible" + where, difference(back, phi));
      }
      if (images.size() != lhs.size())
        fail("hom bijection", "not injective" + where);
      if (images.size() != rhs_count)
        fail("hom bijection", std::to_string(lhs.size()) + " maps LX->Y but " + std::to_string(rhs_count) +
                                  " maps X->RY" + where);
    }
  }

  // Naturality of the bijection in each variable.
  for (std::size_t k = 0; k < right_maps.size(); ++k) {
    const DiagramMap& g = right_maps[k];
    const DiagramMap rg = adj.right_map(g);
    for (std::size_t xi = 0; xi < left_corpus.size(); ++xi) {
      for (const auto& phi : enumerate_maps(lx[xi], g.source, budget)) {
        ++rep.naturality_checks;
        fail("bijection naturality in the right variable, map " + std::to_string(k),
             difference(transpose(compose(g, phi), xi), compose(rg, transpose(phi, xi))));
      }
    }
  }
  for (std::size_t k = 0; k < left_maps.size(); ++k) {
    const DiagramMap& f = left_maps[k];
    const DiagramMap lf = adj.left_map(f);
    const DiagramMap eta_src = adj.unit(f.source);
    const DiagramMap eta_tgt = adj.unit(f.target);
    const DiagRef lt = share(adj.left(*f.target));
    for (std::size_t yi = 0; yi < right_corpus.size(); ++yi) {
      for (const auto& phi : enumerate_maps(lt, right_corpus[yi], budget)) {
        ++rep.naturality_checks;
        const DiagramMap a = compose(adj.right_map(compose(phi, lf)), eta_src);
        const DiagramMap b = compose(compose(adj.right_map(phi), eta_tgt), f);
        fail("bijection naturality in the left variable, map " + std::to_string(k), difference(a, b));
      }
    }
  }
  return rep;
}

DiagramAdjunction lan_restrict_adjunction(const CatFunctor& iota) {
  DiagramAdjunction a;
  a.left = [iota](const SetDiagram& x) { return lan(iota, x); };
  a.right = [iota](const SetDiagram& y) { return restrict(iota, y); };
  a.left_map = [iota](const DiagramMap& f) { return lan(iota, f); };
  a.right_map = [iota](const DiagramMap& f) { return restrict(iota, f); };
  a.unit = [iota](const DiagRef& x) { return lan_unit(iota, x); };
  a.counit = [iota](const DiagRef& y) { return lan_counit(iota, y); };
  return a;
}

DiagramAdjunction restrict_ran_adjunction(const CatFunctor& iota) {
  DiagramAdjunction a;
  a.left = [iota](const SetDiagram& y) { return restrict(iota, y); };
  a.right = [iota](const SetDiagram& x) { return ran(iota, x); };
  a.left_map = [iota](const DiagramMap& f) { return restrict(iota, f); };
  a.right_map = [iota](const DiagramMap& f) { return ran(iota, f); };
  a.unit = [iota](const DiagRef& y) { return ran_unit(iota, y); };
  a.counit = [iota](const DiagRef& x) { return ran_counit(iota, x); };
  return a;
}

DiagramAdjunction identity_adjunction() {
  DiagramAdjunction a;
  a.left = [](const SetDiagram& x) { return x; };
  a.right = [](const SetDiagram& x) { return x; };
  a.left_map = [](const DiagramMap& f) { return f; };
  a.right_map = [](const DiagramMap& f) { return f; };
  a.unit = [](const DiagRef& x) { return identity_map(x); };
  a.counit = [](const DiagRef& x) { return identity_map(x); };
  return a;
}

}  // namespace catkit
