#include "catkit/fincat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace catkit {

namespace {

constexpr std::size_t kMaxReported = 64;

void report(ValidationReport& r, std::size_t& count, const std::string& msg) {
  ++count;
  if (r.violations.size() < kMaxReported) r.add(msg);
}

void finish(ValidationReport& r, std::size_t count) {
  if (count > r.violations.size())
    r.add("... and " + std::to_string(count - r.violations.size()) + " more");
}

}  // namespace

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& v : other.violations) violations.push_back(prefix + v);
}

std::string ValidationReport::summary(std::size_t max_lines) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size() && i < max_lines; ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  if (violations.size() > max_lines) os << "; ... (" << violations.size() << " total)";
  return os.str();
}

// ---- FiniteCategory --------------------------------------------------------

std::optional<Ob> FiniteCategory::find_object(std::string_view name) const {
  auto it = obj_index_.find(std::string(name));
  if (it == obj_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Mor> FiniteCategory::find_morphism(std::string_view name) const {
  auto it = mor_index_.find(std::string(name));
  if (it == mor_index_.end()) return std::nullopt;
  return it->second;
}

Ob FiniteCategory::object(std::string_view name) const {
  auto x = find_object(name);
  if (!x) throw InputError("unknown object '" + std::string(name) + "'");
  return *x;
}

Mor FiniteCategory::morphism(std::string_view name) const {
  auto f = find_morphism(name);
  if (!f) throw InputError("unknown morphism '" + std::string(name) + "'");
  return *f;
}

Mor FiniteCategory::compose(Mor g, Mor f) const {
  if (tgt_[f] != src_[g]) return kNone;
  return comp_[g][slot_[f]];
}

std::size_t FiniteCategory::num_composable_pairs() const {
  std::size_t n = 0;
  for (const auto& row : comp_) n += row.size();
  return n;
}

Mor FiniteCategory::inverse(Mor f) const {
  for (Mor g : hom(tgt_[f], src_[f])) {
    if (compose(g, f) == id_[src_[f]] && compose(f, g) == id_[tgt_[f]]) return g;
  }
  return kNone;
}

bool operator==(const FiniteCategory& a, const FiniteCategory& b) {
  return a.obj_names_ == b.obj_names_ && a.mor_names_ == b.mor_names_ && a.src_ == b.src_ &&
         a.tgt_ == b.tgt_ && a.id_ == b.id_ && a.comp_ == b.comp_;
}

FiniteCategory FiniteCategory::from_indexed(std::vector<std::string> obj_names,
                                            std::vector<std::string> mor_names,
                                            const std::vector<Ob>& src, const std::vector<Ob>& tgt,
                                            const std::vector<Mor>& ids,
                                            const std::function<Mor(Mor, Mor)>& comp) {
  const std::size_t n = obj_names.size();
  const std::size_t m = mor_names.size();
  if (src.size() != m || tgt.size() != m || ids.size() != n)
    throw InputError("inconsistent category data sizes");

  // Permutations to lexicographic order.
  std::vector<int> obj_order(n), mor_order(m);
  std::iota(obj_order.begin(), obj_order.end(), 0);
  std::iota(mor_order.begin(), mor_order.end(), 0);
  std::sort(obj_order.begin(), obj_order.end(),
            [&](int a, int b) { return obj_names[a] < obj_names[b]; });
  std::sort(mor_order.begin(), mor_order.end(),
            [&](int a, int b) { return mor_names[a] < mor_names[b]; });
  std::vector<int> obj_new(n), mor_new(m);
  for (std::size_t i = 0; i < n; ++i) obj_new[obj_order[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < m; ++i) mor_new[mor_order[i]] = static_cast<int>(i);

  FiniteCategory c;
  c.obj_names_.resize(n);
  c.mor_names_.resize(m);
  for (std::size_t i = 0; i < n; ++i) c.obj_names_[i] = std::move(obj_names[obj_order[i]]);
  for (std::size_t i = 0; i < m; ++i) c.mor_names_[i] = std::move(mor_names[mor_order[i]]);
  for (std::size_t i = 0; i < n; ++i) {
    if (!c.obj_index_.emplace(c.obj_names_[i], static_cast<Ob>(i)).second)
      throw InputError("duplicate object '" + c.obj_names_[i] + "'");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!c.mor_index_.emplace(c.mor_names_[i], static_cast<Mor>(i)).second)
      throw InputError("duplicate morphism '" + c.mor_names_[i] + "'");
  }
  c.src_.resize(m);
  c.tgt_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int old = mor_order[i];
    if (src[old] < 0 || tgt[old] < 0 || static_cast<std::size_t>(src[old]) >= n ||
        static_cast<std::size_t>(tgt[old]) >= n)
      throw InputError("morphism '" + c.mor_names_[i] + "' has an invalid endpoint");
    c.src_[i] = obj_new[src[old]];
    c.tgt_[i] = obj_new[tgt[old]];
  }
  c.id_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int old = ids[obj_order[i]];
    if (old < 0 || static_cast<std::size_t>(old) >= m)
      throw InputError("object '" + c.obj_names_[i] + "' has no identity");
    c.id_[i] = mor_new[old];
  }

  c.incoming_.assign(n, {});
  c.outgoing_.assign(n, {});
  c.hom_.assign(n * n, {});
  c.slot_.resize(m);
  for (std::size_t f = 0; f < m; ++f) {
    c.slot_[f] = static_cast<int>(c.incoming_[c.tgt_[f]].size());
    c.incoming_[c.tgt_[f]].push_back(static_cast<Mor>(f));
    c.outgoing_[c.src_[f]].push_back(static_cast<Mor>(f));
    c.hom_[static_cast<std::size_t>(c.src_[f]) * n + c.tgt_[f]].push_back(static_cast<Mor>(f));
  }
  c.comp_.resize(m);
  for (std::size_t g = 0; g < m; ++g) {
    const auto& in = c.incoming_[c.src_[g]];
    c.comp_[g].resize(in.size());
    for (std::size_t k = 0; k < in.size(); ++k) {
      const Mor f = in[k];
      const Mor h = comp(mor_order[g], mor_order[f]);
      if (h < 0 || static_cast<std::size_t>(h) >= m)
        throw InputError("missing composite " + c.mor_names_[g] + " o " + c.mor_names_[f]);
      c.comp_[g][k] = mor_new[h];
    }
  }
  return c;
}

// ---- CategoryBuilder --------------------------------------------------------

CategoryBuilder& CategoryBuilder::add_object(std::string name) {
  objects_.push_back(std::move(name));
  return *this;
}

CategoryBuilder& CategoryBuilder::add_morphism(std::string name, std::string src, std::string tgt) {
  morphisms_.push_back({std::move(name), std::move(src), std::move(tgt)});
  return *this;
}

CategoryBuilder& CategoryBuilder::set_identity(std::string obj, std::string mor) {
  identities_.emplace_back(std::move(obj), std::move(mor));
  return *this;
}

CategoryBuilder& CategoryBuilder::add_identity(std::string obj, std::string mor) {
  add_morphism(mor, obj, obj);
  return set_identity(std::move(obj), std::move(mor));
}

CategoryBuilder& CategoryBuilder::set_composite(std::string g, std::string f, std::string h) {
  composites_.push_back({std::move(g), std::move(f), std::move(h)});
  return *this;
}

FiniteCategory CategoryBuilder::build() const {
  std::unordered_map<std::string, int> obj_ix, mor_ix;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!obj_ix.emplace(objects_[i], static_cast<int>(i)).second)
      throw InputError("duplicate object '" + objects_[i] + "'");
  }
  std::vector<std::string> mor_names;
  std::vector<Ob> src, tgt;
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    const auto& d = morphisms_[i];
    if (!mor_ix.emplace(d.name, static_cast<int>(i)).second)
      throw InputError("duplicate morphism '" + d.name + "'");
    auto s = obj_ix.find(d.src);
    auto t = obj_ix.find(d.tgt);
    if (s == obj_ix.end()) throw InputError("morphism '" + d.name + "': unknown object '" + d.src + "'");
    if (t == obj_ix.end()) throw InputError("morphism '" + d.name + "': unknown object '" + d.tgt + "'");
    mor_names.push_back(d.name);
    src.push_back(s->second);
    tgt.push_back(t->second);
  }
  std::vector<Mor> ids(objects_.size(), kNone);
  for (const auto& [o, f] : identities_) {
    auto x = obj_ix.find(o);
    auto m = mor_ix.find(f);
    if (x == obj_ix.end()) throw InputError("identity for unknown object '" + o + "'");
    if (m == mor_ix.end()) throw InputError("identity: unknown morphism '" + f + "'");
    if (ids[x->second] != kNone && ids[x->second] != m->second)
      throw InputError("object '" + o + "' has two identities");
    ids[x->second] = m->second;
  }
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == kNone) throw InputError("object '" + objects_[i] + "' has no identity");

  const std::size_t m = mor_names.size();
  std::map<std::pair<int, int>, int> table;
  for (const auto& [g, f, h] : composites_) {
    auto gi = mor_ix.find(g), fi = mor_ix.find(f), hi = mor_ix.find(h);
    if (gi == mor_ix.end()) throw InputError("composite: unknown morphism '" + g + "'");
    if (fi == mor_ix.end()) throw InputError("composite: unknown morphism '" + f + "'");
    if (hi == mor_ix.end()) throw InputError("composite: unknown morphism '" + h + "'");
    if (tgt[fi->second] != src[gi->second])
      throw InputError("composite " + g + " o " + f + ": not composable");
    auto [it, inserted] = table.emplace(std::make_pair(gi->second, fi->second), hi->second);
    if (!inserted && it->second != hi->second)
      throw InputError("composite " + g + " o " + f + " given twice with different values");
  }
  std::vector<bool> is_id(m, false);
  for (Mor f : ids) is_id[f] = true;
  auto comp = [&](Mor g, Mor f) -> Mor {
    auto it = table.find({g, f});
    if (it != table.end()) return it->second;
    if (is_id[g] && ids[src[g]] == g) return f;
    if (is_id[f] && ids[src[f]] == f) return g;
    return kNone;
  };
  return FiniteCategory::from_indexed(objects_, std::move(mor_names), src, tgt, ids, comp);
}

// ---- validation --------------------------------------------------------------

ValidationReport validate_category(const FiniteCategory& c) {
  ValidationReport r;
  std::size_t count = 0;
  const auto& on = c.object_names();
  const auto& mn = c.morphism_names();
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    const Mor i = c.identity(static_cast<Ob>(x));
    if (c.source(i) != static_cast<Ob>(x) || c.target(i) != static_cast<Ob>(x))
      report(r, count, "identity " + mn[i] + " of " + on[x] + " is not an endomorphism of it");
  }
  for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
    for (Mor f : c.incoming(c.source(static_cast<Mor>(g)))) {
      const Mor h = c.compose(static_cast<Mor>(g), f);
      if (c.source(h) != c.source(f) || c.target(h) != c.target(static_cast<Mor>(g)))
        report(r, count, "composite " + mn[g] + " o " + mn[f] + " = " + mn[h] + " has wrong endpoints");
    }
  }
  for (std::size_t fi = 0; fi < c.num_morphisms(); ++fi) {
    const Mor f = static_cast<Mor>(fi);
    if (c.compose(c.identity(c.target(f)), f) != f)
      report(r, count, "left unit law fails for " + mn[f]);
    if (c.compose(f, c.identity(c.source(f))) != f)
      report(r, count, "right unit law fails for " + mn[f]);
  }
  if (!r.ok()) {
    finish(r, count);
    return r;
  }
  // Associativity on every composable triple h∘g∘f.
  for (std::size_t fi = 0; fi < c.num_morphisms(); ++fi) {
    const Mor f = static_cast<Mor>(fi);
    for (Mor g : c.outgoing(c.target(f))) {
      const Mor gf = c.compose(g, f);
      for (Mor h : c.outgoing(c.target(g))) {
        const Mor hg = c.compose(h, g);
        const Mor left = c.compose(hg, f);
        const Mor right = c.compose(h, gf);
        if (left != right)
          report(r, count, "associativity fails on (" + mn[h] + ", " + mn[g] + ", " + mn[f] + ")");
      }
    }
  }
  finish(r, count);
  return r;
}

// ---- functors ------------------------------------------------------------------

bool operator==(const CatFunctor& a, const CatFunctor& b) {
  const bool same_dom = a.dom == b.dom || (a.dom && b.dom && *a.dom == *b.dom);
  const bool same_cod = a.cod == b.cod || (a.cod && b.cod && *a.cod == *b.cod);
  return same_dom && same_cod && a.obj_map == b.obj_map && a.mor_map == b.mor_map;
}

CatFunctor make_functor(CatRef dom, CatRef cod,
                        const std::vector<std::pair<std::string, std::string>>& objects,
                        const std::vector<std::pair<std::string, std::string>>& morphisms) {
  CatFunctor f{dom, cod, std::vector<Ob>(dom->num_objects(), kNone),
               std::vector<Mor>(dom->num_morphisms(), kNone)};
  for (const auto& [x, y] : objects) f.obj_map[dom->object(x)] = cod->object(y);
  for (const auto& [a, b] : morphisms) f.mor_map[dom->morphism(a)] = cod->morphism(b);
  for (std::size_t x = 0; x < dom->num_objects(); ++x) {
    if (f.obj_map[x] == kNone) throw InputError("functor: object '" + dom->object_name(static_cast<Ob>(x)) + "' unmapped");
    const Mor i = dom->identity(static_cast<Ob>(x));
    if (f.mor_map[i] == kNone) f.mor_map[i] = cod->identity(f.obj_map[x]);
  }
  for (std::size_t m = 0; m < dom->num_morphisms(); ++m)
    if (f.mor_map[m] == kNone)
      throw InputError("functor: morphism '" + dom->morphism_name(static_cast<Mor>(m)) + "' unmapped");
  return f;
}

ValidationReport validate_functor(const CatFunctor& f) {
  ValidationReport r;
  std::size_t count = 0;
  const auto& c = *f.dom;
  const auto& d = *f.cod;
  if (f.obj_map.size() != c.num_objects() || f.mor_map.size() != c.num_morphisms()) {
    r.add("functor maps have the wrong size");
    return r;
  }
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    const Mor fm = f.mor_map[m];
    const Mor mm = static_cast<Mor>(m);
    if (fm < 0 || static_cast<std::size_t>(fm) >= d.num_morphisms()) {
      report(r, count, "morphism " + c.morphism_name(mm) + " has no image");
      continue;
    }
    if (d.source(fm) != f.obj_map[c.source(mm)] || d.target(fm) != f.obj_map[c.target(mm)])
      report(r, count, "image of " + c.morphism_name(mm) + " has wrong endpoints");
  }
  if (!r.ok()) {
    finish(r, count);
    return r;
  }
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    const Ob xo = static_cast<Ob>(x);
    if (f.mor_map[c.identity(xo)] != d.identity(f.obj_map[x]))
      report(r, count, "identity of " + c.object_name(xo) + " not preserved");
  }
  for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
    for (Mor h : c.incoming(c.source(static_cast<Mor>(g)))) {
      const Mor gh = c.compose(static_cast<Mor>(g), h);
      if (d.compose(f.mor_map[g], f.mor_map[h]) != f.mor_map[gh])
        report(r, count, "composite " + c.morphism_name(static_cast<Mor>(g)) + " o " + c.morphism_name(h) + " not preserved");
    }
  }
  finish(r, count);
  return r;
}

CatFunctor identity_functor(CatRef c) {
  CatFunctor f{c, c, std::vector<Ob>(c->num_objects()), std::vector<Mor>(c->num_morphisms())};
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
  return f;
}

CatFunctor compose(const CatFunctor& g, const CatFunctor& f) {
  if (!(f.cod == g.dom || *f.cod == *g.dom)) throw InputError("functor composite: codomain/domain mismatch");
  CatFunctor h{f.dom, g.cod, std::vector<Ob>(f.obj_map.size()), std::vector<Mor>(f.mor_map.size())};
  for (std::size_t x = 0; x < f.obj_map.size(); ++x) h.obj_map[x] = g.obj_map[f.obj_map[x]];
  for (std::size_t m = 0; m < f.mor_map.size(); ++m) h.mor_map[m] = g.mor_map[f.mor_map[m]];
  return h;
}

CatFunctor opposite(const CatFunctor& f, CatRef dom_op, CatRef cod_op) {
  return CatFunctor{std::move(dom_op), std::move(cod_op), f.obj_map, f.mor_map};
}

ValidationReport validate_natural(const NaturalTransformation& t) {
  ValidationReport r;
  const auto& c = *t.source.dom;
  const auto& d = *t.source.cod;
  if (t.components.size() != c.num_objects()) {
    r.add("wrong number of components");
    return r;
  }
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    const Mor a = t.components[x];
    if (d.source(a) != t.source.obj_map[x] || d.target(a) != t.target.obj_map[x])
      r.add("component at " + c.object_name(static_cast<Ob>(x)) + " has wrong endpoints");
  }
  if (!r.ok()) return r;
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    const Mor mm = static_cast<Mor>(m);
    const Mor lhs = d.compose(t.target.mor_map[m], t.components[c.source(mm)]);
    const Mor rhs = d.compose(t.components[c.target(mm)], t.source.mor_map[m]);
    if (lhs != rhs) r.add("naturality fails at " + c.morphism_name(mm));
  }
  return r;
}

bool is_natural_isomorphism(const NaturalTransformation& t) {
  if (!validate_natural(t).ok()) return false;
  return std::all_of(t.components.begin(), t.components.end(),
                     [&](Mor a) { return t.source.cod->is_invertible(a); });
}

// ---- constructions ---------------------------------------------------------------

FiniteCategory opposite(const FiniteCategory& c) {
  std::vector<Ob> src(c.num_morphisms()), tgt(c.num_morphisms());
  std::vector<Mor> ids(c.num_objects());
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    src[f] = c.target(static_cast<Mor>(f));
    tgt[f] = c.source(static_cast<Mor>(f));
  }
  for (std::size_t x = 0; x < c.num_objects(); ++x) ids[x] = c.identity(static_cast<Ob>(x));
  return FiniteCategory::from_indexed(c.object_names(), c.morphism_names(), src, tgt, ids,
                                      [&](Mor g, Mor f) { return c.compose(f, g); });
}

CatRef opposite(const CatRef& c) { return std::make_shared<const FiniteCategory>(opposite(*c)); }

CoproductResult coproduct(const CatRef& a, const CatRef& b) {
  bool clash = false;
  for (const auto& x : a->object_names()) clash = clash || b->find_object(x).has_value();
  for (const auto& f : a->morphism_names()) clash = clash || b->find_morphism(f).has_value();
  const std::string sa = clash ? ".0" : "", sb = clash ? ".1" : "";
  const int na = static_cast<int>(a->num_objects());
  const int ma = static_cast<int>(a->num_morphisms());
  std::vector<std::string> on, mn;
  std::vector<Ob> src, tgt;
  std::vector<Mor> ids;
  for (const auto& x : a->object_names()) on.push_back(x + sa);
  for (const auto& x : b->object_names()) on.push_back(x + sb);
  for (const auto& f : a->morphism_names()) mn.push_back(f + sa);
  for (const auto& f : b->morphism_names()) mn.push_back(f + sb);
  for (int f = 0; f < ma; ++f) {
    src.push_back(a->source(f));
    tgt.push_back(a->target(f));
  }
  for (std::size_t f = 0; f < b->num_morphisms(); ++f) {
    src.push_back(b->source(static_cast<Mor>(f)) + na);
    tgt.push_back(b->target(static_cast<Mor>(f)) + na);
  }
  for (int x = 0; x < na; ++x) ids.push_back(a->identity(x));
  for (std::size_t x = 0; x < b->num_objects(); ++x) ids.push_back(b->identity(static_cast<Ob>(x)) + ma);
  auto cat = std::make_shared<const FiniteCategory>(FiniteCategory::from_indexed(
      on, mn, src, tgt, ids, [&](Mor g, Mor f) -> Mor {
        if (g < ma && f < ma) return a->compose(g, f);
        if (g >= ma && f >= ma) {
          const Mor h = b->compose(g - ma, f - ma);
          return h == kNone ? kNone : h + ma;
        }
        return kNone;
      }));
  CatFunctor inl{a, cat, {}, {}}, inr{b, cat, {}, {}};
  for (const auto& x : a->object_names()) inl.obj_map.push_back(cat->object(x + sa));
  for (const auto& f : a->morphism_names()) inl.mor_map.push_back(cat->morphism(f + sa));
  for (const auto& x : b->object_names()) inr.obj_map.push_back(cat->object(x + sb));
  for (const auto& f : b->morphism_names()) inr.mor_map.push_back(cat->morphism(f + sb));
  return {cat, std::move(inl), std::move(inr)};
}

ProductResult product(const CatRef& a, const CatRef& b) {
  const int nb = static_cast<int>(b->num_objects());
  const int mb = static_cast<int>(b->num_morphisms());
  std::vector<std::string> on, mn;
  std::vector<Ob> src, tgt;
  std::vector<Mor> ids;
  for (const auto& x : a->object_names())
    for (const auto& y : b->object_names()) on.push_back("(" + x + "," + y + ")");
  for (std::size_t f = 0; f < a->num_morphisms(); ++f) {
    for (int g = 0; g < mb; ++g) {
      mn.push_back("(" + a->morphism_name(static_cast<Mor>(f)) + "," + b->morphism_name(g) + ")");
      src.push_back(a->source(static_cast<Mor>(f)) * nb + b->source(g));
      tgt.push_back(a->target(static_cast<Mor>(f)) * nb + b->target(g));
    }
  }
  for (std::size_t x = 0; x < a->num_objects(); ++x)
    for (int y = 0; y < nb; ++y) ids.push_back(a->identity(static_cast<Ob>(x)) * mb + b->identity(y));
  auto cat = std::make_shared<const FiniteCategory>(
      FiniteCategory::from_indexed(on, mn, src, tgt, ids, [&](Mor g, Mor f) -> Mor {
        const Mor h1 = a->compose(g / mb, f / mb);
        const Mor h2 = b->compose(g % mb, f % mb);
        if (h1 == kNone || h2 == kNone) return kNone;
        return h1 * mb + h2;
      }));
  ProductResult r{cat, {cat, a, {}, {}}, {cat, b, {}, {}}};
  r.proj1.obj_map.resize(cat->num_objects());
  r.proj2.obj_map.resize(cat->num_objects());
  r.proj1.mor_map.resize(cat->num_morphisms());
  r.proj2.mor_map.resize(cat->num_morphisms());
  for (std::size_t x = 0; x < a->num_objects(); ++x)
    for (int y = 0; y < nb; ++y) {
      const Ob p = cat->object("(" + a->object_name(static_cast<Ob>(x)) + "," + b->object_name(y) + ")");
      r.proj1.obj_map[p] = static_cast<Ob>(x);
      r.proj2.obj_map[p] = y;
    }
  for (std::size_t f = 0; f < a->num_morphisms(); ++f)
    for (int g = 0; g < mb; ++g) {
      const Mor p = cat->morphism("(" + a->morphism_name(static_cast<Mor>(f)) + "," + b->morphism_name(g) + ")");
      r.proj1.mor_map[p] = static_cast<Mor>(f);
      r.proj2.mor_map[p] = g;
    }
  return r;
}

FiniteCategory subcategory(const FiniteCategory& c, const std::vector<Ob>& objects,
                           const std::vector<Mor>& morphisms) {
  std::vector<int> obj_new(c.num_objects(), kNone), mor_new(c.num_morphisms(), kNone);
  std::vector<std::string> on, mn;
  std::vector<Ob> src, tgt;
  std::vector<Mor> ids;
  for (Ob x : objects) {
    obj_new[x] = static_cast<int>(on.size());
    on.push_back(c.object_name(x));
  }
  for (Mor f : morphisms) {
    if (obj_new[c.source(f)] == kNone || obj_new[c.target(f)] == kNone)
      throw InputError("subcategory: morphism " + c.morphism_name(f) + " leaves the object set");
    mor_new[f] = static_cast<int>(mn.size());
    mn.push_back(c.morphism_name(f));
    src.push_back(obj_new[c.source(f)]);
    tgt.push_back(obj_new[c.target(f)]);
  }
  for (Ob x : objects) {
    if (mor_new[c.identity(x)] == kNone)
      throw InputError("subcategory: identity of " + c.object_name(x) + " missing");
    ids.push_back(mor_new[c.identity(x)]);
  }
  return FiniteCategory::from_indexed(on, mn, src, tgt, ids, [&](Mor g, Mor f) -> Mor {
    const Mor h = c.compose(morphisms[g], morphisms[f]);
    if (h == kNone) return kNone;
    if (mor_new[h] == kNone)
      throw InputError("subcategory: not closed under composition at " + c.morphism_name(h));
    return mor_new[h];
  });
}

FiniteCategory full_subcategory(const FiniteCategory& c, const std::vector<Ob>& objects) {
  std::vector<bool> keep(c.num_objects(), false);
  for (Ob x : objects) keep[x] = true;
  std::vector<Mor> mors;
  for (std::size_t f = 0; f < c.num_morphisms(); ++f)
    if (keep[c.source(static_cast<Mor>(f))] && keep[c.target(static_cast<Mor>(f))]) mors.push_back(static_cast<Mor>(f));
  return subcategory(c, objects, mors);
}

CatFunctor inclusion(CatRef sub, CatRef c) {
  CatFunctor f{sub, c, {}, {}};
  for (const auto& x : sub->object_names()) f.obj_map.push_back(c->object(x));
  for (const auto& m : sub->morphism_names()) f.mor_map.push_back(c->morphism(m));
  return f;
}

FiniteCategory core(const FiniteCategory& c) {
  std::vector<Ob> objs(c.num_objects());
  std::iota(objs.begin(), objs.end(), 0);
  std::vector<Mor> isos;
  for (std::size_t f = 0; f < c.num_morphisms(); ++f)
    if (c.is_invertible(static_cast<Mor>(f))) isos.push_back(static_cast<Mor>(f));
  return subcategory(c, objs, isos);
}

bool is_groupoid(const FiniteCategory& c) {
  for (std::size_t f = 0; f < c.num_morphisms(); ++f)
    if (!c.is_invertible(static_cast<Mor>(f))) return false;
  return true;
}

bool is_full(const CatFunctor& f) {
  const auto& c = *f.dom;
  const auto& d = *f.cod;
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      std::set<Mor> image;
      for (Mor m : c.hom(static_cast<Ob>(x), static_cast<Ob>(y))) image.insert(f.mor_map[m]);
      if (image.size() != d.hom(f.obj_map[x], f.obj_map[y]).size()) return false;
    }
  return true;
}

bool is_faithful(const CatFunctor& f) {
  const auto& c = *f.dom;
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      std::set<Mor> image;
      const auto& h = c.hom(static_cast<Ob>(x), static_cast<Ob>(y));
      for (Mor m : h) image.insert(f.mor_map[m]);
      if (image.size() != h.size()) return false;
    }
  return true;
}

bool is_essentially_surjective(const CatFunctor& f) {
  const auto& d = *f.cod;
  for (std::size_t y = 0; y < d.num_objects(); ++y) {
    bool hit = false;
    for (std::size_t x = 0; x < f.obj_map.size() && !hit; ++x)
      for (Mor m : d.hom(f.obj_map[x], static_cast<Ob>(y)))
        if (d.is_invertible(m)) {
          hit = true;
          break;
        }
    if (!hit) return false;
  }
  return true;
}

bool is_equivalence(const CatFunctor& f) {
  return is_full(f) && is_faithful(f) && is_essentially_surjective(f);
}

bool is_injective_on_objects(const CatFunctor& f) {
  std::set<Ob> seen(f.obj_map.begin(), f.obj_map.end());
  return seen.size() == f.obj_map.size();
}

bool is_surjective_on_objects(const CatFunctor& f) {
  std::set<Ob> seen(f.obj_map.begin(), f.obj_map.end());
  return seen.size() == f.cod->num_objects();
}

bool is_isomorphism(const CatFunctor& f) {
  std::set<Mor> ms(f.mor_map.begin(), f.mor_map.end());
  return is_injective_on_objects(f) && is_surjective_on_objects(f) && ms.size() == f.mor_map.size() &&
         ms.size() == f.cod->num_morphisms();
}

// ---- search ------------------------------------------------------------------------

namespace {

struct FunctorSearch {
  const FiniteCategory& c;
  const FiniteCategory& d;
  const FunctorConstraints& cons;
  const std::function<bool(const CatFunctor&)>& visit;
  const SearchBudget& budget;
  CatFunctor current;
  std::vector<Mor> order;                                   // non-identity morphisms of c
  std::vector<std::vector<std::array<Mor, 3>>> checks;      // by position in order
  std::size_t nodes = 0;
  std::size_t results = 0;
  bool stopped = false;

  FunctorSearch(const CatRef& cr, const CatRef& dr, const FunctorConstraints& k,
                const std::function<bool(const CatFunctor&)>& v, const SearchBudget& b)
      : c(*cr), d(*dr), cons(k), visit(v), budget(b),
        current{cr, dr, std::vector<Ob>(cr->num_objects(), kNone), std::vector<Mor>(cr->num_morphisms(), kNone)} {
    std::vector<int> pos(c.num_morphisms(), -1);
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
      if (!c.is_identity(static_cast<Mor>(f))) {
        pos[f] = static_cast<int>(order.size());
        order.push_back(static_cast<Mor>(f));
      }
    }
    checks.assign(order.size(), {});
    for (Mor g : order) {
      for (Mor f : c.incoming(c.source(g))) {
        if (c.is_identity(f)) continue;
        const Mor h = c.compose(g, f);
        int key = std::max(pos[g], pos[f]);
        key = std::max(key, pos[h]);
        checks[key].push_back({g, f, h});
      }
    }
  }

  void tick() {
    if (++nodes > budget.max_nodes) throw BudgetExceeded("functor search exceeded node budget");
  }

  void objects(std::size_t x) {
    if (stopped) return;
    if (x == c.num_objects()) {
      for (std::size_t o = 0; o < c.num_objects(); ++o) {
        const Mor i = c.identity(static_cast<Ob>(o));
        const Mor img = d.identity(current.obj_map[o]);
        if (cons.morphisms.size() > static_cast<std::size_t>(i) && cons.morphisms[i]) {
          const auto& allowed = *cons.morphisms[i];
          if (std::find(allowed.begin(), allowed.end(), img) == allowed.end()) return;
        }
        current.mor_map[i] = img;
      }
      morphisms(0);
      return;
    }
    auto try_object = [&](Ob y) {
      tick();
      current.obj_map[x] = y;
      objects(x + 1);
    };
    if (cons.objects.size() > x && cons.objects[x]) {
      for (Ob y : *cons.objects[x]) {
        if (stopped) return;
        try_object(y);
      }
    } else {
      for (std::size_t y = 0; y < d.num_objects() && !stopped; ++y) try_object(static_cast<Ob>(y));
    }
  }

  bool consistent(std::size_t k) const {
    for (const auto& [g, f, h] : checks[k])
      if (d.compose(current.mor_map[g], current.mor_map[f]) != current.mor_map[h]) return false;
    return true;
  }

  void morphisms(std::size_t k) {
    if (stopped) return;
    if (k == order.size()) {
      if (cons.accept && !cons.accept(current)) return;
      if (++results > budget.max_results) throw BudgetExceeded("functor search exceeded result budget");
      if (!visit(current)) stopped = true;
      return;
    }
    const Mor m = order[k];
    const auto& hom = d.hom(current.obj_map[c.source(m)], current.obj_map[c.target(m)]);
    const std::vector<Mor>* allowed =
        cons.morphisms.size() > static_cast<std::size_t>(m) && cons.morphisms[m] ? &*cons.morphisms[m] : nullptr;
    for (Mor y : hom) {
      if (stopped) return;
      if (allowed && std::find(allowed->begin(), allowed->end(), y) == allowed->end()) continue;
      tick();
      current.mor_map[m] = y;
      if (consistent(k)) morphisms(k + 1);
    }
    current.mor_map[m] = kNone;
  }
};

// Visits natural transformations F => G whose components satisfy `allowed`.
void search_naturals(const CatFunctor& f, const CatFunctor& g, const std::function<bool(Mor)>& allowed,
                     const std::function<bool(const NaturalTransformation&)>& visit,
                     const SearchBudget& budget) {
  const auto& c = *f.dom;
  const auto& d = *f.cod;
  const std::size_t n = c.num_objects();
  std::vector<std::vector<Mor>> checks_at(n);  // morphisms checked once both ends assigned
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    const Mor mm = static_cast<Mor>(m);
    checks_at[std::max(c.source(mm), c.target(mm))].push_back(mm);
  }
  NaturalTransformation t{f, g, std::vector<Mor>(n, kNone)};
  std::size_t nodes = 0, results = 0;
  bool stopped = false;
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (stopped) return;
    if (x == n) {
      if (++results > budget.max_results) throw BudgetExceeded("natural transformation search exceeded budget");
      if (!visit(t)) stopped = true;
      return;
    }
    for (Mor a : d.hom(f.obj_map[x], g.obj_map[x])) {
      if (stopped) return;
      if (++nodes > budget.max_nodes) throw BudgetExceeded("natural transformation search exceeded budget");
      if (allowed && !allowed(a)) continue;
      t.components[x] = a;
      bool ok = true;
      for (Mor m : checks_at[x]) {
        if (d.compose(g.mor_map[m], t.components[c.source(m)]) !=
            d.compose(t.components[c.target(m)], f.mor_map[m])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(x + 1);
    }
    t.components[x] = kNone;
  };
  rec(0);
}

}  // namespace

void search_functors(const CatRef& c, const CatRef& d, const FunctorConstraints& constraints,
                     const std::function<bool(const CatFunctor&)>& visit, const SearchBudget& budget) {
  FunctorSearch s(c, d, constraints, visit, budget);
  s.objects(0);
}

std::vector<CatFunctor> enumerate_functors(const CatRef& c, const CatRef& d, const SearchBudget& budget) {
  std::vector<CatFunctor> out;
  search_functors(c, d, {}, [&](const CatFunctor& f) {
    out.push_back(f);
    return true;
  }, budget);
  return out;
}

std::vector<NaturalTransformation> enumerate_naturals(const CatFunctor& f, const CatFunctor& g,
                                                      const SearchBudget& budget) {
  std::vector<NaturalTransformation> out;
  search_naturals(f, g, {}, [&](const NaturalTransformation& t) {
    out.push_back(t);
    return true;
  }, budget);
  return out;
}

bool has_pseudo_inverse(const CatFunctor& f, const SearchBudget& budget) {
  bool found = false;
  auto iso_exists = [&](const CatFunctor& a, const CatFunctor& b) {
    bool any = false;
    search_naturals(a, b, [&](Mor m) { return a.cod->is_invertible(m); },
                    [&](const NaturalTransformation&) {
                      any = true;
                      return false;
                    },
                    budget);
    return any;
  };
  search_functors(f.cod, f.dom, {}, [&](const CatFunctor& g) {
    const CatFunctor gf = compose(g, f);
    const CatFunctor fg = compose(f, g);
    if (iso_exists(gf, identity_functor(f.dom)) && iso_exists(fg, identity_functor(f.cod))) {
      found = true;
      return false;
    }
    return true;
  }, budget);
  return found;
}

// ---- shapes -----------------------------------------------------------------------

namespace shapes {

CatRef empty() { return CategoryBuilder{}.build_ref(); }

CatRef terminal() { return CategoryBuilder{}.add_object("*").add_identity("*", "id").build_ref(); }

CatRef discrete(const std::vector<std::string>& objects) {
  CategoryBuilder b;
  for (const auto& x : objects) b.add_object(x).add_identity(x, "id_" + x);
  return b.build_ref();
}

CatRef indiscrete(const std::vector<std::string>& objects) {
  CategoryBuilder b;
  for (const auto& x : objects) b.add_object(x);
  for (const auto& x : objects)
    for (const auto& y : objects) b.add_morphism(x + ">" + y, x, y);
  for (const auto& x : objects) b.set_identity(x, x + ">" + x);
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects) b.set_composite(y + ">" + z, x + ">" + y, x + ">" + z);
  return b.build_ref();
}

CatRef walking_arrow() {
  return CategoryBuilder{}
      .add_object("a")
      .add_object("b")
      .add_identity("a", "id_a")
      .add_identity("b", "id_b")
      .add_morphism("f", "a", "b")
      .build_ref();
}

CatRef walking_iso() { return indiscrete({"0", "1"}); }

CatRef ordinal(int n) {
  CategoryBuilder b;
  auto name = [](int i, int j) { return std::to_string(i) + "<=" + std::to_string(j); };
  for (int i = 0; i <= n; ++i) b.add_object(std::to_string(i));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) b.add_morphism(name(i, j), std::to_string(i), std::to_string(j));
  for (int i = 0; i <= n; ++i) b.set_identity(std::to_string(i), name(i, i));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) b.set_composite(name(j, k), name(i, j), name(i, k));
  return b.build_ref();
}

CatRef parallel_pair() {
  return CategoryBuilder{}
      .add_object("a")
      .add_object("b")
      .add_identity("a", "id_a")
      .add_identity("b", "id_b")
      .add_morphism("f", "a", "b")
      .add_morphism("g", "a", "b")
      .build_ref();
}

}  // namespace shapes

// ---- groups ------------------------------------------------------------------------

FiniteGroup::FiniteGroup(std::vector<std::string> elements, std::vector<std::vector<int>> mul)
    : names_(std::move(elements)), mul_(std::move(mul)) {
  const int n = static_cast<int>(names_.size());
  if (static_cast<int>(mul_.size()) != n) throw InputError("group table has the wrong size");
  for (const auto& row : mul_)
    if (static_cast<int>(row.size()) != n) throw InputError("group table has the wrong size");
  identity_ = kNone;
  for (int e = 0; e < n && identity_ == kNone; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul_[e][a] == a && mul_[a][e] == a;
    if (ok) identity_ = e;
  }
  if (identity_ == kNone) throw InputError("group table has no identity element");
  inv_.assign(n, kNone);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul_[a][b] == identity_ && mul_[b][a] == identity_) inv_[a] = b;
}

std::optional<int> FiniteGroup::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    if (i == 0) names.push_back("e");
    else if (n == 2) names.push_back("s");
    else if (i == 1) names.push_back("r");
    else names.push_back("r" + std::to_string(i));
  }
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  return FiniteGroup(names, mul);
}

FiniteGroup FiniteGroup::klein() {
  // bit-vector encoding: e=00, a=01, b=10, ab=11
  std::vector<std::string> names{"e", "a", "b", "ab"};
  std::vector<std::vector<int>> mul(4, std::vector<int>(4));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) mul[x][y] = x ^ y;
  return FiniteGroup(names, mul);
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back(std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> r{};
      for (int x = 0; x < 3; ++x) r[x] = perms[a][perms[b][x]];  // (a·b)(x) = a(b(x))
      mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), r) - perms.begin());
    }
  return FiniteGroup(names, mul);
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({"e"}, {{0}}); }

FiniteGroup FiniteGroup::opposite() const {
  const int n = static_cast<int>(order());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = mul_[b][a];
  return FiniteGroup(names_, mul);
}

ValidationReport validate_group(const FiniteGroup& g) {
  ValidationReport r;
  const int n = static_cast<int>(g.order());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          r.add("associativity fails on (" + g.name(a) + ", " + g.name(b) + ", " + g.name(c) + ")");
  for (int a = 0; a < n; ++a)
    if (g.inverse(a) == kNone) r.add("element " + g.name(a) + " has no inverse");
  return r;
}

CatRef group_category(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::vector<Ob> src(n, 0), tgt(n, 0);
  return std::make_shared<const FiniteCategory>(FiniteCategory::from_indexed(
      {"*"}, g.names(), src, tgt, {g.identity()}, [&](Mor a, Mor b) { return g.mul(a, b); }));
}

}  // namespace catkit
