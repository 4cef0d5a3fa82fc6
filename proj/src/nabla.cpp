#include "catkit/nabla.hpp"

#include <map>

namespace catkit {

namespace {

std::string obj_name(int k) { return "[" + std::to_string(k) + "]"; }

std::string values(const std::vector<int>& f) {
  std::string s;
  for (int v : f) s += static_cast<char>('0' + v);
  return s;
}

std::string delta_name(const std::vector<int>& f, int n) {
  return std::to_string(f.size() - 1) + ">" + std::to_string(n) + ":" + values(f);
}

// Values of a morphism named "m>n:v...".
std::vector<int> parse_values(const std::string& name) {
  std::vector<int> f;
  for (std::size_t i = name.find(':') + 1; i < name.size() && name[i] != ':'; ++i) f.push_back(name[i] - '0');
  return f;
}

int parse_target(const std::string& name) { return std::stoi(name.substr(name.find('>') + 1)); }

std::vector<int> compose_maps(const std::vector<int>& g, const std::vector<int>& f) {
  std::vector<int> r;
  for (int v : f) r.push_back(g[v]);
  return r;
}

std::vector<int> reverse_source(const std::vector<int>& f) { return {f.rbegin(), f.rend()}; }

void increasing_maps(int m, int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m + 1) {
    out.push_back(cur);
    return;
  }
  for (int v = cur.empty() ? 0 : cur.back(); v <= n; ++v) {
    cur.push_back(v);
    increasing_maps(m, n, cur, out);
    cur.pop_back();
  }
}

void check_dim(int n) {
  if (n < 0 || n > 9) throw InputError("truncation dimension must be between 0 and 9");
}

}  // namespace

CatRef simplex_category(int n) {
  check_dim(n);
  std::vector<std::string> objs, mors;
  std::vector<Ob> src, tgt;
  std::vector<std::vector<int>> vals;
  std::map<std::string, Mor> index;
  for (int a = 0; a <= n; ++a) objs.push_back(obj_name(a));
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      std::vector<std::vector<int>> fs;
      std::vector<int> cur;
      increasing_maps(a, b, cur, fs);
      for (auto& f : fs) {
        index[delta_name(f, b)] = static_cast<Mor>(mors.size());
        mors.push_back(delta_name(f, b));
        src.push_back(a);
        tgt.push_back(b);
        vals.push_back(std::move(f));
      }
    }
  std::vector<Mor> ids;
  for (int a = 0; a <= n; ++a) {
    std::vector<int> id(a + 1);
    for (int i = 0; i <= a; ++i) id[i] = i;
    ids.push_back(index.at(delta_name(id, a)));
  }
  return std::make_shared<const FiniteCategory>(FiniteCategory::from_indexed(
      objs, mors, src, tgt, ids,
      [&](Mor g, Mor f) { return index.at(delta_name(compose_maps(vals[g], vals[f]), tgt[g])); }));
}

CatFunctor reversal(const CatRef& delta) {
  const FiniteCategory& d = *delta;
  CatFunctor f{delta, delta, {}, {}};
  for (Ob o = 0; o < static_cast<Ob>(d.num_objects()); ++o) f.obj_map.push_back(o);
  for (Mor m = 0; m < static_cast<Mor>(d.num_morphisms()); ++m) {
    const std::string& name = d.morphism_name(m);
    const std::vector<int> v = parse_values(name);
    const int n = parse_target(name);
    std::vector<int> r;
    for (auto it = v.rbegin(); it != v.rend(); ++it) r.push_back(n - *it);
    f.mor_map.push_back(d.morphism(delta_name(r, n)));
  }
  return f;
}

int monotone_sign(const std::vector<int>& f) {
  bool up = false, down = false;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    up = up || f[i] < f[i + 1];
    down = down || f[i] > f[i + 1];
  }
  if (up && down) throw InputError("map " + values(f) + " is not monotone");
  return up ? 1 : down ? -1 : 0;
}

ValidationReport validate_monotone_pair(const MonotonePair& p) {
  ValidationReport r;
  if (p.f.empty()) r.add("empty source");
  for (int v : p.f)
    if (v < 0 || v > p.n) r.add("value out of range");
  if (p.t != 1 && p.t != -1) r.add("tag must be +1 or -1");
  if (!r.ok()) return r;
  try {
    const int s = monotone_sign(p.f);
    if (s != 0 && s != p.t) r.add("tag disagrees with the sign of " + values(p.f));
  } catch (const InputError& e) {
    r.add(e.what());
  }
  return r;
}

Mor Nabla::delta_morphism(const std::vector<int>& f, int n) const { return delta->morphism(delta_name(f, n)); }

Mor Nabla::flip(int k) const { return nabla.pair(delta->identity(k), 1); }

Nabla build_nabla(int n) {
  Nabla nb;
  nb.dim = n;
  nb.delta = simplex_category(n);
  const FiniteCategory& d = *nb.delta;
  nb.action = GroupAction{FiniteGroup::cyclic(2), nb.delta, {identity_functor(nb.delta), reversal(nb.delta)}};
  nb.nabla = semidirect(nb.action);

  // signed monotone maps
  std::vector<std::string> mors;
  std::vector<Ob> src, tgt;
  std::vector<MonotonePair> pairs;
  std::map<std::string, Mor> index;
  auto key = [](const MonotonePair& p) {
    return std::to_string(p.f.size() - 1) + ">" + std::to_string(p.n) + ":" + values(p.f) + (p.t > 0 ? ":+" : ":-");
  };
  for (Mor m = 0; m < static_cast<Mor>(d.num_morphisms()); ++m) {
    const std::vector<int> v = parse_values(d.morphism_name(m));
    const int b = d.target(m);
    for (int t : {1, -1}) {
      MonotonePair p{monotone_sign(v) == 0 || t > 0 ? v : reverse_source(v), b, t};
      index[key(p)] = static_cast<Mor>(mors.size());
      mors.push_back(key(p));
      src.push_back(d.source(m));
      tgt.push_back(b);
      pairs.push_back(std::move(p));
    }
  }
  std::vector<Mor> ids;
  for (Ob o = 0; o < static_cast<Ob>(d.num_objects()); ++o) {
    MonotonePair p{parse_values(d.morphism_name(d.identity(o))), o, 1};
    ids.push_back(index.at(key(p)));
  }
  nb.monotone = std::make_shared<const FiniteCategory>(
      FiniteCategory::from_indexed(d.object_names(), mors, src, tgt, ids, [&](Mor g, Mor f) {
        MonotonePair p{compose_maps(pairs[g].f, pairs[f].f), pairs[g].n, pairs[g].t * pairs[f].t};
        return index.at(key(p));
      }));

  nb.iso = CatFunctor{nb.nabla.category, nb.monotone, {}, {}};
  for (Ob o = 0; o < static_cast<Ob>(d.num_objects()); ++o) nb.iso.obj_map.push_back(o);
  for (const auto& [phi, g] : nb.nabla.parts) {
    const std::vector<int> v = parse_values(d.morphism_name(phi));
    MonotonePair p{g == 0 ? v : reverse_source(v), d.target(phi), g == 0 ? 1 : -1};
    nb.iso.mor_map.push_back(nb.monotone->morphism(key(p)));
  }
  ValidationReport r = validate_functor(nb.iso);
  if (!r.ok() || !is_isomorphism(nb.iso)) throw InternalError("the two presentations of nabla disagree: " + r.summary());

  nb.delta_op = opposite(nb.delta);
  nb.nabla_op = opposite(nb.nabla.category);
  nb.iota_op = opposite(inclusion_iota(nb.nabla), nb.delta_op, nb.nabla_op);
  return nb;
}

std::size_t nabla_hom_count(const Nabla& nb, int m, int n) {
  const std::size_t a = nb.nabla.category->hom(m, n).size();
  const std::size_t b = nb.monotone->hom(m, n).size();
  if (a != b) throw InternalError("hom-set sizes differ between the presentations");
  return a;
}

// ---- simplicial sets --------------------------------------------------------------

ValidationReport validate_involutive_sset(const Nabla& nb, const InvolutiveSSet& a) {
  ValidationReport r;
  if (!a.a.shape || !(*a.a.shape == *nb.delta_op)) {
    r.add("underlying diagram is not on op(Delta<=" + std::to_string(nb.dim) + ")");
    return r;
  }
  r.merge(validate_diagram(a.a));
  if (!r.ok()) return r;
  const FiniteCategory& d = *nb.delta;
  if (a.sigma.size() != d.num_objects()) {
    r.add("expected one involution per level");
    return r;
  }
  for (Ob k = 0; k < static_cast<Ob>(d.num_objects()); ++k) {
    const auto& s = a.sigma[k];
    if (s.size() != a.a.sets[k].size()) {
      r.add("sigma at level " + std::to_string(k) + " has the wrong size");
      return r;
    }
    for (std::size_t x = 0; x < s.size(); ++x)
      if (s[x] < 0 || s[x] >= static_cast<int>(s.size()) || s[s[x]] != static_cast<int>(x)) {
        r.add("sigma at level " + std::to_string(k) + " is not an involution at " + a.a.sets[k][x]);
        return r;
      }
  }
  const CatFunctor rev = nb.action.rho[1];
  for (Mor al = 0; al < static_cast<Mor>(d.num_morphisms()); ++al) {
    const Ob m = d.source(al), n = d.target(al);
    const auto& lhs = a.a.maps[al];                    // α^* : A_n -> A_m
    const auto& rhs = a.a.maps[rev.on_morphism(al)];  // 𝓕(α)^*
    for (std::size_t x = 0; x < a.a.sets[n].size(); ++x)
      if (lhs[a.sigma[n][x]] != a.sigma[m][rhs[x]]) {
        r.add("sigma does not commute with " + d.morphism_name(al) + " at " + a.a.sets[n][x]);
        break;
      }
  }
  return r;
}

InvolutiveSSet to_involutive(const Nabla& nb, const SetDiagram& x) {
  InvolutiveSSet a;
  a.a = restrict(nb.iota_op, x);
  for (int k = 0; k <= nb.dim; ++k) a.sigma.push_back(x.maps[nb.flip(k)]);
  return a;
}

SetDiagram from_involutive(const Nabla& nb, const InvolutiveSSet& a) {
  const ValidationReport r = validate_involutive_sset(nb, a);
  if (!r.ok()) throw InputError("not an involutive simplicial set: " + r.summary());
  const FiniteCategory& d = *nb.delta;
  SetDiagram x;
  x.shape = nb.nabla_op;
  x.sets = a.a.sets;
  for (const auto& [phi, g] : nb.nabla.parts) {
    std::vector<int> fn = a.a.maps[phi];
    if (g == 1)
      for (int& v : fn) v = a.sigma[d.source(phi)][v];
    x.maps.push_back(std::move(fn));
  }
  const ValidationReport rx = validate_diagram(x);
  if (!rx.ok()) throw InternalError("from_involutive produced an invalid presheaf: " + rx.summary());
  return x;
}

SetDiagram simplex(const Nabla& nb, int k) {
  if (k < 0 || k > nb.dim) throw InputError("simplex dimension out of range");
  return corepresentable(nb.delta_op, k);
}

DiagramMap boundary_inclusion(const Nabla& nb, int k) {
  auto full = share(simplex(nb, k));
  const FiniteCategory& d = *nb.delta;
  std::vector<std::vector<std::string>> sets(d.num_objects());
  std::vector<std::vector<int>> pos(d.num_objects());
  for (Ob j = 0; j < static_cast<Ob>(d.num_objects()); ++j)
    for (const auto& u : full->sets[j]) {
      const std::vector<int> v = parse_values(u);
      std::vector<bool> hit(k + 1, false);
      for (int x : v) hit[x] = true;
      bool surjective = true;
      for (bool h : hit) surjective = surjective && h;
      pos[j].push_back(surjective ? -1 : static_cast<int>(sets[j].size()));
      if (!surjective) sets[j].push_back(u);
    }
  std::vector<std::vector<int>> maps(d.num_morphisms());
  for (Mor m = 0; m < static_cast<Mor>(d.num_morphisms()); ++m) {
    // presheaf map along m : [a] -> [b] goes from level b to level a
    const Ob from = d.target(m), to = d.source(m);
    for (std::size_t e = 0; e < full->sets[from].size(); ++e)
      if (pos[from][e] >= 0) maps[m].push_back(pos[to][full->maps[m][e]]);
  }
  auto sub = share(normalize_diagram(nb.delta_op, sets, maps));
  DiagramMap f{sub, full, {}};
  for (Ob j = 0; j < static_cast<Ob>(d.num_objects()); ++j) {
    std::vector<int> c;
    for (const auto& u : sub->sets[j]) c.push_back(full->element(j, u));
    f.components.push_back(std::move(c));
  }
  return f;
}

std::vector<std::vector<bool>> degenerate_simplices(const Nabla& nb, const SetDiagram& a) {
  const FiniteCategory& d = *nb.delta;
  std::vector<std::vector<bool>> deg(d.num_objects());
  for (Ob k = 0; k < static_cast<Ob>(d.num_objects()); ++k) deg[k].assign(a.sets[k].size(), false);
  for (Mor s = 0; s < static_cast<Mor>(d.num_morphisms()); ++s) {
    // s : [n] -> [k] surjective with k < n
    const Ob n = d.source(s), k = d.target(s);
    if (k >= n) continue;
    for (int v : a.maps[s]) deg[n][v] = true;
  }
  return deg;
}

NormalityVerdict normality(const Nabla& nb, const DiagramMap& f) {
  NormalityVerdict v;
  v.injective = is_levelwise_injective(f);
  v.free_all = v.free_nondegenerate = true;
  const SetDiagram& y = *f.target;
  const auto deg = degenerate_simplices(nb, restrict(nb.iota_op, y));
  for (int k = 0; k <= nb.dim; ++k) {
    std::vector<bool> hit(y.sets[k].size(), false);
    for (int e : f.components[k]) hit[e] = true;
    const auto& sigma = y.maps[nb.flip(k)];
    for (std::size_t e = 0; e < hit.size(); ++e)
      if (!hit[e] && sigma[e] == static_cast<int>(e)) {
        v.free_all = false;
        if (!deg[k][e]) v.free_nondegenerate = false;
      }
  }
  return v;
}

bool is_normal_mono(const Nabla& nb, const DiagramMap& f) {
  const NormalityVerdict v = normality(nb, f);
  if (v.free_all != v.free_nondegenerate)
    throw InternalError(std::string("normality criteria disagree: all simplices say ") +
                        (v.free_all ? "free" : "not free") + ", non-degenerate simplices say " +
                        (v.free_nondegenerate ? "free" : "not free"));
  return v.injective && v.free_all;
}

std::vector<DiagramMap> generating_cofibrations(const Nabla& nb) {
  std::vector<DiagramMap> out;
  for (int k = 0; k <= nb.dim; ++k) out.push_back(lan(nb.iota_op, boundary_inclusion(nb, k)));
  return out;
}

}  // namespace catkit
