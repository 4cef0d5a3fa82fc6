#include "catkit/catspec.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "catkit/nabla.hpp"

namespace catkit {

CatspecError::CatspecError(int line, int column, const std::string& message)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

CatspecInvalid::CatspecInvalid(int line, std::string kind, std::string name, ValidationReport report)
    : InputError("line " + std::to_string(line) + ": " + kind + " '" + name + "' is invalid: " + report.summary(3)),
      line_(line),
      kind_(std::move(kind)),
      name_(std::move(name)),
      report_(std::move(report)) {}

std::size_t CatspecDocument::size() const {
  return categories.size() + functors.size() + groups.size() + actions.size() + involutions.size() +
         diagrams.size() + ssets.size() + rssets.size() + operads.size() + complexes.size();
}

namespace {

struct Tok {
  std::string text;
  int col = 0;
};

struct Line {
  int no = 0;
  std::vector<Tok> toks;
  int end_col = 1;  // column just past the last token
};

struct RawBlock {
  Line header;
  std::vector<Line> entries;
  const std::string& kind() const { return header.toks[0].text; }
  const std::string& name() const { return header.toks[1].text; }
};

const std::vector<std::string> kKinds = {"action",     "category", "complex", "diagram", "functor",
                                         "group",      "involution", "operad", "rsset",   "sset"};

Line tokenize(const std::string& text, int no) {
  Line l;
  l.no = no;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t' || text[i] == '\r') {
      ++i;
      continue;
    }
    if (text[i] == '#') break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
    l.toks.push_back({text.substr(i, j - i), static_cast<int>(i) + 1});
    l.end_col = static_cast<int>(j) + 1;
    i = j;
  }
  return l;
}

[[noreturn]] void fail(const Line& l, int col, const std::string& msg) { throw CatspecError(l.no, col, msg); }
[[noreturn]] void fail(const Line& l, const Tok& t, const std::string& msg) { throw CatspecError(l.no, t.col, msg); }

void expect_arity(const Line& l, std::size_t n, const std::string& what) {
  if (l.toks.size() < n) fail(l, l.end_col, "expected " + what);
  if (l.toks.size() > n) fail(l, l.toks[n], "unexpected token '" + l.toks[n].text + "'");
}

int to_int(const Line& l, const Tok& t) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(t.text, &pos);
    if (pos != t.text.size() || v < -1000000 || v > 1000000) throw std::invalid_argument("");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    fail(l, t, "expected an integer, got '" + t.text + "'");
  }
}

std::vector<RawBlock> split_blocks(const std::string& text) {
  std::vector<RawBlock> blocks;
  std::istringstream in(text);
  std::string s;
  int no = 0;
  bool open = false;
  std::set<std::pair<std::string, std::string>> seen;
  while (std::getline(in, s)) {
    Line l = tokenize(s, ++no);
    if (l.toks.empty()) continue;
    if (!open) {
      const Tok& k = l.toks[0];
      if (std::find(kKinds.begin(), kKinds.end(), k.text) == kKinds.end())
        fail(l, k, "unknown block kind '" + k.text + "'");
      if (l.toks.size() < 2) fail(l, l.end_col, "expected a block name");
      if (!seen.insert({k.text, l.toks[1].text}).second)
        fail(l, l.toks[1], "duplicate " + k.text + " '" + l.toks[1].text + "'");
      blocks.push_back({l, {}});
      open = true;
    } else if (l.toks[0].text == "end") {
      expect_arity(l, 1, "'end'");
      open = false;
    } else {
      blocks.back().entries.push_back(std::move(l));
    }
  }
  if (open) fail(blocks.back().header, 1, "unterminated " + blocks.back().kind() + " block");
  return blocks;
}

[[noreturn]] void unknown_entry(const Line& l, const std::string& kind) {
  fail(l, l.toks[0], "unknown entry '" + l.toks[0].text + "' in " + kind + " block");
}

void check_valid(const RawBlock& b, const ValidationReport& r) {
  if (!r.ok()) throw CatspecInvalid(b.header.no, b.kind(), b.name(), r);
}

// Rethrows construction failures (missing table entries and the like) at the header.
template <class F>
auto at_header(const RawBlock& b, F&& f) {
  try {
    return f();
  } catch (const CatspecError&) {
    throw;
  } catch (const InputError& e) {
    fail(b.header, 1, b.kind() + " '" + b.name() + "': " + e.what());
  }
}

CatRef lookup_category(const CatspecDocument& doc, const Line& l, const Tok& t) {
  auto it = doc.categories.find(t.text);
  if (it == doc.categories.end()) fail(l, t, "undefined category '" + t.text + "'");
  return it->second;
}

void need_object(const FiniteCategory& c, const Line& l, const Tok& t) {
  if (!c.find_object(t.text)) fail(l, t, "unknown object '" + t.text + "'");
}

void need_morphism(const FiniteCategory& c, const Line& l, const Tok& t) {
  if (!c.find_morphism(t.text)) fail(l, t, "unknown morphism '" + t.text + "'");
}

// ---- per-kind loaders ---------------------------------------------------------------

CatRef load_category(const RawBlock& b) {
  expect_arity(b.header, 2, "category NAME");
  std::set<std::string> objects, morphisms;
  CategoryBuilder cb;
  for (const Line& l : b.entries) {
    const std::string& e = l.toks[0].text;
    if (e == "object") {
      expect_arity(l, 2, "object X");
      if (!objects.insert(l.toks[1].text).second) fail(l, l.toks[1], "duplicate object '" + l.toks[1].text + "'");
      cb.add_object(l.toks[1].text);
    }
  }
  for (const Line& l : b.entries) {
    const std::string& e = l.toks[0].text;
    if (e == "morphism" || e == "identity") {
      const bool id = e == "identity";
      expect_arity(l, id ? 3 : 4, id ? "identity X F" : "morphism F SRC TGT");
      const Tok& name = id ? l.toks[2] : l.toks[1];
      for (std::size_t k = id ? 1 : 2; k < (id ? 2u : 4u); ++k)
        if (!objects.count(l.toks[k].text)) fail(l, l.toks[k], "unknown object '" + l.toks[k].text + "'");
      if (!morphisms.insert(name.text).second) fail(l, name, "duplicate morphism '" + name.text + "'");
      if (id)
        cb.add_identity(l.toks[1].text, name.text);
      else
        cb.add_morphism(name.text, l.toks[2].text, l.toks[3].text);
    } else if (e != "object" && e != "compose") {
      unknown_entry(l, "category");
    }
  }
  for (const Line& l : b.entries) {
    if (l.toks[0].text != "compose") continue;
    expect_arity(l, 4, "compose G F H");
    for (std::size_t k = 1; k < 4; ++k)
      if (!morphisms.count(l.toks[k].text)) fail(l, l.toks[k], "unknown morphism '" + l.toks[k].text + "'");
    cb.set_composite(l.toks[1].text, l.toks[2].text, l.toks[3].text);
  }
  CatRef c = at_header(b, [&] { return cb.build_ref(); });
  check_valid(b, validate_category(*c));
  return c;
}

FiniteGroup load_group(const RawBlock& b) {
  expect_arity(b.header, 2, "group NAME");
  std::vector<std::string> names;
  for (const Line& l : b.entries) {
    if (l.toks[0].text == "element") {
      expect_arity(l, 2, "element A");
      names.push_back(l.toks[1].text);
    } else if (l.toks[0].text != "mul") {
      unknown_entry(l, "group");
    }
  }
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    fail(b.header, 1, "group '" + b.name() + "': duplicate element '" + *std::adjacent_find(names.begin(), names.end()) + "'");
  auto index = [&](const Line& l, const Tok& t) {
    auto it = std::lower_bound(names.begin(), names.end(), t.text);
    if (it == names.end() || *it != t.text) fail(l, t, "unknown element '" + t.text + "'");
    return static_cast<int>(it - names.begin());
  };
  const int n = static_cast<int>(names.size());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n, -1));
  for (const Line& l : b.entries) {
    if (l.toks[0].text != "mul") continue;
    expect_arity(l, 4, "mul A B C");
    int& slot = mul[index(l, l.toks[1])][index(l, l.toks[2])];
    const int c = index(l, l.toks[3]);
    if (slot >= 0 && slot != c) fail(l, l.toks[3], "conflicting product");
    slot = c;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (mul[x][y] < 0) fail(b.header, 1, "group '" + b.name() + "': missing product " + names[x] + "·" + names[y]);
  try {
    FiniteGroup g(names, mul);
    check_valid(b, validate_group(g));
    return g;
  } catch (const CatspecInvalid&) {
    throw;
  } catch (const InputError& e) {
    ValidationReport r;
    r.add(e.what());
    throw CatspecInvalid(b.header.no, b.kind(), b.name(), r);
  }
}

using NamePairs = std::vector<std::pair<std::string, std::string>>;

FunctorBlock load_functor(const CatspecDocument& doc, const RawBlock& b) {
  expect_arity(b.header, 4, "functor NAME DOM COD");
  FunctorBlock fb;
  fb.dom = b.header.toks[2].text;
  fb.cod = b.header.toks[3].text;
  CatRef dom = lookup_category(doc, b.header, b.header.toks[2]);
  CatRef cod = lookup_category(doc, b.header, b.header.toks[3]);
  NamePairs objects, morphisms;
  for (const Line& l : b.entries) {
    const std::string& e = l.toks[0].text;
    if (e == "object") {
      expect_arity(l, 3, "object X Y");
      need_object(*dom, l, l.toks[1]);
      need_object(*cod, l, l.toks[2]);
      objects.emplace_back(l.toks[1].text, l.toks[2].text);
    } else if (e == "morphism") {
      expect_arity(l, 3, "morphism F G");
      need_morphism(*dom, l, l.toks[1]);
      need_morphism(*cod, l, l.toks[2]);
      morphisms.emplace_back(l.toks[1].text, l.toks[2].text);
    } else {
      unknown_entry(l, "functor");
    }
  }
  fb.functor = at_header(b, [&] { return make_functor(dom, cod, objects, morphisms); });
  check_valid(b, validate_functor(fb.functor));
  return fb;
}

ActionBlock load_action(const CatspecDocument& doc, const RawBlock& b) {
  expect_arity(b.header, 4, "action NAME GROUP CAT");
  ActionBlock ab;
  ab.group = b.header.toks[2].text;
  ab.category = b.header.toks[3].text;
  auto git = doc.groups.find(ab.group);
  if (git == doc.groups.end()) fail(b.header, b.header.toks[2], "undefined group '" + ab.group + "'");
  const FiniteGroup& g = git->second;
  CatRef c = lookup_category(doc, b.header, b.header.toks[3]);
  std::vector<NamePairs> objects(g.order()), morphisms(g.order());
  for (const Line& l : b.entries) {
    const std::string& e = l.toks[0].text;
    if (e != "object" && e != "morphism") unknown_entry(l, "action");
    expect_arity(l, 4, e == "object" ? "object G X Y" : "morphism G F H");
    auto gi = g.find(l.toks[1].text);
    if (!gi) fail(l, l.toks[1], "unknown element '" + l.toks[1].text + "'");
    for (std::size_t k = 2; k < 4; ++k) {
      if (e == "object")
        need_object(*c, l, l.toks[k]);
      else
        need_morphism(*c, l, l.toks[k]);
    }
    (e == "object" ? objects : morphisms)[*gi].emplace_back(l.toks[2].text, l.toks[3].text);
  }
  ab.action.group = g;
  ab.action.target = c;
  for (std::size_t x = 0; x < g.order(); ++x)
    ab.action.rho.push_back(at_header(b, [&] { return make_functor(c, c, objects[x], morphisms[x]); }));
  check_valid(b, validate_action(ab.action));
  return ab;
}

InvolutionBlock load_involution(const CatspecDocument& doc, const RawBlock& b) {
  expect_arity(b.header, 3, "involution NAME CAT");
  InvolutionBlock ib;
  ib.category = b.header.toks[2].text;
  CatRef c = lookup_category(doc, b.header, b.header.toks[2]);
  NamePairs objects, morphisms;
  for (const Line& l : b.entries) {
    const std::string& e = l.toks[0].text;
    if (e != "object" && e != "morphism") unknown_entry(l, "involution");
    expect_arity(l, 3, e + " X Y");
    for (std::size_t k = 1; k < 3; ++k) {
      if (e == "object")
        need_object(*c, l, l.toks[k]);
      else
        need_morphism(*c, l, l.toks[k]);
    }
    (e == "object" ? objects : morphisms).emplace_back(l.toks[1].text, l.toks[2].text);
  }
  ib.involution = at_header(b, [&] { return make_involutive(c, objects, morphisms); });
  check_valid(b, validate_involutive(ib.involution));
  return ib;
}

SetDiagram load_diagram_entries(const RawBlock& b, const CatRef& shape) {
  const FiniteCategory& c = *shape;
  std::vector<std::vector<std::string>> sets(c.num_objects());
  for (const Line& l : b.entries) {
    const std::string& e = l.toks[0].text;
    if (e == "element") {
      expect_arity(l, 3, "element X E");
      need_object(c, l, l.toks[1]);
      sets[c.object(l.toks[1].text)].push_back(l.toks[2].text);
    } else if (e != "map") {
      unknown_entry(l, b.kind());
    }
  }
  DiagramBuilder db(shape);
  for (std::size_t x = 0; x < sets.size(); ++x) {
    std::sort(sets[x].begin(), sets[x].end());
    db.set(c.object_name(static_cast<Ob>(x)), sets[x]);
  }
  auto has = [&](Ob x, const std::string& e) { return std::binary_search(sets[x].begin(), sets[x].end(), e); };
  for (const Line& l : b.entries) {
    if (l.toks[0].text != "map") continue;
    expect_arity(l, 4, "map F E E'");
    need_morphism(c, l, l.toks[1]);
    const Mor m = c.morphism(l.toks[1].text);
    if (!has(c.source(m), l.toks[2].text)) fail(l, l.toks[2], "unknown element '" + l.toks[2].text + "'");
    if (!has(c.target(m), l.toks[3].text)) fail(l, l.toks[3], "unknown element '" + l.toks[3].text + "'");
    db.map(l.toks[1].text, l.toks[2].text, l.toks[3].text);
  }
  SetDiagram d = at_header(b, [&] { return db.build(); });
  check_valid(b, validate_diagram(d));
  return d;
}

DiagramBlock load_diagram(const CatspecDocument& doc, const RawBlock& b) {
  expect_arity(b.header, 3, "diagram NAME SHAPE");
  DiagramBlock db;
  db.shape = b.header.toks[2].text;
  db.diagram = load_diagram_entries(b, lookup_category(doc, b.header, b.header.toks[2]));
  return db;
}

struct ShapeCache {
  std::map<int, CatRef> delta_op;
  std::map<int, CatRef> nabla_op;

  CatRef get(bool real, int n) {
    auto& m = real ? nabla_op : delta_op;
    auto it = m.find(n);
    if (it != m.end()) return it->second;
    CatRef c = real ? build_nabla(n).nabla_op : opposite(simplex_category(n));
    m.emplace(n, c);
    return c;
  }
};

SimplicialBlock load_simplicial(ShapeCache& shapes, const RawBlock& b) {
  expect_arity(b.header, 3, b.kind() + " NAME N");
  const bool real = b.kind() == "rsset";
  SimplicialBlock sb;
  sb.dim = to_int(b.header, b.header.toks[2]);
  const int max_dim = real ? 4 : 6;
  if (sb.dim < 0 || sb.dim > max_dim)
    fail(b.header, b.header.toks[2], "dimension must lie in 0.." + std::to_string(max_dim));
  sb.diagram = load_diagram_entries(b, shapes.get(real, sb.dim));
  return sb;
}

Perm parse_perm(const Line& l, const Tok& t, int n, bool extended) {
  const std::string& s = t.text;
  const std::string what = extended ? "a permutation of 0.." + std::to_string(n) : "a permutation of 1.." + std::to_string(n);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail(l, t, "expected " + what);
  Perm p;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') fail(l, t, "expected " + what);
    p.push_back(s[i] - '0');
  }
  Perm sorted = p;
  std::sort(sorted.begin(), sorted.end());
  const int first = extended ? 0 : 1;
  bool ok = static_cast<int>(p.size()) == n + (extended ? 1 : 0);
  for (std::size_t i = 0; ok && i < sorted.size(); ++i) ok = sorted[i] == first + static_cast<int>(i);
  if (!ok) fail(l, t, "expected " + what);
  return p;
}

OperadBlock load_operad(const RawBlock& b) {
  const Line& h = b.header;
  if (h.toks.size() < 3) fail(h, h.end_col, "expected operad NAME A [cyclic]");
  if (h.toks.size() > 4) fail(h, h.toks[4], "unexpected token '" + h.toks[4].text + "'");
  const bool cyclic = h.toks.size() == 4;
  if (cyclic && h.toks[3].text != "cyclic") fail(h, h.toks[3], "expected 'cyclic'");
  const int A = to_int(h, h.toks[2]);
  if (A < 1 || A > 5) fail(h, h.toks[2], "arity bound must lie in 1..5");

  auto arity = [&](const Line& l, const Tok& t) {
    const int n = to_int(l, t);
    if (n < 0 || n > A) fail(l, t, "arity out of range");
    return n;
  };
  std::vector<std::vector<std::string>> elements(A + 1);
  for (const Line& l : b.entries) {
    const std::string& e = l.toks[0].text;
    if (e == "element") {
      expect_arity(l, 3, "element N E");
      elements[arity(l, l.toks[1])].push_back(l.toks[2].text);
    } else if (e == "cyc" && !cyclic) {
      fail(l, l.toks[0], "'cyc' entry in an operad not declared cyclic");
    } else if (e != "unit" && e != "comp" && e != "act" && e != "cyc") {
      unknown_entry(l, "operad");
    }
  }
  for (auto& s : elements) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(h, 1, "operad '" + b.name() + "': duplicate element '" + *std::adjacent_find(s.begin(), s.end()) + "'");
  }
  auto index = [&](const Line& l, int n, const Tok& t) {
    const auto& s = elements[n];
    auto it = std::lower_bound(s.begin(), s.end(), t.text);
    if (it == s.end() || *it != t.text)
      fail(l, t, "unknown element '" + t.text + "' in arity " + std::to_string(n));
    return static_cast<int>(it - s.begin());
  };
  auto put = [&](const Line& l, int& slot, int v) {
    if (slot >= 0 && slot != v) fail(l, l.toks.back(), "conflicting entry");
    slot = v;
  };

  int unit = -1;
  for (const Line& l : b.entries)
    if (l.toks[0].text == "unit") {
      expect_arity(l, 2, "unit E");
      put(l, unit, index(l, 1, l.toks[1]));
    }
  if (unit < 0) fail(h, 1, "operad '" + b.name() + "': no unit");

  OperadBlock ob;
  TruncatedCyclicOperad q;
  q.op = empty_operad_tables(A, elements, unit);
  TruncatedOperad& p = q.op;
  if (cyclic) allocate_cyclic_tables(q);

  for (const Line& l : b.entries) {
    const std::string& e = l.toks[0].text;
    if (e == "comp") {
      expect_arity(l, 7, "comp M I N A B C");
      const int m = arity(l, l.toks[1]);
      const int i = to_int(l, l.toks[2]);
      const int n = arity(l, l.toks[3]);
      if (!p.composable(m, n)) fail(l, l.toks[3], "composite arity exceeds the bound");
      if (i < 1 || i > m) fail(l, l.toks[2], "slot out of range");
      const int x = index(l, m, l.toks[4]);
      const int y = index(l, n, l.toks[5]);
      const int z = index(l, m + n - 1, l.toks[6]);
      put(l, p.comp[m][n][((static_cast<std::size_t>(i) - 1) * p.size(m) + x) * p.size(n) + y], z);
    } else if (e == "act" || e == "cyc") {
      expect_arity(l, 5, e + " N A PERM B");
      const int n = arity(l, l.toks[1]);
      const int x = index(l, n, l.toks[2]);
      const bool ext = e == "cyc";
      const Perm s = parse_perm(l, l.toks[3], n, ext);
      const int y = index(l, n, l.toks[4]);
      const std::size_t width = ext ? extended_permutations(n).size() : permutations(n).size();
      auto& table = ext ? q.cyclic[n] : p.action[n];
      put(l, table[x * width + perm_rank(s)], y);
    }
  }

  auto missing = [&](const std::string& what) { fail(h, 1, "operad '" + b.name() + "': missing " + what); };
  for (int m = 1; m <= A; ++m)
    for (int n = 0; m + n - 1 <= A; ++n)
      for (std::size_t k = 0; k < p.comp[m][n].size(); ++k)
        if (p.comp[m][n][k] < 0) {
          const std::size_t y = k % p.size(n), rest = k / p.size(n);
          const std::size_t x = rest % p.size(m), i = rest / p.size(m) + 1;
          missing("comp " + std::to_string(m) + " " + std::to_string(i) + " " + std::to_string(n) + " " +
                  p.elements[m][x] + " " + p.elements[n][y]);
        }
  for (int n = 0; n <= A; ++n) {
    const auto& perms = permutations(n);
    for (std::size_t k = 0; k < p.action[n].size(); ++k)
      if (p.action[n][k] < 0)
        missing("act " + std::to_string(n) + " " + p.elements[n][k / perms.size()] + " " + perm_name(perms[k % perms.size()]));
    if (!cyclic) continue;
    const auto& ext = extended_permutations(n);
    for (std::size_t k = 0; k < q.cyclic[n].size(); ++k)
      if (q.cyclic[n][k] < 0)
        missing("cyc " + std::to_string(n) + " " + p.elements[n][k / ext.size()] + " " + perm_name(ext[k % ext.size()]));
  }

  if (cyclic) {
    check_valid(b, validate_cyclic(q));
    ob.op = q.op;
    ob.cyclic = std::move(q);
  } else {
    check_valid(b, validate_operad(p));
    ob.op = std::move(p);
  }
  return ob;
}

FiniteComplex load_complex(const RawBlock& b) {
  expect_arity(b.header, 3, "complex NAME P");
  const int p = to_int(b.header, b.header.toks[2]);
  if (!is_prime(p)) fail(b.header, b.header.toks[2], "characteristic must be prime");
  std::map<int, int> dims;
  for (const Line& l : b.entries) {
    const std::string& e = l.toks[0].text;
    if (e == "dim") {
      expect_arity(l, 3, "dim K D");
      const int k = to_int(l, l.toks[1]);
      const int d = to_int(l, l.toks[2]);
      if (d < 0 || d > 64) fail(l, l.toks[2], "dimension must lie in 0..64");
      if (!dims.emplace(k, d).second) fail(l, l.toks[1], "duplicate degree");
    } else if (e != "d") {
      unknown_entry(l, "complex");
    }
  }
  if (dims.empty()) fail(b.header, 1, "complex '" + b.name() + "': no degrees");
  const int lo = dims.begin()->first, hi = dims.rbegin()->first;
  if (hi - lo > 256) fail(b.header, 1, "complex '" + b.name() + "': degree window too wide");
  std::vector<int> dv(hi - lo + 1, 0);
  for (auto [k, d] : dims) dv[k - lo] = d;
  std::vector<Matrix> diffs;
  for (int k = lo; k <= hi; ++k) diffs.emplace_back(k < hi ? dv[k + 1 - lo] : 0, dv[k - lo]);
  std::set<int> given;
  for (const Line& l : b.entries) {
    if (l.toks[0].text != "d") continue;
    if (l.toks.size() < 2) fail(l, l.end_col, "expected d K ENTRIES...");
    const int k = to_int(l, l.toks[1]);
    if (k < lo || k > hi) fail(l, l.toks[1], "degree outside the window");
    if (!given.insert(k).second) fail(l, l.toks[1], "duplicate differential");
    Matrix& m = diffs[k - lo];
    const std::size_t need = m.a.size();
    if (l.toks.size() - 2 != need)
      fail(l, l.toks[1], "d " + std::to_string(k) + " needs " + std::to_string(need) + " entries (" +
                             std::to_string(m.rows) + "x" + std::to_string(m.cols) + ")");
    for (std::size_t j = 0; j < need; ++j) {
      const int v = to_int(l, l.toks[j + 2]);
      if (v < 0 || v >= p) fail(l, l.toks[j + 2], "entry must lie in 0.." + std::to_string(p - 1));
      m.a[j] = v;
    }
  }
  FiniteComplex c = at_header(b, [&] { return make_complex(p, lo, dv, diffs); });
  check_valid(b, validate_complex(c));
  return c;
}

// ---- emission -----------------------------------------------------------------------

struct Out {
  std::string header;
  std::vector<std::string> lines;

  void add(std::initializer_list<std::string> toks) {
    std::string s;
    for (const auto& t : toks) {
      if (!s.empty()) s += ' ';
      s += t;
    }
    lines.push_back(std::move(s));
  }
  std::string text() {
    std::sort(lines.begin(), lines.end());
    std::string s = header + "\n";
    for (const auto& l : lines) s += "  " + l + "\n";
    return s + "end\n";
  }
};

const std::string& require(const CatspecDocument& doc, const std::string& cat, const std::string& who) {
  if (!doc.categories.count(cat)) throw InputError(who + " refers to category '" + cat + "', which is not in the document");
  return cat;
}

std::string emit_category(const std::string& name, const FiniteCategory& c) {
  Out o{"category " + name, {}};
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) o.add({"object", c.object_name(x)});
  for (Mor f = 0; f < static_cast<Mor>(c.num_morphisms()); ++f) {
    if (c.is_identity(f))
      o.add({"identity", c.object_name(c.source(f)), c.morphism_name(f)});
    else
      o.add({"morphism", c.morphism_name(f), c.object_name(c.source(f)), c.object_name(c.target(f))});
  }
  for (Mor f = 0; f < static_cast<Mor>(c.num_morphisms()); ++f) {
    if (c.is_identity(f)) continue;
    for (Mor g : c.outgoing(c.target(f)))
      if (!c.is_identity(g)) o.add({"compose", c.morphism_name(g), c.morphism_name(f), c.morphism_name(c.compose(g, f))});
  }
  return o.text();
}

void add_functor_entries(Out& o, const CatFunctor& f, const std::string& prefix = {}) {
  const FiniteCategory& c = *f.dom;
  const FiniteCategory& d = *f.cod;
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x) {
    if (prefix.empty())
      o.add({"object", c.object_name(x), d.object_name(f.on_object(x))});
    else
      o.add({"object", prefix, c.object_name(x), d.object_name(f.on_object(x))});
  }
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    if (c.is_identity(m)) continue;
    if (prefix.empty())
      o.add({"morphism", c.morphism_name(m), d.morphism_name(f.on_morphism(m))});
    else
      o.add({"morphism", prefix, c.morphism_name(m), d.morphism_name(f.on_morphism(m))});
  }
}

void add_diagram_entries(Out& o, const SetDiagram& d) {
  const FiniteCategory& c = *d.shape;
  for (Ob x = 0; x < static_cast<Ob>(c.num_objects()); ++x)
    for (const auto& e : d.sets[x]) o.add({"element", c.object_name(x), e});
  for (Mor m = 0; m < static_cast<Mor>(c.num_morphisms()); ++m) {
    if (c.is_identity(m)) continue;
    const Ob x = c.source(m), y = c.target(m);
    for (std::size_t e = 0; e < d.sets[x].size(); ++e)
      o.add({"map", c.morphism_name(m), d.sets[x][e], d.sets[y][d.maps[m][e]]});
  }
}

std::string emit_operad(const std::string& name, const OperadBlock& ob) {
  const TruncatedOperad& p = ob.op;
  const int A = p.bound;
  Out o{"operad " + name + " " + std::to_string(A) + (ob.cyclic ? " cyclic" : ""), {}};
  auto s = [](auto v) { return std::to_string(v); };
  for (int n = 0; n <= A; ++n)
    for (const auto& e : p.elements[n]) o.add({"element", s(n), e});
  o.add({"unit", p.elements[1][p.unit]});
  for (int m = 1; m <= A; ++m)
    for (int n = 0; m + n - 1 <= A; ++n)
      for (int i = 1; i <= m; ++i)
        for (std::size_t x = 0; x < p.size(m); ++x)
          for (std::size_t y = 0; y < p.size(n); ++y)
            o.add({"comp", s(m), s(i), s(n), p.elements[m][x], p.elements[n][y],
                   p.elements[m + n - 1][p.compose(m, i, static_cast<int>(x), n, static_cast<int>(y))]});
  for (int n = 0; n <= A; ++n) {
    const auto& perms = permutations(n);
    for (std::size_t x = 0; x < p.size(n); ++x)
      for (std::size_t r = 0; r < perms.size(); ++r)
        o.add({"act", s(n), p.elements[n][x], perm_name(perms[r]), p.elements[n][p.act_rank(n, static_cast<int>(x), r)]});
    if (!ob.cyclic) continue;
    const auto& ext = extended_permutations(n);
    for (std::size_t x = 0; x < p.size(n); ++x)
      for (std::size_t r = 0; r < ext.size(); ++r)
        o.add({"cyc", s(n), p.elements[n][x], perm_name(ext[r]),
               p.elements[n][ob.cyclic->cyclic[n][x * ext.size() + r]]});
  }
  return o.text();
}

std::string emit_complex(const std::string& name, const FiniteComplex& c) {
  Out o{"complex " + name + " " + std::to_string(c.p), {}};
  for (int k = c.lo; k <= c.hi; ++k) {
    o.add({"dim", std::to_string(k), std::to_string(c.dim(k))});
    const Matrix m = c.diff(k);
    if (m.a.empty()) continue;
    std::string line = "d " + std::to_string(k);
    for (int v : m.a) line += " " + std::to_string(v);
    o.lines.push_back(line);
  }
  return o.text();
}

std::vector<std::vector<int>> sort_order(const TruncatedOperad& p, std::vector<std::vector<int>>& inv) {
  std::vector<std::vector<int>> order(p.bound + 1);
  inv.assign(p.bound + 1, {});
  for (int n = 0; n <= p.bound; ++n) {
    order[n].resize(p.size(n));
    std::iota(order[n].begin(), order[n].end(), 0);
    std::sort(order[n].begin(), order[n].end(), [&](int a, int b) { return p.elements[n][a] < p.elements[n][b]; });
    inv[n].resize(p.size(n));
    for (std::size_t k = 0; k < order[n].size(); ++k) inv[n][order[n][k]] = static_cast<int>(k);
  }
  return order;
}

}  // namespace

CatspecDocument parse_catspec(const std::string& text) {
  const std::vector<RawBlock> blocks = split_blocks(text);
  CatspecDocument doc;
  ShapeCache shapes;
  auto each = [&](const std::string& kind, auto&& f) {
    for (const auto& b : blocks)
      if (b.kind() == kind) f(b);
  };
  each("category", [&](const RawBlock& b) { doc.categories.emplace(b.name(), load_category(b)); });
  each("group", [&](const RawBlock& b) { doc.groups.emplace(b.name(), load_group(b)); });
  each("functor", [&](const RawBlock& b) { doc.functors.emplace(b.name(), load_functor(doc, b)); });
  each("action", [&](const RawBlock& b) { doc.actions.emplace(b.name(), load_action(doc, b)); });
  each("involution", [&](const RawBlock& b) { doc.involutions.emplace(b.name(), load_involution(doc, b)); });
  each("diagram", [&](const RawBlock& b) { doc.diagrams.emplace(b.name(), load_diagram(doc, b)); });
  each("sset", [&](const RawBlock& b) { doc.ssets.emplace(b.name(), load_simplicial(shapes, b)); });
  each("rsset", [&](const RawBlock& b) { doc.rssets.emplace(b.name(), load_simplicial(shapes, b)); });
  each("operad", [&](const RawBlock& b) { doc.operads.emplace(b.name(), load_operad(b)); });
  each("complex", [&](const RawBlock& b) { doc.complexes.emplace(b.name(), load_complex(b)); });
  return doc;
}

CatspecDocument load_catspec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catspec(ss.str());
}

std::string emit_catspec(const CatspecDocument& doc) {
  std::vector<std::string> parts;  // already in (kind, name) order
  for (const auto& [name, ab] : doc.actions) {
    require(doc, ab.category, "action '" + name + "'");
    if (!doc.groups.count(ab.group)) throw InputError("action '" + name + "' refers to group '" + ab.group + "', which is not in the document");
    Out o{"action " + name + " " + ab.group + " " + ab.category, {}};
    for (std::size_t g = 0; g < ab.action.rho.size(); ++g)
      add_functor_entries(o, ab.action.rho[g], ab.action.group.name(static_cast<int>(g)));
    parts.push_back(o.text());
  }
  for (const auto& [name, c] : doc.categories) parts.push_back(emit_category(name, *c));
  for (const auto& [name, c] : doc.complexes) parts.push_back(emit_complex(name, c));
  for (const auto& [name, db] : doc.diagrams) {
    Out o{"diagram " + name + " " + require(doc, db.shape, "diagram '" + name + "'"), {}};
    add_diagram_entries(o, db.diagram);
    parts.push_back(o.text());
  }
  for (const auto& [name, fb] : doc.functors) {
    require(doc, fb.dom, "functor '" + name + "'");
    require(doc, fb.cod, "functor '" + name + "'");
    Out o{"functor " + name + " " + fb.dom + " " + fb.cod, {}};
    add_functor_entries(o, fb.functor);
    parts.push_back(o.text());
  }
  for (const auto& [name, g] : doc.groups) {
    Out o{"group " + name, {}};
    for (std::size_t a = 0; a < g.order(); ++a) {
      o.add({"element", g.name(static_cast<int>(a))});
      for (std::size_t b = 0; b < g.order(); ++b)
        o.add({"mul", g.name(static_cast<int>(a)), g.name(static_cast<int>(b)),
               g.name(g.mul(static_cast<int>(a), static_cast<int>(b)))});
    }
    parts.push_back(o.text());
  }
  for (const auto& [name, ib] : doc.involutions) {
    Out o{"involution " + name + " " + require(doc, ib.category, "involution '" + name + "'"), {}};
    add_functor_entries(o, ib.involution.tau);
    parts.push_back(o.text());
  }
  for (const auto& [name, ob] : doc.operads) parts.push_back(emit_operad(name, ob));
  for (const auto& [name, sb] : doc.rssets) {
    Out o{"rsset " + name + " " + std::to_string(sb.dim), {}};
    add_diagram_entries(o, sb.diagram);
    parts.push_back(o.text());
  }
  for (const auto& [name, sb] : doc.ssets) {
    Out o{"sset " + name + " " + std::to_string(sb.dim), {}};
    add_diagram_entries(o, sb.diagram);
    parts.push_back(o.text());
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "\n";
    out += parts[i];
  }
  return out;
}

TruncatedOperad canonical_operad(const TruncatedOperad& p) {
  std::vector<std::vector<int>> inv;
  const auto order = sort_order(p, inv);
  std::vector<std::vector<std::string>> elements(p.bound + 1);
  for (int n = 0; n <= p.bound; ++n)
    for (int a : order[n]) elements[n].push_back(p.elements[n][a]);
  TruncatedOperad q = empty_operad_tables(p.bound, elements, inv[1][p.unit]);
  for (int m = 1; m <= p.bound; ++m)
    for (int n = 0; m + n - 1 <= p.bound; ++n)
      for (int i = 1; i <= m; ++i)
        for (std::size_t x = 0; x < p.size(m); ++x)
          for (std::size_t y = 0; y < p.size(n); ++y)
            q.comp[m][n][((static_cast<std::size_t>(i) - 1) * q.size(m) + inv[m][x]) * q.size(n) + inv[n][y]] =
                inv[m + n - 1][p.compose(m, i, static_cast<int>(x), n, static_cast<int>(y))];
  for (int n = 0; n <= p.bound; ++n) {
    const std::size_t w = permutations(n).size();
    for (std::size_t x = 0; x < p.size(n); ++x)
      for (std::size_t r = 0; r < w; ++r) q.action[n][inv[n][x] * w + r] = inv[n][p.act_rank(n, static_cast<int>(x), r)];
  }
  return q;
}

TruncatedCyclicOperad canonical_operad(const TruncatedCyclicOperad& c) {
  std::vector<std::vector<int>> inv;
  sort_order(c.op, inv);
  TruncatedCyclicOperad q;
  q.op = canonical_operad(c.op);
  allocate_cyclic_tables(q);
  for (int n = 0; n <= c.op.bound; ++n) {
    const std::size_t w = extended_permutations(n).size();
    for (std::size_t x = 0; x < c.op.size(n); ++x)
      for (std::size_t r = 0; r < w; ++r) q.cyclic[n][inv[n][x] * w + r] = inv[n][c.cyclic[n][x * w + r]];
  }
  return q;
}

}  // namespace catkit
