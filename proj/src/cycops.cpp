#include "catkit/cycops.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "catkit/errors.hpp"

namespace catkit {

namespace {

std::vector<Perm> all_perms(int lo, int hi) {
  Perm p;
  for (int v = lo; v <= hi; ++v) p.push_back(v);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int mod(int a, int n) { return ((a % n) + n) % n; }

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

Perm extend(const Perm& s) {
  Perm e{0};
  e.insert(e.end(), s.begin(), s.end());
  return e;
}

// Caps the number of witnesses per report.
struct Reporter {
  ValidationReport& r;
  std::size_t extra = 0;
  void operator()(const std::string& v) {
    if (r.violations.size() < 40) r.add(v);
    else ++extra;
  }
  void finish() {
    if (extra > 0) r.add("... and " + std::to_string(extra) + " more");
  }
};

std::string tuple_name(const std::vector<std::string>& names, const std::vector<int>& xs) {
  std::string s = "(";
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (j) s += ",";
    s += names[xs[j]];
  }
  return s + ")";
}

// x_0 most significant
std::vector<int> decode(std::size_t idx, std::size_t base, int len) {
  std::vector<int> xs(len);
  for (int j = len - 1; j >= 0; --j) {
    xs[j] = static_cast<int>(idx % base);
    idx /= base;
  }
  return xs;
}

int encode(const std::vector<int>& xs, std::size_t base) {
  std::size_t idx = 0;
  for (int x : xs) idx = idx * base + static_cast<std::size_t>(x);
  return static_cast<int>(idx);
}

}  // namespace

const std::vector<Perm>& permutations(int n) {
  static std::map<int, std::vector<Perm>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, all_perms(1, n)).first;
  return it->second;
}

const std::vector<Perm>& extended_permutations(int n) {
  static std::map<int, std::vector<Perm>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, all_perms(0, n)).first;
  return it->second;
}

std::size_t perm_rank(const Perm& p) {
  std::size_t rank = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    std::size_t smaller = 0;
    for (std::size_t l = k + 1; l < p.size(); ++l)
      if (p[l] < p[k]) ++smaller;
    rank = rank * (p.size() - k) + smaller;
  }
  return rank;
}

Perm compose_perms(const Perm& s, const Perm& t) {
  if (s.size() != t.size()) throw InputError("compose_perms: size mismatch");
  bool ext = std::find(s.begin(), s.end(), 0) != s.end();
  int off = ext ? 0 : 1;
  Perm r(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) r[k] = s[t[k] - off];
  return r;
}

Perm block_substitute(const Perm& s, int i, const Perm& t) {
  int m = static_cast<int>(s.size()), n = static_cast<int>(t.size());
  int si = s[i - 1];
  auto shift = [&](int v) { return v < si ? v : v + n - 1; };
  Perm r;
  for (int k = 1; k <= m + n - 1; ++k) {
    if (k < i) r.push_back(shift(s[k - 1]));
    else if (k < i + n) r.push_back(si + t[k - i] - 1);
    else r.push_back(shift(s[k - n]));
  }
  return r;
}

Perm cyclic_generator(int n) {
  Perm p(n + 1);
  for (int k = 0; k <= n; ++k) p[k] = mod(k - 1, n + 1);
  return p;
}

std::string perm_name(const Perm& p) {
  std::string s = "[";
  for (int v : p) s += std::to_string(v);
  return s + "]";
}

int TruncatedOperad::compose(int m, int i, int a, int n, int b) const {
  return comp[m][n][((static_cast<std::size_t>(i) - 1) * size(m) + a) * size(n) + b];
}

int TruncatedOperad::act(int n, int a, const Perm& s) const { return act_rank(n, a, perm_rank(s)); }

int TruncatedOperad::act_rank(int n, int a, std::size_t rank) const {
  return action[n][static_cast<std::size_t>(a) * factorial(n) + rank];
}

int TruncatedCyclicOperad::act(int n, int a, const Perm& s) const {
  return cyclic[n][static_cast<std::size_t>(a) * factorial(n + 1) + perm_rank(s)];
}

TruncatedOperad empty_operad_tables(int bound, std::vector<std::vector<std::string>> elements, int unit) {
  if (bound < 0) throw InputError("operad: negative arity bound");
  if (static_cast<int>(elements.size()) != bound + 1) throw InputError("operad: need element lists for arities 0.." + std::to_string(bound));
  TruncatedOperad p;
  p.bound = bound;
  p.elements = std::move(elements);
  p.unit = unit;
  p.comp.assign(bound + 1, std::vector<std::vector<int>>(bound + 1));
  for (int m = 1; m <= bound; ++m)
    for (int n = 0; m + n - 1 <= bound; ++n)
      p.comp[m][n].assign(static_cast<std::size_t>(m) * p.size(m) * p.size(n), -1);
  p.action.resize(bound + 1);
  for (int n = 0; n <= bound; ++n) p.action[n].assign(p.size(n) * factorial(n), -1);
  return p;
}

void allocate_cyclic_tables(TruncatedCyclicOperad& q) {
  q.cyclic.resize(q.op.bound + 1);
  for (int n = 0; n <= q.op.bound; ++n) q.cyclic[n].assign(q.op.size(n) * factorial(n + 1), -1);
}

namespace {

bool tables_total(const TruncatedOperad& p, Reporter& fail) {
  bool ok = true;
  if (p.bound < 0 || static_cast<int>(p.elements.size()) != p.bound + 1) {
    fail("element lists do not cover arities 0.." + std::to_string(p.bound));
    return false;
  }
  if (p.bound < 1 || p.unit < 0 || p.unit >= static_cast<int>(p.size(1))) {
    fail("unit is not an element of arity 1");
    return false;
  }
  for (int n = 0; n <= p.bound; ++n) {
    std::vector<std::string> names = p.elements[n];
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
      fail("duplicate element name in arity " + std::to_string(n));
      ok = false;
    }
  }
  if (p.comp.size() != static_cast<std::size_t>(p.bound + 1) || p.action.size() != static_cast<std::size_t>(p.bound + 1)) {
    fail("table shape mismatch");
    return false;
  }
  for (int m = 1; m <= p.bound; ++m)
    for (int n = 0; m + n - 1 <= p.bound; ++n) {
      const auto& t = p.comp[m][n];
      if (t.size() != static_cast<std::size_t>(m) * p.size(m) * p.size(n)) {
        fail("composition table " + std::to_string(m) + "," + std::to_string(n) + " has wrong size");
        ok = false;
        continue;
      }
      for (int v : t)
        if (v < 0 || v >= static_cast<int>(p.size(m + n - 1))) {
          fail("composition table " + std::to_string(m) + "," + std::to_string(n) + " not total");
          ok = false;
          break;
        }
    }
  for (int n = 0; n <= p.bound; ++n) {
    const auto& t = p.action[n];
    bool good = t.size() == p.size(n) * factorial(n);
    for (int v : t) good = good && v >= 0 && v < static_cast<int>(p.size(n));
    if (!good) {
      fail("action table in arity " + std::to_string(n) + " not total");
      ok = false;
    }
  }
  return ok;
}

}  // namespace

ValidationReport validate_operad(const TruncatedOperad& p) {
  ValidationReport report;
  Reporter fail{report};
  if (!tables_total(p, fail)) {
    fail.finish();
    return report;
  }
  const int A = p.bound;
  auto nm = [&](int n, int a) { return p.elements[n][a]; };
  auto ist = [](int i) { return std::to_string(i); };

  // group action
  for (int n = 0; n <= A; ++n) {
    const auto& perms = permutations(n);
    for (int a = 0; a < static_cast<int>(p.size(n)); ++a) {
      if (p.act_rank(n, a, 0) != a) fail("identity acts nontrivially on " + nm(n, a));
      for (std::size_t s = 0; s < perms.size(); ++s)
        for (std::size_t t = 0; t < perms.size(); ++t) {
          int lhs = p.act_rank(n, p.act_rank(n, a, s), t);
          int rhs = p.act_rank(n, a, perm_rank(compose_perms(perms[s], perms[t])));
          if (lhs != rhs)
            fail("action is not a right action: (" + nm(n, a) + "·" + perm_name(perms[s]) + ")·" +
                 perm_name(perms[t]) + " = " + nm(n, lhs) + " but " + nm(n, a) + "·(" + perm_name(perms[s]) + perm_name(perms[t]) +
                 ") = " + nm(n, rhs));
        }
    }
  }

  // units
  for (int n = 0; n <= A; ++n)
    for (int a = 0; a < static_cast<int>(p.size(n)); ++a) {
      int l = p.compose(1, 1, p.unit, n, a);
      if (l != a) fail("left unit: 1 ∘_1 " + nm(n, a) + " = " + nm(n, l));
      if (n >= 1)
        for (int i = 1; i <= n; ++i) {
          int r = p.compose(n, i, a, 1, p.unit);
          if (r != a) fail("right unit: " + nm(n, a) + " ∘_" + ist(i) + " 1 = " + nm(n, r));
        }
    }

  // associativity
  for (int m = 1; m <= A; ++m)
    for (int n = 0; m + n - 1 <= A; ++n)
      for (int k = 0; m + n + k - 2 <= A; ++k) {
        int mn = m + n - 1;
        if (mn < 1) continue;
        for (int a = 0; a < static_cast<int>(p.size(m)); ++a)
          for (int b = 0; b < static_cast<int>(p.size(n)); ++b)
            for (int c = 0; c < static_cast<int>(p.size(k)); ++c)
              for (int i = 1; i <= m; ++i) {
                int ab = p.compose(m, i, a, n, b);
                for (int j = 1; j <= mn; ++j) {
                  int lhs = p.compose(mn, j, ab, k, c);
                  int rhs;
                  if (j < i) {
                    if (m + k - 1 > A) continue;
                    rhs = p.compose(m + k - 1, i + k - 1, p.compose(m, j, a, k, c), n, b);
                  } else if (j < i + n) {
                    rhs = p.compose(m, i, a, n + k - 1, p.compose(n, j - i + 1, b, k, c));
                  } else {
                    if (m + k - 1 > A) continue;
                    rhs = p.compose(m + k - 1, i, p.compose(m, j - n + 1, a, k, c), n, b);
                  }
                  if (lhs != rhs)
                    fail("associativity: (" + nm(m, a) + " ∘_" + ist(i) + " " + nm(n, b) + ") ∘_" + ist(j) + " " + nm(k, c) + " = " +
                         nm(m + n + k - 2, lhs) + " vs " + nm(m + n + k - 2, rhs));
                }
              }
      }

  // equivariance
  for (int m = 1; m <= A; ++m)
    for (int n = 0; m + n - 1 <= A; ++n) {
      const auto& pm = permutations(m);
      const auto& pn = permutations(n);
      for (std::size_t s = 0; s < pm.size(); ++s)
        for (std::size_t t = 0; t < pn.size(); ++t)
          for (int i = 1; i <= m; ++i) {
            Perm blk = block_substitute(pm[s], i, pn[t]);
            std::size_t brank = perm_rank(blk);
            int si = pm[s][i - 1];
            for (int a = 0; a < static_cast<int>(p.size(m)); ++a)
              for (int b = 0; b < static_cast<int>(p.size(n)); ++b) {
                int lhs = p.compose(m, i, p.act_rank(m, a, s), n, p.act_rank(n, b, t));
                int rhs = p.act_rank(m + n - 1, p.compose(m, si, a, n, b), brank);
                if (lhs != rhs)
                  fail("equivariance: (" + nm(m, a) + "·" + perm_name(pm[s]) + ") ∘_" + ist(i) + " (" + nm(n, b) + "·" +
                       perm_name(pn[t]) + ") = " + nm(m + n - 1, lhs) + " vs " + nm(m + n - 1, rhs));
              }
          }
    }
  fail.finish();
  return report;
}

ValidationReport validate_cyclic(const TruncatedCyclicOperad& q) {
  ValidationReport report = validate_operad(q.op);
  if (!report.ok()) return report;
  Reporter fail{report};
  const TruncatedOperad& p = q.op;
  const int A = p.bound;
  auto nm = [&](int n, int a) { return p.elements[n][a]; };
  auto ist = [](int i) { return std::to_string(i); };

  bool total = q.cyclic.size() == static_cast<std::size_t>(A + 1);
  for (int n = 0; total && n <= A; ++n) {
    total = q.cyclic[n].size() == p.size(n) * factorial(n + 1);
    for (int v : q.cyclic[n]) total = total && v >= 0 && v < static_cast<int>(p.size(n));
  }
  if (!total) {
    fail("extended action tables not total");
    fail.finish();
    return report;
  }

  for (int n = 0; n <= A; ++n) {
    const auto& perms = extended_permutations(n);
    for (int a = 0; a < static_cast<int>(p.size(n)); ++a) {
      for (const Perm& s : perms)
        for (const Perm& t : perms) {
          int lhs = q.act(n, q.act(n, a, s), t);
          int rhs = q.act(n, a, compose_perms(s, t));
          if (lhs != rhs)
            fail("extended action is not a right action at " + nm(n, a) + ", " + perm_name(s) + ", " + perm_name(t));
        }
      for (const Perm& s : permutations(n))
        if (q.act(n, a, extend(s)) != p.act(n, a, s))
          fail("extended action restricted to " + perm_name(s) + " differs from the operad action on " + nm(n, a));
    }
  }

  if (q.act(1, p.unit, cyclic_generator(1)) != p.unit) fail("unit is not fixed by τ_1");

  for (int m = 1; m <= A; ++m)
    for (int n = 0; m + n - 1 <= A; ++n) {
      Perm tm = cyclic_generator(m), tn = cyclic_generator(n), tmn = cyclic_generator(m + n - 1);
      for (int a = 0; a < static_cast<int>(p.size(m)); ++a)
        for (int b = 0; b < static_cast<int>(p.size(n)); ++b) {
          int at = q.act(m, a, tm);
          for (int i = 1; i < m; ++i) {
            int lhs = q.act(m + n - 1, p.compose(m, i, a, n, b), tmn);
            int rhs = p.compose(m, i + 1, at, n, b);
            if (lhs != rhs)
              fail("cyclic compatibility: (" + nm(m, a) + " ∘_" + ist(i) + " " + nm(n, b) + ")·τ = " + nm(m + n - 1, lhs) + " vs " +
                   nm(m + n - 1, rhs));
          }
          int lhs = q.act(m + n - 1, p.compose(m, m, a, n, b), tmn);
          int rhs = n >= 1 ? p.compose(n, 1, q.act(n, b, tn), m, at) : p.compose(m, 1, q.act(m, at, tm), 0, b);
          if (lhs != rhs)
            fail("cyclic compatibility: (" + nm(m, a) + " ∘_" + ist(m) + " " + nm(n, b) + ")·τ = " + nm(m + n - 1, lhs) + " vs " +
                 nm(m + n - 1, rhs));
        }
    }
  fail.finish();
  return report;
}

TruncatedOperad terminal_operad(int bound) {
  TruncatedOperad p = empty_operad_tables(bound, std::vector<std::vector<std::string>>(bound + 1, {"*"}), 0);
  for (auto& row : p.comp)
    for (auto& t : row) std::fill(t.begin(), t.end(), 0);
  for (auto& t : p.action) std::fill(t.begin(), t.end(), 0);
  return p;
}

TruncatedCyclicOperad terminal_cyclic(int bound) {
  TruncatedCyclicOperad q{terminal_operad(bound), {}};
  allocate_cyclic_tables(q);
  for (auto& t : q.cyclic) std::fill(t.begin(), t.end(), 0);
  return q;
}

TruncatedOperad associative_operad(int bound, bool unital) {
  std::vector<std::vector<std::string>> elements(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    if (n == 0 && !unital) continue;
    for (const Perm& r : permutations(n)) elements[n].push_back(perm_name(r));
  }
  TruncatedOperad p = empty_operad_tables(bound, std::move(elements), 0);
  for (int m = 1; m <= bound; ++m)
    for (int n = 0; m + n - 1 <= bound; ++n)
      for (int i = 1; i <= m; ++i)
        for (std::size_t a = 0; a < p.size(m); ++a)
          for (std::size_t b = 0; b < p.size(n); ++b)
            p.comp[m][n][((i - 1) * p.size(m) + a) * p.size(n) + b] =
                static_cast<int>(perm_rank(block_substitute(permutations(m)[a], i, permutations(n)[b])));
  for (int n = 0; n <= bound; ++n) {
    const auto& perms = permutations(n);
    for (std::size_t a = 0; a < p.size(n); ++a)
      for (std::size_t s = 0; s < perms.size(); ++s)
        p.action[n][a * perms.size() + s] = static_cast<int>(perm_rank(compose_perms(perms[a], perms[s])));
  }
  return p;
}

TruncatedOperad monoid_operad(int bound, const std::vector<std::string>& names, const std::vector<std::vector<int>>& mul,
                              bool with_zero) {
  const int M = static_cast<int>(names.size());
  int unit = -1;
  for (int e = 0; e < M && unit < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < M; ++x) ok = ok && mul[e][x] == x && mul[x][e] == x;
    if (ok) unit = e;
  }
  if (unit < 0) throw InputError("monoid_operad: no identity element");
  std::vector<std::vector<std::string>> elements(bound + 1, names);
  if (!with_zero) elements[0].clear();
  TruncatedOperad p = empty_operad_tables(bound, std::move(elements), unit);
  for (int m = 1; m <= bound; ++m)
    for (int n = 0; m + n - 1 <= bound; ++n)
      for (int i = 1; i <= m; ++i)
        for (std::size_t a = 0; a < p.size(m); ++a)
          for (std::size_t b = 0; b < p.size(n); ++b) p.comp[m][n][((i - 1) * p.size(m) + a) * p.size(n) + b] = mul[a][b];
  for (int n = 0; n <= bound; ++n) {
    std::size_t f = factorial(n);
    for (std::size_t k = 0; k < p.action[n].size(); ++k) p.action[n][k] = static_cast<int>(k / f);
  }
  return p;
}

TruncatedCyclicOperad monoid_cyclic(int bound, const std::vector<std::string>& names, const std::vector<std::vector<int>>& mul,
                                    bool with_zero) {
  TruncatedCyclicOperad q{monoid_operad(bound, names, mul, with_zero), {}};
  allocate_cyclic_tables(q);
  for (int n = 0; n <= bound; ++n) {
    std::size_t f = factorial(n + 1);
    for (std::size_t k = 0; k < q.cyclic[n].size(); ++k) q.cyclic[n][k] = static_cast<int>(k / f);
  }
  return q;
}

TruncatedOperad random_two_element_operad(std::mt19937& rng, int bound) {
  std::uniform_int_distribution<int> coin(0, 1);
  bool additive = coin(rng) == 1;
  bool with_zero = coin(rng) == 1;
  std::vector<std::vector<int>> mul = additive ? std::vector<std::vector<int>>{{0, 1}, {1, 0}}
                                               : std::vector<std::vector<int>>{{0, 0}, {0, 1}};
  return monoid_operad(bound, {"0", "1"}, mul, with_zero);
}

TruncatedOperad forget_cyclic(const TruncatedCyclicOperad& q) { return q.op; }

Perm sigma_i(const Perm& sigma, int i) {
  const int N = static_cast<int>(sigma.size());
  const int n = N - 1;
  const int base = sigma[mod(N - i, N)];
  Perm r(n);
  for (int k = 1; k <= n; ++k) {
    int v = mod(sigma[mod(k - i, N)] - base, N);
    if (v < 1 || v > n)
      throw InternalError("σ_i not well defined at σ = " + perm_name(sigma) + ", i = " + std::to_string(i) + ", k = " + std::to_string(k));
    r[k - 1] = v;
  }
  Perm sorted = r;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 1; k <= n; ++k)
    if (sorted[k - 1] != k) throw InternalError("σ_i not a permutation at σ = " + perm_name(sigma) + ", i = " + std::to_string(i));
  return r;
}

int rotated_index(const Perm& sigma, int i) {
  const int N = static_cast<int>(sigma.size());
  return mod(N - sigma[mod(N - i, N)], N);
}

TruncatedCyclicOperad right_adjoint_R(const TruncatedOperad& p) {
  const int A = p.bound;
  std::vector<std::vector<std::string>> elements(A + 1);
  std::vector<std::size_t> sz(A + 1);
  for (int n = 0; n <= A; ++n) {
    std::size_t s = p.size(n), total = 1;
    for (int j = 0; j <= n; ++j) total *= s;
    sz[n] = total;
    for (std::size_t idx = 0; idx < total; ++idx) elements[n].push_back(tuple_name(p.elements[n], decode(idx, s, n + 1)));
  }
  std::vector<int> units(2, p.unit);
  TruncatedCyclicOperad q{empty_operad_tables(A, std::move(elements), encode(units, p.size(1))), {}};
  TruncatedOperad& r = q.op;

  for (int m = 1; m <= A; ++m)
    for (int n = 0; m + n - 1 <= A; ++n) {
      const int N = m + n;  // arity of the composite plus one
      for (int i = 1; i <= m; ++i)
        for (std::size_t xi = 0; xi < sz[m]; ++xi) {
          std::vector<int> x = decode(xi, p.size(m), m + 1);
          for (std::size_t yi = 0; yi < sz[n]; ++yi) {
            std::vector<int> y = decode(yi, p.size(n), n + 1);
            std::vector<int> z(N);
            for (int j = 0; j < N; ++j) {
              if (j <= m - i) z[j] = p.compose(m, i + j, x[j], n, y[0]);
              else if (j <= m - i + n) z[j] = p.compose(n, i + j - m, y[i + j - m], m, x[m + 1 - i]);
              else z[j] = p.compose(m, i + j - m - n, x[j - n + 1], n, y[0]);
            }
            r.comp[m][n][((i - 1) * sz[m] + xi) * sz[n] + yi] = encode(z, p.size(m + n - 1));
          }
        }
    }

  allocate_cyclic_tables(q);
  for (int n = 0; n <= A; ++n) {
    const auto& ext = extended_permutations(n);
    const auto& base = permutations(n);
    const std::size_t f1 = ext.size(), f = base.size();
    for (std::size_t s = 0; s < f1; ++s) {
      const Perm& sigma = ext[s];
      std::vector<int> js(n + 1);
      std::vector<std::size_t> ranks(n + 1);
      for (int i = 0; i <= n; ++i) {
        js[i] = rotated_index(sigma, i);
        ranks[i] = perm_rank(sigma_i(sigma, i));
      }
      bool fixes0 = sigma[0] == 0;
      std::size_t brank = 0;
      if (fixes0) brank = perm_rank(Perm(sigma.begin() + 1, sigma.end()));
      for (std::size_t xi = 0; xi < sz[n]; ++xi) {
        std::vector<int> x = decode(xi, p.size(n), n + 1);
        std::vector<int> z(n + 1);
        for (int i = 0; i <= n; ++i) z[i] = p.act_rank(n, x[js[i]], ranks[i]);
        int v = encode(z, p.size(n));
        q.cyclic[n][xi * f1 + s] = v;
        if (fixes0) r.action[n][xi * f + brank] = v;
      }
    }
  }
  return q;
}

// ---- maps -----------------------------------------------------------------------

namespace {

// An operad together with the group whose action a map must respect.
struct Shape {
  const TruncatedOperad* op;
  std::vector<std::vector<std::vector<int>>> acts;  // [n][g][a]
};

Shape operad_shape(const TruncatedOperad& p) {
  Shape s{&p, std::vector<std::vector<std::vector<int>>>(p.bound + 1)};
  for (int n = 0; n <= p.bound; ++n)
    for (std::size_t g = 0; g < factorial(n); ++g) {
      std::vector<int> t(p.size(n));
      for (std::size_t a = 0; a < p.size(n); ++a) t[a] = p.act_rank(n, static_cast<int>(a), g);
      s.acts[n].push_back(std::move(t));
    }
  return s;
}

Shape cyclic_shape(const TruncatedCyclicOperad& q) {
  Shape s{&q.op, std::vector<std::vector<std::vector<int>>>(q.op.bound + 1)};
  for (int n = 0; n <= q.op.bound; ++n) {
    std::size_t f1 = factorial(n + 1);
    for (std::size_t g = 0; g < f1; ++g) {
      std::vector<int> t(q.op.size(n));
      for (std::size_t a = 0; a < q.op.size(n); ++a) t[a] = q.cyclic[n][a * f1 + g];
      s.acts[n].push_back(std::move(t));
    }
  }
  return s;
}

// Compositions whose three arities are all ≤ n and involve n.
bool compositions_ok(const TruncatedOperad& s, const TruncatedOperad& t, const OperadMap& f, int n) {
  for (int m = 1; m <= s.bound; ++m)
    for (int k = 0; m + k - 1 <= s.bound; ++k) {
      int top = std::max({m, k, m + k - 1});
      if (top != n) continue;
      for (int i = 1; i <= m; ++i)
        for (int a = 0; a < static_cast<int>(s.size(m)); ++a)
          for (int b = 0; b < static_cast<int>(s.size(k)); ++b)
            if (f.f[m + k - 1][s.compose(m, i, a, k, b)] != t.compose(m, i, f.f[m][a], k, f.f[k][b])) return false;
    }
  return true;
}

bool is_map(const Shape& s, const Shape& t, const OperadMap& f) {
  const TruncatedOperad& so = *s.op;
  const TruncatedOperad& to = *t.op;
  if (so.bound != to.bound || static_cast<int>(f.f.size()) != so.bound + 1) return false;
  for (int n = 0; n <= so.bound; ++n) {
    if (f.f[n].size() != so.size(n)) return false;
    for (int v : f.f[n])
      if (v < 0 || v >= static_cast<int>(to.size(n))) return false;
  }
  if (f.f[1][so.unit] != to.unit) return false;
  for (int n = 0; n <= so.bound; ++n)
    for (std::size_t g = 0; g < s.acts[n].size(); ++g)
      for (std::size_t a = 0; a < so.size(n); ++a)
        if (f.f[n][s.acts[n][g][a]] != t.acts[n][g][f.f[n][a]]) return false;
  for (int n = 0; n <= so.bound; ++n)
    if (!compositions_ok(so, to, f, n)) return false;
  return true;
}

std::vector<OperadMap> enumerate_maps(const Shape& s, const Shape& t, std::size_t max_results) {
  const TruncatedOperad& so = *s.op;
  const TruncatedOperad& to = *t.op;
  if (so.bound != to.bound) throw InputError("operad maps: arity bounds differ");
  const int A = so.bound;
  // orbit representatives per arity
  std::vector<std::vector<int>> reps(A + 1);
  for (int n = 0; n <= A; ++n) {
    std::vector<bool> seen(so.size(n), false);
    for (std::size_t a = 0; a < so.size(n); ++a) {
      if (seen[a]) continue;
      reps[n].push_back(static_cast<int>(a));
      for (const auto& g : s.acts[n]) seen[g[a]] = true;
    }
  }
  OperadMap f;
  f.f.resize(A + 1);
  for (int n = 0; n <= A; ++n) f.f[n].assign(so.size(n), -1);
  std::vector<OperadMap> out;

  std::function<void(int, std::size_t)> rec = [&](int n, std::size_t r) {
    if (n > A) {
      if (out.size() >= max_results) throw BudgetExceeded("operad maps: more than " + std::to_string(max_results));
      out.push_back(f);
      return;
    }
    if (r == reps[n].size()) {
      if (n == 1 && f.f[1][so.unit] != to.unit) return;
      if (!compositions_ok(so, to, f, n)) return;
      rec(n + 1, 0);
      return;
    }
    int a = reps[n][r];
    for (int v = 0; v < static_cast<int>(to.size(n)); ++v) {
      std::vector<int> touched;
      bool ok = true;
      for (std::size_t g = 0; g < s.acts[n].size() && ok; ++g) {
        int b = s.acts[n][g][a];
        int w = t.acts[n][g][v];
        if (f.f[n][b] == -1) {
          f.f[n][b] = w;
          touched.push_back(b);
        } else if (f.f[n][b] != w) {
          ok = false;
        }
      }
      if (ok) rec(n, r + 1);
      for (int b : touched) f.f[n][b] = -1;
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

bool is_operad_map(const TruncatedOperad& s, const TruncatedOperad& t, const OperadMap& f) {
  return is_map(operad_shape(s), operad_shape(t), f);
}

bool is_cyclic_map(const TruncatedCyclicOperad& s, const TruncatedCyclicOperad& t, const OperadMap& f) {
  return is_map(cyclic_shape(s), cyclic_shape(t), f);
}

std::vector<OperadMap> enumerate_operad_maps(const TruncatedOperad& s, const TruncatedOperad& t, std::size_t max_results) {
  return enumerate_maps(operad_shape(s), operad_shape(t), max_results);
}

std::vector<OperadMap> enumerate_cyclic_maps(const TruncatedCyclicOperad& s, const TruncatedCyclicOperad& t,
                                             std::size_t max_results) {
  return enumerate_maps(cyclic_shape(s), cyclic_shape(t), max_results);
}

OperadMap R_map(const TruncatedOperad& p, const TruncatedOperad& p2, const OperadMap& f) {
  if (p.bound != p2.bound || static_cast<int>(f.f.size()) != p.bound + 1) throw InputError("R_map: shape mismatch");
  OperadMap out;
  out.f.resize(p.bound + 1);
  for (int n = 0; n <= p.bound; ++n) {
    std::size_t total = 1;
    for (int j = 0; j <= n; ++j) total *= p.size(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::vector<int> xs = decode(idx, p.size(n), n + 1);
      for (int& x : xs) x = f.f[n][x];
      out.f[n].push_back(encode(xs, p2.size(n)));
    }
  }
  return out;
}

AdjunctionCountReport check_adjunction_count(const TruncatedCyclicOperad& q, const TruncatedOperad& p) {
  AdjunctionCountReport rep;
  TruncatedCyclicOperad rp = right_adjoint_R(p);
  std::vector<OperadMap> plain = enumerate_operad_maps(forget_cyclic(q), p);
  std::vector<OperadMap> cyc = enumerate_cyclic_maps(q, rp);
  rep.operad_maps = plain.size();
  rep.cyclic_maps = cyc.size();
  // h |-> π_0 ∘ h
  std::vector<OperadMap> images;
  bool all_maps = true;
  for (const OperadMap& h : cyc) {
    OperadMap g;
    g.f.resize(p.bound + 1);
    for (int n = 0; n <= p.bound; ++n)
      for (int v : h.f[n]) g.f[n].push_back(decode(static_cast<std::size_t>(v), p.size(n), n + 1)[0]);
    if (std::find(plain.begin(), plain.end(), g) == plain.end()) all_maps = false;
    images.push_back(std::move(g));
  }
  auto key = [](const OperadMap& m) { return m.f; };
  std::vector<std::vector<std::vector<int>>> keys;
  for (const auto& g : images) keys.push_back(key(g));
  std::sort(keys.begin(), keys.end());
  bool injective = std::adjacent_find(keys.begin(), keys.end()) == keys.end();
  rep.pi0_bijective = all_maps && injective && images.size() == plain.size();
  return rep;
}

FRProductsReport check_FR_products(const TruncatedCyclicOperad& q, const TruncatedCyclicOperad& q2, const OperadMap& f) {
  FRProductsReport rep;
  Reporter fail{rep.problems};
  if (!is_cyclic_map(q, q2, f)) {
    fail("input is not a map of cyclic operads");
    fail.finish();
    return rep;
  }
  const TruncatedOperad& p = q.op;
  const TruncatedOperad& p2 = q2.op;
  TruncatedCyclicOperad rp = right_adjoint_R(p), rp2 = right_adjoint_R(p2);
  OperadMap fr = R_map(p, p2, f);
  if (!is_cyclic_map(rp, rp2, fr)) fail("R(f) is not a map of cyclic operads");
  auto surj = [](const std::vector<int>& g, std::size_t target) {
    std::vector<bool> hit(target, false);
    for (int v : g) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  };
  auto inj = [](std::vector<int> g) {
    std::sort(g.begin(), g.end());
    return std::adjacent_find(g.begin(), g.end()) == g.end();
  };
  for (int n = 0; n <= p.bound; ++n) {
    // tuple components map through f(n)
    for (std::size_t idx = 0; idx < fr.f[n].size(); ++idx) {
      std::vector<int> xs = decode(idx, p.size(n), n + 1);
      std::vector<int> ys = decode(static_cast<std::size_t>(fr.f[n][idx]), p2.size(n), n + 1);
      for (int j = 0; j <= n; ++j)
        if (ys[j] != f.f[n][xs[j]]) {
          fail("FR(f)(" + std::to_string(n) + ") is not the product of f(" + std::to_string(n) + ") at " + rp.op.elements[n][idx]);
          break;
        }
    }
    rep.surjective.push_back(surj(f.f[n], p2.size(n)));
    rep.injective.push_back(inj(f.f[n]));
    rep.fr_surjective.push_back(surj(fr.f[n], rp2.op.size(n)));
    rep.fr_injective.push_back(inj(fr.f[n]));
    if (rep.surjective[n] && !rep.fr_surjective[n]) fail("surjectivity not preserved in arity " + std::to_string(n));
    if (rep.injective[n] && !rep.fr_injective[n]) fail("injectivity not preserved in arity " + std::to_string(n));
  }
  fail.finish();
  return rep;
}

}  // namespace catkit
