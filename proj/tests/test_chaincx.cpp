#include <doctest.h>

#include <random>
#include <set>

#include "catkit/chaincx.hpp"
#include "catkit/errors.hpp"

using namespace catkit;

namespace {

std::vector<int> apply(const Matrix& m, const std::vector<int>& v, int p) {
  std::vector<int> r(m.rows, 0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] = (r[i] + m.at(i, j) * v[j]) % p;
  return r;
}

// all vectors of F_p^n
std::vector<std::vector<int>> all_vectors(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(n, 0);
  while (true) {
    out.push_back(v);
    int k = 0;
    while (k < n && ++v[k] == p) v[k++] = 0;
    if (k == n) return out;
  }
}

// |H^k| by counting cycles and boundaries
std::vector<int> brute_homology_dims(const FiniteComplex& c) {
  std::vector<int> h;
  for (int k = c.lo; k <= c.hi; ++k) {
    std::size_t cycles = 0;
    for (const auto& v : all_vectors(c.dim(k), c.p)) {
      auto w = apply(c.diff(k), v, c.p);
      if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) ++cycles;
    }
    std::set<std::vector<int>> bounds;
    for (const auto& v : all_vectors(c.dim(k - 1), c.p)) bounds.insert(apply(c.diff(k - 1), v, c.p));
    std::size_t ratio = cycles / bounds.size();
    int d = 0;
    while (ratio > 1) {
      ratio /= c.p;
      ++d;
    }
    h.push_back(d);
  }
  return h;
}

// module maps between single-degree modules, counted by enumeration
std::uint64_t brute_hom_count(const FiniteAlgebra& a, const ModuleComplex& m, const ModuleComplex& n) {
  const int dm = m.cx.dim(0), dn = n.cx.dim(0), p = a.p;
  std::uint64_t count = 0;
  for (const auto& entries : all_vectors(dm * dn, p)) {
    Matrix g(dn, dm);
    g.a = entries;
    bool ok = true;
    for (int i = 0; i < a.dim && ok; ++i) ok = mat_mul(g, m.action[0][i], p) == mat_mul(n.action[0][i], g, p);
    if (ok) ++count;
  }
  return count;
}

Matrix mat(int r, int c, std::vector<int> a) {
  Matrix m(r, c);
  m.a = std::move(a);
  return m;
}

// R = k[x]/(x²) acting on k by 0: the inclusion k -> R onto xR
ModuleComplexMap socle_inclusion(const FiniteAlgebra& r) {
  ModuleComplex k = trivial_module(r), reg = regular_module(r);
  return {k, reg, {mat(2, 1, {0, 1})}};
}

}  // namespace

TEST_CASE("linear algebra over F_p") {
  Matrix m = mat(2, 3, {1, 2, 3, 2, 4, 6});
  CHECK(mat_rank(m, 7) == 1);
  CHECK(mat_rank(m, 2) == 1);
  Matrix k = kernel_basis(m, 7);
  CHECK(k.cols == 2);
  CHECK(mat_mul(m, k, 7) == Matrix(2, 2));
  Matrix e = mat(3, 2, {1, 0, 1, 1, 0, 1});
  CHECK(mat_mul(left_inverse(e, 5), e, 5) == Matrix::identity(2));
  CHECK_THROWS_AS(left_inverse(mat(2, 2, {1, 1, 1, 1}), 2), InputError);
  for (int a = 1; a < 5; ++a) CHECK(a * inverse_mod(a, 5) % 5 == 1);
  CHECK(is_prime(5));
  CHECK_FALSE(is_prime(4));
}

TEST_CASE("complex validation") {
  CHECK(validate_complex(identity_cone(2)).ok());
  CHECK(validate_complex(zero_complex(3, -2, 2)).ok());
  FiniteComplex bad = make_complex(2, 0, {1, 1, 1}, {mat(1, 1, {1}), mat(1, 1, {1})});
  ValidationReport r = validate_complex(bad);
  REQUIRE_FALSE(r.ok());
  CHECK(r.summary().find("d∘d") != std::string::npos);
  CHECK_THROWS_AS(make_complex(4, 0, {1}, {}), InputError);
}

TEST_CASE("homology dimensions") {
  for (int lo = -2; lo <= 0; ++lo) {
    std::vector<int> z = homology_dims(zero_complex(2, lo, lo + 2));
    CHECK(std::all_of(z.begin(), z.end(), [](int x) { return x == 0; }));
  }
  for (int p : {2, 5}) {
    std::vector<int> h = homology_dims(identity_cone(p));
    CHECK(h == std::vector<int>{0, 0});
  }
  std::mt19937 rng(11);
  FiniteAlgebra k2 = truncated_polynomial(2, 0), d2 = truncated_polynomial(2, 1);
  for (int t = 0; t < 30; ++t) {
    ModuleComplex m = random_module_complex(rng, t % 2 ? k2 : d2, -1, 1, 4);
    REQUIRE(validate_module_complex(t % 2 ? k2 : d2, m).ok());
    CHECK(homology_dims(m.cx) == brute_homology_dims(m.cx));
  }
}

TEST_CASE("quasi-isomorphisms and degreewise epis and monos") {
  FiniteComplex c = identity_cone(2);
  CHECK(is_quasi_iso(identity_map(c)));
  CHECK(is_degreewise_epi(to_zero(c)));
  CHECK(is_degreewise_mono(from_zero(c)));
  CHECK(is_quasi_iso(to_zero(c)));

  // diagonal k -> k² in one degree
  FiniteComplex k = make_complex(2, 0, {1}, {}), k2 = make_complex(2, 0, {2}, {});
  ComplexMap diag{k, k2, {mat(2, 1, {1, 1})}};
  REQUIRE(validate_complex_map(diag).ok());
  CHECK(is_degreewise_mono(diag));
  CHECK_FALSE(is_degreewise_epi(diag));
  CHECK_FALSE(is_quasi_iso(diag));

  // same homology dimensions, but the map kills it
  ComplexMap zero{k, k, {mat(1, 1, {0})}};
  CHECK_FALSE(is_quasi_iso(zero));

  // swapping the two copies of k[0] is a quasi-iso
  ComplexMap swap{k2, k2, {mat(2, 2, {0, 1, 1, 0})}};
  CHECK(is_quasi_iso(swap));
}

TEST_CASE("truncations") {
  std::mt19937 rng(3);
  FiniteAlgebra k = truncated_polynomial(5, 0);
  for (int t = 0; t < 10; ++t) {
    FiniteComplex c = random_module_complex(rng, k, 0, 2, 3).cx;
    FiniteComplex n = naive_truncate(c), h = homotopy_truncate(c);
    CHECK(n.dims == c.dims);
    CHECK(n.d == c.d);
    CHECK(h.dims == c.dims);
    CHECK(h.d == c.d);
  }
  for (int p : {2, 5}) {
    FiniteComplex c = identity_cone(p);
    FiniteComplex n = naive_truncate(c), h = homotopy_truncate(c);
    CHECK(n.lo == 0);
    CHECK(n.dims == std::vector<int>{1});
    CHECK(h.dims == std::vector<int>{0});
    CHECK(validate_complex(n).ok());
    CHECK(validate_complex(h).ok());
  }
  // additivity
  for (int t = 0; t < 10; ++t) {
    FiniteComplex a = random_module_complex(rng, k, -2, 1, 3).cx;
    FiniteComplex b = random_module_complex(rng, k, -1, 2, 3).cx;
    FiniteComplex s = direct_sum(a, b);
    CHECK(naive_truncate(s).dims == direct_sum(naive_truncate(a), naive_truncate(b)).dims);
    CHECK(homotopy_truncate(s).dims == direct_sum(homotopy_truncate(a), homotopy_truncate(b)).dims);
    CHECK(homology_dims(homotopy_truncate(s)) == homology_dims(direct_sum(homotopy_truncate(a), homotopy_truncate(b))));
    CHECK(validate_complex(homotopy_truncate(s)).ok());
  }
}

TEST_CASE("the truncation counterexample") {
  for (int p : {2, 5}) {
    TruncationCounterexample r = reproduce_truncation_counterexample(p);
    CHECK(r.acyclic_fib);
    CHECK_FALSE(r.FR_acyclic_fib);
    CHECK(r.FR_source_dims == std::vector<int>{1});
    CHECK(r.L_quasi_iso);
    CHECK(r.L_source_dims == std::vector<int>{0});
    CHECK(r.reproduced());
  }
  for (int p : {3, 7}) CHECK(reproduce_truncation_counterexample(p).reproduced());
}

TEST_CASE("algebras and modules") {
  for (int v = 0; v <= 2; ++v) CHECK(validate_algebra(truncated_polynomial(5, v)).ok());
  CHECK(validate_algebra_map(polynomial_inclusion(2, 1, 2)).ok());
  CHECK(validate_algebra_map(augmentation(5)).ok());
  FiniteAlgebra d = truncated_polynomial(2, 1);
  CHECK(validate_module_complex(d, regular_module(d)).ok());
  CHECK(validate_module_complex(d, trivial_module(d)).ok());
  ModuleComplex bad = module_in_degree(d, 1, {mat(1, 1, {1}), mat(1, 1, {1})});
  CHECK_FALSE(validate_module_complex(d, bad).ok());  // x² = 0 but x acts by 1
  AlgebraMap notmult{d, d, mat(2, 2, {1, 1, 0, 1})};
  CHECK_FALSE(validate_algebra_map(notmult).ok());  // (1 + x)² ≠ 0
  AlgebraMap nounit{d, d, mat(2, 2, {0, 0, 1, 1})};
  CHECK_FALSE(validate_algebra_map(nounit).ok());
}

TEST_CASE("change of rings along the identity") {
  FiniteAlgebra d = truncated_polynomial(5, 1);
  AlgebraMap id = identity_algebra_map(d);
  std::mt19937 rng(5);
  for (int t = 0; t < 8; ++t) {
    ModuleComplex m = random_module_complex(rng, d, 0, 1, 3);
    for (const ModuleComplex& x : {restrict_scalars(id, m), induce(id, m), coinduce(id, m)}) {
      CHECK(x.cx.dims == m.cx.dims);
      CHECK(validate_module_complex(d, x).ok());
      // equally many maps out of and into m as m itself
      CHECK(hom_dim(d, x, m) == hom_dim(d, m, m));
      CHECK(hom_dim(d, m, x) == hom_dim(d, m, m));
      CHECK(homology_dims(x.cx) == homology_dims(m.cx));
    }
  }
}

TEST_CASE("induce and coinduce dimensions") {
  for (int p : {2, 5}) {
    AlgebraMap f = polynomial_inclusion(p, 0, 1);  // k -> k[x]/(x²)
    FiniteAlgebra k = f.src;
    ModuleComplex m{make_complex(p, -1, {1, 1, 1}, {}), {}};
    for (int deg = 0; deg < 3; ++deg) m.action.push_back({Matrix::identity(1)});
    ModuleComplex ind = induce(f, m), co = coinduce(f, m);
    CHECK(ind.cx.dims == std::vector<int>{2, 2, 2});
    CHECK(co.cx.dims == std::vector<int>{2, 2, 2});
    CHECK(validate_module_complex(f.tgt, ind).ok());
    CHECK(validate_module_complex(f.tgt, co).ok());
    CHECK(validate_module_complex(k, restrict_scalars(f, ind)).ok());
  }
  // free of rank 2 over k[x]/(x²): dimensions double
  AlgebraMap g = polynomial_inclusion(5, 1, 2);
  CHECK(is_free_over_source(g));
  for (const ModuleComplex& m : {regular_module(g.src), trivial_module(g.src)}) {
    CHECK(coinduce(g, m).cx.dim(0) == 2 * m.cx.dim(0));
    CHECK(induce(g, m).cx.dim(0) == 2 * m.cx.dim(0));
  }
}

TEST_CASE("coinduce is exact on a short exact sequence when f*S is free") {
  for (int p : {2, 5}) {
    AlgebraMap g = polynomial_inclusion(p, 1, 2);
    FiniteAlgebra r = g.src;
    // 0 -> k -> R -> k -> 0
    ModuleComplexMap i = socle_inclusion(r);
    ModuleComplexMap q{regular_module(r), trivial_module(r), {mat(1, 2, {1, 0})}};
    REQUIRE(validate_module_map(r, i).ok());
    REQUIRE(validate_module_map(r, q).ok());
    ModuleComplexMap ci = coinduce(g, i), cq = coinduce(g, q);
    const int pp = p;
    CHECK(mat_rank(ci.f[0], pp) == ci.src.cx.dim(0));
    CHECK(mat_rank(cq.f[0], pp) == cq.tgt.cx.dim(0));
    CHECK(mat_mul(cq.f[0], ci.f[0], pp) == Matrix(cq.tgt.cx.dim(0), ci.src.cx.dim(0)));
    CHECK(ci.src.cx.dim(0) + cq.tgt.cx.dim(0) == ci.tgt.cx.dim(0));
    CHECK(validate_module_map(g.tgt, ci).ok());
    CHECK(validate_module_map(g.tgt, cq).ok());
  }
}

TEST_CASE("non-free change of rings: induction loses a mono") {
  AlgebraMap eps = augmentation(2);
  CHECK_FALSE(is_free_over_source(eps));
  ModuleComplexMap i = socle_inclusion(eps.src);
  CHECK(is_degreewise_mono(i.underlying()));
  CHECK_FALSE(is_degreewise_mono(induce(eps, i).underlying()));
}

TEST_CASE("adjunction counts on modules of dimension at most 3") {
  for (int p : {2, 5}) {
    std::vector<AlgebraMap> maps{identity_algebra_map(truncated_polynomial(p, 1)), polynomial_inclusion(p, 0, 1),
                                 polynomial_inclusion(p, 1, 2), augmentation(p)};
    for (const AlgebraMap& f : maps) {
      REQUIRE(validate_algebra_map(f).ok());
      std::vector<ModuleComplex> ms{regular_module(f.src), trivial_module(f.src), module_direct_sum(trivial_module(f.src), trivial_module(f.src))};
      if (f.src.dim == 2) ms.push_back(module_direct_sum(regular_module(f.src), trivial_module(f.src)));
      std::vector<ModuleComplex> ns{trivial_module(f.tgt), regular_module(f.tgt)};
      if (f.tgt.dim <= 2) ns.push_back(module_direct_sum(trivial_module(f.tgt), regular_module(f.tgt)));
      for (const auto& m : ms)
        for (const auto& n : ns) {
          if (m.cx.dim(0) > 3 || n.cx.dim(0) > 4) continue;
          AdjunctionCounts c = adjunction_counts(f, m, n);
          CHECK(c.ok());
          if (p == 2 && m.cx.dim(0) <= 3 && n.cx.dim(0) <= 2) {
            CHECK(c.restrict_left == brute_hom_count(f.src, m, restrict_scalars(f, n)));
            CHECK(c.restrict_right == brute_hom_count(f.src, restrict_scalars(f, n), m));
            CHECK(c.induce_side == brute_hom_count(f.tgt, induce(f, m), n));
            CHECK(c.coinduce_side == brute_hom_count(f.tgt, n, coinduce(f, m)));
          }
        }
    }
  }
}

TEST_CASE("random complexes: adjunction counts with degrees") {
  std::mt19937 rng(17);
  AlgebraMap f = polynomial_inclusion(2, 1, 2);
  for (int t = 0; t < 10; ++t) {
    ModuleComplex m = random_module_complex(rng, f.src, 0, 1, 3);
    ModuleComplex n = random_module_complex(rng, f.tgt, 0, 1, 4);
    REQUIRE(validate_module_complex(f.tgt, n).ok());
    CHECK(adjunction_counts(f, m, n).ok());
  }
}

TEST_CASE("preservation when f*S is free") {
  for (int p : {2, 5}) {
    std::mt19937 rng(100 + p);
    for (const AlgebraMap& f : {polynomial_inclusion(p, 0, 1), polynomial_inclusion(p, 1, 2)}) {
      REQUIRE(is_free_over_source(f));
      const FiniteAlgebra& r = f.src;
      std::vector<ModuleComplexMap> maps;
      for (int t = 0; t < 12; ++t) {
        ModuleComplex a = random_module_complex(rng, r, -1, 1, 3);
        ModuleComplex b = random_module_complex(rng, r, -1, 1, 3);
        maps.push_back(random_module_map(rng, r, a, b));
        maps.push_back(module_identity(a));
        maps.push_back(module_to_zero(r, a));
        // projection and inclusion of a summand
        ModuleComplex s = module_direct_sum(a, b);
        ModuleComplexMap proj{s, a, {}}, incl{a, s, {}};
        for (int k = -1; k <= 1; ++k) {
          Matrix pr(a.cx.dim(k), s.cx.dim(k)), in(s.cx.dim(k), a.cx.dim(k));
          for (int i = 0; i < a.cx.dim(k); ++i) pr.at(i, i) = in.at(i, i) = 1;
          proj.f.push_back(pr);
          incl.f.push_back(in);
        }
        maps.push_back(proj);
        maps.push_back(incl);
      }
      // an acyclic complex R --id--> R
      ModuleComplex reg = regular_module(r);
      ModuleComplex cone{make_complex(p, -1, {r.dim, r.dim, 0}, {Matrix::identity(r.dim)}), {reg.action[0], reg.action[0], {}}};
      cone.action[2] = std::vector<Matrix>(r.dim, Matrix(0, 0));
      maps.push_back(module_to_zero(r, cone));
      for (const auto& g : maps) REQUIRE(validate_module_map(r, g).ok());
      PreservationReport rep = check_preservation(f, maps);
      INFO(rep.failures.size());
      CHECK(rep.ok());
      CHECK(rep.epis > 0);
      CHECK(rep.monos > 0);
      CHECK(rep.quasi_isos > 0);
    }
  }
}
