#pragma once

// Finite-dimensional cochain complexes over F_p, complexes of modules over
// finite-dimensional F_p-algebras, change of rings and truncations.
//
// Cochain convention throughout: d_k : C^k -> C^{k+1}. A chain complex is
// the same data with degrees negated.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "catkit/fincat.hpp"

namespace catkit {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> a;  // row-major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  int& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  int at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  static Matrix identity(int n);
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix mat_mul(const Matrix& x, const Matrix& y, int p);
Matrix mat_add(const Matrix& x, const Matrix& y, int p);
Matrix mat_scale(const Matrix& x, int s, int p);
int mat_rank(const Matrix& m, int p);
/// Columns form a basis of the null space.
Matrix kernel_basis(const Matrix& m, int p);
/// Columns form a basis of the column space.
Matrix image_basis(const Matrix& m, int p);
/// L with L·m = id, for m of full column rank. Throws InputError otherwise.
Matrix left_inverse(const Matrix& m, int p);
/// Block-diagonal I_n ⊗ m.
Matrix block_diagonal(int n, const Matrix& m);
int inverse_mod(int a, int p);
bool is_prime(int p);

struct FiniteComplex {
  int p = 2;
  int lo = 0;
  int hi = 0;
  std::vector<int> dims;  // dims[k - lo]
  std::vector<Matrix> d;  // d[k - lo] : C^k -> C^{k+1}, zero at hi

  int dim(int k) const { return k < lo || k > hi ? 0 : dims[k - lo]; }
  /// d_k, zero outside the window.
  Matrix diff(int k) const;
};

/// Zero matrices are filled in for absent differentials.
FiniteComplex make_complex(int p, int lo, std::vector<int> dims, std::vector<Matrix> d);
FiniteComplex zero_complex(int p, int lo, int hi);
ValidationReport validate_complex(const FiniteComplex& c);

/// The field in degrees -1 and 0 with the identity as differential.
FiniteComplex identity_cone(int p);

struct ComplexMap {
  FiniteComplex src;
  FiniteComplex tgt;
  std::vector<Matrix> f;  // f[k - lo], both complexes on the same window
};

ValidationReport validate_complex_map(const ComplexMap& f);
ComplexMap identity_map(const FiniteComplex& c);
ComplexMap zero_map(const FiniteComplex& c, const FiniteComplex& d);
ComplexMap to_zero(const FiniteComplex& c);
ComplexMap from_zero(const FiniteComplex& c);
ComplexMap compose(const ComplexMap& g, const ComplexMap& f);

/// Per degree lo..hi.
std::vector<int> homology_dims(const FiniteComplex& c);
bool is_quasi_iso(const ComplexMap& f);
bool is_degreewise_epi(const ComplexMap& f);
bool is_degreewise_mono(const ComplexMap& f);

FiniteComplex direct_sum(const FiniteComplex& c, const FiniteComplex& d);
ComplexMap direct_sum(const ComplexMap& f, const ComplexMap& g);
/// Re-window to [lo, hi] with zero padding; components outside must vanish.
FiniteComplex rewindow(const FiniteComplex& c, int lo, int hi);

/// Keeps degrees ≥ 0 unchanged, discards negative degrees. Window [max(lo,0), max(hi,0)].
FiniteComplex naive_truncate(const FiniteComplex& c);
ComplexMap naive_truncate(const ComplexMap& f);
/// As naive_truncate, but degree 0 becomes coker(d_{-1}).
FiniteComplex homotopy_truncate(const FiniteComplex& c);
ComplexMap homotopy_truncate(const ComplexMap& f);

struct TruncationCounterexample {
  int p = 0;
  bool epi = false;
  bool quasi_iso = false;
  bool acyclic_fib = false;     // C -> 0
  bool FR_acyclic_fib = false;  // naive truncation of C -> 0
  bool FR_quasi_iso = false;
  bool L_quasi_iso = false;     // homotopy truncation of C -> 0
  std::vector<int> FR_source_dims;
  std::vector<int> L_source_dims;
  /// The verdicts {true, false} on the two acyclic-fibration questions.
  bool reproduced() const { return acyclic_fib && !FR_acyclic_fib && L_quasi_iso; }
};

TruncationCounterexample reproduce_truncation_counterexample(int p);

// ---- algebras and modules --------------------------------------------------------

struct FiniteAlgebra {
  int p = 2;
  int dim = 1;
  std::vector<int> c;     // e_i e_j = Σ_k c[(i·dim + j)·dim + k] e_k
  std::vector<int> unit;  // coordinates
  std::vector<std::string> basis;

  int coeff(int i, int j, int k) const { return c[(static_cast<std::size_t>(i) * dim + j) * dim + k]; }
  std::vector<int> multiply(const std::vector<int>& x, const std::vector<int>& y) const;
};

ValidationReport validate_algebra(const FiniteAlgebra& a);
/// F_p[x_1..x_n]/(x_i²), basis monomials by bitmask; n = 0 is the field.
FiniteAlgebra truncated_polynomial(int p, int vars);

struct AlgebraMap {
  FiniteAlgebra src;
  FiniteAlgebra tgt;
  Matrix f;  // tgt.dim × src.dim
};

ValidationReport validate_algebra_map(const AlgebraMap& f);
AlgebraMap identity_algebra_map(const FiniteAlgebra& a);
/// F_p[x_1..x_m]/(..) -> F_p[x_1..x_n]/(..), m ≤ n, variables to variables.
AlgebraMap polynomial_inclusion(int p, int m, int n);
/// F_p[x]/(x²) -> F_p, x |-> 0.
AlgebraMap augmentation(int p);

/// A complex of left modules: per degree, one matrix per algebra basis element.
struct ModuleComplex {
  FiniteComplex cx;
  std::vector<std::vector<Matrix>> action;  // action[k - lo][i]
};

struct ModuleComplexMap {
  ModuleComplex src;
  ModuleComplex tgt;
  std::vector<Matrix> f;

  ComplexMap underlying() const { return {src.cx, tgt.cx, f}; }
};

ValidationReport validate_module_complex(const FiniteAlgebra& a, const ModuleComplex& m);
ValidationReport validate_module_map(const FiniteAlgebra& a, const ModuleComplexMap& f);

/// A module concentrated in degree 0.
ModuleComplex module_in_degree(const FiniteAlgebra& a, int dim, std::vector<Matrix> action);
/// The regular module and the trivial module (radical acting by 0, for
/// truncated polynomial algebras) in degree 0.
ModuleComplex regular_module(const FiniteAlgebra& a);
ModuleComplex trivial_module(const FiniteAlgebra& a);
ModuleComplex zero_module_complex(const FiniteAlgebra& a, int lo, int hi);
ModuleComplex module_direct_sum(const ModuleComplex& m, const ModuleComplex& n);
ModuleComplexMap module_identity(const ModuleComplex& m);
ModuleComplexMap module_to_zero(const FiniteAlgebra& a, const ModuleComplex& m);

/// f* : S-modules -> R-modules.
ModuleComplex restrict_scalars(const AlgebraMap& f, const ModuleComplex& n);
ModuleComplexMap restrict_scalars(const AlgebraMap& f, const ModuleComplexMap& g);
/// S ⊗_R M, degreewise.
ModuleComplex induce(const AlgebraMap& f, const ModuleComplex& m);
ModuleComplexMap induce(const AlgebraMap& f, const ModuleComplexMap& g);
/// Hom_R(f*S, M), degreewise.
ModuleComplex coinduce(const AlgebraMap& f, const ModuleComplex& m);
ModuleComplexMap coinduce(const AlgebraMap& f, const ModuleComplexMap& g);

/// Dimension of the space of A-linear chain maps m -> n (same window).
int hom_dim(const FiniteAlgebra& a, const ModuleComplex& m, const ModuleComplex& n);
/// A basis of that space, each element as per-degree matrices.
std::vector<std::vector<Matrix>> hom_basis(const FiniteAlgebra& a, const ModuleComplex& m, const ModuleComplex& n);

struct AdjunctionCounts {
  std::uint64_t induce_side = 0;    // |hom_S(induce M, N)|
  std::uint64_t restrict_left = 0;  // |hom_R(M, f*N)|
  std::uint64_t restrict_right = 0; // |hom_R(f*N, M)|
  std::uint64_t coinduce_side = 0;  // |hom_S(N, coinduce M)|
  bool ok() const { return induce_side == restrict_left && restrict_right == coinduce_side; }
};

AdjunctionCounts adjunction_counts(const AlgebraMap& f, const ModuleComplex& m, const ModuleComplex& n);

/// Whether f*S is a free left R-module, by exhaustive search for a basis.
/// Throws BudgetExceeded past `budget` candidate tuples.
bool is_free_over_source(const AlgebraMap& f, std::uint64_t budget = 5'000'000);

struct PreservationReport {
  int epis = 0, epis_preserved = 0;
  int monos = 0, monos_preserved = 0;
  int quasi_isos = 0, coinduce_qi_preserved = 0, induce_qi_preserved = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// restrict∘coinduce on epis and quasi-isos, restrict∘induce on monos and
/// quasi-isos.
PreservationReport check_preservation(const AlgebraMap& f, const std::vector<ModuleComplexMap>& maps);

/// Random complex of modules on [lo, hi] built from trivial and regular
/// summands, with random A-linear differentials.
ModuleComplex random_module_complex(std::mt19937& rng, const FiniteAlgebra& a, int lo, int hi, int max_dim);
/// A uniformly random A-linear chain map.
ModuleComplexMap random_module_map(std::mt19937& rng, const FiniteAlgebra& a, const ModuleComplex& m,
                                   const ModuleComplex& n);

}  // namespace catkit
