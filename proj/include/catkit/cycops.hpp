#pragma once

// Set-valued operads and cyclic operads truncated at an arity bound A, and
// the right adjoint R of the forgetful functor from cyclic operads to
// operads, RP(n) = P(n)^{n+1}.
//
// Conventions: right actions, a·σ has leg k equal to leg σ(k) of a (leg 0
// is the output); (a·σ)·σ' = a·(σ∘σ'). The cyclic generator is
// τ_n(k) = k - 1 mod (n+1).

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "catkit/fincat.hpp"

namespace catkit {

/// Σ_n as images of 1..n (p[k-1] = σ(k)); extended permutations of
/// {0..n} as images p[k] = σ(k).
using Perm = std::vector<int>;

/// All permutations of {1..n} in lexicographic order.
const std::vector<Perm>& permutations(int n);
/// All permutations of {0..n} in lexicographic order.
const std::vector<Perm>& extended_permutations(int n);
/// Lexicographic rank among permutations of the same values.
std::size_t perm_rank(const Perm& p);
/// (σ∘σ')(k) = σ(σ'(k)).
Perm compose_perms(const Perm& s, const Perm& t);
/// σ ∘_i τ ∈ Σ_{m+n-1}: τ substituted as a block at position i.
Perm block_substitute(const Perm& s, int i, const Perm& t);
/// τ_n(k) = k - 1 mod (n+1).
Perm cyclic_generator(int n);
std::string perm_name(const Perm& p);

struct TruncatedOperad {
  int bound = 0;
  std::vector<std::vector<std::string>> elements;  // per arity 0..bound
  int unit = 0;                                    // index in arity 1
  // comp[m][n][((i-1)·|P(m)| + a)·|P(n)| + b], present when m ≥ 1 and m+n-1 ≤ bound
  std::vector<std::vector<std::vector<int>>> comp;
  // action[n][a·n! + rank σ]
  std::vector<std::vector<int>> action;

  std::size_t size(int n) const { return elements[n].size(); }
  bool composable(int m, int n) const { return m >= 1 && m + n - 1 <= bound; }
  int compose(int m, int i, int a, int n, int b) const;
  int act(int n, int a, const Perm& s) const;
  int act_rank(int n, int a, std::size_t rank) const;
};

struct TruncatedCyclicOperad {
  TruncatedOperad op;
  // cyclic[n][a·(n+1)! + rank σ]
  std::vector<std::vector<int>> cyclic;

  int act(int n, int a, const Perm& s) const;
};

/// Allocates tables for the given element sets, all entries -1.
TruncatedOperad empty_operad_tables(int bound, std::vector<std::vector<std::string>> elements, int unit);
void allocate_cyclic_tables(TruncatedCyclicOperad& q);

ValidationReport validate_operad(const TruncatedOperad& p);
ValidationReport validate_cyclic(const TruncatedCyclicOperad& q);

/// Every P(n) a point "*".
TruncatedOperad terminal_operad(int bound);
TruncatedCyclicOperad terminal_cyclic(int bound);
/// P(n) = Σ_n, composition by block substitution, action by composition.
/// Without arity 0 when `unital` is false.
TruncatedOperad associative_operad(int bound, bool unital = true);
/// P(n) = M for n ≥ 1 (and n = 0 when `with_zero`), composition by the
/// monoid product, trivial actions. M must be commutative.
TruncatedOperad monoid_operad(int bound, const std::vector<std::string>& names,
                              const std::vector<std::vector<int>>& mul, bool with_zero);
/// The same with the trivial extended action.
TruncatedCyclicOperad monoid_cyclic(int bound, const std::vector<std::string>& names,
                                    const std::vector<std::vector<int>>& mul, bool with_zero);
/// One of the 2-element commutative monoids, with or without arity 0,
/// chosen by `rng`.
TruncatedOperad random_two_element_operad(std::mt19937& rng, int bound);

TruncatedOperad forget_cyclic(const TruncatedCyclicOperad& q);

/// σ_i(k) = σ(k - i) - σ(n + 1 - i) mod (n+1) for k = 1..n. Throws
/// InternalError naming (σ, i, k) when a value leaves {1..n}.
Perm sigma_i(const Perm& sigma, int i);
/// n + 1 - σ(n + 1 - i) mod (n+1).
int rotated_index(const Perm& sigma, int i);

/// RP(n) = P(n)^{n+1} with elements "(x_0,...,x_n)".
TruncatedCyclicOperad right_adjoint_R(const TruncatedOperad& p);

/// Arity-wise functions.
struct OperadMap {
  std::vector<std::vector<int>> f;
  friend bool operator==(const OperadMap&, const OperadMap&) = default;
};

bool is_operad_map(const TruncatedOperad& s, const TruncatedOperad& t, const OperadMap& f);
bool is_cyclic_map(const TruncatedCyclicOperad& s, const TruncatedCyclicOperad& t, const OperadMap& f);
std::vector<OperadMap> enumerate_operad_maps(const TruncatedOperad& s, const TruncatedOperad& t,
                                             std::size_t max_results = 1'000'000);
std::vector<OperadMap> enumerate_cyclic_maps(const TruncatedCyclicOperad& s, const TruncatedCyclicOperad& t,
                                             std::size_t max_results = 1'000'000);

/// R on a map of operads: (x_j) |-> (f(x_j)).
OperadMap R_map(const TruncatedOperad& p, const TruncatedOperad& p2, const OperadMap& f);

struct AdjunctionCountReport {
  std::size_t operad_maps = 0;  // forget(Q) -> P
  std::size_t cyclic_maps = 0;  // Q -> RP
  bool pi0_bijective = false;   // h |-> π_0∘forget(h)
  bool ok() const { return operad_maps == cyclic_maps; }
};

AdjunctionCountReport check_adjunction_count(const TruncatedCyclicOperad& q, const TruncatedOperad& p);

struct FRProductsReport {
  ValidationReport problems;
  std::vector<bool> surjective;     // f(n)
  std::vector<bool> injective;
  std::vector<bool> fr_surjective;  // FR(f)(n)
  std::vector<bool> fr_injective;
  bool ok() const { return problems.ok(); }
};

/// FR(f)(n) = ∏_{n+1} f(n), and surjectivity / injectivity carry over.
FRProductsReport check_FR_products(const TruncatedCyclicOperad& q, const TruncatedCyclicOperad& q2,
                                   const OperadMap& f);

}  // namespace catkit
