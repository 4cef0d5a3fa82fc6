#pragma once

// Finite-scale tools for the canonical model structure on Cat: lifting
// problems, isofibrations, pushouts of categories, and a bounded small
// object argument in categories of set-valued diagrams.

#include <optional>
#include <string>
#include <vector>

#include "catkit/fincat.hpp"
#include "catkit/presentation.hpp"
#include "catkit/setval.hpp"

namespace catkit {

/// A commutative square
///     A --top--> X
///     |i         |p
///     B -bottom> Y
struct LiftingSquare {
  CatFunctor i;
  CatFunctor p;
  CatFunctor top;
  CatFunctor bottom;
};

ValidationReport validate_square(const LiftingSquare& sq);

/// Every isomorphism of the codomain whose source has a preimage lifts to
/// an isomorphism with that source.
bool is_isofibration(const CatFunctor& p);
/// Surjective on objects, full and faithful.
bool is_acyclic_fibration(const CatFunctor& p);

/// Candidate images for diagonals B -> X of a square (over `bottom`,
/// under `top`), or nullopt when i identifies things top keeps apart.
std::optional<FunctorConstraints> lifting_constraints(const CatFunctor& i, const CatFunctor& p,
                                                      const CatFunctor& top, const CatFunctor& bottom);

/// A diagonal d : B -> X with d∘i = top and p∘d = bottom, or nullopt when
/// exhaustive search finds none. Throws BudgetExceeded.
std::optional<CatFunctor> solve_lifting(const LiftingSquare& sq, const SearchBudget& budget = {});

/// All commutative squares from i to p.
std::vector<LiftingSquare> enumerate_squares(const CatFunctor& i, const CatFunctor& p,
                                             const SearchBudget& budget = {});

/// First square from i to p without a diagonal.
std::optional<LiftingSquare> find_unliftable(const CatFunctor& i, const CatFunctor& p,
                                             const SearchBudget& budget = {});

bool has_rlp(const std::vector<CatFunctor>& tests, const CatFunctor& p, const SearchBudget& budget = {});
bool has_llp(const CatFunctor& i, const std::vector<CatFunctor>& tests, const SearchBudget& budget = {});

// ---- pushouts of categories ------------------------------------------------

struct CatPushout {
  CatRef category;
  CatFunctor from_b;  // B -> P
  CatFunctor from_c;  // C -> P
};

/// Pushout of i : A -> B along f : A -> C, completed from generators and
/// relations. Names come from C where possible; a name of B that clashes
/// with one already taken gets primes appended. Throws BudgetExceeded when
/// the closure does not stabilise.
CatPushout pushout_category(const CatFunctor& i, const CatFunctor& f, const ClosureBudget& budget = {});

/// Pushes w : A -> A' out along i : A -> B and tests whether B -> B ⊔_A A'
/// is an equivalence. nullopt when the pushout exceeds the budget.
std::optional<bool> pushout_preserves_equivalence(const CatFunctor& i, const CatFunctor& w,
                                                  const ClosureBudget& budget = {});

// ---- generating sets -----------------------------------------------------------

struct GeneratingSets {
  std::vector<CatFunctor> cofibrations;          // I
  std::vector<CatFunctor> acyclic_cofibrations;  // J
};

/// I = {∅ -> pt, pt⊔pt -> [1], parallel pair -> [1]}, J = {pt -> E}.
GeneratingSets default_generating_sets();

struct GeneratingSetCheck {
  std::size_t functors = 0;
  std::size_t isofibrations = 0;
  std::size_t acyclic_fibrations = 0;
  std::vector<std::string> discrepancies;
  bool ok() const { return discrepancies.empty(); }
};

/// Compares rlp(J) with is_isofibration and rlp(I) with
/// is_acyclic_fibration on every functor between the given categories.
GeneratingSetCheck cross_validate(const GeneratingSets& sets, const std::vector<CatRef>& categories,
                                  const SearchBudget& budget = {});

// ---- bounded small object argument -------------------------------------------------

/// True iff some d : B -> X has d∘i = top and p∘d = bottom.
bool diagram_lift_exists(const DiagramMap& i, const DiagramMap& p, const DiagramMap& top,
                         const DiagramMap& bottom, const SearchBudget& budget = {});

struct CellAttachment {
  std::size_t generator = 0;  // index into I
  DiagramMap top;             // source of the generator -> current stage
  DiagramMap bottom;          // target of the generator -> target of f
};

struct FactorizationResult {
  DiagRef intermediate;
  DiagramMap left;   // source(f) -> intermediate, relative I-cell complex
  DiagramMap right;  // intermediate -> target(f)
  std::vector<std::vector<CellAttachment>> cells;  // per stage
  std::vector<DiagramMap> stage_maps;              // Z_k -> Z_{k+1}
  std::size_t stages = 0;
  bool saturated = false;  // every I-square against `right` has a diagonal
};

/// Each stage attaches, along one pushout of a coproduct of I-maps, a cell
/// for every square from an I-map to the current remainder that has no
/// diagonal. Stops when there is none (saturated) or after max_stages.
FactorizationResult bounded_soa(const std::vector<DiagramMap>& generators, const DiagramMap& f,
                                std::size_t max_stages, const SearchBudget& budget = {});

/// Recomputes every stage from its cell record and checks that the stage
/// maps compose to the left factor and that left and right recompose to f.
ValidationReport validate_factorization(const std::vector<DiagramMap>& generators, const DiagramMap& f,
                                        const FactorizationResult& r);

}  // namespace catkit
