#pragma once

// Group actions on finite categories, the semidirect product C⋊G and the
// inclusion ι : C -> C⋊G, with a check of the formula
// ι*ι_!F ≅ ⨿_g (ρ_{g⁻¹})*F.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "catkit/fincat.hpp"
#include "catkit/setval.hpp"

namespace catkit {

struct GroupAction {
  FiniteGroup group;
  CatRef target;
  std::vector<CatFunctor> rho;  // indexed by group element
};

/// ρ_e = id, ρ_g ρ_h = ρ_{gh}, every ρ_g an automorphism.
ValidationReport validate_action(const GroupAction& a);

GroupAction trivial_action(CatRef c, FiniteGroup g);

/// Action on a discrete category given by object permutations per element.
GroupAction permutation_action(FiniteGroup g, CatRef discrete,
                               const std::function<std::string(int, const std::string&)>& act);

struct SemidirectCategory {
  CatRef category;
  GroupAction action;
  std::vector<std::pair<Mor, int>> parts;  // morphism -> (φ, g)

  Mor pair(Mor phi, int g) const;
};

/// Objects of C; morphisms "(φ,g)" : ρ_{g⁻¹}(src φ) -> tgt φ, composed by
/// (φ,g)∘(ψ,h) = (φ∘ρ_g(ψ), gh).
SemidirectCategory semidirect(const GroupAction& a);

/// φ |-> (φ, e).
CatFunctor inclusion_iota(const SemidirectCategory& s);

/// κ_g = (ρ_{g⁻¹})^op, an action of G^op on C^op.
GroupAction kappa_action(const GroupAction& a);

/// (C⋊G)^op -> C^op ⋊_κ G^op, (φ,g) |-> (ρ_{g⁻¹}φ, g).
CatFunctor opposite_comparison(const SemidirectCategory& s, const SemidirectCategory& kappa);

struct LanFormulaReport {
  ValidationReport problems;
  SetDiagram lhs;          // ι*ι_!F
  SetDiagram rhs;          // ⨿_g (ρ_{g⁻¹})*F, elements "g:e"
  DiagramMap comparison;   // rhs -> lhs
  std::size_t components = 0;
  bool ok() const { return problems.ok(); }
};

/// Computes both sides and the comparison through the objects
/// (ρ_{g⁻¹}x, (id_x, g)) of ι↓x; checks that every connected component of
/// ι↓x contains exactly one of them as terminal object, and that the
/// comparison is a natural bijection.
LanFormulaReport verify_lan_formula(const SemidirectCategory& s, const SetDiagram& f);

using MapPredicate = std::function<bool(const DiagramMap&)>;

struct HypothesisReport {
  std::vector<std::string> lines;  // "<predicate> <g>: preserved|violated"
  ValidationReport problems;
  std::size_t checks = 0;
  bool ok() const { return problems.ok(); }
};

/// For every g and every corpus map satisfying a predicate, tests whether
/// its restriction along ρ_g does too.
HypothesisReport check_semidirect_hypotheses(const GroupAction& a,
                                             const std::vector<std::pair<std::string, MapPredicate>>& predicates,
                                             const std::vector<DiagramMap>& corpus);

}  // namespace catkit
