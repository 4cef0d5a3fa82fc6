#pragma once

// The category ∇ = Δ⋊C₂ truncated at [N], in two presentations, and
// truncated (real) simplicial sets as diagrams on op(Δ≤N) and op(∇≤N).

#include <string>
#include <vector>

#include "catkit/fincat.hpp"
#include "catkit/semidirect.hpp"
#include "catkit/setval.hpp"

namespace catkit {

/// Δ≤N: objects "[k]", morphisms "m>n:v_0...v_m" listing the values.
CatRef simplex_category(int n);

/// 𝓕(f) = τ^n f τ^m for f : [m] -> [n], τ^k(i) = k - i.
CatFunctor reversal(const CatRef& delta);

struct MonotonePair {
  std::vector<int> f;  // [m] -> [n]
  int n = 0;
  int t = 1;           // +1 or -1
};

/// +1 / -1 for increasing / decreasing nonconstant maps, 0 for constant
/// maps; throws InputError when f is not monotone.
int monotone_sign(const std::vector<int>& f);
ValidationReport validate_monotone_pair(const MonotonePair& p);

struct Nabla {
  int dim = 0;
  CatRef delta;              // Δ≤N
  GroupAction action;        // C₂ = {e, s} acting by 𝓕
  SemidirectCategory nabla;  // Δ≤N ⋊ C₂
  CatRef monotone;           // signed monotone maps "m>n:v...:+"
  CatFunctor iso;            // nabla -> monotone
  CatRef delta_op;
  CatRef nabla_op;
  CatFunctor iota_op;        // op(Δ≤N) -> op(∇≤N)

  Mor delta_morphism(const std::vector<int>& f, int n) const;
  /// (id_[k], s).
  Mor flip(int k) const;
};

/// Builds both presentations and the isomorphism (φ,e) |-> (φ,+1),
/// (φ,s) |-> (φ∘τ^m, -1). Throws InternalError if it is not one.
Nabla build_nabla(int n);

/// |hom_∇([m],[n])| counted on both presentations; throws InternalError if
/// they differ.
std::size_t nabla_hom_count(const Nabla& nb, int m, int n);

// ---- simplicial sets ------------------------------------------------------------

/// A simplicial set A (diagram on op(Δ≤N)) with σ_k : A_k -> A_k.
struct InvolutiveSSet {
  SetDiagram a;
  std::vector<std::vector<int>> sigma;  // per level
};

/// σ_k σ_k = id and α^* σ_n = σ_m 𝓕(α)^* for every α : [m] -> [n].
ValidationReport validate_involutive_sset(const Nabla& nb, const InvolutiveSSet& a);

/// ι*X with σ_k = (id_[k], s)^*.
InvolutiveSSet to_involutive(const Nabla& nb, const SetDiagram& x);
/// (α,e)^* = α^*, (α,s)^* = σ_m α^*. Throws InputError on invalid input.
SetDiagram from_involutive(const Nabla& nb, const InvolutiveSSet& a);

/// Δ^k and ∂Δ^k on op(Δ≤N), elements named by morphism names.
SetDiagram simplex(const Nabla& nb, int k);
DiagramMap boundary_inclusion(const Nabla& nb, int k);

/// Per level of a simplicial set (diagram on op(Δ≤N)): whether each
/// simplex is s^*y for a non-identity surjection s.
std::vector<std::vector<bool>> degenerate_simplices(const Nabla& nb, const SetDiagram& a);

struct NormalityVerdict {
  bool injective = false;
  bool free_all = false;            // σ free on Y_k ∖ X_k for every k
  bool free_nondegenerate = false;  // the same, non-degenerate simplices only
};

/// Both criteria for a map of diagrams on op(∇≤N).
NormalityVerdict normality(const Nabla& nb, const DiagramMap& f);
/// Levelwise injective with free complement. Throws InternalError when the
/// all-simplices and non-degenerate criteria disagree.
bool is_normal_mono(const Nabla& nb, const DiagramMap& f);

/// ι_!(∂Δ^k -> Δ^k) for k = 0..N.
std::vector<DiagramMap> generating_cofibrations(const Nabla& nb);

}  // namespace catkit
