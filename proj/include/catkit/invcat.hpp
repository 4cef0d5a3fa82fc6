#pragma once

// Categories with anti-involution τ : X^op -> X, τ^op τ = id; the adjoint
// string L ⊣ F ⊣ R with Cat; cofibrations; dagger categories.

#include <optional>
#include <string>
#include <vector>

#include "catkit/catmodel.hpp"
#include "catkit/fincat.hpp"

namespace catkit {

struct InvolutiveCategory {
  CatRef base;
  CatRef base_op;  // opposite(base)
  CatFunctor tau;  // base_op -> base

  Ob tau_object(Ob x) const { return tau.on_object(x); }
  Mor tau_morphism(Mor m) const { return tau.on_morphism(m); }
};

/// τ^op τ = id on objects and morphisms, τ a functor X^op -> X.
ValidationReport validate_involutive(const InvolutiveCategory& x);

/// Involution given by name pairs on objects and morphisms.
InvolutiveCategory make_involutive(CatRef base, const std::vector<std::pair<std::string, std::string>>& objects,
                                   const std::vector<std::pair<std::string, std::string>>& morphisms);
InvolutiveCategory make_involutive(CatRef base, CatFunctor tau);

/// Every anti-involution of `base`, in functor enumeration order.
std::vector<InvolutiveCategory> enumerate_involutions(const CatRef& base, const SearchBudget& budget = {});

/// Identity on objects.
bool is_dagger(const InvolutiveCategory& x);

struct EquivariantFunctor {
  InvolutiveCategory source;
  InvolutiveCategory target;
  CatFunctor f;
};

/// τ f^op = f τ'.
ValidationReport validate_equivariant(const EquivariantFunctor& f);
bool is_equivariant(const InvolutiveCategory& src, const InvolutiveCategory& tgt, const CatFunctor& f);
std::vector<EquivariantFunctor> enumerate_equivariant(const InvolutiveCategory& src, const InvolutiveCategory& tgt,
                                                      const SearchBudget& budget = {});
EquivariantFunctor compose(const EquivariantFunctor& g, const EquivariantFunctor& f);
EquivariantFunctor identity_equivariant(const InvolutiveCategory& x);

// ---- the adjoint string ------------------------------------------------------

/// (X ⊔ X^op, swap).
InvolutiveCategory L_inv(const CatRef& x);
/// (X × X^op, swap).
InvolutiveCategory R_inv(const CatRef& x);
EquivariantFunctor L_inv(const CatFunctor& f);
EquivariantFunctor R_inv(const CatFunctor& f);
CatRef forget_inv(const InvolutiveCategory& x);

/// f : X -> FY  |->  f ⊔ τ f^op : LX -> Y.
EquivariantFunctor left_transpose(const CatFunctor& f, const InvolutiveCategory& y);
/// g : FX -> Y  |->  x |-> (g x, g τ'x) : X -> RY.
EquivariantFunctor right_transpose(const InvolutiveCategory& x, const CatFunctor& g);

struct InvAdjunctionReport {
  ValidationReport problems;
  std::size_t pairs = 0;
  std::size_t functors_transposed = 0;
  std::size_t naturality_checks = 0;
  bool ok() const { return problems.ok(); }
};

/// hom_iCat(LX, Y) ≅ hom_Cat(X, FY) and hom_iCat(Y, RX) ≅ hom_Cat(FY, X)
/// for every X in `cats` and Y in `invs`: the transposes are equivariant,
/// injective and exhaust the equivariant hom-set; naturality is checked
/// along every functor between members of `cats` and every equivariant
/// functor between members of `invs`.
InvAdjunctionReport check_inv_adjunctions(const std::vector<CatRef>& cats,
                                          const std::vector<InvolutiveCategory>& invs,
                                          const SearchBudget& budget = {});

// ---- cofibrations ---------------------------------------------------------------

/// Injective on objects, and the target involution fixes no object outside
/// the image.
bool is_inv_cofibration(const EquivariantFunctor& f);

/// Equivariant functors between the given involutive categories whose
/// underlying functor is an equivalence and an isofibration.
std::vector<EquivariantFunctor> acyclic_fibrations(const std::vector<InvolutiveCategory>& corpus,
                                                   const SearchBudget& budget = {});

/// Left lifting property in iCat: tops, bottoms and diagonals equivariant.
bool has_inv_llp(const EquivariantFunctor& i, const std::vector<EquivariantFunctor>& tests,
                 const SearchBudget& budget = {});

// ---- dagger categories ------------------------------------------------------------

struct DaggerCoreflection {
  InvolutiveCategory dagger;   // full subcategory on τ-fixed objects
  EquivariantFunctor counit;   // inclusion
};

DaggerCoreflection dagger_R(const InvolutiveCategory& x);
/// Restriction of an equivariant functor to fixed objects.
CatFunctor dagger_R(const EquivariantFunctor& f);

enum class DaggerVariant { Standard, TrivialInvolutions, SwapTarget };

struct DaggerCounterexample {
  EquivariantFunctor p;
  CatFunctor rp;
  bool p_isofib = false;
  bool rp_isofib = false;
};

/// X = {x, x', y}, Y = {z, y}, all hom-sets singletons, τ swapping x and
/// x' and fixing the rest, p(x) = p(x') = z, p(y) = y. The variants use
/// identity-on-objects involutions, or a target {y, z, z'} with z <-> z'.
DaggerCounterexample dagger_counterexample(DaggerVariant v = DaggerVariant::Standard);

}  // namespace catkit
