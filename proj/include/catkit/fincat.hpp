#pragma once

// Finite categories given by explicit composition tables, functors between
// them, natural transformations, and finite groups.
//
// Objects and morphisms carry opaque string identifiers. Internally every
// identifier is mapped to a dense index; indices follow lexicographic order
// of the identifiers, so iterating by index is the canonical enumeration
// order used throughout the library.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "catkit/errors.hpp"

namespace catkit {

using Ob = int;
using Mor = int;
inline constexpr int kNone = -1;

/// Violations found by a validator; empty means valid.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void merge(const ValidationReport& other, const std::string& prefix = {});
  std::string summary(std::size_t max_lines = 8) const;
};

class FiniteCategory;
using CatRef = std::shared_ptr<const FiniteCategory>;

class FiniteCategory {
 public:
  FiniteCategory() = default;

  /// Assembles a category from index-based data. Names may come in any
  /// order; they are re-sorted and `comp(g, f)` (in the caller's indices)
  /// is queried for every composable pair. Throws InputError when a name
  /// repeats, an endpoint is out of range, or a composite is missing.
  static FiniteCategory from_indexed(std::vector<std::string> obj_names,
                                     std::vector<std::string> mor_names,
                                     const std::vector<Ob>& src, const std::vector<Ob>& tgt,
                                     const std::vector<Mor>& ids,
                                     const std::function<Mor(Mor, Mor)>& comp);

  std::size_t num_objects() const { return obj_names_.size(); }
  std::size_t num_morphisms() const { return mor_names_.size(); }

  const std::string& object_name(Ob x) const { return obj_names_[x]; }
  const std::string& morphism_name(Mor f) const { return mor_names_[f]; }
  const std::vector<std::string>& object_names() const { return obj_names_; }
  const std::vector<std::string>& morphism_names() const { return mor_names_; }

  std::optional<Ob> find_object(std::string_view name) const;
  std::optional<Mor> find_morphism(std::string_view name) const;
  Ob object(std::string_view name) const;      // throws InputError
  Mor morphism(std::string_view name) const;   // throws InputError

  Ob source(Mor f) const { return src_[f]; }
  Ob target(Mor f) const { return tgt_[f]; }
  Mor identity(Ob x) const { return id_[x]; }
  bool is_identity(Mor f) const { return id_[src_[f]] == f; }

  /// g∘f, or kNone when target(f) != source(g).
  Mor compose(Mor g, Mor f) const;

  /// Morphisms x -> y in index order.
  const std::vector<Mor>& hom(Ob x, Ob y) const { return hom_[static_cast<std::size_t>(x) * num_objects() + y]; }
  /// Morphisms with the given target, in index order.
  const std::vector<Mor>& incoming(Ob x) const { return incoming_[x]; }
  const std::vector<Mor>& outgoing(Ob x) const { return outgoing_[x]; }

  /// Number of composable pairs (size of the composition table).
  std::size_t num_composable_pairs() const;

  bool is_invertible(Mor f) const { return inverse(f) != kNone; }
  Mor inverse(Mor f) const;

  /// Identifier-for-identifier equality of objects, morphisms, and tables.
  friend bool operator==(const FiniteCategory& a, const FiniteCategory& b);

 private:
  friend class CategoryBuilder;

  std::vector<std::string> obj_names_;
  std::vector<std::string> mor_names_;
  std::unordered_map<std::string, Ob> obj_index_;
  std::unordered_map<std::string, Mor> mor_index_;
  std::vector<Ob> src_;
  std::vector<Ob> tgt_;
  std::vector<Mor> id_;
  std::vector<int> slot_;                // position of f in incoming(target f)
  std::vector<std::vector<Mor>> comp_;   // comp_[g][slot_[f]] = g∘f
  std::vector<std::vector<Mor>> incoming_;
  std::vector<std::vector<Mor>> outgoing_;
  std::vector<std::vector<Mor>> hom_;
};

/// Assembles a FiniteCategory from names. Composites with an identity on
/// either side are filled in automatically unless set explicitly; every
/// other composable pair must be given.
class CategoryBuilder {
 public:
  CategoryBuilder& add_object(std::string name);
  /// Adds the morphism; the first morphism named as identity of an object
  /// via set_identity becomes its identity.
  CategoryBuilder& add_morphism(std::string name, std::string src, std::string tgt);
  CategoryBuilder& set_identity(std::string obj, std::string mor);
  /// Convenience: adds a morphism `mor` : obj -> obj and marks it identity.
  CategoryBuilder& add_identity(std::string obj, std::string mor);
  /// Records g∘f = h.
  CategoryBuilder& set_composite(std::string g, std::string f, std::string h);

  /// Throws InputError on unknown names, duplicates, missing identities,
  /// entries for non-composable pairs, or missing table entries.
  FiniteCategory build() const;
  CatRef build_ref() const { return std::make_shared<const FiniteCategory>(build()); }

 private:
  struct MorDecl {
    std::string name, src, tgt;
  };
  std::vector<std::string> objects_;
  std::vector<MorDecl> morphisms_;
  std::vector<std::pair<std::string, std::string>> identities_;
  std::vector<std::array<std::string, 3>> composites_;
};

/// Checks source/target compatibility, identity laws and associativity on
/// every composable triple.
ValidationReport validate_category(const FiniteCategory& c);

// ---- functors -----------------------------------------------------------

struct CatFunctor {
  CatRef dom;
  CatRef cod;
  std::vector<Ob> obj_map;
  std::vector<Mor> mor_map;

  Ob on_object(Ob x) const { return obj_map[x]; }
  Mor on_morphism(Mor f) const { return mor_map[f]; }

  friend bool operator==(const CatFunctor& a, const CatFunctor& b);
};

/// Builds a functor from name-keyed maps; throws InputError on unknown names.
CatFunctor make_functor(CatRef dom, CatRef cod,
                        const std::vector<std::pair<std::string, std::string>>& objects,
                        const std::vector<std::pair<std::string, std::string>>& morphisms);

ValidationReport validate_functor(const CatFunctor& f);
CatFunctor identity_functor(CatRef c);
/// g∘f; requires f.cod to equal g.dom.
CatFunctor compose(const CatFunctor& g, const CatFunctor& f);
/// Functor between the opposites with the same maps.
CatFunctor opposite(const CatFunctor& f, CatRef dom_op, CatRef cod_op);

struct NaturalTransformation {
  CatFunctor source;
  CatFunctor target;
  std::vector<Mor> components;
};

ValidationReport validate_natural(const NaturalTransformation& t);
bool is_natural_isomorphism(const NaturalTransformation& t);

// ---- constructions --------------------------------------------------------

FiniteCategory opposite(const FiniteCategory& c);
CatRef opposite(const CatRef& c);

struct CoproductResult {
  CatRef category;
  CatFunctor inl;
  CatFunctor inr;
};
/// Disjoint union. If any identifier of `a` collides with one of `b`, every
/// identifier of `a` gets suffix ".0" and every identifier of `b` ".1".
CoproductResult coproduct(const CatRef& a, const CatRef& b);

struct ProductResult {
  CatRef category;
  CatFunctor proj1;
  CatFunctor proj2;
};
/// Objects "(x,y)", morphisms "(f,g)", componentwise composition.
ProductResult product(const CatRef& a, const CatRef& b);

/// Full subcategory on the given objects.
FiniteCategory full_subcategory(const FiniteCategory& c, const std::vector<Ob>& objects);
/// Subcategory with the given objects and morphisms; must be closed.
FiniteCategory subcategory(const FiniteCategory& c, const std::vector<Ob>& objects,
                           const std::vector<Mor>& morphisms);
/// Inclusion of a subcategory whose identifiers are a subset of c's.
CatFunctor inclusion(CatRef sub, CatRef c);

/// Maximal subgroupoid.
FiniteCategory core(const FiniteCategory& c);
bool is_groupoid(const FiniteCategory& c);

bool is_full(const CatFunctor& f);
bool is_faithful(const CatFunctor& f);
bool is_essentially_surjective(const CatFunctor& f);
bool is_equivalence(const CatFunctor& f);
bool is_injective_on_objects(const CatFunctor& f);
bool is_surjective_on_objects(const CatFunctor& f);
/// Bijective on objects and morphisms.
bool is_isomorphism(const CatFunctor& f);

// ---- enumeration ----------------------------------------------------------

struct SearchBudget {
  std::size_t max_results = 1'000'000;
  std::size_t max_nodes = 50'000'000;
};

/// Constraints for a functor search C -> D. Candidate lists are consulted
/// in order; an empty optional means "no restriction".
struct FunctorConstraints {
  /// Allowed images per object of C (kNone entries skipped).
  std::vector<std::optional<std::vector<Ob>>> objects;
  /// Allowed images per morphism of C.
  std::vector<std::optional<std::vector<Mor>>> morphisms;
  /// Final filter on complete functors.
  std::function<bool(const CatFunctor&)> accept;
};

/// Visits functors C -> D in lexicographic order of (object images,
/// morphism images). The visitor returns false to stop. Throws
/// BudgetExceeded when the node budget is exhausted.
void search_functors(const CatRef& c, const CatRef& d, const FunctorConstraints& constraints,
                     const std::function<bool(const CatFunctor&)>& visit,
                     const SearchBudget& budget = {});

std::vector<CatFunctor> enumerate_functors(const CatRef& c, const CatRef& d,
                                           const SearchBudget& budget = {});
std::vector<NaturalTransformation> enumerate_naturals(const CatFunctor& f, const CatFunctor& g,
                                                      const SearchBudget& budget = {});

/// Independent equivalence oracle: searches for G : D -> C with natural
/// isomorphisms GF ≅ id and FG ≅ id.
bool has_pseudo_inverse(const CatFunctor& f, const SearchBudget& budget = {});

// ---- standard shapes ------------------------------------------------------

namespace shapes {
CatRef empty();
/// One object "*" with identity "id".
CatRef terminal();
/// Objects as named, identities "id_<x>".
CatRef discrete(const std::vector<std::string>& objects);
/// Every hom-set a singleton. Morphisms "<x><y>" style names "x>y".
CatRef indiscrete(const std::vector<std::string>& objects);
/// Walking arrow [1]: objects a,b; f : a -> b.
CatRef walking_arrow();
/// Walking isomorphism E: objects 0,1, every hom a singleton.
CatRef walking_iso();
/// Poset [n] = {0 < ... < n}; morphisms "i<=j".
CatRef ordinal(int n);
/// Parallel pair: objects a,b; f,g : a -> b.
CatRef parallel_pair();
}  // namespace shapes

// ---- groups ---------------------------------------------------------------

class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Elements with multiplication table mul[a][b] = a·b. Throws InputError
  /// if there is no identity element.
  FiniteGroup(std::vector<std::string> elements, std::vector<std::vector<int>> mul);

  std::size_t order() const { return names_.size(); }
  const std::string& name(int g) const { return names_[g]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> find(std::string_view name) const;
  int identity() const { return identity_; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inverse(int a) const { return inv_[a]; }

  static FiniteGroup cyclic(int n);
  static FiniteGroup klein();
  static FiniteGroup symmetric3();
  static FiniteGroup trivial();
  /// Same elements, a·b := b·a.
  FiniteGroup opposite() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  int identity_ = 0;
};

/// Associativity, two-sided identity, two-sided inverses.
ValidationReport validate_group(const FiniteGroup& g);

/// One-object category with the group elements as morphisms.
CatRef group_category(const FiniteGroup& g);

}  // namespace catkit
