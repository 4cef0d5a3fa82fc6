#pragma once

// Set-valued diagrams on finite categories: limits, colimits, comma
// categories, pointwise Kan extensions and adjunction certification.
//
// A SetDiagram is a covariant functor shape -> FinSet. Presheaves on C are
// diagrams on opposite(C). Element identifiers are strings; each value set
// is kept sorted, so element indices follow lexicographic order.

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "catkit/fincat.hpp"

namespace catkit {

struct SetDiagram {
  CatRef shape;
  std::vector<std::vector<std::string>> sets;  // per object, sorted
  std::vector<std::vector<int>> maps;          // per morphism: source index -> target index

  std::size_t total_elements() const;
  /// Index of an element; throws InputError if absent.
  int element(Ob x, std::string_view name) const;
  int apply(Mor m, int e) const { return maps[m][e]; }

  /// Same shape (by value), sets and maps.
  friend bool operator==(const SetDiagram& a, const SetDiagram& b);
};
using DiagRef = std::shared_ptr<const SetDiagram>;

inline DiagRef share(SetDiagram d) { return std::make_shared<const SetDiagram>(std::move(d)); }

/// Name-based construction. Identity maps are filled in; every other
/// morphism needs a complete function. Element lists are sorted.
class DiagramBuilder {
 public:
  explicit DiagramBuilder(CatRef shape);
  DiagramBuilder& set(const std::string& object, std::vector<std::string> elements);
  DiagramBuilder& map(const std::string& morphism, const std::string& from, const std::string& to);
  SetDiagram build() const;

 private:
  CatRef shape_;
  std::vector<std::vector<std::string>> sets_;
  std::vector<std::vector<std::pair<std::string, std::string>>> maps_;
};

/// Builds a diagram from unsorted value sets and index-based maps, sorting
/// each set and remapping indices accordingly.
SetDiagram normalize_diagram(CatRef shape, std::vector<std::vector<std::string>> sets,
                             std::vector<std::vector<int>> maps);

ValidationReport validate_diagram(const SetDiagram& d);

SetDiagram empty_diagram(CatRef shape);
/// Constant one-point diagram with element "*".
SetDiagram terminal_diagram(CatRef shape);
/// x |-> hom(c, x), elements named by morphism identifiers.
SetDiagram corepresentable(CatRef shape, Ob c);

struct DiagramMap {
  DiagRef source;
  DiagRef target;
  std::vector<std::vector<int>> components;  // per object

  friend bool operator==(const DiagramMap& a, const DiagramMap& b);
};

ValidationReport validate_map(const DiagramMap& f);
DiagramMap identity_map(const DiagRef& d);
/// g∘f.
DiagramMap compose(const DiagramMap& g, const DiagramMap& f);
bool is_levelwise_injective(const DiagramMap& f);
bool is_levelwise_surjective(const DiagramMap& f);
bool is_levelwise_bijective(const DiagramMap& f);

/// Visits every natural map a -> b in lexicographic order of components.
/// Assigning an element propagates forced values along all morphisms, so
/// the cost is roughly proportional to the number of results.
void search_maps(const DiagRef& a, const DiagRef& b, const std::function<bool(const DiagramMap&)>& visit,
                 const SearchBudget& budget = {});
std::vector<DiagramMap> enumerate_maps(const DiagRef& a, const DiagRef& b, const SearchBudget& budget = {});
std::size_t count_maps(const DiagRef& a, const DiagRef& b, const SearchBudget& budget = {});

// ---- limits and colimits ----------------------------------------------------

struct LimitResult {
  std::vector<std::string> apex;                 // compatible families, "(x1,...,xn)"
  std::vector<std::vector<int>> projections;     // per object: apex index -> element index
};

struct ColimitResult {
  std::vector<std::string> apex;                 // classes, named by least member
  std::vector<std::vector<int>> injections;      // per object: element index -> apex index
};

/// Compatible families, in lexicographic order of their components.
/// The empty shape yields a single family "()".
LimitResult limit(const SetDiagram& x);
/// Quotient of the disjoint union by x ~ X(m)(x). Members of the disjoint
/// union are written "(object,element)"; a class takes the least such name.
ColimitResult colimit(const SetDiagram& x);

// ---- comma categories ---------------------------------------------------------

struct CommaCategory {
  CatRef category;
  CatFunctor projection;        // to the domain of the functor
  std::vector<Ob> base_object;  // per comma object
  std::vector<Mor> arrow;       // per comma object, morphism of the codomain
};

/// ι↓d: objects (c, u : ιc -> d) named "(c,u)", morphisms m : c -> c' with
/// u'∘ι(m) = u named "m:(c,u)".
CommaCategory comma_over(const CatFunctor& iota, Ob d);
/// d↓ι: objects (c, u : d -> ιc), morphisms m with ι(m)∘u = u'.
CommaCategory comma_under(Ob d, const CatFunctor& iota);

// ---- Kan extensions -------------------------------------------------------------

/// Y∘ι.
SetDiagram restrict(const CatFunctor& iota, const SetDiagram& y);
DiagramMap restrict(const CatFunctor& iota, const DiagramMap& f);

/// (ι_! X)(d) = colim over ι↓d of X∘proj.
SetDiagram lan(const CatFunctor& iota, const SetDiagram& x);
/// (ι_* X)(d) = lim over d↓ι of X∘proj.
SetDiagram ran(const CatFunctor& iota, const SetDiagram& x);
DiagramMap lan(const CatFunctor& iota, const DiagramMap& f);
DiagramMap ran(const CatFunctor& iota, const DiagramMap& f);

/// X -> ι*ι_!X, x |-> [(c, id), x].
DiagramMap lan_unit(const CatFunctor& iota, const DiagRef& x);
/// ι_!ι*Y -> Y, [(c, u), y] |-> Y(u)(y).
DiagramMap lan_counit(const CatFunctor& iota, const DiagRef& y);
/// Y -> ι_*ι*Y, y |-> (Y(u)(y))_(c,u).
DiagramMap ran_unit(const CatFunctor& iota, const DiagRef& y);
/// ι*ι_*X -> X, family |-> its (c, id) component.
DiagramMap ran_counit(const CatFunctor& iota, const DiagRef& x);

// ---- coproducts and pushouts ------------------------------------------------------

struct CoproductDiagram {
  DiagRef diagram;
  std::vector<DiagramMap> injections;
};
/// Elements named "tag:element"; tags must be distinct.
CoproductDiagram coproduct(const std::vector<DiagRef>& parts, const std::vector<std::string>& tags);

struct PushoutDiagram {
  DiagRef diagram;
  DiagramMap from_b;  // B -> P
  DiagramMap from_c;  // C -> P
};
/// Levelwise pushout of i : A -> B along g : A -> C. A class containing an
/// element of C takes the least such name; classes of B alone are named
/// "<new_prefix><element>".
PushoutDiagram pushout(const DiagramMap& i, const DiagramMap& g, const std::string& new_prefix = "+");

// ---- adjunctions -------------------------------------------------------------------

/// An adjunction L ⊣ R between diagram categories, given on objects and
/// maps together with unit and counit components.
struct DiagramAdjunction {
  std::function<SetDiagram(const SetDiagram&)> left;
  std::function<SetDiagram(const SetDiagram&)> right;
  std::function<DiagramMap(const DiagramMap&)> left_map;
  std::function<DiagramMap(const DiagramMap&)> right_map;
  std::function<DiagramMap(const DiagRef&)> unit;    // X -> R L X
  std::function<DiagramMap(const DiagRef&)> counit;  // L R Y -> Y
};

struct AdjunctionReport {
  ValidationReport problems;
  std::size_t hom_pairs = 0;           // (X, Y) pairs whose hom bijection was checked
  std::size_t maps_transposed = 0;     // elements of hom(LX, Y) transposed
  std::size_t naturality_checks = 0;
  bool ok() const { return problems.ok(); }
};

/// Checks, on the given finite corpus: naturality of unit and counit along
/// the supplied maps, both triangle identities, bijectivity of
/// hom(LX, Y) -> hom(X, RY), φ |-> R(φ)∘η_X, and naturality of that
/// bijection in both variables. Failures name the offending component.
AdjunctionReport certify_adjunction(const DiagramAdjunction& adj, const std::vector<DiagRef>& left_corpus,
                                    const std::vector<DiagRef>& right_corpus,
                                    const std::vector<DiagramMap>& left_maps,
                                    const std::vector<DiagramMap>& right_maps,
                                    const SearchBudget& budget = {});

DiagramAdjunction lan_restrict_adjunction(const CatFunctor& iota);
DiagramAdjunction restrict_ran_adjunction(const CatFunctor& iota);
DiagramAdjunction identity_adjunction();

}  // namespace catkit
