#pragma once

// The catspec text format.
//
//   # comment
//   <kind> <name> <header args...>
//     <entry> <tokens...>
//   end
//
// Tokens are separated by single spaces (any run of blanks on input).
// Canonical form: blocks sorted by (kind, name), entries sorted
// lexicographically within a block, two-space indent, LF line endings.
//
//   category NAME             object X | morphism F SRC TGT | identity X F | compose G F H   (g∘f = h)
//   functor NAME DOM COD      object X Y | morphism F G
//   group NAME                element A | mul A B C                                         (a·b = c)
//   action NAME GROUP CAT     object G X Y | morphism G F H                                 (ρ_g)
//   involution NAME CAT       object X Y | morphism F G                                     (τ : C^op -> C)
//   diagram NAME SHAPE        element X E | map F E E'
//   sset NAME N               element [k] E | map F E E'        (presheaf on Δ≤N, F a morphism of Δ)
//   rsset NAME N              element [k] E | map F E E'        (presheaf on ∇≤N, F a morphism of ∇)
//   operad NAME A [cyclic]    element N E | unit E | comp M I N A B C | act N A PERM B | cyc N A PERM B
//   complex NAME P            dim K D | d K ENTRIES...          (d_K : C^K -> C^{K+1}, row-major)

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catkit/cycops.hpp"
#include "catkit/chaincx.hpp"
#include "catkit/errors.hpp"
#include "catkit/fincat.hpp"
#include "catkit/invcat.hpp"
#include "catkit/semidirect.hpp"
#include "catkit/setval.hpp"

namespace catkit {

/// Syntax errors and dangling references, with line and column.
class CatspecError : public InputError {
 public:
  CatspecError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A well-formed block whose data fails its validator.
class CatspecInvalid : public InputError {
 public:
  CatspecInvalid(int line, std::string kind, std::string name, ValidationReport report);
  const ValidationReport& report() const { return report_; }
  const std::string& kind() const { return kind_; }
  const std::string& block() const { return name_; }
  int line() const { return line_; }

 private:
  int line_;
  std::string kind_;
  std::string name_;
  ValidationReport report_;
};

struct FunctorBlock {
  std::string dom, cod;
  CatFunctor functor;
};

struct ActionBlock {
  std::string group, category;
  GroupAction action;
};

struct InvolutionBlock {
  std::string category;
  InvolutiveCategory involution;
};

struct DiagramBlock {
  std::string shape;
  SetDiagram diagram;
};

/// A presheaf on Δ≤N (sset) or ∇≤N (rsset), stored as a diagram on the
/// opposite category.
struct SimplicialBlock {
  int dim = 0;
  SetDiagram diagram;
};

struct OperadBlock {
  TruncatedOperad op;
  std::optional<TruncatedCyclicOperad> cyclic;
};

struct CatspecDocument {
  std::map<std::string, CatRef> categories;
  std::map<std::string, FunctorBlock> functors;
  std::map<std::string, FiniteGroup> groups;
  std::map<std::string, ActionBlock> actions;
  std::map<std::string, InvolutionBlock> involutions;
  std::map<std::string, DiagramBlock> diagrams;
  std::map<std::string, SimplicialBlock> ssets;
  std::map<std::string, SimplicialBlock> rssets;
  std::map<std::string, OperadBlock> operads;
  std::map<std::string, FiniteComplex> complexes;

  std::size_t size() const;
};

/// Parses and loads; every block is checked by its validator. Throws
/// CatspecError or CatspecInvalid.
CatspecDocument parse_catspec(const std::string& text);
CatspecDocument load_catspec_file(const std::string& path);

/// Canonical text. Throws InputError when a block refers to a category
/// that is not in the document.
std::string emit_catspec(const CatspecDocument& doc);

/// Reorders elements within each arity by name.
TruncatedOperad canonical_operad(const TruncatedOperad& p);
TruncatedCyclicOperad canonical_operad(const TruncatedCyclicOperad& q);

}  // namespace catkit
