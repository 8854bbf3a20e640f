#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topos/presheaf.hpp"
#include "topos/site.hpp"

namespace topos {

using SortId = std::uint32_t;
using SymbolId = std::uint32_t;

struct FunctionSymbol {
  std::string name;
  std::vector<SortId> args;
  SortId result = 0;
};

struct Signature {
  std::vector<std::string> sorts;
  std::vector<FunctionSymbol> functions;

  std::optional<SymbolId> find_function(const std::string& name) const;
};

// Bad signatures name the offending symbol.
std::vector<Violation> check_signature(const Signature& sig);

struct Term {
  enum class Kind { Variable, Apply };
  Kind kind = Kind::Variable;
  std::uint32_t index = 0;  // context position or symbol id
  std::vector<Term> args;

  static Term var(std::uint32_t i) { return Term{Kind::Variable, i, {}}; }
  static Term apply(SymbolId f, std::vector<Term> args = {}) { return Term{Kind::Apply, f, std::move(args)}; }
  bool is_closed() const;
  bool operator==(const Term&) const = default;
};

struct Variable {
  std::string name;
  SortId sort = 0;
};

// Throws SortMismatch on arity or sort errors.
SortId sort_of(const Signature& sig, std::span<const Variable> context, const Term& t);
std::string to_string(const Signature& sig, std::span<const Variable> context, const Term& t);

struct Equation {
  Term lhs;
  Term rhs;
};

// A conjunction of equations; the empty conjunction is ⊤.
struct HornFormula {
  std::vector<Equation> equations;

  static HornFormula top() { return {}; }
  static HornFormula eq(Term a, Term b) { return HornFormula{{Equation{std::move(a), std::move(b)}}}; }
  static HornFormula defined(const Term& t) { return eq(t, t); }
  HornFormula& operator&=(const HornFormula& other);
};

struct Sequent {
  std::vector<Variable> context;
  HornFormula premise;
  HornFormula conclusion;
  std::string label;
};

std::string to_string(const Signature& sig, const Sequent& s);

struct PartialStructure {
  std::vector<std::vector<std::string>> carriers;             // per sort
  std::vector<std::map<std::vector<Elem>, Elem>> operations;  // per symbol: defined tuples -> value
};

// Values outside carriers or tuples of the wrong shape.
std::vector<Violation> check_structure(const Signature& sig, const PartialStructure& m);

// Kleene-strict evaluation. Throws SortMismatch on arity errors.
std::optional<Elem> interpret_term(const Signature& sig, const PartialStructure& m, const Term& t,
                                   std::span<const Elem> env = {});

struct Satisfaction {
  bool holds = true;
  std::optional<std::vector<Elem>> counterexample;  // least failing environment
};

// Exhaustive over environments, in lexicographic order. Throws SizeLimit
// after limits.max_environments search nodes.
Satisfaction satisfies(const Signature& sig, const PartialStructure& m, const Sequent& s, const Limits& limits = {});

class NotACongruence : public Error {
 public:
  using Error::Error;
};

// classes[sort][element] = class id (dense, starting at 0). Throws NotACongruence.
PartialStructure quotient_structure(const Signature& sig, const PartialStructure& m,
                                    const std::vector<std::vector<std::uint32_t>>& classes);

enum class SymbolKind { Alpha, Sigma, Constant, Generator };

struct SymbolInfo {
  SymbolKind kind = SymbolKind::Alpha;
  MorId morphism{};       // Alpha
  ObjId object{};         // Sigma, Constant, Generator: the result sort
  std::size_t cover = 0;  // Sigma: index into topology.on(object)
  Elem element = 0;       // Constant
  std::size_t generator = 0;
};

struct SheafSignature {
  Signature signature;
  std::vector<SymbolInfo> info;              // per symbol
  std::vector<SymbolId> alpha;               // per morphism
  std::vector<std::vector<SymbolId>> sigma;  // per object, per cover
  std::vector<std::vector<SymbolId>> constant;  // per object, per element (extensions only)
  std::vector<SymbolId> generator;              // extensions only
};

// Sorts are objects; α_f : cod f -> dom f; σ_J takes one argument per member
// of J, in member order.
SheafSignature sheaf_signature(const Site& site);

// The five axiom groups: totality of α, identity, composition, existence and
// uniqueness of amalgamations.
std::vector<Sequent> sheaf_theory(const Site& site, const SheafSignature& sig);

class NotASheaf : public Error {
 public:
  using Error::Error;
};

class NotAModel : public Error {
 public:
  using Error::Error;
};

PartialStructure sheaf_to_model(const Site& site, const SheafSignature& sig, const Presheaf& f,
                                const Limits& limits = {});
// The structure of any presheaf: σ_J is defined on each matching family with an
// amalgamation and picks the first. A model exactly when F is a sheaf.
PartialStructure presheaf_to_structure(const Site& site, const SheafSignature& sig, const Presheaf& f,
                                       const Limits& limits = {});
Presheaf model_to_sheaf(const Site& site, const SheafSignature& sig, const PartialStructure& m,
                        const Limits& limits = {});

}  // namespace topos
