#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topos/phl.hpp"
#include "topos/presheaf.hpp"

namespace topos {

// a(P_0 + ... + P_n) together with the images of the summands.
struct SheafSum {
  Coproduct coproduct;
  Sheafification sheafification;

  const Presheaf& carrier() const { return sheafification.sheaf; }
  // unit(inj_i(e)) for e ∈ P_i(X).
  Elem image(std::size_t summand, ObjId x, Elem e) const {
    return sheafification.unit(x, coproduct.injections[summand](x, e));
  }
};

// The sheafification step is skipped when the coproduct already is a sheaf.
SheafSum sheaf_sum(const Site& site, std::span<const Presheaf> summands, const std::vector<std::string>& tags,
                   const Limits& limits = {});

struct Generator {
  std::string name;
  ObjId sort{};
};

// F⟨x_1 : A_1, ..., x_n : A_n⟩ = a(F + yA_1 + ... + yA_n).
struct FreeExtension {
  Presheaf base;
  std::vector<Generator> generators;
  SheafSum sum;
  PresheafMap insert;         // F -> carrier
  std::vector<Elem> generic;  // generator i -> element of carrier(A_i)

  const Presheaf& carrier() const { return sum.carrier(); }
  // carrier(f)(generic_i) = denotation of α_f(x_i), for f : D -> A_i.
  Elem generator_image(const FinCategory&, std::size_t i, MorId f) const {
    return carrier().act(f, generic[i]);
  }
};

// Throws NotASheaf when the base is not a sheaf on the site.
FreeExtension free_extension(const Site& site, const Presheaf& base, std::vector<Generator> generators,
                             const Limits& limits = {});

// Σ^(C,J) extended by constants c_a (a ∈ F(X)) and the generators.
SheafSignature extension_signature(const Site& site, const FreeExtension& ext);

// Throws SortMismatch for ill-sorted terms.
std::optional<Elem> denote(const Site& site, const FreeExtension& ext, const SheafSignature& sig, const Term& t);
bool decide_equal(const Site& site, const FreeExtension& ext, const SheafSignature& sig, const Term& a,
                  const Term& b);

// Grammar (whitespace separated):
//   term := NAME | "(" NAME ")"                 generator
//         | "(" "alpha" MORPHISM term ")"
//         | "(" "sigma" OBJECT "{" MORPHISM,... "}" term... ")"   one term per member, member order
//         | "(" "c" [OBJECT] ELEMENT ")"          constant of the base sheaf
// Throws ParseError.
Term parse_term(const Site& site, const FreeExtension& ext, const SheafSignature& sig, const std::string& text);

// The unique sheaf map u : carrier -> target with u∘insert = base and
// u(generic_i) = points[i]; evaluated lazily.
class Substitution {
 public:
  Substitution(const Site& site, const FreeExtension& ext, const Presheaf& target, PresheafMap base,
               std::vector<Elem> points);
  Substitution(const Substitution&) = delete;
  Substitution& operator=(const Substitution&) = delete;

  Elem operator()(ObjId x, Elem e) { return lift_(x, e); }
  PresheafMap to_map() { return lift_.to_map(); }

 private:
  PresheafMap base_;
  std::vector<Elem> points_;
  SheafLift lift_;
};

PresheafMap subst_map(const Site& site, const FreeExtension& ext, const Presheaf& target, const PresheafMap& base,
                      std::span<const Elem> points);

struct NormalComponent {
  enum class Kind { Const, Gen };
  Kind kind = Kind::Const;
  Elem element = 0;          // Const: element of F(dom h)
  std::size_t generator = 0;  // Gen
  MorId morphism{};           // Gen: dom h -> A_generator
};

struct NormalForm {
  Sieve cover;
  std::vector<NormalComponent> components;  // aligned with cover.members
};

// A cover of e's object and components whose images amalgamate to e; both plus
// layers are unwound and their covers composed.
NormalForm normal_form(const Site& site, const FreeExtension& ext, ObjId x, Elem e);
// The element of carrier(dom h) a component denotes.
Elem component_value(const Site& site, const FreeExtension& ext, MorId h, const NormalComponent& c);
std::string describe(const Site& site, const FreeExtension& ext, const NormalForm& nf);

// Requires a subcanonical site with no empty covers (HypothesisViolation
// otherwise). The f : x -> A_i with e = carrier(f)(generic_i), if any.
std::optional<MorId> as_generator(const Site& site, const FreeExtension& ext, ObjId x, Elem e,
                                  std::size_t generator = 0, const Limits& limits = {});

// Throws HypothesisViolation unless the site is subcanonical with no empty covers.
void require_subcanonical_without_empty_covers(const Site& site, const Limits& limits = {});

}  // namespace topos
