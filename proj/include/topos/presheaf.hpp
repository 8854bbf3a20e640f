#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topos/fincat.hpp"
#include "topos/site.hpp"

namespace topos {

using Elem = std::uint32_t;

// A finite presheaf C^op -> Set. sets[X] names the elements of F(X);
// actions[f] for f : X -> Y is the table F(Y) -> F(X).
struct Presheaf {
  std::vector<std::vector<std::string>> sets;
  std::vector<std::vector<Elem>> actions;

  std::size_t size(ObjId x) const { return sets[idx(x)].size(); }
  const std::string& element_name(ObjId x, Elem e) const { return sets[idx(x)][e]; }
  Elem act(MorId f, Elem y) const { return actions[idx(f)][y]; }
  std::optional<Elem> find_element(ObjId x, const std::string& name) const;
  std::size_t total_size() const;

  bool operator==(const Presheaf&) const = default;
};

// components[X] : F(X) -> G(X).
struct PresheafMap {
  std::vector<std::vector<Elem>> components;

  Elem operator()(ObjId x, Elem e) const { return components[idx(x)][e]; }
  bool operator==(const PresheafMap&) const = default;
};

// A family indexed by the members of a sieve: values[i] ∈ F(dom members[i]).
struct MatchingFamily {
  Sieve sieve;
  std::vector<Elem> values;

  Elem at(MorId f) const { return values[sieve.position(f)]; }
  bool operator==(const MatchingFamily&) const = default;
};

// Unvalidated presheaf data keyed by names, as read from a presheaf file.
struct PresheafDesc {
  std::map<std::string, std::vector<std::string>> sets;
  std::map<std::string, std::map<std::string, std::string>> actions;
};

std::vector<Violation> check_presheaf(const FinCategory& c, const Presheaf& f);
// Identity actions may be omitted. Throws ValidationError.
Presheaf validate_presheaf(const FinCategory& c, const PresheafDesc& desc);
PresheafDesc describe(const FinCategory& c, const Presheaf& f);

bool is_natural(const FinCategory& c, const Presheaf& f, const Presheaf& g, const PresheafMap& m);
PresheafMap identity_map(const Presheaf& f);
// (second ∘ first)
PresheafMap compose(const PresheafMap& second, const PresheafMap& first);
bool is_bijective(const PresheafMap& m, const Presheaf& codomain);

Presheaf representable(const FinCategory& c, ObjId x);
Presheaf terminal_presheaf(const FinCategory& c);
Presheaf empty_presheaf(const FinCategory& c);
// The subpresheaf of yX given by a sieve on X.
Presheaf sieve_presheaf(const FinCategory& c, const Sieve& s);
// Element of yX(dom f) corresponding to f.
inline Elem yoneda_element(const FinCategory& c, MorId f) {
  const auto& h = c.hom(c.dom(f), c.cod(f));
  return static_cast<Elem>(std::find(h.begin(), h.end(), f) - h.begin());
}

std::vector<PresheafMap> nat_transformations(const FinCategory& c, const Presheaf& f, const Presheaf& g,
                                             const Limits& limits = {});

bool is_matching(const FinCategory& c, const Presheaf& f, const MatchingFamily& m);
// All elements amalgamating m. Throws Error (NotMatching) if m does not match.
std::vector<Elem> amalgamations(const FinCategory& c, const Presheaf& f, const MatchingFamily& m);
// Every matching family for the sieve, lexicographic in the values.
std::vector<MatchingFamily> matching_families(const FinCategory& c, const Presheaf& f, const Sieve& s,
                                              const Limits& limits = {});
// (F(f)(d))_{f ∈ s}.
MatchingFamily restriction_family(const FinCategory& c, const Presheaf& f, const Sieve& s, Elem d);
// (x_{k∘g})_{g ∈ k*S} on dom k.
MatchingFamily pullback_family(const FinCategory& c, const MatchingFamily& m, MorId k);

enum class SheafKind { Sheaf, SeparatedOnly, NotSeparated };
std::string to_string(SheafKind k);

struct SheafStatus {
  SheafKind kind = SheafKind::Sheaf;
  // The first family with no (SeparatedOnly) or several (NotSeparated) amalgamations.
  std::optional<MatchingFamily> witness;
  std::size_t amalgamation_count = 0;
};

SheafStatus sheaf_status(const Site& site, const Presheaf& f, const Limits& limits = {});

struct SubcanonicityReport {
  bool subcanonical = true;
  std::optional<ObjId> object;
  SheafStatus status;
};
SubcanonicityReport is_subcanonical(const Site& site, const Limits& limits = {});

// Tagged coproduct. Elements are named "<tag>.<name>".
struct Coproduct {
  Presheaf sum;
  std::vector<PresheafMap> injections;
  std::vector<std::vector<Elem>> offsets;  // [summand][object]

  // (summand, element of that summand)
  std::pair<std::size_t, Elem> locate(ObjId x, Elem e) const;
};

Coproduct coproduct(const FinCategory& c, std::span<const Presheaf> summands,
                    const std::vector<std::string>& tags = {});

struct PlusConstruction {
  struct Layer {
    // Every (cover, matching family) pair on the object: covers in canonical
    // order, families lexicographic.
    std::vector<MatchingFamily> pairs;
    std::vector<Elem> class_of;            // pair -> element of F⁺(X)
    std::vector<std::size_t> representative;  // element -> first pair in its class
    std::map<std::pair<std::vector<MorId>, std::vector<Elem>>, std::size_t> index;
  };
  Presheaf plus;
  PresheafMap eta;
  std::vector<Layer> layers;  // per object

  const MatchingFamily& representative(ObjId x, Elem e) const {
    return layers[idx(x)].pairs[layers[idx(x)].representative[e]];
  }
  // Class of a matching family for a cover; throws if not enumerated.
  Elem class_of(ObjId x, const MatchingFamily& m) const;
};

PlusConstruction plus_construction(const Site& site, const Presheaf& f, const Limits& limits = {});

struct Sheafification {
  Presheaf sheaf;
  PresheafMap unit;
  // Either empty (input was already a sheaf and was passed through) or (F⁺, F⁺⁺).
  std::vector<PlusConstruction> layers;
};

// a(F) = F⁺⁺, always through both layers.
Sheafification sheafify(const Site& site, const Presheaf& f, const Limits& limits = {});
// As sheafify, but a sheaf is passed through unchanged with an identity unit.
Sheafification sheafify_if_needed(const Site& site, const Presheaf& f, const Limits& limits = {});

// Extends v : P -> G (G a sheaf) along the unit P -> aP. Values are computed
// on demand by unwinding plus-construction representatives and amalgamating in G.
class SheafLift {
 public:
  using Base = std::function<Elem(ObjId, Elem)>;

  SheafLift(const Site& site, const Sheafification& a, const Presheaf& target, Base base);

  Elem operator()(ObjId x, Elem e);
  PresheafMap to_map();

 private:
  Elem at_level(std::size_t level, ObjId x, Elem e);

  const Site& site_;
  const Sheafification& a_;
  const Presheaf& target_;
  Base base_;
  std::vector<std::vector<std::vector<std::int64_t>>> memo_;  // [level][object][element]
};

// The unique element of G(X) amalgamating m; throws Error (NoAmalgamation) otherwise.
Elem unique_amalgamation(const FinCategory& c, const Presheaf& g, const MatchingFamily& m);

struct ElementPair {
  ObjId object{};
  Elem first = 0;
  Elem second = 0;
};

struct PresheafQuotient {
  Presheaf quotient;
  PresheafMap projection;
};

// Smallest congruence containing the relations, closed along every action.
PresheafQuotient quotient_presheaf(const FinCategory& c, const Presheaf& f, const std::vector<ElementPair>& relations);

struct AycCategory {
  FinCategory category;
  std::vector<Sheafification> sheaves;  // a(yX) per object X of the site
  std::vector<PresheafMap> maps;        // category morphism -> natural transformation
  std::vector<MorId> image;             // site morphism f -> a(yf)
};

// a(yf) : a(yX) -> a(yY) for f : X -> Y.
PresheafMap sheafified_yoneda(const Site& site, const std::vector<Sheafification>& ay, MorId f);

AycCategory ayc_category(const Site& site, const Limits& limits = {});

}  // namespace topos
