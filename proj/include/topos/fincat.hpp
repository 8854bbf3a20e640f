#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "topos/errors.hpp"
#include "topos/group.hpp"

namespace topos {

enum class ObjId : std::uint32_t {};
enum class MorId : std::uint32_t {};

constexpr std::uint32_t idx(ObjId x) { return static_cast<std::uint32_t>(x); }
constexpr std::uint32_t idx(MorId f) { return static_cast<std::uint32_t>(f); }

// Unvalidated category description, as read from a site file.
struct CategoryDesc {
  struct Morphism {
    std::string name;
    std::string dom;
    std::string cod;
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::map<std::string, std::string> identities;         // object -> morphism
  std::vector<std::array<std::string, 3>> composition;   // (g, f, g∘f)
};

// A validated finite category. Ids are dense indices in declaration order;
// composition is a total table over composable pairs. Immutable.
class FinCategory {
 public:
  std::size_t num_objects() const { return object_names_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }

  const std::string& object_name(ObjId x) const { return object_names_[idx(x)]; }
  const std::string& morphism_name(MorId f) const { return morphisms_[idx(f)].name; }
  ObjId dom(MorId f) const { return morphisms_[idx(f)].dom; }
  ObjId cod(MorId f) const { return morphisms_[idx(f)].cod; }
  MorId identity(ObjId x) const { return identities_[idx(x)]; }
  bool is_identity(MorId f) const { return identity(dom(f)) == f && dom(f) == cod(f); }

  // g∘f; requires cod(f) == dom(g).
  MorId compose(MorId g, MorId f) const;
  std::optional<MorId> try_compose(MorId g, MorId f) const;

  // Morphisms X -> Y in declaration order.
  const std::vector<MorId>& hom(ObjId x, ObjId y) const { return homs_[idx(x) * num_objects() + idx(y)]; }
  // All morphisms with codomain Y (declaration order).
  const std::vector<MorId>& into(ObjId y) const { return into_[idx(y)]; }
  // All morphisms with domain X (declaration order).
  const std::vector<MorId>& out_of(ObjId x) const { return out_of_[idx(x)]; }

  std::optional<ObjId> find_object(const std::string& name) const;
  std::optional<MorId> find_morphism(const std::string& name) const;
  ObjId object(const std::string& name) const;    // throws UnknownName
  MorId morphism(const std::string& name) const;  // throws UnknownName

  std::vector<ObjId> objects() const;
  std::vector<MorId> morphisms() const;

  // Two-sided inverse, if any.
  std::optional<MorId> inverse(MorId f) const;

  CategoryDesc describe() const;

 private:
  struct Morphism {
    std::string name;
    ObjId dom;
    ObjId cod;
  };
  friend FinCategory build_category(const CategoryDesc&, std::vector<Violation>&);

  void index();

  std::vector<std::string> object_names_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identities_;
  std::vector<std::int32_t> comp_;  // [g * n + f], -1 when not composable
  std::vector<std::vector<MorId>> homs_;
  std::vector<std::vector<MorId>> into_;
  std::vector<std::vector<MorId>> out_of_;
};

// Every violated law, each naming its witnesses. Empty iff valid.
std::vector<Violation> check_category(const CategoryDesc& desc);

// Throws ValidationError carrying check_category's report.
FinCategory validate_category(const CategoryDesc& desc);

std::vector<MorId> hom_set(const FinCategory& c, ObjId x, ObjId y);

// A natural automorphism of the identity functor: one automorphism per object.
struct CentreElement {
  std::vector<MorId> components;
  auto operator<=>(const CentreElement&) const = default;
};

struct Centre {
  std::vector<CentreElement> elements;  // deterministic order; identity family first
  FiniteGroup group;                    // multiplication = componentwise composition
  std::size_t order() const { return elements.size(); }
  std::optional<std::size_t> find(const CentreElement& e) const;
};

// Natural endomorphisms of the identity functor, by backtracking over ∏ End(X)
// with naturality checked per morphism as soon as both ends are assigned.
std::vector<CentreElement> natural_endomorphisms_of_identity(const FinCategory& c);

// Aut(1_C): the natural endomorphisms whose every component is invertible.
Centre centre(const FinCategory& c);

bool is_natural_automorphism(const FinCategory& c, const CentreElement& e);

std::string describe(const FinCategory& c, const CentreElement& e);

struct FullSubcategory {
  FinCategory category;
  std::vector<ObjId> objects;     // sub object -> parent object
  std::vector<MorId> morphisms;   // sub morphism -> parent morphism
  std::optional<ObjId> sub_object(ObjId parent) const;
  std::optional<MorId> sub_morphism(MorId parent) const;
};

FullSubcategory full_subcategory(const FinCategory& c, const std::set<ObjId>& keep);

// Objects X with exactly one morphism X -> Y for every Y.
std::set<ObjId> initial_objects(const FinCategory& c);

}  // namespace topos
