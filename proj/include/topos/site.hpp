#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "topos/fincat.hpp"

namespace topos {

// A set of morphisms into `target`, closed under precomposition. Members are
// kept sorted by id so that equality is structural.
struct Sieve {
  ObjId target{};
  std::vector<MorId> members;

  bool contains(MorId f) const;
  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
  // Position of f in `members`; f must be a member.
  std::size_t position(MorId f) const;

  bool operator==(const Sieve&) const = default;
};

// Canonical order on sieves with the same target: larger first, then
// lexicographic on members. The maximal sieve therefore comes first.
bool sieve_before(const Sieve& a, const Sieve& b);

std::string describe(const FinCategory& c, const Sieve& s);

bool is_sieve(const FinCategory& c, const Sieve& s);
Sieve maximal_sieve(const FinCategory& c, ObjId x);
Sieve empty_sieve(ObjId x);
Sieve intersect(const Sieve& a, const Sieve& b);

// Smallest sieve on `target` containing the generators. Throws SortMismatch
// (codomain mismatch) when a generator does not land in `target`.
Sieve generated_sieve(const FinCategory& c, ObjId target, const std::vector<MorId>& generators);

// h*S = { g : h∘g ∈ S } on dom(h).
Sieve pullback_sieve(const FinCategory& c, const Sieve& s, MorId h);

// Every sieve on x, in canonical order. Throws SizeLimit when more than
// limits.max_cone morphisms land in x.
std::vector<Sieve> all_sieves(const FinCategory& c, ObjId x, const Limits& limits = {});

// covers[x] = the covering sieves on x, kept in canonical order.
struct Topology {
  std::vector<std::vector<Sieve>> covers;

  const std::vector<Sieve>& on(ObjId x) const { return covers[idx(x)]; }
  bool covers_sieve(const Sieve& s) const;
  std::size_t cover_index(const Sieve& s) const;  // throws if not a cover
  std::size_t total_covers() const;
};

using SieveBasis = std::map<ObjId, std::vector<Sieve>>;

// Smallest topology containing the basis (fixpoint of maximality, stability
// and transitivity). Throws ValidationError for a basis entry that is not a sieve.
Topology saturate_topology(const FinCategory& c, const SieveBasis& basis, const Limits& limits = {});

// Empty iff the three Grothendieck axioms hold.
std::vector<Violation> validate_topology(const FinCategory& c, const Topology& t, const Limits& limits = {});

Topology trivial_topology(const FinCategory& c, const Limits& limits = {});
Topology all_sieves_topology(const FinCategory& c, const Limits& limits = {});

std::set<ObjId> empty_cover_objects(const Topology& t);

// Topology on a full subcategory: S covers iff the sieve S generates in the
// parent category covers.
Topology induced_topology(const FinCategory& c, const Topology& t, const FullSubcategory& d,
                          const Limits& limits = {});

struct Site {
  std::string name;
  FinCategory category;
  Topology topology;
};

}  // namespace topos
