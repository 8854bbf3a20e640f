#include "topos/site.hpp"

#include <algorithm>

namespace topos {

bool Sieve::contains(MorId f) const { return std::binary_search(members.begin(), members.end(), f); }

std::size_t Sieve::position(MorId f) const {
  auto it = std::lower_bound(members.begin(), members.end(), f);
  if (it == members.end() || *it != f) throw Error("morphism is not a member of the sieve");
  return static_cast<std::size_t>(it - members.begin());
}

bool sieve_before(const Sieve& a, const Sieve& b) {
  if (a.target != b.target) return a.target < b.target;
  if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
  return a.members < b.members;
}

std::string describe(const FinCategory& c, const Sieve& s) {
  std::string out = c.object_name(s.target) + "{";
  for (std::size_t i = 0; i < s.members.size(); ++i) out += (i ? "," : "") + c.morphism_name(s.members[i]);
  return out + "}";
}

bool is_sieve(const FinCategory& c, const Sieve& s) {
  if (!std::is_sorted(s.members.begin(), s.members.end())) return false;
  if (std::adjacent_find(s.members.begin(), s.members.end()) != s.members.end()) return false;
  for (MorId f : s.members) {
    if (c.cod(f) != s.target) return false;
    for (MorId g : c.into(c.dom(f)))
      if (!s.contains(c.compose(f, g))) return false;
  }
  return true;
}

Sieve maximal_sieve(const FinCategory& c, ObjId x) { return Sieve{x, c.into(x)}; }

Sieve empty_sieve(ObjId x) { return Sieve{x, {}}; }

Sieve intersect(const Sieve& a, const Sieve& b) {
  Sieve out{a.target, {}};
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(out.members));
  return out;
}

Sieve generated_sieve(const FinCategory& c, ObjId target, const std::vector<MorId>& generators) {
  std::set<MorId> members;
  for (MorId f : generators) {
    if (c.cod(f) != target)
      throw SortMismatch("generator " + c.morphism_name(f) + " does not have codomain " + c.object_name(target));
    for (MorId g : c.into(c.dom(f))) members.insert(c.compose(f, g));
  }
  return Sieve{target, {members.begin(), members.end()}};
}

Sieve pullback_sieve(const FinCategory& c, const Sieve& s, MorId h) {
  if (c.cod(h) != s.target)
    throw SortMismatch("cannot pull back a sieve on " + c.object_name(s.target) + " along " + c.morphism_name(h));
  Sieve out{c.dom(h), {}};
  for (MorId g : c.into(c.dom(h)))
    if (s.contains(c.compose(h, g))) out.members.push_back(g);
  return out;
}

std::vector<Sieve> all_sieves(const FinCategory& c, ObjId x, const Limits& limits) {
  const auto& cone = c.into(x);
  if (cone.size() > limits.max_cone || cone.size() > 63)
    throw SizeLimit("morphisms into " + c.object_name(x), std::min<std::size_t>(limits.max_cone, 63));
  // Bitmask over the cone; principal sieves are unions of precomposites.
  std::vector<std::uint64_t> principal(cone.size(), 0);
  for (std::size_t i = 0; i < cone.size(); ++i)
    for (MorId g : c.into(c.dom(cone[i]))) {
      MorId fg = c.compose(cone[i], g);
      auto pos = std::find(cone.begin(), cone.end(), fg) - cone.begin();
      principal[i] |= std::uint64_t{1} << pos;
    }
  std::set<std::uint64_t> seen{0};
  std::vector<std::uint64_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto mask : frontier)
      for (std::size_t i = 0; i < cone.size(); ++i) {
        auto grown = mask | principal[i];
        if (seen.insert(grown).second) next.push_back(grown);
      }
    frontier = std::move(next);
  }
  std::vector<Sieve> out;
  for (auto mask : seen) {
    Sieve s{x, {}};
    for (std::size_t i = 0; i < cone.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) s.members.push_back(cone[i]);
    std::sort(s.members.begin(), s.members.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), sieve_before);
  return out;
}

bool Topology::covers_sieve(const Sieve& s) const {
  if (idx(s.target) >= covers.size()) return false;
  const auto& list = covers[idx(s.target)];
  auto it = std::lower_bound(list.begin(), list.end(), s, sieve_before);
  return it != list.end() && *it == s;
}

std::size_t Topology::cover_index(const Sieve& s) const {
  const auto& list = covers.at(idx(s.target));
  auto it = std::lower_bound(list.begin(), list.end(), s, sieve_before);
  if (it == list.end() || !(*it == s)) throw Error("sieve is not a cover");
  return static_cast<std::size_t>(it - list.begin());
}

std::size_t Topology::total_covers() const {
  std::size_t n = 0;
  for (const auto& l : covers) n += l.size();
  return n;
}

namespace {

void insert_sorted(std::vector<Sieve>& list, const Sieve& s) {
  auto it = std::lower_bound(list.begin(), list.end(), s, sieve_before);
  if (it == list.end() || !(*it == s)) list.insert(it, s);
}

}  // namespace

Topology saturate_topology(const FinCategory& c, const SieveBasis& basis, const Limits& limits) {
  std::vector<Violation> bad;
  for (const auto& [x, sieves] : basis)
    for (const auto& s : sieves)
      if (s.target != x || !is_sieve(c, s))
        bad.push_back({"InvalidSieve", "basis entry is not a sieve on its object", {describe(c, s)}});
  if (!bad.empty()) throw ValidationError(std::move(bad));

  std::vector<std::vector<Sieve>> lattice;
  for (ObjId x : c.objects()) lattice.push_back(all_sieves(c, x, limits));

  Topology t;
  t.covers.assign(c.num_objects(), {});
  for (ObjId x : c.objects()) insert_sorted(t.covers[idx(x)], maximal_sieve(c, x));
  for (const auto& [x, sieves] : basis)
    for (const auto& s : sieves) insert_sorted(t.covers[idx(x)], s);

  bool changed = true;
  while (changed) {
    changed = false;
    // Stability.
    for (ObjId x : c.objects()) {
      const auto current = t.covers[idx(x)];
      for (const auto& s : current)
        for (MorId h : c.into(x)) {
          Sieve p = pullback_sieve(c, s, h);
          if (!t.covers_sieve(p)) {
            insert_sorted(t.covers[idx(c.dom(h))], p);
            changed = true;
          }
        }
    }
    // Transitivity (which also gives upward closure).
    for (ObjId x : c.objects())
      for (const auto& s : lattice[idx(x)]) {
        if (t.covers_sieve(s)) continue;
        const auto current = t.covers[idx(x)];
        for (const auto& r : current) {
          bool locally = std::all_of(r.members.begin(), r.members.end(),
                                     [&](MorId h) { return t.covers_sieve(pullback_sieve(c, s, h)); });
          if (locally) {
            insert_sorted(t.covers[idx(x)], s);
            changed = true;
            break;
          }
        }
      }
  }
  return t;
}

std::vector<Violation> validate_topology(const FinCategory& c, const Topology& t, const Limits& limits) {
  std::vector<Violation> out;
  if (t.covers.size() != c.num_objects()) {
    out.push_back({"InvalidSieve", "topology does not assign covers to every object", {}});
    return out;
  }
  for (ObjId x : c.objects())
    for (const auto& s : t.on(x))
      if (s.target != x || !is_sieve(c, s))
        out.push_back({"InvalidSieve", "cover is not a sieve on its object", {c.object_name(x), describe(c, s)}});
  if (!out.empty()) return out;
  for (ObjId x : c.objects())
    if (!t.covers_sieve(maximal_sieve(c, x)))
      out.push_back({"MaximalityViolation", "maximal sieve does not cover", {c.object_name(x)}});
  for (ObjId x : c.objects())
    for (const auto& s : t.on(x))
      for (MorId h : c.into(x))
        if (!t.covers_sieve(pullback_sieve(c, s, h)))
          out.push_back({"StabilityViolation", "pullback of a cover does not cover",
                         {c.object_name(x), describe(c, s), c.morphism_name(h)}});
  for (ObjId x : c.objects())
    for (const auto& s : all_sieves(c, x, limits)) {
      if (t.covers_sieve(s)) continue;
      for (const auto& r : t.on(x)) {
        bool locally = std::all_of(r.members.begin(), r.members.end(),
                                   [&](MorId h) { return t.covers_sieve(pullback_sieve(c, s, h)); });
        if (locally) {
          out.push_back({"TransitivityViolation", "sieve is locally covering but not covering",
                         {c.object_name(x), describe(c, s), describe(c, r)}});
          break;
        }
      }
    }
  return out;
}

Topology trivial_topology(const FinCategory& c, const Limits& limits) { return saturate_topology(c, {}, limits); }

Topology all_sieves_topology(const FinCategory& c, const Limits& limits) {
  Topology t;
  for (ObjId x : c.objects()) t.covers.push_back(all_sieves(c, x, limits));
  return t;
}

std::set<ObjId> empty_cover_objects(const Topology& t) {
  std::set<ObjId> out;
  for (std::uint32_t x = 0; x < t.covers.size(); ++x)
    if (t.covers_sieve(empty_sieve(ObjId{x}))) out.insert(ObjId{x});
  return out;
}

Topology induced_topology(const FinCategory& c, const Topology& t, const FullSubcategory& d, const Limits& limits) {
  const FinCategory& sub = d.category;
  Topology out;
  out.covers.assign(sub.num_objects(), {});
  for (ObjId x : sub.objects()) {
    const ObjId parent = d.objects.at(idx(x));
    for (const auto& s : all_sieves(sub, x, limits)) {
      std::vector<MorId> gens;
      for (MorId f : s.members) gens.push_back(d.morphisms.at(idx(f)));
      if (t.covers_sieve(generated_sieve(c, parent, gens))) out.covers[idx(x)].push_back(s);
    }
  }
  return out;
}

}  // namespace topos
