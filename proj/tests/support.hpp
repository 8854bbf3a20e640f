#pragma once

// Brute-force oracles and fixtures shared by the test binaries. The oracles
// only use the raw accessors of FinCategory and Presheaf, never the library's
// search code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "topos/freeext.hpp"
#include "topos/isotropy.hpp"
#include "topos/presheaf.hpp"
#include "topos/site.hpp"
#include "topos/standard_sites.hpp"

namespace oracle {

using namespace topos;

// |{z : zg = gz for all g}|
inline std::size_t group_centre_order(const GroupTable& g) {
  std::size_t n = g.names.size(), count = 0;
  for (std::size_t z = 0; z < n; ++z) {
    bool central = true;
    for (std::size_t a = 0; a < n && central; ++a) central = g.mul[z][a] == g.mul[a][z];
    count += central;
  }
  return count;
}

// Every subset of the cone over x closed under precomposition, as member bitmasks.
inline std::vector<std::uint64_t> sieve_masks(const FinCategory& c, ObjId x) {
  const auto& cone = c.into(x);
  std::vector<std::uint64_t> out;
  const std::uint64_t n = cone.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool closed = true;
    for (std::uint64_t i = 0; i < n && closed; ++i) {
      if (!(mask >> i & 1)) continue;
      for (MorId g : c.into(c.dom(cone[i]))) {
        const MorId fg = c.compose(cone[i], g);
        const auto j = std::find(cone.begin(), cone.end(), fg) - cone.begin();
        if (!(mask >> j & 1)) closed = false;
      }
    }
    if (closed) out.push_back(mask);
  }
  return out;
}

inline bool sieve_has(const Sieve& s, MorId f) {
  return std::find(s.members.begin(), s.members.end(), f) != s.members.end();
}

inline bool topology_covers(const Topology& t, const Sieve& s) {
  for (const auto& cov : t.on(s.target))
    if (cov.members == s.members) return true;
  return false;
}

inline Sieve pullback(const FinCategory& c, const Sieve& s, MorId h) {
  Sieve out{c.dom(h), {}};
  for (MorId g : c.into(c.dom(h)))
    if (sieve_has(s, c.compose(h, g))) out.members.push_back(g);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

inline Sieve sieve_from_mask(const FinCategory& c, ObjId x, std::uint64_t mask) {
  Sieve s{x, {}};
  const auto& cone = c.into(x);
  for (std::size_t i = 0; i < cone.size(); ++i)
    if (mask >> i & 1) s.members.push_back(cone[i]);
  std::sort(s.members.begin(), s.members.end());
  return s;
}

// Maximality, stability and transitivity checked directly over all sieves.
inline bool is_grothendieck_topology(const FinCategory& c, const Topology& t) {
  for (ObjId x : c.objects()) {
    const Sieve top = sieve_from_mask(c, x, sieve_masks(c, x).back());
    if (!topology_covers(t, top)) return false;
    for (const auto& s : t.on(x))
      for (MorId h : c.into(x))
        if (!topology_covers(t, pullback(c, s, h))) return false;
    for (std::uint64_t mask : sieve_masks(c, x)) {
      const Sieve r = sieve_from_mask(c, x, mask);
      for (const auto& s : t.on(x)) {
        bool all = true;
        for (MorId h : s.members) all = all && topology_covers(t, pullback(c, r, h));
        if (all && !topology_covers(t, r)) return false;
      }
    }
  }
  return true;
}

enum class Kind { Sheaf, Separated, Neither };

// Enumerates every tuple over each cover and counts amalgamations.
inline Kind classify(const Site& site, const Presheaf& f) {
  const FinCategory& c = site.category;
  Kind worst = Kind::Sheaf;
  for (ObjId x : c.objects())
    for (const auto& s : site.topology.on(x)) {
      const auto& m = s.members;
      std::vector<Elem> t(m.size(), 0);
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i < m.size()) {
          for (Elem v = 0; v < f.size(c.dom(m[i])); ++v) {
            t[i] = v;
            go(i + 1);
          }
          return;
        }
        for (std::size_t a = 0; a < m.size(); ++a)
          for (MorId g : c.into(c.dom(m[a]))) {
            const auto b = std::find(m.begin(), m.end(), c.compose(m[a], g)) - m.begin();
            if (f.act(g, t[a]) != t[b]) return;
          }
        std::size_t amalg = 0;
        for (Elem d = 0; d < f.size(x); ++d) {
          bool ok = true;
          for (std::size_t a = 0; a < m.size() && ok; ++a) ok = f.act(m[a], d) == t[a];
          amalg += ok;
        }
        if (amalg > 1) worst = Kind::Neither;
        else if (amalg == 0 && worst == Kind::Sheaf) worst = Kind::Separated;
      };
      go(0);
    }
  return worst;
}

// Counts natural transformations by enumerating every family of functions.
inline std::size_t count_natural(const FinCategory& c, const Presheaf& f, const Presheaf& g) {
  const auto objs = c.objects();
  std::vector<std::vector<Elem>> comp(objs.size());
  std::size_t count = 0;
  std::function<void(std::size_t, Elem)> go = [&](std::size_t k, Elem e) {
    if (k == objs.size()) {
      for (MorId h : c.morphisms())
        for (Elem y = 0; y < f.size(c.cod(h)); ++y)
          if (comp[idx(c.dom(h))][f.act(h, y)] != g.act(h, comp[idx(c.cod(h))][y])) return;
      ++count;
      return;
    }
    const ObjId x = objs[k];
    if (e == f.size(x)) {
      go(k + 1, 0);
      return;
    }
    for (Elem v = 0; v < g.size(x); ++v) {
      comp[k].resize(f.size(x));
      comp[k][e] = v;
      go(k, e + 1);
    }
  };
  go(0, 0);
  return count;
}

// Opens of a finite space as point bitmasks, keyed by object name.
using Opens = std::map<std::string, unsigned>;

inline const Opens& sierpinski_points() {
  static const Opens o{{"E", 0}, {"U", 1}, {"X", 3}};
  return o;
}

inline const Opens& discrete_points() {
  static const Opens o{{"E", 0}, {"L", 1}, {"R", 2}, {"X", 3}};
  return o;
}

// A sieve covers V iff the domains of its members union to V.
inline bool union_covers(const FinCategory& c, const Opens& pts, const Sieve& s) {
  unsigned u = 0;
  for (MorId f : s.members) u |= pts.at(c.object_name(c.dom(f)));
  return u == pts.at(c.object_name(s.target));
}

}  // namespace oracle

namespace fixtures {

using namespace topos;

inline Site bg(const std::string& name, const GroupTable& g) { return with_trivial_topology(name, delooping(g)); }

// Subcanonical sites with no empty covers.
inline std::vector<Site> good_sites() {
  return {bg("bz4", cyclic_group(4)), bg("bs3", symmetric_group(3)),
          with_trivial_topology("sierpinski", sierpinski_poset()), sierpinski_nonempty_site(),
          discrete_nonempty_site()};
}

inline std::vector<Site> all_sites() {
  auto s = good_sites();
  s.push_back(sierpinski_open_cover_site());
  s.push_back(discrete_open_cover_site());
  s.push_back(bz2_all_sieves_site());
  return s;
}

// The constant presheaf on a set of n elements.
inline Presheaf constant(const FinCategory& c, std::size_t n) {
  std::vector<std::string> names;
  std::vector<Elem> id;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    id.push_back(static_cast<Elem>(i));
  }
  Presheaf p;
  p.sets.assign(c.num_objects(), names);
  p.actions.assign(c.num_morphisms(), id);
  return p;
}

// Small presheaves, not necessarily sheaves, for every site.
inline std::vector<std::pair<std::string, Presheaf>> presheaves(const Site& site) {
  const FinCategory& c = site.category;
  std::vector<std::pair<std::string, Presheaf>> out;
  for (ObjId x : c.objects()) out.push_back({"y" + c.object_name(x), representable(c, x)});
  out.push_back({"1", terminal_presheaf(c)});
  out.push_back({"0", empty_presheaf(c)});
  out.push_back({"2", constant(c, 2)});
  for (ObjId x : c.objects())
    for (const auto& s : all_sieves(c, x))
      if (!s.members.empty() && s.members.size() < c.into(x).size())
        out.push_back({describe(c, s), sieve_presheaf(c, s)});
  return out;
}

}  // namespace fixtures
