#include "topos/presheaf.hpp"

#include <algorithm>
#include <numeric>

#include "topos/detail/functional_search.hpp"

namespace topos {

std::optional<Elem> Presheaf::find_element(ObjId x, const std::string& name) const {
  const auto& s = sets[idx(x)];
  auto it = std::find(s.begin(), s.end(), name);
  if (it == s.end()) return std::nullopt;
  return static_cast<Elem>(it - s.begin());
}

std::size_t Presheaf::total_size() const {
  std::size_t n = 0;
  for (const auto& s : sets) n += s.size();
  return n;
}

std::vector<Violation> check_presheaf(const FinCategory& c, const Presheaf& f) {
  std::vector<Violation> out;
  if (f.sets.size() != c.num_objects()) {
    out.push_back({"MissingAction", "presheaf does not assign a set to every object", {}});
    return out;
  }
  if (f.actions.size() != c.num_morphisms()) {
    out.push_back({"MissingAction", "presheaf does not assign an action to every morphism", {}});
    return out;
  }
  for (ObjId x : c.objects()) {
    auto names = f.sets[idx(x)];
    std::sort(names.begin(), names.end());
    if (auto it = std::adjacent_find(names.begin(), names.end()); it != names.end())
      out.push_back({"DanglingElement", "duplicate element name", {c.object_name(x), *it}});
  }
  for (MorId m : c.morphisms()) {
    const auto& a = f.actions[idx(m)];
    if (a.size() != f.size(c.cod(m))) {
      out.push_back({"MissingAction", "action table has the wrong size", {c.morphism_name(m)}});
      continue;
    }
    for (Elem y = 0; y < a.size(); ++y)
      if (a[y] >= f.size(c.dom(m)))
        out.push_back({"DanglingElement", "action leaves the domain set",
                       {c.morphism_name(m), f.element_name(c.cod(m), y)}});
  }
  if (!out.empty()) return out;
  for (ObjId x : c.objects())
    for (Elem e = 0; e < f.size(x); ++e)
      if (f.act(c.identity(x), e) != e)
        out.push_back({"FunctorialityViolation", "identity does not act trivially",
                       {c.morphism_name(c.identity(x)), f.element_name(x, e)}});
  for (MorId g : c.morphisms())
    for (MorId h : c.into(c.dom(g))) {
      const MorId gh = c.compose(g, h);
      for (Elem z = 0; z < f.size(c.cod(g)); ++z)
        if (f.act(gh, z) != f.act(h, f.act(g, z))) {
          out.push_back({"FunctorialityViolation", "F(g∘f) differs from F(f)∘F(g)",
                         {c.morphism_name(g), c.morphism_name(h), f.element_name(c.cod(g), z)}});
          break;
        }
    }
  return out;
}

Presheaf validate_presheaf(const FinCategory& c, const PresheafDesc& desc) {
  std::vector<Violation> bad;
  for (const auto& [name, _] : desc.sets)
    if (!c.find_object(name)) bad.push_back({"DanglingElement", "set given for an unknown object", {name}});
  for (const auto& [name, _] : desc.actions)
    if (!c.find_morphism(name)) bad.push_back({"DanglingElement", "action given for an unknown morphism", {name}});
  Presheaf f;
  for (ObjId x : c.objects()) {
    auto it = desc.sets.find(c.object_name(x));
    if (it == desc.sets.end()) {
      bad.push_back({"MissingAction", "no set given for object", {c.object_name(x)}});
      f.sets.emplace_back();
    } else {
      f.sets.push_back(it->second);
    }
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));
  for (MorId m : c.morphisms()) {
    const ObjId x = c.dom(m), y = c.cod(m);
    std::vector<Elem> table(f.size(y), 0);
    auto it = desc.actions.find(c.morphism_name(m));
    if (it == desc.actions.end()) {
      if (c.is_identity(m)) std::iota(table.begin(), table.end(), Elem{0});
      else bad.push_back({"MissingAction", "no action given for morphism", {c.morphism_name(m)}});
      f.actions.push_back(std::move(table));
      continue;
    }
    for (const auto& [from, _] : it->second)
      if (!f.find_element(y, from))
        bad.push_back({"DanglingElement", "action maps an element not in the codomain set", {c.morphism_name(m), from}});
    for (Elem e = 0; e < f.size(y); ++e) {
      auto entry = it->second.find(f.element_name(y, e));
      if (entry == it->second.end()) {
        bad.push_back({"MissingAction", "action undefined on element", {c.morphism_name(m), f.element_name(y, e)}});
        continue;
      }
      auto to = f.find_element(x, entry->second);
      if (!to) {
        bad.push_back({"DanglingElement", "action value not in the domain set", {c.morphism_name(m), entry->second}});
        continue;
      }
      table[e] = *to;
    }
    f.actions.push_back(std::move(table));
  }
  if (bad.empty()) bad = check_presheaf(c, f);
  if (!bad.empty()) throw ValidationError(std::move(bad));
  return f;
}

PresheafDesc describe(const FinCategory& c, const Presheaf& f) {
  PresheafDesc d;
  for (ObjId x : c.objects()) d.sets[c.object_name(x)] = f.sets[idx(x)];
  for (MorId m : c.morphisms()) {
    auto& table = d.actions[c.morphism_name(m)];
    for (Elem y = 0; y < f.size(c.cod(m)); ++y)
      table[f.element_name(c.cod(m), y)] = f.element_name(c.dom(m), f.act(m, y));
  }
  return d;
}

bool is_natural(const FinCategory& c, const Presheaf& f, const Presheaf& g, const PresheafMap& m) {
  if (m.components.size() != c.num_objects()) return false;
  for (ObjId x : c.objects()) {
    if (m.components[idx(x)].size() != f.size(x)) return false;
    for (Elem e : m.components[idx(x)])
      if (e >= g.size(x)) return false;
  }
  for (MorId h : c.morphisms())
    for (Elem y = 0; y < f.size(c.cod(h)); ++y)
      if (m(c.dom(h), f.act(h, y)) != g.act(h, m(c.cod(h), y))) return false;
  return true;
}

PresheafMap identity_map(const Presheaf& f) {
  PresheafMap m;
  for (const auto& s : f.sets) {
    std::vector<Elem> comp(s.size());
    std::iota(comp.begin(), comp.end(), Elem{0});
    m.components.push_back(std::move(comp));
  }
  return m;
}

PresheafMap compose(const PresheafMap& second, const PresheafMap& first) {
  PresheafMap m = first;
  for (std::size_t x = 0; x < m.components.size(); ++x)
    for (auto& e : m.components[x]) e = second.components[x][e];
  return m;
}

bool is_bijective(const PresheafMap& m, const Presheaf& codomain) {
  for (std::size_t x = 0; x < m.components.size(); ++x) {
    if (m.components[x].size() != codomain.sets[x].size()) return false;
    std::vector<bool> hit(codomain.sets[x].size(), false);
    for (Elem e : m.components[x]) {
      if (hit[e]) return false;
      hit[e] = true;
    }
  }
  return true;
}

Presheaf representable(const FinCategory& c, ObjId x) {
  Presheaf f;
  for (ObjId y : c.objects()) {
    std::vector<std::string> names;
    for (MorId m : c.hom(y, x)) names.push_back(c.morphism_name(m));
    f.sets.push_back(std::move(names));
  }
  for (MorId h : c.morphisms()) {
    std::vector<Elem> table;
    for (MorId g : c.hom(c.cod(h), x)) table.push_back(yoneda_element(c, c.compose(g, h)));
    f.actions.push_back(std::move(table));
  }
  return f;
}

Presheaf terminal_presheaf(const FinCategory& c) {
  Presheaf f;
  f.sets.assign(c.num_objects(), {"*"});
  f.actions.assign(c.num_morphisms(), {0});
  return f;
}

Presheaf empty_presheaf(const FinCategory& c) {
  Presheaf f;
  f.sets.assign(c.num_objects(), {});
  f.actions.assign(c.num_morphisms(), {});
  return f;
}

Presheaf sieve_presheaf(const FinCategory& c, const Sieve& s) {
  Presheaf f;
  std::vector<std::vector<MorId>> members(c.num_objects());
  for (MorId m : s.members) members[idx(c.dom(m))].push_back(m);
  for (ObjId y : c.objects()) {
    std::vector<std::string> names;
    for (MorId m : members[idx(y)]) names.push_back(c.morphism_name(m));
    f.sets.push_back(std::move(names));
  }
  for (MorId h : c.morphisms()) {
    std::vector<Elem> table;
    const auto& from = members[idx(c.dom(h))];
    for (MorId g : members[idx(c.cod(h))]) {
      const MorId gh = c.compose(g, h);
      table.push_back(static_cast<Elem>(std::find(from.begin(), from.end(), gh) - from.begin()));
    }
    f.actions.push_back(std::move(table));
  }
  return f;
}

std::vector<PresheafMap> nat_transformations(const FinCategory& c, const Presheaf& f, const Presheaf& g,
                                             const Limits& limits) {
  // One variable per (object, element of F).
  std::vector<std::size_t> offset(c.num_objects() + 1, 0);
  for (ObjId x : c.objects()) offset[idx(x) + 1] = offset[idx(x)] + f.size(x);
  std::vector<std::size_t> domains(offset.back());
  std::vector<ObjId> object_of(offset.back());
  for (ObjId x : c.objects())
    for (std::size_t i = offset[idx(x)]; i < offset[idx(x) + 1]; ++i) {
      domains[i] = g.size(x);
      object_of[i] = x;
    }
  detail::FunctionalSearch search(domains);
  std::vector<PresheafMap> out;
  search.run(
      [&](std::size_t var, Elem value, std::vector<std::pair<std::size_t, Elem>>& forced) {
        const ObjId x = object_of[var];
        const Elem a = static_cast<Elem>(var - offset[idx(x)]);
        for (MorId h : c.into(x)) forced.emplace_back(offset[idx(c.dom(h))] + f.act(h, a), g.act(h, value));
      },
      [&](std::span<const Elem> assignment) {
        if (out.size() >= limits.max_candidates) throw SizeLimit("natural transformations", limits.max_candidates);
        PresheafMap m;
        for (ObjId x : c.objects())
          m.components.emplace_back(assignment.begin() + offset[idx(x)], assignment.begin() + offset[idx(x) + 1]);
        out.push_back(std::move(m));
        return true;
      });
  return out;
}

bool is_matching(const FinCategory& c, const Presheaf& f, const MatchingFamily& m) {
  if (m.values.size() != m.sieve.size()) return false;
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const MorId h = m.sieve.members[i];
    if (m.values[i] >= f.size(c.dom(h))) return false;
    for (MorId g : c.into(c.dom(h))) {
      const MorId hg = c.compose(h, g);
      if (!m.sieve.contains(hg) || m.at(hg) != f.act(g, m.values[i])) return false;
    }
  }
  return true;
}

std::vector<Elem> amalgamations(const FinCategory& c, const Presheaf& f, const MatchingFamily& m) {
  if (!is_matching(c, f, m)) throw Error("NotMatching: family is not matching for " + describe(c, m.sieve));
  std::vector<Elem> out;
  const ObjId x = m.sieve.target;
  for (Elem y = 0; y < f.size(x); ++y) {
    bool ok = true;
    for (std::size_t i = 0; i < m.values.size() && ok; ++i) ok = f.act(m.sieve.members[i], y) == m.values[i];
    if (ok) out.push_back(y);
  }
  return out;
}

Elem unique_amalgamation(const FinCategory& c, const Presheaf& g, const MatchingFamily& m) {
  auto all = amalgamations(c, g, m);
  if (all.size() != 1)
    throw Error("NoAmalgamation: " + std::to_string(all.size()) + " amalgamations for a family on " +
                describe(c, m.sieve));
  return all.front();
}

std::vector<MatchingFamily> matching_families(const FinCategory& c, const Presheaf& f, const Sieve& s,
                                              const Limits& limits) {
  std::vector<std::size_t> domains;
  for (MorId h : s.members) domains.push_back(f.size(c.dom(h)));
  detail::FunctionalSearch search(domains);
  std::vector<MatchingFamily> out;
  search.run(
      [&](std::size_t var, Elem value, std::vector<std::pair<std::size_t, Elem>>& forced) {
        const MorId h = s.members[var];
        for (MorId g : c.into(c.dom(h))) forced.emplace_back(s.position(c.compose(h, g)), f.act(g, value));
      },
      [&](std::span<const Elem> values) {
        if (out.size() >= limits.max_families) throw SizeLimit("matching families on " + describe(c, s), limits.max_families);
        out.push_back(MatchingFamily{s, {values.begin(), values.end()}});
        return true;
      });
  return out;
}

MatchingFamily restriction_family(const FinCategory& c, const Presheaf& f, const Sieve& s, Elem d) {
  MatchingFamily m{s, {}};
  for (MorId h : s.members) m.values.push_back(f.act(h, d));
  (void)c;
  return m;
}

MatchingFamily pullback_family(const FinCategory& c, const MatchingFamily& m, MorId k) {
  MatchingFamily out{pullback_sieve(c, m.sieve, k), {}};
  for (MorId g : out.sieve.members) out.values.push_back(m.at(c.compose(k, g)));
  return out;
}

std::string to_string(SheafKind k) {
  switch (k) {
    case SheafKind::Sheaf: return "Sheaf";
    case SheafKind::SeparatedOnly: return "SeparatedOnly";
    case SheafKind::NotSeparated: return "NotSeparated";
  }
  return "?";
}

SheafStatus sheaf_status(const Site& site, const Presheaf& f, const Limits& limits) {
  const FinCategory& c = site.category;
  SheafStatus status;
  for (ObjId x : c.objects())
    for (const Sieve& s : site.topology.on(x))
      for (const auto& m : matching_families(c, f, s, limits)) {
        const auto n = amalgamations(c, f, m).size();
        if (n > 1) return SheafStatus{SheafKind::NotSeparated, m, n};
        if (n == 0 && status.kind == SheafKind::Sheaf) status = SheafStatus{SheafKind::SeparatedOnly, m, 0};
      }
  return status;
}

SubcanonicityReport is_subcanonical(const Site& site, const Limits& limits) {
  for (ObjId x : site.category.objects()) {
    auto status = sheaf_status(site, representable(site.category, x), limits);
    if (status.kind != SheafKind::Sheaf) return SubcanonicityReport{false, x, status};
  }
  return {};
}

std::pair<std::size_t, Elem> Coproduct::locate(ObjId x, Elem e) const {
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const Elem end = i + 1 < offsets.size() ? offsets[i + 1][idx(x)] : static_cast<Elem>(sum.size(x));
    if (e >= offsets[i][idx(x)] && e < end) return {i, e - offsets[i][idx(x)]};
  }
  throw Error("element outside the coproduct");
}

Coproduct coproduct(const FinCategory& c, std::span<const Presheaf> summands, const std::vector<std::string>& tags) {
  Coproduct out;
  out.sum.sets.assign(c.num_objects(), {});
  out.sum.actions.assign(c.num_morphisms(), {});
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const Presheaf& p = summands[i];
    const std::string tag = i < tags.size() ? tags[i] : "s" + std::to_string(i);
    std::vector<Elem> off;
    PresheafMap inj;
    for (ObjId x : c.objects()) {
      auto& set = out.sum.sets[idx(x)];
      off.push_back(static_cast<Elem>(set.size()));
      std::vector<Elem> comp;
      for (Elem e = 0; e < p.size(x); ++e) {
        comp.push_back(static_cast<Elem>(set.size()));
        set.push_back(tag + "." + p.element_name(x, e));
      }
      inj.components.push_back(std::move(comp));
    }
    out.offsets.push_back(std::move(off));
    out.injections.push_back(std::move(inj));
  }
  for (MorId h : c.morphisms())
    for (std::size_t i = 0; i < summands.size(); ++i)
      for (Elem y = 0; y < summands[i].size(c.cod(h)); ++y)
        out.sum.actions[idx(h)].push_back(out.offsets[i][idx(c.dom(h))] + summands[i].act(h, y));
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  // Keeps the smaller index as root.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::string family_name(const FinCategory& c, const Presheaf& f, const MatchingFamily& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const MorId h = m.sieve.members[i];
    out += (i ? "," : "") + c.morphism_name(h) + ":" + f.element_name(c.dom(h), m.values[i]);
  }
  return out + "}";
}

}  // namespace

Elem PlusConstruction::class_of(ObjId x, const MatchingFamily& m) const {
  const auto& layer = layers[idx(x)];
  auto it = layer.index.find({m.sieve.members, m.values});
  if (it == layer.index.end()) throw Error("family is not a matching family for a cover");
  return layer.class_of[it->second];
}

PlusConstruction plus_construction(const Site& site, const Presheaf& f, const Limits& limits) {
  const FinCategory& c = site.category;
  PlusConstruction out;
  out.layers.resize(c.num_objects());
  out.plus.sets.resize(c.num_objects());
  for (ObjId x : c.objects()) {
    auto& layer = out.layers[idx(x)];
    for (const Sieve& s : site.topology.on(x)) {
      for (auto& m : matching_families(c, f, s, limits)) {
        if (layer.pairs.size() >= limits.max_families)
          throw SizeLimit("matching families on " + c.object_name(x), limits.max_families);
        layer.index.emplace(std::make_pair(m.sieve.members, m.values), layer.pairs.size());
        layer.pairs.push_back(std::move(m));
      }
    }
    const std::size_t n = layer.pairs.size();
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (uf.find(i) == uf.find(j)) continue;
        const auto& a = layer.pairs[i];
        const auto& b = layer.pairs[j];
        Sieve agree{x, {}};
        for (std::size_t p = 0; p < a.sieve.size(); ++p) {
          const MorId h = a.sieve.members[p];
          if (b.sieve.contains(h) && b.at(h) == a.values[p]) agree.members.push_back(h);
        }
        if (site.topology.covers_sieve(agree)) uf.unite(i, j);
      }
    layer.class_of.assign(n, 0);
    std::vector<std::int64_t> class_of_root(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = uf.find(i);
      if (class_of_root[r] < 0) {
        class_of_root[r] = static_cast<std::int64_t>(layer.representative.size());
        layer.representative.push_back(i);
        out.plus.sets[idx(x)].push_back(family_name(c, f, layer.pairs[i]));
      }
      layer.class_of[i] = static_cast<Elem>(class_of_root[r]);
    }
  }
  for (MorId k : c.morphisms()) {
    const ObjId x = c.cod(k), y = c.dom(k);
    std::vector<Elem> table;
    for (Elem e = 0; e < out.plus.size(x); ++e)
      table.push_back(out.class_of(y, pullback_family(c, out.representative(x, e), k)));
    out.plus.actions.push_back(std::move(table));
  }
  for (ObjId x : c.objects()) {
    std::vector<Elem> comp;
    const Sieve top = maximal_sieve(c, x);
    for (Elem d = 0; d < f.size(x); ++d) comp.push_back(out.class_of(x, restriction_family(c, f, top, d)));
    out.eta.components.push_back(std::move(comp));
  }
  return out;
}

Sheafification sheafify(const Site& site, const Presheaf& f, const Limits& limits) {
  Sheafification out;
  out.layers.push_back(plus_construction(site, f, limits));
  out.layers.push_back(plus_construction(site, out.layers[0].plus, limits));
  out.sheaf = out.layers[1].plus;
  out.unit = compose(out.layers[1].eta, out.layers[0].eta);
  return out;
}

Sheafification sheafify_if_needed(const Site& site, const Presheaf& f, const Limits& limits) {
  if (sheaf_status(site, f, limits).kind != SheafKind::Sheaf) return sheafify(site, f, limits);
  return Sheafification{f, identity_map(f), {}};
}

SheafLift::SheafLift(const Site& site, const Sheafification& a, const Presheaf& target, Base base)
    : site_(site), a_(a), target_(target), base_(std::move(base)) {
  memo_.resize(a.layers.size() + 1);
  for (std::size_t level = 1; level <= a.layers.size(); ++level)
    for (const auto& set : a.layers[level - 1].plus.sets) memo_[level].emplace_back(set.size(), -1);
}

Elem SheafLift::operator()(ObjId x, Elem e) { return at_level(a_.layers.size(), x, e); }

Elem SheafLift::at_level(std::size_t level, ObjId x, Elem e) {
  if (level == 0) return base_(x, e);
  auto& slot = memo_[level][idx(x)][e];
  if (slot >= 0) return static_cast<Elem>(slot);
  const FinCategory& c = site_.category;
  MatchingFamily image = a_.layers[level - 1].representative(x, e);
  for (std::size_t i = 0; i < image.values.size(); ++i)
    image.values[i] = at_level(level - 1, c.dom(image.sieve.members[i]), image.values[i]);
  const Elem v = unique_amalgamation(c, target_, image);
  slot = v;
  return v;
}

PresheafMap SheafLift::to_map() {
  PresheafMap m;
  for (ObjId x : site_.category.objects()) {
    std::vector<Elem> comp;
    for (Elem e = 0; e < a_.sheaf.size(x); ++e) comp.push_back((*this)(x, e));
    m.components.push_back(std::move(comp));
  }
  return m;
}

PresheafQuotient quotient_presheaf(const FinCategory& c, const Presheaf& f, const std::vector<ElementPair>& relations) {
  std::vector<UnionFind> uf;
  for (ObjId x : c.objects()) uf.emplace_back(f.size(x));
  std::vector<ElementPair> work(relations.rbegin(), relations.rend());
  while (!work.empty()) {
    const ElementPair p = work.back();
    work.pop_back();
    if (!uf[idx(p.object)].unite(p.first, p.second)) continue;
    for (MorId h : c.into(p.object)) work.push_back({c.dom(h), f.act(h, p.first), f.act(h, p.second)});
  }
  PresheafQuotient out;
  for (ObjId x : c.objects()) {
    auto& u = uf[idx(x)];
    std::vector<std::vector<Elem>> members;
    std::vector<Elem> class_of_root(f.size(x), 0);
    std::vector<Elem> comp;
    for (Elem e = 0; e < f.size(x); ++e) {
      const auto r = u.find(e);
      if (r == e) {
        class_of_root[e] = static_cast<Elem>(members.size());
        members.emplace_back();
      }
      members[class_of_root[r]].push_back(e);
      comp.push_back(class_of_root[r]);
    }
    std::vector<std::string> names;
    for (const auto& m : members) {
      std::string name = f.element_name(x, m[0]);
      for (std::size_t i = 1; i < m.size(); ++i) name += "~" + f.element_name(x, m[i]);
      names.push_back(std::move(name));
    }
    out.quotient.sets.push_back(std::move(names));
    out.projection.components.push_back(std::move(comp));
  }
  for (MorId h : c.morphisms()) {
    const ObjId y = c.cod(h), x = c.dom(h);
    std::vector<Elem> table(out.quotient.size(y), 0);
    for (Elem e = 0; e < f.size(y); ++e) table[out.projection(y, e)] = out.projection(x, f.act(h, e));
    out.quotient.actions.push_back(std::move(table));
  }
  return out;
}

PresheafMap sheafified_yoneda(const Site& site, const std::vector<Sheafification>& ay, MorId f) {
  const FinCategory& c = site.category;
  const ObjId x = c.dom(f), y = c.cod(f);
  SheafLift lift(site, ay[idx(x)], ay[idx(y)].sheaf, [&](ObjId w, Elem g) {
    return ay[idx(y)].unit(w, yoneda_element(c, c.compose(f, c.hom(w, x)[g])));
  });
  return lift.to_map();
}

AycCategory ayc_category(const Site& site, const Limits& limits) {
  const FinCategory& c = site.category;
  AycCategory out;
  for (ObjId x : c.objects()) out.sheaves.push_back(sheafify(site, representable(c, x), limits));

  const std::size_t n = c.num_objects();
  std::vector<std::vector<PresheafMap>> homs(n * n);
  std::vector<std::vector<std::string>> names(n * n);
  for (ObjId x : c.objects())
    for (ObjId y : c.objects()) {
      homs[idx(x) * n + idx(y)] = nat_transformations(c, out.sheaves[idx(x)].sheaf, out.sheaves[idx(y)].sheaf, limits);
      names[idx(x) * n + idx(y)].assign(homs[idx(x) * n + idx(y)].size(), "");
    }
  auto position = [&](ObjId x, ObjId y, const PresheafMap& m) {
    const auto& list = homs[idx(x) * n + idx(y)];
    auto it = std::find(list.begin(), list.end(), m);
    if (it == list.end()) throw Error("transformation missing from enumerated hom-set");
    return static_cast<std::size_t>(it - list.begin());
  };

  std::vector<std::size_t> site_image;
  for (MorId f : c.morphisms()) {
    const ObjId x = c.dom(f), y = c.cod(f);
    const auto p = position(x, y, sheafified_yoneda(site, out.sheaves, f));
    site_image.push_back(p);
    auto& name = names[idx(x) * n + idx(y)][p];
    if (name.empty()) name = c.morphism_name(f);
  }

  CategoryDesc desc;
  for (ObjId x : c.objects()) desc.objects.push_back(c.object_name(x));
  std::vector<std::size_t> first_id(n * n, 0);
  for (ObjId x : c.objects())
    for (ObjId y : c.objects()) {
      auto& nm = names[idx(x) * n + idx(y)];
      first_id[idx(x) * n + idx(y)] = desc.morphisms.size();
      for (std::size_t k = 0; k < nm.size(); ++k) {
        if (nm[k].empty()) nm[k] = c.object_name(x) + "->" + c.object_name(y) + "#" + std::to_string(k);
        desc.morphisms.push_back({nm[k], c.object_name(x), c.object_name(y)});
        out.maps.push_back(homs[idx(x) * n + idx(y)][k]);
      }
    }
  for (ObjId x : c.objects())
    desc.identities[c.object_name(x)] = names[idx(x) * n + idx(x)][position(x, x, identity_map(out.sheaves[idx(x)].sheaf))];
  for (ObjId x : c.objects())
    for (ObjId y : c.objects())
      for (ObjId z : c.objects())
        for (std::size_t f = 0; f < homs[idx(x) * n + idx(y)].size(); ++f)
          for (std::size_t g = 0; g < homs[idx(y) * n + idx(z)].size(); ++g) {
            const auto gf = position(x, z, compose(homs[idx(y) * n + idx(z)][g], homs[idx(x) * n + idx(y)][f]));
            desc.composition.push_back({names[idx(y) * n + idx(z)][g], names[idx(x) * n + idx(y)][f],
                                        names[idx(x) * n + idx(z)][gf]});
          }
  out.category = validate_category(desc);
  for (MorId f : c.morphisms())
    out.image.push_back(MorId{static_cast<std::uint32_t>(first_id[idx(c.dom(f)) * n + idx(c.cod(f))] + site_image[idx(f)])});
  return out;
}

}  // namespace topos
