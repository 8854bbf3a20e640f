#include "topos/fincat.hpp"

#include <algorithm>
#include <functional>

namespace topos {

MorId FinCategory::compose(MorId g, MorId f) const {
  auto gf = try_compose(g, f);
  if (!gf) throw Error("not composable: " + morphism_name(g) + " ∘ " + morphism_name(f));
  return *gf;
}

std::optional<MorId> FinCategory::try_compose(MorId g, MorId f) const {
  const auto v = comp_[idx(g) * num_morphisms() + idx(f)];
  if (v < 0) return std::nullopt;
  return MorId{static_cast<std::uint32_t>(v)};
}

std::optional<ObjId> FinCategory::find_object(const std::string& name) const {
  auto it = std::find(object_names_.begin(), object_names_.end(), name);
  if (it == object_names_.end()) return std::nullopt;
  return ObjId{static_cast<std::uint32_t>(it - object_names_.begin())};
}

std::optional<MorId> FinCategory::find_morphism(const std::string& name) const {
  for (std::size_t i = 0; i < morphisms_.size(); ++i)
    if (morphisms_[i].name == name) return MorId{static_cast<std::uint32_t>(i)};
  return std::nullopt;
}

ObjId FinCategory::object(const std::string& name) const {
  if (auto x = find_object(name)) return *x;
  throw UnknownName("unknown object '" + name + "'");
}

MorId FinCategory::morphism(const std::string& name) const {
  if (auto f = find_morphism(name)) return *f;
  throw UnknownName("unknown morphism '" + name + "'");
}

std::vector<ObjId> FinCategory::objects() const {
  std::vector<ObjId> out;
  for (std::uint32_t i = 0; i < num_objects(); ++i) out.push_back(ObjId{i});
  return out;
}

std::vector<MorId> FinCategory::morphisms() const {
  std::vector<MorId> out;
  for (std::uint32_t i = 0; i < num_morphisms(); ++i) out.push_back(MorId{i});
  return out;
}

std::optional<MorId> FinCategory::inverse(MorId f) const {
  for (MorId g : hom(cod(f), dom(f)))
    if (compose(g, f) == identity(dom(f)) && compose(f, g) == identity(cod(f))) return g;
  return std::nullopt;
}

CategoryDesc FinCategory::describe() const {
  CategoryDesc d;
  d.objects = object_names_;
  for (const auto& m : morphisms_) d.morphisms.push_back({m.name, object_name(m.dom), object_name(m.cod)});
  for (std::uint32_t x = 0; x < num_objects(); ++x)
    d.identities[object_names_[x]] = morphism_name(identities_[x]);
  for (MorId g : morphisms())
    for (MorId f : into(dom(g))) d.composition.push_back({morphism_name(g), morphism_name(f), morphism_name(compose(g, f))});
  return d;
}

void FinCategory::index() {
  const std::size_t n = num_objects();
  homs_.assign(n * n, {});
  into_.assign(n, {});
  out_of_.assign(n, {});
  for (std::uint32_t i = 0; i < morphisms_.size(); ++i) {
    const auto& m = morphisms_[i];
    homs_[idx(m.dom) * n + idx(m.cod)].push_back(MorId{i});
    into_[idx(m.cod)].push_back(MorId{i});
    out_of_[idx(m.dom)].push_back(MorId{i});
  }
}

FinCategory build_category(const CategoryDesc& desc, std::vector<Violation>& out) {
  FinCategory c;
  std::map<std::string, std::uint32_t> obj_ids;
  for (const auto& name : desc.objects) {
    if (!obj_ids.emplace(name, static_cast<std::uint32_t>(c.object_names_.size())).second)
      out.push_back({"DanglingReference", "duplicate object id", {name}});
    else
      c.object_names_.push_back(name);
  }
  std::map<std::string, std::uint32_t> mor_ids;
  for (const auto& m : desc.morphisms) {
    auto d = obj_ids.find(m.dom);
    auto k = obj_ids.find(m.cod);
    if (d == obj_ids.end() || k == obj_ids.end()) {
      out.push_back({"DanglingReference", "morphism references an undeclared object", {m.name, m.dom, m.cod}});
      continue;
    }
    if (!mor_ids.emplace(m.name, static_cast<std::uint32_t>(c.morphisms_.size())).second) {
      out.push_back({"DanglingReference", "duplicate morphism id", {m.name}});
      continue;
    }
    c.morphisms_.push_back({m.name, ObjId{d->second}, ObjId{k->second}});
  }
  if (!out.empty()) return c;

  const std::size_t n = c.num_objects();
  const std::size_t m = c.num_morphisms();
  c.identities_.assign(n, MorId{0});
  std::vector<bool> has_identity(n, false);
  for (const auto& [obj, mor] : desc.identities) {
    auto x = obj_ids.find(obj);
    auto f = mor_ids.find(mor);
    if (x == obj_ids.end() || f == mor_ids.end()) {
      out.push_back({"DanglingReference", "identity entry references undeclared id", {obj, mor}});
      continue;
    }
    const auto& fm = c.morphisms_[f->second];
    if (idx(fm.dom) != x->second || idx(fm.cod) != x->second) {
      out.push_back({"IdentityLawViolation", "identity is not an endomorphism of its object", {obj, mor}});
      continue;
    }
    c.identities_[x->second] = MorId{f->second};
    has_identity[x->second] = true;
  }
  for (std::size_t x = 0; x < n; ++x)
    if (!has_identity[x]) out.push_back({"IdentityLawViolation", "object has no identity", {c.object_names_[x]}});
  if (!out.empty()) return c;

  c.comp_.assign(m * m, -1);
  for (const auto& [g, f, gf] : desc.composition) {
    auto gi = mor_ids.find(g);
    auto fi = mor_ids.find(f);
    auto gfi = mor_ids.find(gf);
    if (gi == mor_ids.end() || fi == mor_ids.end() || gfi == mor_ids.end()) {
      out.push_back({"DanglingReference", "composition entry references undeclared morphism", {g, f, gf}});
      continue;
    }
    const auto& gm = c.morphisms_[gi->second];
    const auto& fm = c.morphisms_[fi->second];
    const auto& gfm = c.morphisms_[gfi->second];
    if (fm.cod != gm.dom) {
      out.push_back({"DanglingReference", "composition entry for a non-composable pair", {g, f, gf}});
      continue;
    }
    if (gfm.dom != fm.dom || gfm.cod != gm.cod) {
      out.push_back({"CompositionGap", "composite has the wrong domain or codomain", {g, f, gf}});
      continue;
    }
    auto& slot = c.comp_[gi->second * m + fi->second];
    if (slot >= 0 && static_cast<std::uint32_t>(slot) != gfi->second) {
      out.push_back({"CompositionGap", "conflicting composition entries", {g, f, gf}});
      continue;
    }
    slot = static_cast<std::int32_t>(gfi->second);
  }
  // Pairs involving an identity may be omitted; the identity law fixes them.
  for (std::uint32_t f = 0; f < m; ++f) {
    const auto& fm = c.morphisms_[f];
    auto& left = c.comp_[idx(c.identities_[idx(fm.cod)]) * m + f];
    if (left < 0) left = static_cast<std::int32_t>(f);
    auto& right = c.comp_[f * m + idx(c.identities_[idx(fm.dom)])];
    if (right < 0) right = static_cast<std::int32_t>(f);
  }
  for (std::uint32_t g = 0; g < m; ++g)
    for (std::uint32_t f = 0; f < m; ++f)
      if (c.morphisms_[f].cod == c.morphisms_[g].dom && c.comp_[g * m + f] < 0)
        out.push_back({"CompositionGap", "missing composite for composable pair",
                       {c.morphisms_[g].name, c.morphisms_[f].name}});
  if (!out.empty()) return c;

  c.index();
  for (MorId f : c.morphisms()) {
    if (c.compose(f, c.identity(c.dom(f))) != f)
      out.push_back({"IdentityLawViolation", "f ∘ id_dom(f) != f", {c.morphism_name(f)}});
    if (c.compose(c.identity(c.cod(f)), f) != f)
      out.push_back({"IdentityLawViolation", "id_cod(f) ∘ f != f", {c.morphism_name(f)}});
  }
  for (MorId f : c.morphisms())
    for (MorId g : c.out_of(c.cod(f)))
      for (MorId h : c.out_of(c.cod(g)))
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
          out.push_back({"AssociativityViolation", "h ∘ (g ∘ f) != (h ∘ g) ∘ f",
                         {c.morphism_name(h), c.morphism_name(g), c.morphism_name(f)}});
  return c;
}

std::vector<Violation> check_category(const CategoryDesc& desc) {
  std::vector<Violation> out;
  build_category(desc, out);
  return out;
}

FinCategory validate_category(const CategoryDesc& desc) {
  std::vector<Violation> out;
  FinCategory c = build_category(desc, out);
  if (!out.empty()) throw ValidationError(std::move(out));
  return c;
}

std::vector<MorId> hom_set(const FinCategory& c, ObjId x, ObjId y) {
  if (idx(x) >= c.num_objects() || idx(y) >= c.num_objects()) throw UnknownName("unknown object id");
  return c.hom(x, y);
}

std::optional<std::size_t> Centre::find(const CentreElement& e) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == e) return i;
  return std::nullopt;
}

std::vector<CentreElement> natural_endomorphisms_of_identity(const FinCategory& c) {
  const std::size_t n = c.num_objects();
  std::vector<CentreElement> found;
  CentreElement current;
  current.components.assign(n, MorId{0});

  // Naturality constraint for f : X -> Y, checked once both X and Y are assigned.
  auto natural_at = [&](MorId f) {
    return c.compose(f, current.components[idx(c.dom(f))]) == c.compose(current.components[idx(c.cod(f))], f);
  };

  std::function<void(std::uint32_t)> search = [&](std::uint32_t x) {
    if (x == n) {
      found.push_back(current);
      return;
    }
    const ObjId obj{x};
    for (MorId e : c.hom(obj, obj)) {
      current.components[x] = e;
      bool ok = true;
      for (MorId f : c.out_of(obj))
        if (idx(c.cod(f)) <= x && !natural_at(f)) { ok = false; break; }
      if (ok)
        for (MorId f : c.into(obj))
          if (idx(c.dom(f)) < x && !natural_at(f)) { ok = false; break; }
      if (ok) search(x + 1);
    }
  };
  search(0);
  return found;
}

bool is_natural_automorphism(const FinCategory& c, const CentreElement& e) {
  if (e.components.size() != c.num_objects()) return false;
  for (ObjId x : c.objects()) {
    MorId p = e.components[idx(x)];
    if (c.dom(p) != x || c.cod(p) != x || !c.inverse(p)) return false;
  }
  for (MorId f : c.morphisms())
    if (c.compose(f, e.components[idx(c.dom(f))]) != c.compose(e.components[idx(c.cod(f))], f)) return false;
  return true;
}

Centre centre(const FinCategory& c) {
  Centre z;
  for (auto& e : natural_endomorphisms_of_identity(c)) {
    bool invertible = std::all_of(e.components.begin(), e.components.end(),
                                  [&](MorId p) { return c.inverse(p).has_value(); });
    if (invertible) z.elements.push_back(std::move(e));
  }
  CentreElement unit;
  for (ObjId x : c.objects()) unit.components.push_back(c.identity(x));
  const std::size_t n = z.elements.size();
  z.group.table.assign(n, std::vector<std::size_t>(n, 0));
  z.group.inverse.assign(n, 0);
  z.group.identity = *z.find(unit);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      CentreElement prod;
      for (ObjId x : c.objects())
        prod.components.push_back(c.compose(z.elements[a].components[idx(x)], z.elements[b].components[idx(x)]));
      z.group.table[a][b] = *z.find(prod);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (z.group.table[a][b] == z.group.identity) z.group.inverse[a] = b;
  return z;
}

std::string describe(const FinCategory& c, const CentreElement& e) {
  std::string s = "{";
  for (ObjId x : c.objects()) {
    if (idx(x)) s += ", ";
    s += c.object_name(x) + ": " + c.morphism_name(e.components[idx(x)]);
  }
  return s + "}";
}

std::optional<ObjId> FullSubcategory::sub_object(ObjId parent) const {
  for (std::uint32_t i = 0; i < objects.size(); ++i)
    if (objects[i] == parent) return ObjId{i};
  return std::nullopt;
}

std::optional<MorId> FullSubcategory::sub_morphism(MorId parent) const {
  for (std::uint32_t i = 0; i < morphisms.size(); ++i)
    if (morphisms[i] == parent) return MorId{i};
  return std::nullopt;
}

FullSubcategory full_subcategory(const FinCategory& c, const std::set<ObjId>& keep) {
  for (ObjId x : keep)
    if (idx(x) >= c.num_objects()) throw UnknownName("unknown object id " + std::to_string(idx(x)));
  FullSubcategory sub;
  CategoryDesc d;
  for (ObjId x : c.objects())
    if (keep.contains(x)) {
      sub.objects.push_back(x);
      d.objects.push_back(c.object_name(x));
      d.identities[c.object_name(x)] = c.morphism_name(c.identity(x));
    }
  for (MorId f : c.morphisms())
    if (keep.contains(c.dom(f)) && keep.contains(c.cod(f))) {
      sub.morphisms.push_back(f);
      d.morphisms.push_back({c.morphism_name(f), c.object_name(c.dom(f)), c.object_name(c.cod(f))});
    }
  for (MorId g : sub.morphisms)
    for (MorId f : sub.morphisms)
      if (c.cod(f) == c.dom(g))
        d.composition.push_back({c.morphism_name(g), c.morphism_name(f), c.morphism_name(c.compose(g, f))});
  sub.category = validate_category(d);
  return sub;
}

std::set<ObjId> initial_objects(const FinCategory& c) {
  std::set<ObjId> out;
  for (ObjId x : c.objects()) {
    bool initial = true;
    for (ObjId y : c.objects())
      if (c.hom(x, y).size() != 1) { initial = false; break; }
    if (initial) out.insert(x);
  }
  return out;
}

}  // namespace topos
