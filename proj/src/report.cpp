#include "topos/report.hpp"

#include <sstream>

namespace topos {

Json violations_to_json(const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) out.push_back({{"kind", v.kind}, {"message", v.message}, {"witnesses", v.witnesses}});
  return out;
}

Json site_summary(const Site& site) {
  const FinCategory& c = site.category;
  Json covers = Json::object();
  for (ObjId x : c.objects()) {
    Json list = Json::array();
    for (const auto& s : site.topology.on(x)) list.push_back(describe(c, s));
    covers[c.object_name(x)] = list;
  }
  return {{"site", site.name},
          {"objects", c.num_objects()},
          {"morphisms", c.num_morphisms()},
          {"covers", site.topology.total_covers()},
          {"topology", covers}};
}

Json centre_report(const FinCategory& c, const Centre& z) {
  Json elems = Json::array();
  for (const auto& e : z.elements) elems.push_back(describe(c, e));
  return {{"order", z.order()}, {"abelian", is_abelian(z.group)}, {"elements", elems}, {"table", z.group.table}};
}

namespace {

Json family_json(const FinCategory& c, const Presheaf& f, const MatchingFamily& m) {
  Json values = Json::object();
  for (std::size_t i = 0; i < m.sieve.members.size(); ++i) {
    const MorId h = m.sieve.members[i];
    values[c.morphism_name(h)] = f.element_name(c.dom(h), m.values[i]);
  }
  return {{"sieve", describe(c, m.sieve)}, {"values", values}};
}

Json normal_form_json(const Site& site, const FreeExtension& ext, const NormalForm& nf) {
  const FinCategory& c = site.category;
  Json comps = Json::object();
  for (std::size_t i = 0; i < nf.cover.members.size(); ++i) {
    const MorId h = nf.cover.members[i];
    const auto& k = nf.components[i];
    comps[c.morphism_name(h)] = k.kind == NormalComponent::Kind::Const
                                    ? "c " + ext.base.element_name(c.dom(h), k.element)
                                    : "alpha " + c.morphism_name(k.morphism) + " " + ext.generators[k.generator].name;
  }
  return {{"cover", describe(c, nf.cover)}, {"components", comps}};
}

}  // namespace

Json sheaf_check_report(const Site& site, const Presheaf& f, const SheafStatus& status) {
  Json out = {{"status", to_string(status.kind)}, {"sizes", Json::object()}};
  for (ObjId x : site.category.objects()) out["sizes"][site.category.object_name(x)] = f.size(x);
  if (status.witness) {
    out["witness"] = family_json(site.category, f, *status.witness);
    out["amalgamations"] = status.amalgamation_count;
  }
  return out;
}

Json free_extension_report(const Site& site, const FreeExtension& ext, ObjId x) {
  const FinCategory& c = site.category;
  const Presheaf& e = ext.carrier();
  Json sizes = Json::object();
  for (ObjId y : c.objects()) sizes[c.object_name(y)] = e.size(y);
  Json gens = Json::array();
  for (std::size_t i = 0; i < ext.generators.size(); ++i)
    gens.push_back({{"name", ext.generators[i].name},
                    {"sort", c.object_name(ext.generators[i].sort)},
                    {"element", e.element_name(ext.generators[i].sort, ext.generic[i])}});
  Json elems = Json::array();
  for (Elem a = 0; a < e.size(x); ++a)
    elems.push_back({{"element", e.element_name(x, a)}, {"normal_form", normal_form_json(site, ext, normal_form(site, ext, x, a))}});
  return {{"at", c.object_name(x)}, {"sizes", sizes}, {"generators", gens}, {"elements", elems}};
}

Json family_to_json(const Site& site, const IsotropyEngine& engine, const IsotropyFamily& s) {
  Json out = Json::object();
  for (ObjId x : site.category.objects())
    out[site.category.object_name(x)] = engine.extension(x).carrier().element_name(x, s[idx(x)]);
  return out;
}

Json isotropy_report(const Site& site, IsotropyEngine& engine, const IsotropyGroup& g, const Centre& z, bool fast_path) {
  Json elems = Json::array();
  for (const auto& s : g.elements) elems.push_back(family_to_json(site, engine, s));
  Json out = {{"method", fast_path ? "pure-families" : "definition"},
              {"order", g.order()},
              {"centre_order", z.order()},
              {"elements", elems},
              {"table", g.group.table}};
  return out;
}

Json theorem_report(const TheoremReport& r) {
  Json sheaves = Json::array();
  for (const auto& s : r.per_sheaf) {
    Json item = {{"sheaf", s.name}, {"isotropy_order", s.isotropy_order}, {"isomorphic", s.isomorphic}};
    if (s.embedding_isomorphic) item["embedding_isomorphic"] = *s.embedding_isomorphic;
    sheaves.push_back(item);
  }
  Json out = {{"site", r.site},
              {"subcanonical", r.subcanonical},
              {"empty_covered", r.empty_covered},
              {"centre_order", r.centre_order},
              {"subcategory_centre_order", r.subcategory_centre_order},
              {"ayc_centre_order", r.ayc_centre_order}};
  if (r.centre_order != r.ayc_centre_order) out["gap"] = {{"centre", r.centre_order}, {"ayc_centre", r.ayc_centre_order}};
  out["sheaves"] = sheaves;
  out["violations"] = violations_to_json(r.violations);
  out["ok"] = r.ok();
  return out;
}

namespace {

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool inline_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (!is_scalar(x) && !inline_array(x)) return false;
  return true;
}

std::string inline_text(const Json& v) {
  if (is_scalar(v)) return scalar_text(v);
  std::string s = "[";
  bool first = true;
  for (const auto& x : v) {
    s += (first ? "" : ", ") + inline_text(x);
    first = false;
  }
  return s + "]";
}

void render(std::ostringstream& out, const Json& v, int indent) {
  const std::string pad(indent, ' ');
  if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      if (is_scalar(val) || inline_array(val)) {
        out << pad << key << ": " << inline_text(val) << "\n";
      } else if (val.empty()) {
        out << pad << key << ": " << (val.is_object() ? "{}" : "[]") << "\n";
      } else {
        out << pad << key << ":\n";
        render(out, val, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (is_scalar(x) || inline_array(x)) {
        out << pad << "- " << inline_text(x) << "\n";
      } else {
        out << pad << "-\n";
        render(out, x, indent + 2);
      }
    }
  } else {
    out << pad << scalar_text(v) << "\n";
  }
}

}  // namespace

std::string json_to_text(const Json& doc) {
  std::ostringstream out;
  render(out, doc, 0);
  return out.str();
}

}  // namespace topos
