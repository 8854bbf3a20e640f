#include "topos/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace topos {

namespace {

void only_fields(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be a JSON object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ParseError("unknown field '" + key + "' in " + where);
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field '" + key + "' in " + where);
  return *it;
}

std::string text(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + " must be a string");
  return v.get<std::string>();
}

CategoryDesc parse_category(const Json& doc) {
  CategoryDesc d;
  const Json& objects = field(doc, "objects", "site");
  if (!objects.is_array()) throw ParseError("'objects' must be an array");
  for (const auto& o : objects) d.objects.push_back(text(o, "object name"));
  const Json& morphisms = field(doc, "morphisms", "site");
  if (!morphisms.is_array()) throw ParseError("'morphisms' must be an array");
  for (const auto& m : morphisms) {
    only_fields(m, {"name", "dom", "cod"}, "morphism");
    d.morphisms.push_back({text(field(m, "name", "morphism"), "morphism name"), text(field(m, "dom", "morphism"), "dom"),
                           text(field(m, "cod", "morphism"), "cod")});
  }
  const Json& ids = field(doc, "identities", "site");
  if (!ids.is_object()) throw ParseError("'identities' must be an object");
  for (const auto& [x, f] : ids.items()) d.identities[x] = text(f, "identity");
  if (auto it = doc.find("composition"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("'composition' must be an array");
    for (const auto& row : *it) {
      if (!row.is_array() || row.size() != 3) throw ParseError("composition entries are [g, f, g∘f] triples");
      d.composition.push_back({text(row[0], "g"), text(row[1], "f"), text(row[2], "g∘f")});
    }
  }
  return d;
}

Topology parse_topology(const FinCategory& c, const Json* top, const Limits& limits) {
  if (!top) return trivial_topology(c, limits);
  only_fields(*top, {"basis", "saturated"}, "topology");
  bool saturated = false;
  if (auto it = top->find("saturated"); it != top->end()) {
    if (!it->is_boolean()) throw ParseError("'saturated' must be a boolean");
    saturated = it->get<bool>();
  }
  SieveBasis basis;
  std::vector<Violation> bad;
  if (auto it = top->find("basis"); it != top->end()) {
    if (!it->is_object()) throw ParseError("'basis' must be an object");
    for (const auto& [xname, sieves] : it->items()) {
      auto x = c.find_object(xname);
      if (!x) {
        bad.push_back({"DanglingReference", "basis names an unknown object", {xname}});
        continue;
      }
      if (!sieves.is_array()) throw ParseError("basis entries must be arrays of sieves");
      for (const auto& members : sieves) {
        if (!members.is_array()) throw ParseError("a sieve is an array of morphism names");
        Sieve s{*x, {}};
        for (const auto& m : members) {
          const std::string name = text(m, "sieve member");
          if (auto f = c.find_morphism(name)) s.members.push_back(*f);
          else bad.push_back({"DanglingReference", "sieve names an unknown morphism", {xname, name}});
        }
        std::sort(s.members.begin(), s.members.end());
        s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
        basis[*x].push_back(std::move(s));
      }
    }
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));
  if (!saturated) return saturate_topology(c, basis, limits);
  Topology t;
  t.covers.assign(c.num_objects(), {});
  for (auto& [x, sieves] : basis)
    for (auto& s : sieves) {
      auto& list = t.covers[idx(x)];
      auto pos = std::lower_bound(list.begin(), list.end(), s, sieve_before);
      if (pos == list.end() || !(*pos == s)) list.insert(pos, s);
    }
  if (auto v = validate_topology(c, t, limits); !v.empty()) throw ValidationError(std::move(v));
  return t;
}

}  // namespace

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Site parse_site(const Json& doc, const std::string& fallback_name, const Limits& limits) {
  only_fields(doc, {"name", "objects", "morphisms", "identities", "composition", "topology"}, "site");
  Site site;
  site.name = doc.contains("name") ? text(doc["name"], "name") : fallback_name;
  site.category = validate_category(parse_category(doc));
  auto it = doc.find("topology");
  site.topology = parse_topology(site.category, it == doc.end() ? nullptr : &*it, limits);
  return site;
}

Site read_site(const std::string& path, const Limits& limits) {
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return parse_site(read_json(path), stem, limits);
}

Json site_to_json(const Site& site) {
  const FinCategory& c = site.category;
  const CategoryDesc d = c.describe();
  Json doc;
  doc["name"] = site.name;
  doc["objects"] = d.objects;
  doc["morphisms"] = Json::array();
  for (const auto& m : d.morphisms) doc["morphisms"].push_back({{"name", m.name}, {"dom", m.dom}, {"cod", m.cod}});
  doc["identities"] = Json::object();
  for (ObjId x : c.objects()) doc["identities"][c.object_name(x)] = c.morphism_name(c.identity(x));
  doc["composition"] = Json::array();
  for (const auto& row : d.composition) doc["composition"].push_back({row[0], row[1], row[2]});
  Json basis = Json::object();
  for (ObjId x : c.objects()) {
    Json sieves = Json::array();
    for (const auto& s : site.topology.on(x)) {
      Json members = Json::array();
      for (MorId f : s.members) members.push_back(c.morphism_name(f));
      sieves.push_back(members);
    }
    basis[c.object_name(x)] = sieves;
  }
  doc["topology"] = {{"basis", basis}, {"saturated", true}};
  return doc;
}

Presheaf parse_presheaf(const FinCategory& c, const Json& doc) {
  only_fields(doc, {"sets", "actions"}, "presheaf");
  PresheafDesc d;
  const Json& sets = field(doc, "sets", "presheaf");
  if (!sets.is_object()) throw ParseError("'sets' must be an object");
  for (const auto& [x, elems] : sets.items()) {
    if (!elems.is_array()) throw ParseError("each set is an array of element names");
    auto& out = d.sets[x];
    for (const auto& e : elems) out.push_back(text(e, "element name"));
  }
  if (auto it = doc.find("actions"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("'actions' must be an object");
    for (const auto& [f, table] : it->items()) {
      if (!table.is_object()) throw ParseError("each action is an object from codomain to domain elements");
      auto& out = d.actions[f];
      for (const auto& [from, to] : table.items()) out[from] = text(to, "element name");
    }
  }
  return validate_presheaf(c, d);
}

Presheaf read_presheaf(const FinCategory& c, const std::string& path) { return parse_presheaf(c, read_json(path)); }

Json presheaf_to_json(const FinCategory& c, const Presheaf& f) {
  Json doc;
  doc["sets"] = Json::object();
  for (ObjId x : c.objects()) doc["sets"][c.object_name(x)] = f.sets[idx(x)];
  doc["actions"] = Json::object();
  for (MorId m : c.morphisms()) {
    Json table = Json::object();
    for (Elem y = 0; y < f.size(c.cod(m)); ++y) table[f.element_name(c.cod(m), y)] = f.element_name(c.dom(m), f.act(m, y));
    doc["actions"][c.morphism_name(m)] = table;
  }
  return doc;
}

}  // namespace topos
