#pragma once

#include <string>

#include "json.hpp"
#include "topos/presheaf.hpp"
#include "topos/site.hpp"

namespace topos {

using Json = nlohmann::ordered_json;

// Site files:
//   { "name": ..., "objects": [...], "morphisms": [{"name", "dom", "cod"}, ...],
//     "identities": {object: morphism}, "composition": [[g, f, g∘f], ...],
//     "topology": {"basis": {object: [[morphism, ...], ...]}, "saturated": bool} }
// "name" and "topology" are optional; a missing topology is the trivial one.
// Throws ParseError for malformed documents and ValidationError for law violations.
Site parse_site(const Json& doc, const std::string& fallback_name = "site", const Limits& limits = {});
Site read_site(const std::string& path, const Limits& limits = {});
Json site_to_json(const Site& site);

// Presheaf files: { "sets": {object: [element, ...]}, "actions": {morphism: {element: element}} }
Presheaf parse_presheaf(const FinCategory& c, const Json& doc);
Presheaf read_presheaf(const FinCategory& c, const std::string& path);
Json presheaf_to_json(const FinCategory& c, const Presheaf& f);

// Reads and parses a JSON file; throws ParseError on I/O or syntax errors.
Json read_json(const std::string& path);

}  // namespace topos
