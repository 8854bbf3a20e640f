#pragma once

#include <string>
#include <vector>

#include "topos/freeext.hpp"
#include "topos/io.hpp"
#include "topos/isotropy.hpp"

namespace topos {

Json violations_to_json(const std::vector<Violation>& violations);

Json site_summary(const Site& site);
Json centre_report(const FinCategory& c, const Centre& z);
Json sheaf_check_report(const Site& site, const Presheaf& f, const SheafStatus& status);
// Carrier sizes and every element of carrier(x) with its normal form.
Json free_extension_report(const Site& site, const FreeExtension& ext, ObjId x);
Json isotropy_report(const Site& site, IsotropyEngine& engine, const IsotropyGroup& g, const Centre& z,
                     bool fast_path);
Json theorem_report(const TheoremReport& r);

// Name of each component of an isotropy family, one entry per object.
Json family_to_json(const Site& site, const IsotropyEngine& engine, const IsotropyFamily& s);

// Indented "key: value" rendering; one line per JSON scalar, in document order.
std::string json_to_text(const Json& doc);

}  // namespace topos
