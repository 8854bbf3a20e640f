#include <filesystem>

#include "doctest.h"
#include "support.hpp"
#include "topos/io.hpp"
#include "topos/report.hpp"

using namespace topos;

namespace {

const std::string data = TOPOS_DATA_DIR;

Json bz4_doc() {
  return Json::parse(R"({
    "objects": ["*"],
    "morphisms": [{"name": "e", "dom": "*", "cod": "*"}, {"name": "g", "dom": "*", "cod": "*"}],
    "identities": {"*": "e"},
    "composition": [["g", "g", "e"]]
  })");
}

}  // namespace

TEST_CASE("every bundled site parses and validates") {
  for (const auto& entry : std::filesystem::directory_iterator(data + "/sites")) {
    CAPTURE(entry.path().string());
    const Site s = read_site(entry.path().string());
    CHECK(validate_topology(s.category, s.topology).empty());
    CHECK(oracle::is_grothendieck_topology(s.category, s.topology));
  }
}

TEST_CASE("bundled sites agree with the built-in constructions") {
  const std::pair<std::string, Site> pairs[] = {{"sierpinski-opens", sierpinski_open_cover_site()},
                                               {"discrete-nonempty", discrete_nonempty_site()},
                                               {"bz2-all-sieves", bz2_all_sieves_site()}};
  for (const auto& [file, built] : pairs) {
    const Site s = read_site(data + "/sites/" + file + ".json");
    CHECK(s.name == built.name);
    CHECK(site_to_json(s) == site_to_json(built));
  }
}

TEST_CASE("site JSON round trip") {
  for (const auto& site : fixtures::all_sites()) {
    const Site back = parse_site(site_to_json(site));
    CHECK(site_to_json(back) == site_to_json(site));
  }
}

TEST_CASE("identity compositions are implied and the topology defaults to trivial") {
  const Site s = parse_site(bz4_doc(), "z2");
  CHECK(s.name == "z2");
  CHECK(s.category.num_morphisms() == 2);
  CHECK(s.topology.total_covers() == 1);
}

TEST_CASE("basis saturation from a file") {
  Json doc = site_to_json(discrete_open_cover_site());
  doc["topology"] = Json::parse(R"({"basis": {"E": [[]], "X": [["lX", "rX", "eX"]]}})");
  const Site s = parse_site(doc);
  CHECK(site_to_json(s)["topology"] == site_to_json(discrete_open_cover_site())["topology"]);
}

TEST_CASE("malformed site files") {
  SUBCASE("unknown field") {
    Json d = bz4_doc();
    d["extra"] = 1;
    CHECK_THROWS_AS(parse_site(d), ParseError);
  }
  SUBCASE("wrong type") {
    Json d = bz4_doc();
    d["objects"] = "*";
    CHECK_THROWS_AS(parse_site(d), ParseError);
  }
  SUBCASE("missing field") {
    Json d = bz4_doc();
    d.erase("identities");
    CHECK_THROWS_AS(parse_site(d), ParseError);
  }
  SUBCASE("dangling name") {
    Json d = bz4_doc();
    d["topology"] = Json::parse(R"({"basis": {"*": [["h"]]}})");
    CHECK_THROWS_AS(parse_site(d), ValidationError);
  }
  SUBCASE("not a sieve") {
    Json d = site_to_json(sierpinski_open_cover_site());
    d["topology"] = Json::parse(R"({"basis": {"X": [["uX"]]}})");
    CHECK_THROWS(parse_site(d));
  }
  SUBCASE("syntax") { CHECK_THROWS_AS(read_json(data + "/../tests/cli/malformed.json"), ParseError); }
  SUBCASE("missing file") { CHECK_THROWS_AS(read_site(data + "/nope.json"), ParseError); }
}

TEST_CASE("presheaf files") {
  const Site site = read_site(data + "/sites/discrete-opens.json");
  const Presheaf f = read_presheaf(site.category, data + "/presheaves/discrete-opens-bits.json");
  CHECK(oracle::classify(site, f) == oracle::Kind::Sheaf);
  CHECK(parse_presheaf(site.category, presheaf_to_json(site.category, f)) == f);
  CHECK_THROWS_AS(parse_presheaf(site.category, Json::parse(R"({"sets": {}, "maps": {}})")), ParseError);
}

TEST_CASE("bundled presheaves load on their sites") {
  const std::pair<std::string, std::string> pairs[] = {{"bz4", "bz4-orbit2"},
                                                       {"bz2-all-sieves", "bz2-all-sieves-swap"},
                                                       {"sierpinski-opens", "sierpinski-opens-doubled"},
                                                       {"discrete-opens", "discrete-opens-bits"},
                                                       {"discrete-nonempty", "discrete-nonempty-constant"}};
  for (const auto& [s, p] : pairs) {
    const Site site = read_site(data + "/sites/" + s + ".json");
    CHECK_NOTHROW(read_presheaf(site.category, data + "/presheaves/" + p + ".json"));
  }
}

TEST_CASE("text rendering mirrors the JSON") {
  const Json doc = Json::parse(R"({"a": 1, "b": [1, 2], "c": {"d": "x", "e": []}, "f": [{"g": true}]})");
  CHECK(json_to_text(doc) == "a: 1\nb: [1, 2]\nc:\n  d: x\n  e: []\nf:\n  -\n    g: true\n");
}

TEST_CASE("reports are deterministic") {
  const Site site = discrete_nonempty_site();
  const auto r1 = theorem_report(verify_main_theorem(site, sheaf_catalogue(site)));
  const auto r2 = theorem_report(verify_main_theorem(site, sheaf_catalogue(site)));
  CHECK(r1.dump() == r2.dump());
  CHECK(r1["ok"] == true);
}
