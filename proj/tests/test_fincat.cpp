#include "doctest.h"
#include "support.hpp"

using namespace topos;

namespace {

std::vector<std::pair<std::string, GroupTable>> groups() {
  return {{"Z1", cyclic_group(1)},
          {"Z2", cyclic_group(2)},
          {"Z3", cyclic_group(3)},
          {"Z4", cyclic_group(4)},
          {"Z6", cyclic_group(6)},
          {"Z2xZ2", direct_product(cyclic_group(2), cyclic_group(2))},
          {"S3", symmetric_group(3)},
          {"D4", dihedral_group(4)},
          {"Q8", quaternion_group()},
          {"S4", symmetric_group(4)}};
}

std::vector<FinCategory> categories() {
  std::vector<FinCategory> out;
  for (const auto& [_, g] : groups()) out.push_back(delooping(g));
  out.push_back(sierpinski_poset());
  out.push_back(sierpinski_opens());
  out.push_back(discrete_opens());
  return out;
}

CategoryDesc two_arrows() {
  // a, b : 0 -> 1 with a common retraction r : 1 -> 0; r∘a = r∘b = id_0.
  CategoryDesc d;
  d.objects = {"0", "1"};
  d.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"a", "0", "1"}, {"b", "0", "1"}, {"r", "1", "0"},
                 {"ar", "1", "1"}, {"br", "1", "1"}};
  d.identities = {{"0", "id0"}, {"1", "id1"}};
  d.composition = {{"r", "a", "id0"}, {"r", "b", "id0"}, {"a", "r", "ar"}, {"b", "r", "br"},
                   {"ar", "a", "a"}, {"ar", "b", "a"}, {"br", "a", "b"}, {"br", "b", "b"},
                   {"r", "ar", "r"}, {"r", "br", "r"}, {"ar", "ar", "ar"}, {"ar", "br", "ar"},
                   {"br", "ar", "br"}, {"br", "br", "br"}};
  return d;
}

bool has_kind(const std::vector<Violation>& v, const std::string& kind) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

}  // namespace

TEST_CASE("group centres match the brute-force oracle") {
  for (const auto& [name, g] : groups()) {
    CAPTURE(name);
    const Centre z = centre(delooping(g));
    CHECK(z.order() == oracle::group_centre_order(g));
    CHECK(group_law_violations(z.group).empty());
    CHECK(is_abelian(z.group));
  }
}

TEST_CASE("centre elements are natural automorphisms, identity first") {
  for (const auto& c : categories()) {
    const Centre z = centre(c);
    REQUIRE(z.order() >= 1);
    for (ObjId x : c.objects()) CHECK(z.elements[0].components[idx(x)] == c.identity(x));
    for (const auto& e : z.elements) CHECK(is_natural_automorphism(c, e));
    for (std::size_t a = 0; a < z.order(); ++a) CHECK(z.find(z.elements[a]) == a);
  }
}

TEST_CASE("posets have trivial centre") {
  CHECK(centre(sierpinski_poset()).order() == 1);
  CHECK(centre(discrete_opens()).order() == 1);
  CHECK(natural_endomorphisms_of_identity(sierpinski_opens()).size() == 1);
}

TEST_CASE("natural endomorphisms may fail to be invertible") {
  const FinCategory c = validate_category(two_arrows());
  const auto endos = natural_endomorphisms_of_identity(c);
  CHECK(endos.size() >= centre(c).order());
  for (const auto& e : endos) {
    for (MorId f : c.morphisms())
      CHECK(c.compose(e.components[idx(c.cod(f))], f) == c.compose(f, e.components[idx(c.dom(f))]));
  }
}

TEST_CASE("composition is associative and unital on every standard category") {
  for (const auto& c : categories()) {
    for (MorId f : c.morphisms()) {
      CHECK(c.compose(c.identity(c.cod(f)), f) == f);
      CHECK(c.compose(f, c.identity(c.dom(f))) == f);
      for (MorId g : c.out_of(c.cod(f)))
        for (MorId h : c.out_of(c.cod(g))) CHECK(c.compose(h, c.compose(g, f)) == c.compose(c.compose(h, g), f));
      if (auto inv = c.inverse(f)) {
        CHECK(c.compose(*inv, f) == c.identity(c.dom(f)));
        CHECK(c.compose(f, *inv) == c.identity(c.cod(f)));
      }
    }
  }
}

TEST_CASE("hom sets partition the morphisms") {
  for (const auto& c : categories()) {
    std::size_t total = 0;
    for (ObjId x : c.objects())
      for (ObjId y : c.objects()) {
        total += c.hom(x, y).size();
        CHECK(hom_set(c, x, y) == c.hom(x, y));
      }
    CHECK(total == c.num_morphisms());
  }
}

TEST_CASE("corrupted composition is reported with witnesses") {
  const FinCategory bz4 = delooping(cyclic_group(4));
  CategoryDesc d = bz4.describe();
  for (auto& row : d.composition)
    if (row[0] == "g" && row[1] == "g") row[2] = "g3";
  const auto v = check_category(d);
  CHECK(has_kind(v, "AssociativityViolation"));
  for (const auto& x : v) CHECK(!x.witnesses.empty());
  CHECK_THROWS_AS(validate_category(d), ValidationError);
}

TEST_CASE("identity and reference errors") {
  SUBCASE("identity law") {
    CategoryDesc d = delooping(cyclic_group(2)).describe();
    for (auto& row : d.composition)
      if (row[0] == "e" && row[1] == "g") row[2] = "e";
    CHECK(has_kind(check_category(d), "IdentityLawViolation"));
  }
  SUBCASE("dangling") {
    CategoryDesc d = delooping(cyclic_group(2)).describe();
    d.morphisms.push_back({"h", "*", "nowhere"});
    CHECK(has_kind(check_category(d), "DanglingReference"));
  }
  SUBCASE("missing composite") {
    CategoryDesc d = delooping(cyclic_group(2)).describe();
    d.composition.pop_back();
    CHECK_FALSE(check_category(d).empty());
  }
}

TEST_CASE("describe round-trips") {
  for (const auto& c : categories()) {
    const FinCategory again = validate_category(c.describe());
    CHECK(again.num_objects() == c.num_objects());
    CHECK(again.num_morphisms() == c.num_morphisms());
    for (MorId f : c.morphisms())
      for (MorId g : c.out_of(c.cod(f))) CHECK(again.compose(g, f) == c.compose(g, f));
  }
}

TEST_CASE("lookups") {
  const FinCategory c = sierpinski_opens();
  CHECK(c.object("U") == *c.find_object("U"));
  CHECK_FALSE(c.find_morphism("nope"));
  CHECK_THROWS_AS(c.morphism("nope"), UnknownName);
  CHECK_FALSE(c.try_compose(c.morphism("eU"), c.morphism("uX")));
}

TEST_CASE("full subcategories and initial objects") {
  const FinCategory c = discrete_opens();
  CHECK(initial_objects(c) == std::set<ObjId>{c.object("E")});
  const FullSubcategory d = full_subcategory(c, {c.object("L"), c.object("R"), c.object("X")});
  CHECK(d.category.num_objects() == 3);
  CHECK(d.category.num_morphisms() == 5);
  CHECK(initial_objects(d.category).empty());
  CHECK(centre(d.category).order() == 1);
}

TEST_CASE("generated group tables are groups of the expected order") {
  const std::map<std::string, std::size_t> order{{"Z1", 1}, {"Z2", 2}, {"Z3", 3}, {"Z4", 4}, {"Z6", 6},
                                                 {"Z2xZ2", 4}, {"S3", 6}, {"D4", 8}, {"Q8", 8}, {"S4", 24}};
  for (const auto& [name, g] : groups()) {
    CAPTURE(name);
    CHECK(g.names.size() == order.at(name));
    for (std::size_t a = 0; a < g.names.size(); ++a)
      for (std::size_t b = 0; b < g.names.size(); ++b)
        for (std::size_t e = 0; e < g.names.size(); ++e) CHECK(g.mul[g.mul[a][b]][e] == g.mul[a][g.mul[b][e]]);
  }
}
