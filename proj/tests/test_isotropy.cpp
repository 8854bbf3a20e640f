#include "doctest.h"
#include "support.hpp"

using namespace topos;

namespace {

void check_group(const IsotropyGroup& g, IsotropyEngine& engine) {
  CHECK(group_law_violations(g.group).empty());
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      CHECK(g.find(engine.product(g.elements[a], g.elements[b])) == g.group.table[a][b]);
  CHECK(g.elements[g.group.identity] == engine.generic_family());
}

}  // namespace

TEST_CASE("isotropy of BG sheaves is the centre of G") {
  const std::pair<std::string, GroupTable> cases[] = {{"Z4", cyclic_group(4)},
                                                      {"S3", symmetric_group(3)},
                                                      {"Z2xZ2", direct_product(cyclic_group(2), cyclic_group(2))},
                                                      {"D4", dihedral_group(4)},
                                                      {"Q8", quaternion_group()}};
  for (const auto& [name, table] : cases) {
    CAPTURE(name);
    const Site site = fixtures::bg(name, table);
    const ObjId star = site.category.object("*");
    IsotropyEngine engine(site, representable(site.category, star));
    const IsotropyGroup g = engine.isotropy_group();
    CHECK(g.order() == oracle::group_centre_order(table));
    check_group(g, engine);
  }
}

TEST_CASE("non-central families fail alpha-commutation") {
  const Site site = fixtures::bg("bs3", symmetric_group(3));
  const FinCategory& c = site.category;
  const ObjId star = c.object("*");
  IsotropyEngine engine(site, terminal_presheaf(c));
  const FreeExtension& ext = engine.extension(star);
  for (MorId f : c.morphisms()) {
    const IsotropyFamily s{ext.generator_image(c, 0, f)};
    const MembershipReport r = engine.check_membership(s);
    CHECK(r.invertible);
    CHECK(r.member() == c.is_identity(f));
    if (!r.member()) CHECK_FALSE(r.witness.empty());
  }
  // A constant is not invertible.
  CHECK_FALSE(engine.check_membership({ext.insert(star, 0)}).invertible);
}

TEST_CASE("substitution composes and inverts") {
  const Site site = fixtures::bg("bz4", cyclic_group(4));
  const FinCategory& c = site.category;
  const ObjId star = c.object("*");
  IsotropyEngine engine(site, terminal_presheaf(c));
  const FreeExtension& ext = engine.extension(star);
  const std::size_t n = ext.carrier().size(star);
  const Elem x = ext.generic[0];
  for (Elem s = 0; s < n; ++s) {
    CHECK(engine.substitute(star, s, x) == s);
    CHECK(engine.substitute(star, x, s) == s);
    for (Elem t = 0; t < n; ++t)
      for (Elem u = 0; u < n; ++u)
        CHECK(engine.substitute(star, engine.substitute(star, s, t), u) ==
              engine.substitute(star, s, engine.substitute(star, t, u)));
    if (auto inv = engine.substitution_inverse(star, s)) CHECK(engine.substitute(star, s, *inv) == x);
  }
}

TEST_CASE("fast path agrees with the definition") {
  for (const auto& site : fixtures::good_sites()) {
    CAPTURE(site.name);
    for (const auto& named : sheaf_catalogue(site)) {
      IsotropyEngine engine(site, named.sheaf);
      const IsotropyGroup full = engine.isotropy_group();
      const IsotropyGroup fast = engine.pure_isotropy_group();
      CHECK(full.elements == fast.elements);
      CHECK(full.group.table == fast.group.table);
      check_group(full, engine);
    }
  }
}

TEST_CASE("the fast path refuses sites outside its hypotheses") {
  const Site site = sierpinski_open_cover_site();
  IsotropyEngine engine(site, terminal_presheaf(site.category));
  CHECK_THROWS_AS(engine.pure_isotropy_group(), HypothesisViolation);
  CHECK(engine.isotropy_group().order() == 1);
}

TEST_CASE("centre embedding lands in the isotropy group") {
  const Site site = fixtures::bg("d4", dihedral_group(4));
  const Centre z = centre(site.category);
  IsotropyEngine engine(site, representable(site.category, site.category.object("*")));
  const IsotropyGroup g = engine.isotropy_group();
  std::vector<std::size_t> map;
  for (const auto& psi : z.elements) {
    const auto k = g.find(engine.centre_embedding(psi));
    REQUIRE(k.has_value());
    map.push_back(*k);
  }
  CHECK(is_group_isomorphism(z.group, g.group, map));
}

TEST_CASE("inner automorphisms come from the centre") {
  const Site site = fixtures::bg("bz4", cyclic_group(4));
  const FinCategory& c = site.category;
  const Presheaf y = representable(c, c.object("*"));
  for (const auto& psi : centre(c).elements) {
    const PresheafMap gamma = extended_action(c, psi, y);
    CHECK(is_natural(c, y, y, gamma));
    const auto back = is_inner(site, y, gamma);
    REQUIRE(back.has_value());
    CHECK(extended_action(c, *back, y) == gamma);
  }
  // Aut(yZ4) is Z4 acting by postcomposition, all of it inner.
  CHECK(nat_transformations(c, y, y).size() == 4);
}

TEST_CASE("dense extension of centre elements") {
  const Site site = bz2_all_sieves_site();
  const AycCategory ayc = ayc_category(site);
  const Centre za = centre(ayc.category);
  CHECK(za.order() == 1);
  const Presheaf one = terminal_presheaf(site.category);
  const PresheafMap m = dense_extension(site, ayc, za.elements[0], one);
  CHECK(m == identity_map(one));
}

TEST_CASE("catalogue") {
  const Site site = sierpinski_nonempty_site();
  const auto cat = sheaf_catalogue(site);
  // a(yU), a(yX), 1 and the six unordered pairs.
  CHECK(cat.size() == 9);
  for (const auto& s : cat) CHECK(oracle::classify(site, s.sheaf) == oracle::Kind::Sheaf);
}

TEST_CASE("theorem report") {
  const TheoremReport r = verify_main_theorem(fixtures::bg("bz4", cyclic_group(4)),
                                              sheaf_catalogue(fixtures::bg("bz4", cyclic_group(4))));
  CHECK(r.ok());
  CHECK(r.subcanonical);
  CHECK(r.centre_order == 4);
  for (const auto& s : r.per_sheaf) {
    CHECK(s.isotropy_order == 4);
    CHECK(s.isomorphic);
    CHECK(s.embedding_isomorphic == true);
  }
}
