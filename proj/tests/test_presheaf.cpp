#include "doctest.h"
#include "support.hpp"

using namespace topos;

namespace {

oracle::Kind kind_of(SheafKind k) {
  switch (k) {
    case SheafKind::Sheaf: return oracle::Kind::Sheaf;
    case SheafKind::SeparatedOnly: return oracle::Kind::Separated;
    default: return oracle::Kind::Neither;
  }
}

std::vector<std::size_t> sizes(const FinCategory& c, const Presheaf& f) {
  std::vector<std::size_t> out;
  for (ObjId x : c.objects()) out.push_back(f.size(x));
  return out;
}

}  // namespace

TEST_CASE("representables satisfy the functor laws") {
  for (const auto& site : fixtures::all_sites()) {
    const FinCategory& c = site.category;
    for (ObjId x : c.objects()) {
      const Presheaf y = representable(c, x);
      CHECK(check_presheaf(c, y).empty());
      for (ObjId z : c.objects()) CHECK(y.size(z) == c.hom(z, x).size());
      for (MorId f : c.into(x)) CHECK(y.element_name(c.dom(f), yoneda_element(c, f)) == c.morphism_name(f));
    }
  }
}

TEST_CASE("functoriality violations are caught") {
  const FinCategory c = delooping(cyclic_group(2));
  PresheafDesc d;
  d.sets["*"] = {"p", "q"};
  d.actions["g"] = {{"p", "p"}, {"q", "p"}};
  CHECK_THROWS_AS(validate_presheaf(c, d), ValidationError);
  d.actions["g"] = {{"p", "q"}, {"q", "p"}};
  CHECK(validate_presheaf(c, d).size(c.object("*")) == 2);
}

TEST_CASE("natural transformations match the brute-force count") {
  for (const auto& site : fixtures::all_sites()) {
    const FinCategory& c = site.category;
    const auto ps = fixtures::presheaves(site);
    for (const auto& [fn, f] : ps)
      for (const auto& [gn, g] : ps) {
        if (f.total_size() + g.total_size() > 14) continue;
        CAPTURE(site.name);
        CAPTURE(fn);
        CAPTURE(gn);
        const auto maps = nat_transformations(c, f, g);
        CHECK(maps.size() == oracle::count_natural(c, f, g));
        for (const auto& m : maps) CHECK(is_natural(c, f, g, m));
      }
  }
}

TEST_CASE("Yoneda: Nat(yX, F) has one element per element of F(X)") {
  for (const auto& site : fixtures::all_sites()) {
    const FinCategory& c = site.category;
    for (const auto& [name, f] : fixtures::presheaves(site))
      for (ObjId x : c.objects()) CHECK(nat_transformations(c, representable(c, x), f).size() == f.size(x));
  }
}

TEST_CASE("sheaf classification agrees with direct enumeration") {
  for (const auto& site : fixtures::all_sites())
    for (const auto& [name, f] : fixtures::presheaves(site)) {
      CAPTURE(site.name);
      CAPTURE(name);
      const auto st = sheaf_status(site, f);
      CHECK(kind_of(st.kind) == oracle::classify(site, f));
      if (st.kind != SheafKind::Sheaf) {
        REQUIRE(st.witness.has_value());
        CHECK(is_matching(site.category, f, *st.witness));
        CHECK(amalgamations(site.category, f, *st.witness).size() == st.amalgamation_count);
      }
    }
}

TEST_CASE("matching families") {
  const Site site = discrete_open_cover_site();
  const FinCategory& c = site.category;
  const Presheaf two = fixtures::constant(c, 2);
  const Sieve& cover = site.topology.on(c.object("X"))[1];
  const auto fams = matching_families(c, two, cover);
  // E is reached through both L and R, so the constant presheaf only matches constantly.
  CHECK(fams.size() == 2);
  for (const auto& m : fams) CHECK(amalgamations(c, two, m).size() == 1);
  const MatchingFamily bad{cover, {0, 0, 1}};
  CHECK_FALSE(is_matching(c, two, bad));
  CHECK_THROWS_AS(amalgamations(c, two, bad), Error);
  const MatchingFamily r = restriction_family(c, two, cover, 1);
  CHECK(unique_amalgamation(c, two, r) == 1);
  const MatchingFamily p = pullback_family(c, r, c.morphism("lX"));
  CHECK(p.sieve == pullback_sieve(c, cover, c.morphism("lX")));
}

TEST_CASE("the plus construction separates and then glues") {
  for (const auto& site : fixtures::all_sites())
    for (const auto& [name, f] : fixtures::presheaves(site)) {
      CAPTURE(site.name);
      CAPTURE(name);
      const PlusConstruction p1 = plus_construction(site, f);
      CHECK(check_presheaf(site.category, p1.plus).empty());
      CHECK(is_natural(site.category, f, p1.plus, p1.eta));
      CHECK(oracle::classify(site, p1.plus) != oracle::Kind::Neither);
      const Sheafification a = sheafify(site, f);
      CHECK(oracle::classify(site, a.sheaf) == oracle::Kind::Sheaf);
      CHECK(is_bijective(a.unit, a.sheaf) == (oracle::classify(site, f) == oracle::Kind::Sheaf));
    }
}

TEST_CASE("sheafification has the universal property") {
  // Nat(aF, G) ≅ Nat(F, G) for every sheaf G, counted by brute force.
  for (const auto& site : fixtures::all_sites()) {
    const FinCategory& c = site.category;
    const auto ps = fixtures::presheaves(site);
    std::vector<Presheaf> sheaves;
    for (const auto& [_, g] : ps)
      if (oracle::classify(site, g) == oracle::Kind::Sheaf && g.total_size() <= 6) sheaves.push_back(g);
    for (const auto& [fn, f] : ps) {
      const Presheaf af = sheafify(site, f).sheaf;
      for (const auto& g : sheaves) {
        if (af.total_size() + g.total_size() > 14 || f.total_size() + g.total_size() > 14) continue;
        CAPTURE(site.name);
        CAPTURE(fn);
        CHECK(oracle::count_natural(c, af, g) == oracle::count_natural(c, f, g));
      }
    }
  }
}

TEST_CASE("known sheafifications") {
  SUBCASE("constant presheaf on the discrete space") {
    const Site site = discrete_nonempty_site();
    const auto a = sheafify(site, fixtures::constant(site.category, 2));
    CHECK(sizes(site.category, a.sheaf) == std::vector<std::size_t>{2, 2, 4});
  }
  SUBCASE("all-sieves BZ2 has only the terminal sheaf") {
    const Site site = bz2_all_sieves_site();
    for (const auto& [name, f] : fixtures::presheaves(site))
      CHECK(sizes(site.category, sheafify(site, f).sheaf) == std::vector<std::size_t>{1});
  }
  SUBCASE("the empty presheaf") {
    const Site d = discrete_nonempty_site();
    CHECK(sheafify(d, empty_presheaf(d.category)).sheaf.total_size() == 0);
    const Site s = sierpinski_open_cover_site();
    CHECK(sizes(s.category, sheafify(s, empty_presheaf(s.category)).sheaf) == std::vector<std::size_t>{1, 0, 0});
  }
  SUBCASE("a sheaf passes through unchanged") {
    const Site site = fixtures::bg("bz4", cyclic_group(4));
    const Presheaf y = representable(site.category, site.category.object("*"));
    const auto a = sheafify_if_needed(site, y);
    CHECK(a.layers.empty());
    CHECK(a.sheaf == y);
    CHECK(sizes(site.category, sheafify(site, y).sheaf) == std::vector<std::size_t>{4});
  }
}

TEST_CASE("sheaf lift extends maps into sheaves") {
  const Site site = discrete_nonempty_site();
  const FinCategory& c = site.category;
  const Presheaf two = fixtures::constant(c, 2);
  const Sheafification a = sheafify(site, two);
  // Lifting the unit itself gives the identity of a(F).
  SheafLift lift(site, a, a.sheaf, [&](ObjId x, Elem e) { return a.unit(x, e); });
  CHECK(lift.to_map() == identity_map(a.sheaf));
  // Lifting a map F -> aF that swaps the two constants.
  SheafLift swap(site, a, a.sheaf, [&](ObjId x, Elem e) { return a.unit(x, 1 - e); });
  const PresheafMap m = swap.to_map();
  CHECK(is_natural(c, a.sheaf, a.sheaf, m));
  CHECK(is_bijective(m, a.sheaf));
  for (ObjId x : c.objects())
    for (Elem e = 0; e < 2; ++e) CHECK(m(x, a.unit(x, e)) == a.unit(x, 1 - e));
}

TEST_CASE("coproducts") {
  const Site site = sierpinski_open_cover_site();
  const FinCategory& c = site.category;
  const std::vector<Presheaf> parts{representable(c, c.object("U")), terminal_presheaf(c)};
  const Coproduct s = coproduct(c, parts, {"a", "b"});
  for (ObjId x : c.objects()) {
    CHECK(s.sum.size(x) == parts[0].size(x) + parts[1].size(x));
    for (std::size_t i = 0; i < 2; ++i)
      for (Elem e = 0; e < parts[i].size(x); ++e) CHECK(s.locate(x, s.injections[i](x, e)) == std::pair{i, e});
  }
  CHECK(s.sum.element_name(c.object("X"), 0) == "b.*");
  CHECK(check_presheaf(c, s.sum).empty());
  // With the empty cover on E the coproduct is not separated at E.
  CHECK(sheaf_status(site, s.sum).kind == SheafKind::NotSeparated);
}

TEST_CASE("quotients are congruences") {
  const FinCategory c = delooping(cyclic_group(4));
  const Presheaf y = representable(c, c.object("*"));
  const ObjId star = c.object("*");
  const PresheafQuotient q = quotient_presheaf(c, y, {{star, 0, 2}});
  // Identifying e with g2 forces g ~ g3: the quotient is Z4/Z2.
  CHECK(q.quotient.size(star) == 2);
  CHECK(q.projection(star, 1) == q.projection(star, 3));
  CHECK(is_natural(c, y, q.quotient, q.projection));
}

TEST_CASE("sieve presheaves are subpresheaves of representables") {
  const FinCategory c = discrete_opens();
  const Sieve s = generated_sieve(c, c.object("X"), {c.morphism("lX")});
  const Presheaf p = sieve_presheaf(c, s);
  CHECK(check_presheaf(c, p).empty());
  CHECK(sizes(c, p) == std::vector<std::size_t>{1, 1, 0, 0});
}

TEST_CASE("subcanonicity") {
  for (const auto& site : fixtures::good_sites()) CHECK(is_subcanonical(site).subcanonical);
  CHECK(is_subcanonical(sierpinski_open_cover_site()).subcanonical);
  const auto r = is_subcanonical(bz2_all_sieves_site());
  CHECK_FALSE(r.subcanonical);
  CHECK(r.object.has_value());
}

TEST_CASE("the category of sheafified representables") {
  for (const auto& site : fixtures::good_sites()) {
    const AycCategory a = ayc_category(site);
    CHECK(a.category.num_objects() == site.category.num_objects());
    CHECK(a.category.num_morphisms() == site.category.num_morphisms());
    CHECK(centre(a.category).order() == centre(site.category).order());
  }
  const AycCategory b = ayc_category(bz2_all_sieves_site());
  CHECK(b.category.num_morphisms() == 1);
  for (const auto& m : b.maps) CHECK(m.components.size() == 1);
}
