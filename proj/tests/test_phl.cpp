#include "doctest.h"
#include "support.hpp"

using namespace topos;

namespace {

std::size_t composable_pairs(const FinCategory& c) {
  std::size_t n = 0;
  for (MorId g : c.morphisms()) n += c.into(c.dom(g)).size();
  return n;
}

// One sort, a partial unary p and a total unary s on {0, 1, 2}.
struct Toy {
  Signature sig;
  PartialStructure m;
  Toy() {
    sig.sorts = {"A"};
    sig.functions = {{"p", {0}, 0}, {"s", {0}, 0}};
    m.carriers = {{"0", "1", "2"}};
    m.operations = {{{{0}, 1}, {{1}, 1}}, {{{0}, 1}, {{1}, 2}, {{2}, 0}}};
  }
};

Term x0() { return Term::var(0); }

}  // namespace

TEST_CASE("partial Horn satisfaction on a toy structure") {
  Toy t;
  REQUIRE(check_signature(t.sig).empty());
  REQUIRE(check_structure(t.sig, t.m).empty());
  const std::vector<Variable> ctx{{"x", 0}};
  const Term px = Term::apply(0, {x0()});
  const Term sx = Term::apply(1, {x0()});
  const Term ppx = Term::apply(0, {px});

  // p(x)! |- p(p(x)) = p(x): p is idempotent where defined.
  const Sequent idem{ctx, HornFormula::defined(px), HornFormula::eq(ppx, px), "idem"};
  CHECK(satisfies(t.sig, t.m, idem).holds);

  // T |- p(x)! fails at x = 2.
  const Sequent total{ctx, HornFormula::top(), HornFormula::defined(px), "total"};
  const auto r = satisfies(t.sig, t.m, total);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample.has_value());
  CHECK((*r.counterexample)[0] == 2);

  // s(x) = x |- ... has no instances, so anything follows.
  const Sequent vac{ctx, HornFormula::eq(sx, x0()), HornFormula::eq(px, sx), "vacuous"};
  CHECK(satisfies(t.sig, t.m, vac).holds);

  CHECK(interpret_term(t.sig, t.m, px, std::vector<Elem>{2}) == std::nullopt);
  CHECK(interpret_term(t.sig, t.m, ppx, std::vector<Elem>{0}) == 1);
  CHECK(to_string(t.sig, idem) == "p(x)! |-[x:A] p(p(x)) = p(x)");
}

TEST_CASE("quotients of partial structures") {
  Toy t;
  // s cycles 0 -> 1 -> 2, so {0, 1} | {2} is not closed under s.
  CHECK_THROWS_AS(quotient_structure(t.sig, t.m, {{0, 0, 1}}), NotACongruence);
  // p is defined at 0 but not at 2.
  CHECK_THROWS_AS(quotient_structure(t.sig, t.m, {{0, 0, 0}}), NotACongruence);

  // s swapping 0 and 1 and fixing 2: {0, 1} | {2} respects both operations.
  PartialStructure m = t.m;
  m.operations[1] = {{{0}, 1}, {{1}, 0}, {{2}, 2}};
  const PartialStructure q = quotient_structure(t.sig, m, {{0, 0, 1}});
  CHECK(q.carriers[0].size() == 2);
  CHECK(q.operations[0].size() == 1);
  CHECK(q.operations[1].size() == 2);
}

TEST_CASE("sort checking") {
  const Site site = sierpinski_open_cover_site();
  const SheafSignature sig = sheaf_signature(site);
  const std::vector<Variable> ctx{{"x", idx(site.category.object("X"))}};
  const Term ok = Term::apply(sig.alpha[idx(site.category.morphism("uX"))], {x0()});
  CHECK(sort_of(sig.signature, ctx, ok) == idx(site.category.object("U")));
  const Term bad = Term::apply(sig.alpha[idx(site.category.morphism("eU"))], {x0()});
  CHECK_THROWS_AS(sort_of(sig.signature, ctx, bad), SortMismatch);
}

TEST_CASE("the sheaf theory has one axiom per arrow, object, composable pair and two per cover") {
  for (const auto& site : fixtures::all_sites()) {
    const FinCategory& c = site.category;
    const SheafSignature sig = sheaf_signature(site);
    CHECK(check_signature(sig.signature).empty());
    CHECK(sig.signature.functions.size() == c.num_morphisms() + site.topology.total_covers());
    const auto axioms = sheaf_theory(site, sig);
    CHECK(axioms.size() == c.num_morphisms() + c.num_objects() + composable_pairs(c) + 2 * site.topology.total_covers());
    std::set<std::string> labels;
    for (const auto& a : axioms) labels.insert(a.label);
    CHECK(labels.size() == axioms.size());
  }
}

TEST_CASE("sheaves are models and back") {
  for (const auto& site : fixtures::all_sites()) {
    const SheafSignature sig = sheaf_signature(site);
    const auto axioms = sheaf_theory(site, sig);
    for (const auto& [name, f] : fixtures::presheaves(site)) {
      CAPTURE(site.name);
      CAPTURE(name);
      const bool sheaf = oracle::classify(site, f) == oracle::Kind::Sheaf;
      const PartialStructure m = presheaf_to_structure(site, sig, f);
      bool all = true;
      for (const auto& a : axioms) all = all && satisfies(sig.signature, m, a).holds;
      CHECK(all == sheaf);
      if (sheaf) {
        const PartialStructure s = sheaf_to_model(site, sig, f);
        CHECK(s.operations == m.operations);
        CHECK(model_to_sheaf(site, sig, s) == f);
      } else {
        CHECK_THROWS_AS(sheaf_to_model(site, sig, f), NotASheaf);
        CHECK_THROWS_AS(model_to_sheaf(site, sig, m), NotAModel);
      }
    }
  }
}

TEST_CASE("corrupted models are rejected with the failing axiom") {
  const Site site = discrete_open_cover_site();
  const FinCategory& c = site.category;
  const SheafSignature sig = sheaf_signature(site);
  const Presheaf f = sheafify(site, fixtures::constant(c, 2)).sheaf;
  const PartialStructure good = sheaf_to_model(site, sig, f);

  SUBCASE("an action made partial") {
    PartialStructure m = good;
    m.operations[sig.alpha[idx(c.morphism("lX"))]].erase(std::vector<Elem>{0});
    try {
      model_to_sheaf(site, sig, m);
      FAIL("accepted");
    } catch (const NotAModel& e) {
      CHECK(std::string(e.what()).find("total(lX)") != std::string::npos);
    }
  }
  SUBCASE("a wrong amalgamation") {
    PartialStructure m = good;
    auto& sigma = m.operations[sig.sigma[idx(c.object("X"))][1]];
    REQUIRE_FALSE(sigma.empty());
    auto it = sigma.begin();
    it->second = (it->second + 1) % f.size(c.object("X"));
    try {
      model_to_sheaf(site, sig, m);
      FAIL("accepted");
    } catch (const NotAModel& e) {
      CHECK(std::string(e.what()).find("existence") != std::string::npos);
    }
  }
  SUBCASE("a broken composite") {
    PartialStructure m = good;
    auto& lx = m.operations[sig.alpha[idx(c.morphism("lX"))]];
    for (auto& [arg, val] : lx) val = 0;
    CHECK_THROWS_AS(model_to_sheaf(site, sig, m), NotAModel);
  }
}

TEST_CASE("satisfaction search is guarded") {
  const Site site = discrete_open_cover_site();
  const SheafSignature sig = sheaf_signature(site);
  const Presheaf f = sheafify(site, fixtures::constant(site.category, 2)).sheaf;
  const PartialStructure m = sheaf_to_model(site, sig, f);
  Limits tiny;
  tiny.max_environments = 1;
  bool thrown = false;
  for (const auto& a : sheaf_theory(site, sig)) {
    try {
      satisfies(sig.signature, m, a, tiny);
    } catch (const SizeLimit&) {
      thrown = true;
    }
  }
  CHECK(thrown);
}
