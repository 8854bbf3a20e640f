#include "topos/isotropy.hpp"

#include <algorithm>

namespace topos {

std::optional<std::size_t> IsotropyGroup::find(const IsotropyFamily& f) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), f);
  if (it == elements.end() || *it != f) return std::nullopt;
  return static_cast<std::size_t>(it - elements.begin());
}

struct IsotropyEngine::SigmaContext {
  SheafSum sum;  // a(F + S_J)
  PresheafMap insert;
  std::vector<Elem> generic;  // e_h per member h
  Elem amalgam = 0;           // σ_J(e)
  std::vector<std::unique_ptr<Substitution>> member;  // x_{dom h} ↦ e_h
  std::unique_ptr<Substitution> top;                  // x_C ↦ σ_J(e)
};

struct IsotropyEngine::ReflectContext {
  SheafSum sum;  // a(F + Σ_h y(dom h))
  PresheafMap insert;
  std::vector<Elem> generic;  // x_h per member h
  std::vector<std::unique_ptr<Substitution>> member;  // x_{dom h} ↦ x_h
};

namespace {

PresheafMap summand_insert(const FinCategory& c, const SheafSum& sum, const Presheaf& f) {
  PresheafMap m;
  for (ObjId x : c.objects()) {
    std::vector<Elem> comp;
    for (Elem a = 0; a < f.size(x); ++a) comp.push_back(sum.image(0, x, a));
    m.components.push_back(std::move(comp));
  }
  return m;
}

}  // namespace

IsotropyEngine::IsotropyEngine(const Site& site, const Presheaf& sheaf, const Limits& limits)
    : site_(site), sheaf_(sheaf), limits_(limits) {
  const FinCategory& c = site.category;
  for (ObjId x : c.objects())
    ext_.push_back(std::make_unique<FreeExtension>(free_extension(site, sheaf_, {{"x_" + c.object_name(x), x}}, limits)));
  self_.resize(c.num_objects());
  cross_.resize(c.num_morphisms());
}

IsotropyEngine::~IsotropyEngine() = default;

IsotropyFamily IsotropyEngine::generic_family() const {
  IsotropyFamily s;
  for (const auto& e : ext_) s.push_back(e->generic[0]);
  return s;
}

Substitution& IsotropyEngine::self_substitution(ObjId c, Elem t) {
  auto& slot = self_[idx(c)][t];
  if (!slot) {
    const FreeExtension& e = extension(c);
    slot = std::make_unique<Substitution>(site_, e, e.carrier(), e.insert, std::vector<Elem>{t});
  }
  return *slot;
}

Substitution& IsotropyEngine::cross_substitution(MorId f) {
  auto& slot = cross_[idx(f)];
  if (!slot) {
    const FinCategory& c = site_.category;
    const FreeExtension& from = extension(c.dom(f));
    const FreeExtension& to = extension(c.cod(f));
    slot = std::make_unique<Substitution>(site_, from, to.carrier(), to.insert,
                                          std::vector<Elem>{to.carrier().act(f, to.generic[0])});
  }
  return *slot;
}

Elem IsotropyEngine::substitute(ObjId c, Elem s, Elem t) { return self_substitution(c, t)(c, s); }

std::optional<Elem> IsotropyEngine::substitution_inverse(ObjId c, Elem s) {
  const Elem x = extension(c).generic[0];
  for (Elem t = 0; t < extension(c).carrier().size(c); ++t)
    if (substitute(c, s, t) == x && substitute(c, t, s) == x) return t;
  return std::nullopt;
}

IsotropyFamily IsotropyEngine::product(const IsotropyFamily& s, const IsotropyFamily& t) {
  IsotropyFamily out;
  for (ObjId c : site_.category.objects()) out.push_back(substitute(c, s[idx(c)], t[idx(c)]));
  return out;
}

bool IsotropyEngine::alpha_commutes(const IsotropyFamily& s, MorId f) {
  const FinCategory& c = site_.category;
  const ObjId from = c.dom(f), to = c.cod(f);
  return cross_substitution(f)(from, s[idx(from)]) == extension(to).carrier().act(f, s[idx(to)]);
}

IsotropyEngine::SigmaContext& IsotropyEngine::sigma_context(ObjId c, std::size_t cover) {
  auto& slot = sigma_[{idx(c), cover}];
  if (slot) return *slot;
  const FinCategory& cat = site_.category;
  const Sieve& j = site_.topology.on(c)[cover];
  auto ctx = std::make_unique<SigmaContext>();
  std::vector<Presheaf> summands{sheaf_, sieve_presheaf(cat, j)};
  ctx->sum = sheaf_sum(site_, summands, {"F", "S"}, limits_);
  ctx->insert = summand_insert(cat, ctx->sum, sheaf_);
  std::vector<Elem> seen(cat.num_objects(), 0);
  for (MorId h : j.members) ctx->generic.push_back(ctx->sum.image(1, cat.dom(h), seen[idx(cat.dom(h))]++));
  ctx->amalgam = unique_amalgamation(cat, ctx->sum.carrier(), MatchingFamily{j, ctx->generic});
  for (std::size_t i = 0; i < j.size(); ++i)
    ctx->member.push_back(std::make_unique<Substitution>(site_, extension(cat.dom(j.members[i])), ctx->sum.carrier(),
                                                         ctx->insert, std::vector<Elem>{ctx->generic[i]}));
  ctx->top = std::make_unique<Substitution>(site_, extension(c), ctx->sum.carrier(), ctx->insert,
                                            std::vector<Elem>{ctx->amalgam});
  slot = std::move(ctx);
  return *slot;
}

IsotropyEngine::ReflectContext& IsotropyEngine::reflect_context(ObjId c, std::size_t cover) {
  auto& slot = reflect_[{idx(c), cover}];
  if (slot) return *slot;
  const FinCategory& cat = site_.category;
  const Sieve& j = site_.topology.on(c)[cover];
  auto ctx = std::make_unique<ReflectContext>();
  std::vector<Presheaf> summands{sheaf_};
  std::vector<std::string> tags{"F"};
  for (MorId h : j.members) {
    summands.push_back(representable(cat, cat.dom(h)));
    tags.push_back("x_" + cat.morphism_name(h));
  }
  ctx->sum = sheaf_sum(site_, summands, tags, limits_);
  ctx->insert = summand_insert(cat, ctx->sum, sheaf_);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const ObjId d = cat.dom(j.members[i]);
    ctx->generic.push_back(ctx->sum.image(i + 1, d, yoneda_element(cat, cat.identity(d))));
  }
  for (std::size_t i = 0; i < j.size(); ++i)
    ctx->member.push_back(std::make_unique<Substitution>(site_, extension(cat.dom(j.members[i])), ctx->sum.carrier(),
                                                         ctx->insert, std::vector<Elem>{ctx->generic[i]}));
  slot = std::move(ctx);
  return *slot;
}

bool IsotropyEngine::sigma_commutes(const IsotropyFamily& s, ObjId c, std::size_t cover) {
  const FinCategory& cat = site_.category;
  const Sieve& j = site_.topology.on(c)[cover];
  SigmaContext& ctx = sigma_context(c, cover);
  MatchingFamily images{j, {}};
  for (std::size_t i = 0; i < j.size(); ++i) {
    const ObjId d = cat.dom(j.members[i]);
    images.values.push_back((*ctx.member[i])(d, s[idx(d)]));
  }
  if (!is_matching(cat, ctx.sum.carrier(), images)) return false;
  return unique_amalgamation(cat, ctx.sum.carrier(), images) == (*ctx.top)(c, s[idx(c)]);
}

bool IsotropyEngine::reflects_definedness(const IsotropyFamily& s, ObjId c, std::size_t cover) {
  const FinCategory& cat = site_.category;
  const Sieve& j = site_.topology.on(c)[cover];
  ReflectContext& ctx = reflect_context(c, cover);
  const Presheaf& e0 = ctx.sum.carrier();
  std::vector<Elem> images;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const ObjId d = cat.dom(j.members[i]);
    images.push_back((*ctx.member[i])(d, s[idx(d)]));
  }
  // Impose "the images match" and ask whether the generators then match.
  std::vector<ElementPair> relations;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const MorId h = j.members[i];
    for (MorId g : cat.into(cat.dom(h)))
      relations.push_back({cat.dom(g), e0.act(g, images[i]), images[j.position(cat.compose(h, g))]});
  }
  const auto q = quotient_presheaf(cat, e0, relations);
  const auto a = sheafify_if_needed(site_, q.quotient, limits_);
  auto pi = [&](ObjId x, Elem e) { return a.unit(x, q.projection(x, e)); };
  for (std::size_t i = 0; i < j.size(); ++i) {
    const MorId h = j.members[i];
    for (MorId g : cat.into(cat.dom(h)))
      if (pi(cat.dom(g), e0.act(g, ctx.generic[i])) != pi(cat.dom(g), ctx.generic[j.position(cat.compose(h, g))]))
        return false;
  }
  return true;
}

MembershipReport IsotropyEngine::check_membership(const IsotropyFamily& s) {
  const FinCategory& c = site_.category;
  if (s.size() != c.num_objects()) throw SortMismatch("family needs one element per object");
  for (ObjId x : c.objects())
    if (s[idx(x)] >= extension(x).carrier().size(x)) throw SortMismatch("family element outside F<x>(" + c.object_name(x) + ")");
  MembershipReport r;
  IsotropyFamily inverse;
  r.invertible = true;
  for (ObjId x : c.objects()) {
    auto t = substitution_inverse(x, s[idx(x)]);
    if (!t) {
      r.invertible = false;
      if (r.witness.empty()) r.witness = "not invertible at " + c.object_name(x);
      break;
    }
    inverse.push_back(*t);
  }
  if (r.invertible) r.inverse = inverse;
  r.alpha_commutes = true;
  for (MorId f : c.morphisms())
    if (!alpha_commutes(s, f)) {
      r.alpha_commutes = false;
      if (r.witness.empty()) r.witness = "does not commute with alpha_" + c.morphism_name(f);
      break;
    }
  r.sigma_commutes = true;
  r.reflects_definedness = true;
  for (ObjId x : c.objects())
    for (std::size_t k = 0; k < site_.topology.on(x).size(); ++k) {
      if (r.sigma_commutes && !sigma_commutes(s, x, k)) {
        r.sigma_commutes = false;
        if (r.witness.empty()) r.witness = "does not commute with sigma_" + describe(c, site_.topology.on(x)[k]);
      }
      if (r.reflects_definedness && !reflects_definedness(s, x, k)) {
        r.reflects_definedness = false;
        if (r.witness.empty()) r.witness = "does not reflect definedness of sigma_" + describe(c, site_.topology.on(x)[k]);
      }
    }
  return r;
}

IsotropyGroup IsotropyEngine::build_group(std::vector<IsotropyFamily> elements) {
  std::sort(elements.begin(), elements.end());
  IsotropyGroup g;
  g.elements = std::move(elements);
  const std::size_t n = g.elements.size();
  const auto unit = g.find(generic_family());
  if (!unit) throw Error("generic family is not a member of the isotropy group");
  g.group.identity = *unit;
  g.group.table.assign(n, std::vector<std::size_t>(n, 0));
  g.group.inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto p = g.find(product(g.elements[a], g.elements[b]));
      if (!p) throw Error("isotropy group is not closed under substitution");
      g.group.table[a][b] = *p;
      if (*p == g.group.identity) g.group.inverse[a] = b;
    }
  return g;
}

IsotropyGroup IsotropyEngine::isotropy_group() {
  const FinCategory& c = site_.category;
  const std::size_t n = c.num_objects();
  std::vector<std::vector<Elem>> candidates(n);
  for (ObjId x : c.objects())
    for (Elem s = 0; s < extension(x).carrier().size(x); ++s)
      if (substitution_inverse(x, s)) candidates[idx(x)].push_back(s);
  // Morphisms checked once both ends are assigned, i.e. at the later object.
  std::vector<std::vector<MorId>> due(n);
  for (MorId f : c.morphisms()) due[std::max(idx(c.dom(f)), idx(c.cod(f)))].push_back(f);

  std::vector<IsotropyFamily> members;
  IsotropyFamily s(n, 0);
  std::size_t complete = 0;
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (++complete > limits_.max_candidates) throw SizeLimit("isotropy candidates", limits_.max_candidates);
      bool ok = true;
      for (ObjId x : c.objects())
        for (std::size_t k = 0; ok && k < site_.topology.on(x).size(); ++k)
          ok = sigma_commutes(s, x, k) && reflects_definedness(s, x, k);
      if (ok) members.push_back(s);
      return;
    }
    for (Elem v : candidates[i]) {
      s[i] = v;
      bool ok = true;
      for (MorId f : due[i])
        if (!alpha_commutes(s, f)) {
          ok = false;
          break;
        }
      if (ok) self(self, i + 1);
    }
  };
  search(search, 0);
  return build_group(std::move(members));
}

IsotropyGroup IsotropyEngine::pure_isotropy_group() {
  require_subcanonical_without_empty_covers(site_, limits_);
  const FinCategory& c = site_.category;
  const std::size_t n = c.num_objects();
  std::vector<std::vector<Elem>> candidates(n);
  for (ObjId x : c.objects()) {
    for (MorId f : c.hom(x, x)) {
      const Elem s = extension(x).generator_image(c, 0, f);
      if (substitution_inverse(x, s)) candidates[idx(x)].push_back(s);
    }
    std::sort(candidates[idx(x)].begin(), candidates[idx(x)].end());
    candidates[idx(x)].erase(std::unique(candidates[idx(x)].begin(), candidates[idx(x)].end()), candidates[idx(x)].end());
  }
  std::vector<std::vector<MorId>> due(n);
  for (MorId f : c.morphisms()) due[std::max(idx(c.dom(f)), idx(c.cod(f)))].push_back(f);
  std::vector<IsotropyFamily> members;
  IsotropyFamily s(n, 0);
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      members.push_back(s);
      return;
    }
    for (Elem v : candidates[i]) {
      s[i] = v;
      bool ok = true;
      for (MorId f : due[i])
        if (!alpha_commutes(s, f)) {
          ok = false;
          break;
        }
      if (ok) self(self, i + 1);
    }
  };
  search(search, 0);
  return build_group(std::move(members));
}

IsotropyFamily IsotropyEngine::centre_embedding(const CentreElement& psi) const {
  IsotropyFamily s;
  for (ObjId x : site_.category.objects())
    s.push_back(extension(x).generator_image(site_.category, 0, psi.components[idx(x)]));
  return s;
}

std::optional<CentreElement> is_inner(const Site& site, const Presheaf& f, const PresheafMap& gamma,
                                      const Limits& limits) {
  const auto sub = is_subcanonical(site, limits);
  if (!sub.subcanonical) throw HypothesisViolation("inner automorphisms need a subcanonical site");
  const FinCategory& c = site.category;
  for (const auto& psi : centre(c).elements) {
    bool match = true;
    for (ObjId x : c.objects())
      for (Elem e = 0; match && e < f.size(x); ++e) match = gamma(x, e) == f.act(psi.components[idx(x)], e);
    if (match) return psi;
  }
  return std::nullopt;
}

PresheafMap extended_action(const FinCategory& c, const CentreElement& psi, const Presheaf& g) {
  PresheafMap m;
  for (ObjId x : c.objects()) {
    std::vector<Elem> comp;
    for (Elem e = 0; e < g.size(x); ++e) comp.push_back(g.act(psi.components[idx(x)], e));
    m.components.push_back(std::move(comp));
  }
  return m;
}

namespace {

Elem dense_value(const Site& site, const AycCategory& ayc, const CentreElement& beta, const Presheaf& e, ObjId x,
                 Elem v) {
  const FinCategory& c = site.category;
  const Sheafification& ay = ayc.sheaves[idx(x)];
  SheafLift f(site, ay, e, [&](ObjId w, Elem g) { return e.act(c.hom(w, x)[g], v); });
  const Elem iota = ay.unit(x, yoneda_element(c, c.identity(x)));
  return f(x, ayc.maps[idx(beta.components[idx(x)])](x, iota));
}

}  // namespace

PresheafMap dense_extension(const Site& site, const AycCategory& ayc, const CentreElement& beta, const Presheaf& e) {
  PresheafMap m;
  for (ObjId x : site.category.objects()) {
    std::vector<Elem> comp;
    for (Elem v = 0; v < e.size(x); ++v) comp.push_back(dense_value(site, ayc, beta, e, x, v));
    m.components.push_back(std::move(comp));
  }
  return m;
}

std::vector<NamedSheaf> sheaf_catalogue(const Site& site, const Limits& limits) {
  const FinCategory& c = site.category;
  std::vector<NamedSheaf> base;
  std::vector<Presheaf> raw;
  for (ObjId x : c.objects()) {
    raw.push_back(representable(c, x));
    base.push_back({"ay" + c.object_name(x), sheafify(site, raw.back(), limits).sheaf});
  }
  raw.push_back(terminal_presheaf(c));
  base.push_back({"1", raw.back()});
  std::vector<NamedSheaf> out = base;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j) {
      std::vector<Presheaf> pair{base[i].sheaf, base[j].sheaf};
      auto sum = coproduct(c, pair, {"l", "r"});
      out.push_back({base[i].name + "+" + base[j].name, sheafify_if_needed(site, sum.sum, limits).sheaf});
    }
  return out;
}

namespace {

std::vector<std::size_t> restriction_map(const Centre& zc, const FullSubcategory& d, const Centre& zd, bool& total) {
  std::vector<std::size_t> map;
  total = true;
  for (const auto& psi : zc.elements) {
    CentreElement r;
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
      auto m = d.sub_morphism(psi.components[idx(d.objects[i])]);
      r.components.push_back(*m);
    }
    auto k = zd.find(r);
    if (!k) {
      total = false;
      return {};
    }
    map.push_back(*k);
  }
  return map;
}

}  // namespace

TheoremReport verify_main_theorem(const Site& site, const std::vector<NamedSheaf>& catalogue, const Limits& limits) {
  const FinCategory& c = site.category;
  TheoremReport report;
  report.site = site.name;
  report.subcanonical = is_subcanonical(site, limits).subcanonical;
  const auto empty = empty_cover_objects(site.topology);
  for (ObjId x : empty) report.empty_covered.push_back(c.object_name(x));

  const Centre zc = centre(c);
  report.centre_order = zc.order();

  std::set<ObjId> keep;
  for (ObjId x : c.objects())
    if (!empty.count(x)) keep.insert(x);
  const FullSubcategory d = full_subcategory(c, keep);
  const Centre zd = centre(d.category);
  report.subcategory_centre_order = zd.order();
  bool total = false;
  auto restriction = restriction_map(zc, d, zd, total);
  if (total && is_group_isomorphism(zc.group, zd.group, restriction)) report.restriction_bijection = restriction;
  else if (report.subcanonical)
    report.violations.push_back({"CentreRestriction", "restricting the centre to the non-empty-covered objects is not an isomorphism", {site.name}});

  const AycCategory ayc = ayc_category(site, limits);
  const Centre za = centre(ayc.category);
  report.ayc_centre_order = za.order();

  if (report.subcanonical) {
    std::vector<std::size_t> map;
    for (const auto& psi : zc.elements) {
      CentreElement beta;
      for (ObjId x : c.objects()) beta.components.push_back(ayc.image[idx(psi.components[idx(x)])]);
      auto k = za.find(beta);
      if (!k) break;
      map.push_back(*k);
    }
    if (map.size() == zc.order() && is_group_isomorphism(zc.group, za.group, map)) report.ayc_bijection = map;
    else report.violations.push_back({"AycCentre", "a∘y does not induce an isomorphism of centres", {site.name}});
  }

  const bool fast_hypotheses = report.subcanonical && empty.empty();
  for (const auto& entry : catalogue) {
    IsotropyEngine engine(site, entry.sheaf, limits);
    const IsotropyGroup iso = engine.isotropy_group();
    SheafTheoremReport r;
    r.name = entry.name;
    r.isotropy_order = iso.order();
    r.elements = iso.elements;
    for (const auto& beta : za.elements) {
      IsotropyFamily s;
      for (ObjId x : c.objects()) {
        const FreeExtension& ext = engine.extension(x);
        s.push_back(dense_value(site, ayc, beta, ext.carrier(), x, ext.generic[0]));
      }
      auto k = iso.find(s);
      if (!k) break;
      r.bijection.push_back(*k);
    }
    r.isomorphic = r.bijection.size() == za.order() && is_group_isomorphism(za.group, iso.group, r.bijection);
    if (!r.isomorphic) {
      r.bijection.clear();
      report.violations.push_back({"IsotropyMismatch", "isotropy group is not isomorphic to the centre of ayC", {entry.name}});
    }
    if (fast_hypotheses) {
      std::vector<std::size_t> map;
      for (const auto& psi : zc.elements)
        if (auto k = iso.find(engine.centre_embedding(psi))) map.push_back(*k);
      r.embedding_isomorphic = map.size() == zc.order() && is_group_isomorphism(zc.group, iso.group, map);
      if (!*r.embedding_isomorphic)
        report.violations.push_back({"EmbeddingMismatch", "centre embedding is not an isomorphism onto the isotropy group", {entry.name}});
    }
    report.per_sheaf.push_back(std::move(r));
  }
  return report;
}

}  // namespace topos
