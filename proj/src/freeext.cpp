#include "topos/freeext.hpp"

#include <algorithm>
#include <cctype>

namespace topos {

SheafSum sheaf_sum(const Site& site, std::span<const Presheaf> summands, const std::vector<std::string>& tags,
                   const Limits& limits) {
  SheafSum out;
  out.coproduct = coproduct(site.category, summands, tags);
  out.sheafification = sheafify_if_needed(site, out.coproduct.sum, limits);
  return out;
}

FreeExtension free_extension(const Site& site, const Presheaf& base, std::vector<Generator> generators,
                             const Limits& limits) {
  const FinCategory& c = site.category;
  const auto status = sheaf_status(site, base, limits);
  if (status.kind != SheafKind::Sheaf)
    throw NotASheaf("base presheaf is " + to_string(status.kind) + " at a family on " +
                    describe(c, status.witness->sieve));
  std::vector<Presheaf> summands{base};
  std::vector<std::string> tags{"F"};
  for (const auto& g : generators) {
    summands.push_back(representable(c, g.sort));
    tags.push_back(g.name);
  }
  FreeExtension ext;
  ext.base = base;
  ext.generators = std::move(generators);
  ext.sum = sheaf_sum(site, summands, tags, limits);
  for (ObjId x : c.objects()) {
    std::vector<Elem> comp;
    for (Elem a = 0; a < base.size(x); ++a) comp.push_back(ext.sum.image(0, x, a));
    ext.insert.components.push_back(std::move(comp));
  }
  for (std::size_t i = 0; i < ext.generators.size(); ++i) {
    const ObjId a = ext.generators[i].sort;
    ext.generic.push_back(ext.sum.image(i + 1, a, yoneda_element(c, c.identity(a))));
  }
  return ext;
}

SheafSignature extension_signature(const Site& site, const FreeExtension& ext) {
  const FinCategory& c = site.category;
  SheafSignature sig = sheaf_signature(site);
  sig.constant.resize(c.num_objects());
  for (ObjId x : c.objects())
    for (Elem a = 0; a < ext.base.size(x); ++a) {
      sig.constant[idx(x)].push_back(static_cast<SymbolId>(sig.signature.functions.size()));
      sig.signature.functions.push_back({"c_" + ext.base.element_name(x, a), {}, idx(x)});
      SymbolInfo info;
      info.kind = SymbolKind::Constant;
      info.object = x;
      info.element = a;
      sig.info.push_back(info);
    }
  for (std::size_t i = 0; i < ext.generators.size(); ++i) {
    sig.generator.push_back(static_cast<SymbolId>(sig.signature.functions.size()));
    sig.signature.functions.push_back({ext.generators[i].name, {}, idx(ext.generators[i].sort)});
    SymbolInfo info;
    info.kind = SymbolKind::Generator;
    info.object = ext.generators[i].sort;
    info.generator = i;
    sig.info.push_back(info);
  }
  return sig;
}

namespace {

std::optional<Elem> evaluate(const Site& site, const FreeExtension& ext, const SheafSignature& sig, const Term& t) {
  if (t.kind == Term::Kind::Variable) throw SortMismatch("term is not closed");
  std::vector<Elem> args;
  for (const auto& a : t.args) {
    auto v = evaluate(site, ext, sig, a);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  const SymbolInfo& info = sig.info.at(t.index);
  switch (info.kind) {
    case SymbolKind::Alpha: return ext.carrier().act(info.morphism, args[0]);
    case SymbolKind::Constant: return ext.insert(info.object, info.element);
    case SymbolKind::Generator: return ext.generic[info.generator];
    case SymbolKind::Sigma: {
      MatchingFamily m{site.topology.on(info.object)[info.cover], std::move(args)};
      if (!is_matching(site.category, ext.carrier(), m)) return std::nullopt;
      return unique_amalgamation(site.category, ext.carrier(), m);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Elem> denote(const Site& site, const FreeExtension& ext, const SheafSignature& sig, const Term& t) {
  sort_of(sig.signature, {}, t);
  return evaluate(site, ext, sig, t);
}

bool decide_equal(const Site& site, const FreeExtension& ext, const SheafSignature& sig, const Term& a,
                  const Term& b) {
  if (sort_of(sig.signature, {}, a) != sort_of(sig.signature, {}, b))
    throw SortMismatch("terms of different sorts cannot be compared");
  auto x = evaluate(site, ext, sig, a);
  auto y = evaluate(site, ext, sig, b);
  return x && y && *x == *y;
}

namespace {

class TermParser {
 public:
  TermParser(const Site& site, const FreeExtension& ext, const SheafSignature& sig, const std::string& text)
      : site_(site), ext_(ext), sig_(sig) {
    std::string atom;
    auto flush = [&] {
      if (!atom.empty()) tokens_.push_back(std::move(atom));
      atom.clear();
    };
    for (char ch : text) {
      if (ch == '(' || ch == ')') {
        flush();
        tokens_.emplace_back(1, ch);
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else {
        atom += ch;
      }
    }
    flush();
  }

  Term parse() {
    Term t = term();
    if (pos_ != tokens_.size()) throw ParseError("trailing input after term: '" + tokens_[pos_] + "'");
    return t;
  }

 private:
  const std::string& next() {
    if (pos_ >= tokens_.size()) throw ParseError("unexpected end of term");
    return tokens_[pos_++];
  }

  bool at_close() const { return pos_ < tokens_.size() && tokens_[pos_] == ")"; }

  void expect_close() {
    if (next() != ")") throw ParseError("expected ')'");
  }

  std::optional<Term> generator(const std::string& name) const {
    for (std::size_t i = 0; i < ext_.generators.size(); ++i)
      if (ext_.generators[i].name == name) return Term::apply(sig_.generator[i]);
    return std::nullopt;
  }

  Term term() {
    const std::string tok = next();
    if (tok == ")") throw ParseError("unexpected ')'");
    if (tok != "(") {
      if (auto g = generator(tok)) return *g;
      throw ParseError("unknown generator '" + tok + "'");
    }
    const std::string head = next();
    if (head == "(" || head == ")") throw ParseError("expected an operator after '('");
    const FinCategory& c = site_.category;
    if (head == "alpha") {
      auto f = c.find_morphism(next());
      if (!f) throw ParseError("unknown morphism '" + tokens_[pos_ - 1] + "'");
      Term arg = term();
      expect_close();
      return Term::apply(sig_.alpha[idx(*f)], {std::move(arg)});
    }
    if (head == "sigma") {
      const std::string spec = next();
      const auto brace = spec.find('{');
      if (brace == std::string::npos || spec.back() != '}') throw ParseError("expected a sieve like X{f,g}, got '" + spec + "'");
      auto x = c.find_object(spec.substr(0, brace));
      if (!x) throw ParseError("unknown object in sieve '" + spec + "'");
      Sieve s{*x, {}};
      const std::string body = spec.substr(brace + 1, spec.size() - brace - 2);
      std::size_t start = 0;
      while (start < body.size()) {
        auto comma = body.find(',', start);
        if (comma == std::string::npos) comma = body.size();
        auto f = c.find_morphism(body.substr(start, comma - start));
        if (!f) throw ParseError("unknown morphism in sieve '" + spec + "'");
        s.members.push_back(*f);
        start = comma + 1;
      }
      std::sort(s.members.begin(), s.members.end());
      if (!site_.topology.covers_sieve(s)) throw ParseError("'" + spec + "' is not a cover");
      const std::size_t k = site_.topology.cover_index(s);
      std::vector<Term> args;
      while (!at_close()) args.push_back(term());
      expect_close();
      return Term::apply(sig_.sigma[idx(*x)][k], std::move(args));
    }
    if (head == "c") {
      std::vector<std::string> words;
      while (!at_close()) {
        const std::string w = next();
        if (w == "(") throw ParseError("constants take names, not terms");
        words.push_back(w);
      }
      expect_close();
      if (words.size() == 2) {
        auto x = c.find_object(words[0]);
        if (!x) throw ParseError("unknown object '" + words[0] + "'");
        auto a = ext_.base.find_element(*x, words[1]);
        if (!a) throw ParseError("no element '" + words[1] + "' in F(" + words[0] + ")");
        return Term::apply(sig_.constant[idx(*x)][*a]);
      }
      if (words.size() != 1) throw ParseError("constant expects (c ELEMENT) or (c OBJECT ELEMENT)");
      std::optional<Term> found;
      for (ObjId x : c.objects())
        if (auto a = ext_.base.find_element(x, words[0])) {
          if (found) throw ParseError("constant '" + words[0] + "' is ambiguous; write (c OBJECT " + words[0] + ")");
          found = Term::apply(sig_.constant[idx(x)][*a]);
        }
      if (!found) throw ParseError("no element named '" + words[0] + "'");
      return *found;
    }
    if (auto g = generator(head)) {
      expect_close();
      return *g;
    }
    throw ParseError("unknown operator '" + head + "'");
  }

  const Site& site_;
  const FreeExtension& ext_;
  const SheafSignature& sig_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(const Site& site, const FreeExtension& ext, const SheafSignature& sig, const std::string& text) {
  return TermParser(site, ext, sig, text).parse();
}

Substitution::Substitution(const Site& site, const FreeExtension& ext, const Presheaf& target, PresheafMap base,
                           std::vector<Elem> points)
    : base_(std::move(base)),
      points_(std::move(points)),
      lift_(site, ext.sum.sheafification, target, [this, &site, &ext, &target](ObjId x, Elem e) {
        const auto [summand, local] = ext.sum.coproduct.locate(x, e);
        if (summand == 0) return base_(x, local);
        const MorId f = site.category.hom(x, ext.generators[summand - 1].sort)[local];
        return target.act(f, points_[summand - 1]);
      }) {
  if (points_.size() != ext.generators.size()) throw SortMismatch("one point per generator is required");
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] >= target.size(ext.generators[i].sort))
      throw SortMismatch("point for " + ext.generators[i].name + " is not in the target at its sort");
}

PresheafMap subst_map(const Site& site, const FreeExtension& ext, const Presheaf& target, const PresheafMap& base,
                      std::span<const Elem> points) {
  Substitution s(site, ext, target, base, {points.begin(), points.end()});
  return s.to_map();
}

namespace {

NormalComponent component_of(const Site& site, const FreeExtension& ext, ObjId x, Elem p) {
  const auto [summand, local] = ext.sum.coproduct.locate(x, p);
  NormalComponent comp;
  if (summand == 0) {
    comp.kind = NormalComponent::Kind::Const;
    comp.element = local;
  } else {
    comp.kind = NormalComponent::Kind::Gen;
    comp.generator = summand - 1;
    comp.morphism = site.category.hom(x, ext.generators[summand - 1].sort)[local];
  }
  return comp;
}

}  // namespace

NormalForm normal_form(const Site& site, const FreeExtension& ext, ObjId x, Elem e) {
  const FinCategory& c = site.category;
  const auto& layers = ext.sum.sheafification.layers;
  const Presheaf& p = ext.sum.coproduct.sum;
  NormalForm nf;
  if (layers.empty()) {
    nf.cover = maximal_sieve(c, x);
    for (MorId h : nf.cover.members) nf.components.push_back(component_of(site, ext, c.dom(h), p.act(h, e)));
    return nf;
  }
  // K = { h∘k : h ∈ J, k ∈ J_h }, each member taking the first decomposition.
  const MatchingFamily& outer = layers[1].representative(x, e);
  std::map<MorId, Elem> chosen;
  for (std::size_t i = 0; i < outer.sieve.size(); ++i) {
    const MorId h = outer.sieve.members[i];
    const MatchingFamily& inner = layers[0].representative(c.dom(h), outer.values[i]);
    for (std::size_t j = 0; j < inner.sieve.size(); ++j)
      chosen.emplace(c.compose(h, inner.sieve.members[j]), inner.values[j]);
  }
  nf.cover.target = x;
  for (const auto& [m, value] : chosen) {
    nf.cover.members.push_back(m);
    nf.components.push_back(component_of(site, ext, c.dom(m), value));
  }
  return nf;
}

Elem component_value(const Site& site, const FreeExtension& ext, MorId h, const NormalComponent& comp) {
  if (comp.kind == NormalComponent::Kind::Const) return ext.insert(site.category.dom(h), comp.element);
  return ext.generator_image(site.category, comp.generator, comp.morphism);
}

std::string describe(const Site& site, const FreeExtension& ext, const NormalForm& nf) {
  const FinCategory& c = site.category;
  std::string out = describe(c, nf.cover) + " [";
  for (std::size_t i = 0; i < nf.components.size(); ++i) {
    const MorId h = nf.cover.members[i];
    const auto& comp = nf.components[i];
    out += (i ? ", " : "") + c.morphism_name(h) + ": ";
    if (comp.kind == NormalComponent::Kind::Const)
      out += "c " + ext.base.element_name(c.dom(h), comp.element);
    else
      out += "alpha " + c.morphism_name(comp.morphism) + " " + ext.generators[comp.generator].name;
  }
  return out + "]";
}

void require_subcanonical_without_empty_covers(const Site& site, const Limits& limits) {
  const auto sub = is_subcanonical(site, limits);
  if (!sub.subcanonical)
    throw HypothesisViolation("site is not subcanonical: y" + site.category.object_name(*sub.object) + " is not a sheaf");
  const auto empty = empty_cover_objects(site.topology);
  if (!empty.empty())
    throw HypothesisViolation("the empty sieve covers " + site.category.object_name(*empty.begin()));
}

std::optional<MorId> as_generator(const Site& site, const FreeExtension& ext, ObjId x, Elem e, std::size_t generator,
                                  const Limits& limits) {
  require_subcanonical_without_empty_covers(site, limits);
  for (MorId f : site.category.hom(x, ext.generators.at(generator).sort))
    if (ext.generator_image(site.category, generator, f) == e) return f;
  return std::nullopt;
}

}  // namespace topos
