#include "topos/phl.hpp"

#include <algorithm>

namespace topos {

std::optional<SymbolId> Signature::find_function(const std::string& name) const {
  for (std::size_t i = 0; i < functions.size(); ++i)
    if (functions[i].name == name) return static_cast<SymbolId>(i);
  return std::nullopt;
}

std::vector<Violation> check_signature(const Signature& sig) {
  std::vector<Violation> out;
  for (const auto& f : sig.functions) {
    bool ok = f.result < sig.sorts.size();
    for (SortId a : f.args) ok = ok && a < sig.sorts.size();
    if (!ok) out.push_back({"UndeclaredSort", "function symbol uses an undeclared sort", {f.name}});
  }
  return out;
}

bool Term::is_closed() const {
  if (kind == Kind::Variable) return false;
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_closed(); });
}

SortId sort_of(const Signature& sig, std::span<const Variable> context, const Term& t) {
  if (t.kind == Term::Kind::Variable) {
    if (t.index >= context.size()) throw SortMismatch("variable outside the context");
    return context[t.index].sort;
  }
  if (t.index >= sig.functions.size()) throw SortMismatch("unknown function symbol");
  const auto& f = sig.functions[t.index];
  if (f.args.size() != t.args.size())
    throw SortMismatch(f.name + " expects " + std::to_string(f.args.size()) + " arguments, got " +
                       std::to_string(t.args.size()));
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    const SortId s = sort_of(sig, context, t.args[i]);
    if (s != f.args[i])
      throw SortMismatch("argument " + std::to_string(i) + " of " + f.name + " has sort " + sig.sorts[s] +
                         ", expected " + sig.sorts[f.args[i]]);
  }
  return f.result;
}

std::string to_string(const Signature& sig, std::span<const Variable> context, const Term& t) {
  if (t.kind == Term::Kind::Variable)
    return t.index < context.size() ? context[t.index].name : "v" + std::to_string(t.index);
  std::string out = sig.functions[t.index].name;
  if (t.args.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? ", " : "") + to_string(sig, context, t.args[i]);
  return out + ")";
}

HornFormula& HornFormula::operator&=(const HornFormula& other) {
  equations.insert(equations.end(), other.equations.begin(), other.equations.end());
  return *this;
}

namespace {

std::string formula_string(const Signature& sig, std::span<const Variable> ctx, const HornFormula& f) {
  if (f.equations.empty()) return "T";
  std::string out;
  for (std::size_t i = 0; i < f.equations.size(); ++i) {
    const auto& e = f.equations[i];
    out += i ? " & " : "";
    if (e.lhs == e.rhs) out += to_string(sig, ctx, e.lhs) + "!";
    else out += to_string(sig, ctx, e.lhs) + " = " + to_string(sig, ctx, e.rhs);
  }
  return out;
}

int max_variable(const Term& t) {
  int m = t.kind == Term::Kind::Variable ? static_cast<int>(t.index) : -1;
  for (const auto& a : t.args) m = std::max(m, max_variable(a));
  return m;
}

bool holds(const Signature& sig, const PartialStructure& m, const Equation& e, std::span<const Elem> env) {
  auto a = interpret_term(sig, m, e.lhs, env);
  if (!a) return false;
  auto b = interpret_term(sig, m, e.rhs, env);
  return b && *a == *b;
}

}  // namespace

std::string to_string(const Signature& sig, const Sequent& s) {
  std::string ctx;
  for (std::size_t i = 0; i < s.context.size(); ++i)
    ctx += (i ? ", " : "") + s.context[i].name + ":" + sig.sorts[s.context[i].sort];
  return formula_string(sig, s.context, s.premise) + " |-[" + ctx + "] " +
         formula_string(sig, s.context, s.conclusion);
}

std::vector<Violation> check_structure(const Signature& sig, const PartialStructure& m) {
  std::vector<Violation> out;
  if (m.carriers.size() != sig.sorts.size() || m.operations.size() != sig.functions.size()) {
    out.push_back({"StructureShape", "structure does not match the signature", {}});
    return out;
  }
  for (std::size_t i = 0; i < sig.functions.size(); ++i) {
    const auto& f = sig.functions[i];
    for (const auto& [tuple, value] : m.operations[i]) {
      bool ok = tuple.size() == f.args.size() && value < m.carriers[f.result].size();
      for (std::size_t k = 0; ok && k < tuple.size(); ++k) ok = tuple[k] < m.carriers[f.args[k]].size();
      if (!ok) {
        out.push_back({"StructureShape", "operation entry outside the carriers", {f.name}});
        break;
      }
    }
  }
  return out;
}

std::optional<Elem> interpret_term(const Signature& sig, const PartialStructure& m, const Term& t,
                                   std::span<const Elem> env) {
  if (t.kind == Term::Kind::Variable) {
    if (t.index >= env.size()) throw SortMismatch("environment does not cover the variable");
    return env[t.index];
  }
  if (t.index >= sig.functions.size()) throw SortMismatch("unknown function symbol");
  if (sig.functions[t.index].args.size() != t.args.size())
    throw SortMismatch("wrong number of arguments to " + sig.functions[t.index].name);
  std::vector<Elem> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) {
    auto v = interpret_term(sig, m, a, env);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  const auto& op = m.operations[t.index];
  auto it = op.find(args);
  if (it == op.end()) return std::nullopt;
  return it->second;
}

Satisfaction satisfies(const Signature& sig, const PartialStructure& m, const Sequent& s, const Limits& limits) {
  const std::size_t n = s.context.size();
  // Premise equations are checked as soon as their last variable is bound.
  std::vector<std::vector<const Equation*>> at(n + 1);
  for (const auto& e : s.premise.equations) {
    const int v = std::max(max_variable(e.lhs), max_variable(e.rhs));
    at[static_cast<std::size_t>(v + 1)].push_back(&e);
  }
  std::vector<Elem> env(n, 0);
  for (const Equation* e : at[0])
    if (!holds(sig, m, *e, env)) return {};
  std::size_t nodes = 0;
  Satisfaction result;
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (++nodes > limits.max_environments) throw SizeLimit("environments for " + s.label, limits.max_environments);
    if (i == n) {
      for (const auto& e : s.conclusion.equations)
        if (!holds(sig, m, e, env)) {
          result = Satisfaction{false, env};
          return false;
        }
      return true;
    }
    const std::size_t size = m.carriers[s.context[i].sort].size();
    for (Elem v = 0; v < size; ++v) {
      env[i] = v;
      const auto prefix = std::span<const Elem>(env).first(i + 1);
      bool ok = true;
      for (const Equation* e : at[i + 1])
        if (!holds(sig, m, *e, prefix)) {
          ok = false;
          break;
        }
      if (ok && !self(self, i + 1)) return false;
    }
    return true;
  };
  search(search, 0);
  return result;
}

PartialStructure quotient_structure(const Signature& sig, const PartialStructure& m,
                                    const std::vector<std::vector<std::uint32_t>>& classes) {
  PartialStructure out;
  std::vector<std::vector<std::size_t>> class_size(sig.sorts.size());
  for (std::size_t s = 0; s < sig.sorts.size(); ++s) {
    const auto& cls = classes.at(s);
    if (cls.size() != m.carriers[s].size()) throw NotACongruence("class assignment has the wrong size for " + sig.sorts[s]);
    const std::uint32_t count = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<std::string> names(count);
    class_size[s].assign(count, 0);
    for (std::size_t e = 0; e < cls.size(); ++e) {
      names[cls[e]] += (names[cls[e]].empty() ? "" : "~") + m.carriers[s][e];
      ++class_size[s][cls[e]];
    }
    for (std::size_t k = 0; k < count; ++k)
      if (class_size[s][k] == 0) throw NotACongruence("class ids are not dense for " + sig.sorts[s]);
    out.carriers.push_back(std::move(names));
  }
  for (std::size_t i = 0; i < sig.functions.size(); ++i) {
    const auto& f = sig.functions[i];
    std::map<std::vector<Elem>, std::pair<Elem, std::size_t>> image;  // class tuple -> (class value, defined reps)
    auto witness = [&](const std::vector<Elem>& tuple) {
      std::string w = f.name + "(";
      for (std::size_t k = 0; k < tuple.size(); ++k) w += (k ? "," : "") + m.carriers[f.args[k]][tuple[k]];
      return w + ")";
    };
    for (const auto& [tuple, value] : m.operations[i]) {
      std::vector<Elem> key;
      for (std::size_t k = 0; k < tuple.size(); ++k) key.push_back(classes[f.args[k]][tuple[k]]);
      const Elem cv = classes[f.result][value];
      auto [it, fresh] = image.emplace(key, std::make_pair(cv, std::size_t{0}));
      if (!fresh && it->second.first != cv) throw NotACongruence("values are not identified: " + witness(tuple));
      ++it->second.second;
    }
    std::map<std::vector<Elem>, Elem> op;
    for (const auto& [key, entry] : image) {
      std::size_t reps = 1;
      for (std::size_t k = 0; k < key.size(); ++k) reps *= class_size[f.args[k]][key[k]];
      if (reps != entry.second) {
        // Find a representative tuple on which f is undefined.
        std::vector<Elem> tuple(key.size(), 0);
        auto search = [&](auto&& self, std::size_t k) -> bool {
          if (k == key.size()) return !m.operations[i].count(tuple);
          for (Elem e = 0; e < classes[f.args[k]].size(); ++e)
            if (classes[f.args[k]][e] == key[k]) {
              tuple[k] = e;
              if (self(self, k + 1)) return true;
            }
          return false;
        };
        search(search, 0);
        throw NotACongruence("definedness is not respected: " + witness(tuple) + " is undefined");
      }
      op.emplace(key, entry.first);
    }
    out.operations.push_back(std::move(op));
  }
  return out;
}

SheafSignature sheaf_signature(const Site& site) {
  const FinCategory& c = site.category;
  SheafSignature out;
  for (ObjId x : c.objects()) out.signature.sorts.push_back(c.object_name(x));
  for (MorId f : c.morphisms()) {
    out.alpha.push_back(static_cast<SymbolId>(out.signature.functions.size()));
    out.signature.functions.push_back({"alpha_" + c.morphism_name(f), {idx(c.cod(f))}, idx(c.dom(f))});
    SymbolInfo info;
    info.kind = SymbolKind::Alpha;
    info.morphism = f;
    info.object = c.dom(f);
    out.info.push_back(info);
  }
  out.sigma.resize(c.num_objects());
  for (ObjId x : c.objects())
    for (std::size_t k = 0; k < site.topology.on(x).size(); ++k) {
      const Sieve& s = site.topology.on(x)[k];
      FunctionSymbol sym{"sigma_" + describe(c, s), {}, idx(x)};
      for (MorId f : s.members) sym.args.push_back(idx(c.dom(f)));
      out.sigma[idx(x)].push_back(static_cast<SymbolId>(out.signature.functions.size()));
      out.signature.functions.push_back(std::move(sym));
      SymbolInfo info;
      info.kind = SymbolKind::Sigma;
      info.object = x;
      info.cover = k;
      out.info.push_back(info);
    }
  return out;
}

namespace {

// Variables x_f : dom f for f ∈ J, then (optionally) y : C.
std::vector<Variable> cover_context(const FinCategory& c, const Sieve& s, bool with_y) {
  std::vector<Variable> ctx;
  for (MorId f : s.members) ctx.push_back({"x_" + c.morphism_name(f), idx(c.dom(f))});
  if (with_y) ctx.push_back({"y", idx(s.target)});
  return ctx;
}

HornFormula matching_premise(const FinCategory& c, const SheafSignature& sig, const Sieve& s) {
  HornFormula p;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const MorId f = s.members[i];
    for (MorId g : c.into(c.dom(f)))
      p &= HornFormula::eq(Term::apply(sig.alpha[idx(g)], {Term::var(static_cast<std::uint32_t>(i))}),
                           Term::var(static_cast<std::uint32_t>(s.position(c.compose(f, g)))));
  }
  return p;
}

Term sigma_term(const SheafSignature& sig, const Sieve& s, ObjId x, std::size_t cover) {
  std::vector<Term> args;
  for (std::uint32_t i = 0; i < s.size(); ++i) args.push_back(Term::var(i));
  return Term::apply(sig.sigma[idx(x)][cover], std::move(args));
}

}  // namespace

std::vector<Sequent> sheaf_theory(const Site& site, const SheafSignature& sig) {
  const FinCategory& c = site.category;
  std::vector<Sequent> out;
  for (MorId f : c.morphisms())
    out.push_back({{{"x", idx(c.cod(f))}},
                   HornFormula::top(),
                   HornFormula::defined(Term::apply(sig.alpha[idx(f)], {Term::var(0)})),
                   "total(" + c.morphism_name(f) + ")"});
  for (ObjId x : c.objects())
    out.push_back({{{"x", idx(x)}},
                   HornFormula::top(),
                   HornFormula::eq(Term::apply(sig.alpha[idx(c.identity(x))], {Term::var(0)}), Term::var(0)),
                   "identity(" + c.object_name(x) + ")"});
  for (MorId g : c.morphisms())
    for (MorId f : c.into(c.dom(g)))
      out.push_back({{{"x", idx(c.cod(g))}},
                     HornFormula::top(),
                     HornFormula::eq(Term::apply(sig.alpha[idx(c.compose(g, f))], {Term::var(0)}),
                                     Term::apply(sig.alpha[idx(f)], {Term::apply(sig.alpha[idx(g)], {Term::var(0)})})),
                     "composition(" + c.morphism_name(g) + "," + c.morphism_name(f) + ")"});
  for (ObjId x : c.objects())
    for (std::size_t k = 0; k < site.topology.on(x).size(); ++k) {
      const Sieve& s = site.topology.on(x)[k];
      const Term sigma = sigma_term(sig, s, x, k);
      HornFormula concl = HornFormula::defined(sigma);
      for (std::uint32_t i = 0; i < s.size(); ++i)
        concl &= HornFormula::eq(Term::apply(sig.alpha[idx(s.members[i])], {sigma}), Term::var(i));
      out.push_back({cover_context(c, s, false), matching_premise(c, sig, s), concl,
                     "existence(" + describe(c, s) + ")"});

      HornFormula prem = matching_premise(c, sig, s);
      const auto y = static_cast<std::uint32_t>(s.size());
      for (std::uint32_t i = 0; i < s.size(); ++i)
        prem &= HornFormula::eq(Term::apply(sig.alpha[idx(s.members[i])], {Term::var(y)}), Term::var(i));
      out.push_back({cover_context(c, s, true), prem, HornFormula::eq(sigma, Term::var(y)),
                     "uniqueness(" + describe(c, s) + ")"});
    }
  return out;
}

PartialStructure sheaf_to_model(const Site& site, const SheafSignature& sig, const Presheaf& f, const Limits& limits) {
  const auto status = sheaf_status(site, f, limits);
  if (status.kind != SheafKind::Sheaf)
    throw NotASheaf("presheaf is " + to_string(status.kind) + " at a family on " +
                    describe(site.category, status.witness->sieve));
  const FinCategory& c = site.category;
  PartialStructure m;
  m.carriers = f.sets;
  m.operations.resize(sig.signature.functions.size());
  for (MorId h : c.morphisms()) {
    auto& op = m.operations[sig.alpha[idx(h)]];
    for (Elem y = 0; y < f.size(c.cod(h)); ++y) op.emplace(std::vector<Elem>{y}, f.act(h, y));
  }
  for (ObjId x : c.objects())
    for (std::size_t k = 0; k < site.topology.on(x).size(); ++k) {
      auto& op = m.operations[sig.sigma[idx(x)][k]];
      for (const auto& fam : matching_families(c, f, site.topology.on(x)[k], limits))
        op.emplace(fam.values, unique_amalgamation(c, f, fam));
    }
  return m;
}

PartialStructure presheaf_to_structure(const Site& site, const SheafSignature& sig, const Presheaf& f,
                                       const Limits& limits) {
  const FinCategory& c = site.category;
  PartialStructure m;
  m.carriers = f.sets;
  m.operations.resize(sig.signature.functions.size());
  for (MorId h : c.morphisms()) {
    auto& op = m.operations[sig.alpha[idx(h)]];
    for (Elem y = 0; y < f.size(c.cod(h)); ++y) op.emplace(std::vector<Elem>{y}, f.act(h, y));
  }
  for (ObjId x : c.objects())
    for (std::size_t k = 0; k < site.topology.on(x).size(); ++k) {
      auto& op = m.operations[sig.sigma[idx(x)][k]];
      for (const auto& fam : matching_families(c, f, site.topology.on(x)[k], limits)) {
        const auto am = amalgamations(c, f, fam);
        if (!am.empty()) op.emplace(fam.values, am.front());
      }
    }
  return m;
}

Presheaf model_to_sheaf(const Site& site, const SheafSignature& sig, const PartialStructure& m, const Limits& limits) {
  if (auto bad = check_structure(sig.signature, m); !bad.empty()) throw NotAModel(format_violations(bad));
  for (const auto& axiom : sheaf_theory(site, sig)) {
    auto r = satisfies(sig.signature, m, axiom, limits);
    if (!r.holds) {
      std::string env;
      for (std::size_t i = 0; i < axiom.context.size(); ++i)
        env += (i ? ", " : "") + axiom.context[i].name + "=" + m.carriers[axiom.context[i].sort][(*r.counterexample)[i]];
      throw NotAModel("axiom " + axiom.label + " fails at {" + env + "}");
    }
  }
  const FinCategory& c = site.category;
  Presheaf f;
  f.sets = m.carriers;
  for (MorId h : c.morphisms()) {
    std::vector<Elem> table;
    for (Elem y = 0; y < f.size(c.cod(h)); ++y) table.push_back(m.operations[sig.alpha[idx(h)]].at({y}));
    f.actions.push_back(std::move(table));
  }
  // The axioms constrain σ only on matching tuples; elsewhere it must be undefined.
  for (ObjId x : c.objects())
    for (std::size_t k = 0; k < site.topology.on(x).size(); ++k) {
      const Sieve& s = site.topology.on(x)[k];
      for (const auto& [tuple, _] : m.operations[sig.sigma[idx(x)][k]])
        if (!is_matching(c, f, MatchingFamily{s, tuple}))
          throw NotAModel("sigma_" + describe(c, s) + " is defined on a non-matching tuple");
    }
  return f;
}

}  // namespace topos
