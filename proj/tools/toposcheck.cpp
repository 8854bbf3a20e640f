#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "topos/freeext.hpp"
#include "topos/io.hpp"
#include "topos/isotropy.hpp"
#include "topos/phl.hpp"
#include "topos/report.hpp"

using namespace topos;

namespace {

struct Options {
  std::string format = "text";
  std::string output;
  Limits limits;
  std::string site;
  std::vector<std::string> presheaves;
  std::string at;
  std::string term;
  bool fast = false;
  bool sheafify_input = false;
};

struct Outcome {
  Json report;
  int code = 0;
};

std::string stem(const std::string& path) {
  std::string s = path.substr(path.find_last_of('/') + 1);
  return s.substr(0, s.find('.'));
}

void emit(const Options& opt, const Json& doc) {
  const std::string body = opt.format == "json" ? doc.dump(2) + "\n" : json_to_text(doc);
  if (opt.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw ParseError("cannot write '" + opt.output + "'");
  out << body;
}

Presheaf load_single(const Options& opt, const Site& site) {
  if (opt.presheaves.size() != 1) throw ParseError("expected exactly one presheaf file");
  return read_presheaf(site.category, opt.presheaves[0]);
}

Presheaf load_sheaf(const Options& opt, const Site& site) {
  Presheaf f = load_single(opt, site);
  if (opt.sheafify_input) return sheafify_if_needed(site, f, opt.limits).sheaf;
  const auto st = sheaf_status(site, f, opt.limits);
  if (st.kind != SheafKind::Sheaf)
    throw NotASheaf(opt.presheaves[0] + " is " + to_string(st.kind) + " at a family on " +
                    describe(site.category, st.witness->sieve));
  return f;
}

ObjId object_arg(const Site& site, const std::string& name) {
  if (name.empty()) throw ParseError("--at is required");
  if (auto x = site.category.find_object(name)) return *x;
  throw UnknownName("unknown object '" + name + "'");
}

Outcome cmd_validate(const Options& opt) {
  const Site site = read_site(opt.site, opt.limits);
  Json r = site_summary(site);
  r["valid"] = true;
  return {r, 0};
}

Outcome cmd_centre(const Options& opt) {
  const Site site = read_site(opt.site, opt.limits);
  Json r = {{"site", site.name}};
  r["centre"] = centre_report(site.category, centre(site.category));
  return {r, 0};
}

Outcome cmd_sheaf_check(const Options& opt) {
  const Site site = read_site(opt.site, opt.limits);
  const Presheaf f = load_single(opt, site);
  const auto st = sheaf_status(site, f, opt.limits);
  return {sheaf_check_report(site, f, st), st.kind == SheafKind::Sheaf ? 0 : 1};
}

Outcome cmd_sheafify(const Options& opt) {
  const Site site = read_site(opt.site, opt.limits);
  const Presheaf f = load_single(opt, site);
  return {presheaf_to_json(site.category, sheafify_if_needed(site, f, opt.limits).sheaf), 0};
}

Outcome cmd_free_ext(const Options& opt) {
  const Site site = read_site(opt.site, opt.limits);
  const Presheaf f = load_sheaf(opt, site);
  const ObjId x = object_arg(site, opt.at);
  const FreeExtension ext = free_extension(site, f, {{"x", x}}, opt.limits);
  return {free_extension_report(site, ext, x), 0};
}

Outcome cmd_normal_form(const Options& opt) {
  const Site site = read_site(opt.site, opt.limits);
  const Presheaf f = load_sheaf(opt, site);
  const ObjId x = object_arg(site, opt.at);
  const FreeExtension ext = free_extension(site, f, {{"x", x}}, opt.limits);
  const SheafSignature sig = extension_signature(site, ext);
  const Term t = parse_term(site, ext, sig, opt.term);
  const std::vector<Variable> none;
  const ObjId sort{static_cast<std::uint32_t>(sort_of(sig.signature, none, t))};
  Json r = {{"term", to_string(sig.signature, none, t)}, {"sort", site.category.object_name(sort)}};
  const auto e = denote(site, ext, sig, t);
  r["defined"] = e.has_value();
  if (e) {
    r["element"] = ext.carrier().element_name(sort, *e);
    Json full = free_extension_report(site, ext, sort);
    r["normal_form"] = full["elements"][*e]["normal_form"];
  }
  return {r, 0};
}

Outcome cmd_isotropy(const Options& opt) {
  const Site site = read_site(opt.site, opt.limits);
  const Presheaf f = load_sheaf(opt, site);
  IsotropyEngine engine(site, f, opt.limits);
  const IsotropyGroup g = opt.fast ? engine.pure_isotropy_group() : engine.isotropy_group();
  Json r = {{"site", site.name}};
  r["isotropy"] = isotropy_report(site, engine, g, centre(site.category), opt.fast);
  return {r, 0};
}

Outcome cmd_check_theorem(const Options& opt) {
  const Site site = read_site(opt.site, opt.limits);
  std::vector<NamedSheaf> catalogue;
  if (opt.presheaves.empty()) {
    catalogue = sheaf_catalogue(site, opt.limits);
  } else {
    for (const auto& path : opt.presheaves) {
      const Presheaf f = read_presheaf(site.category, path);
      auto a = sheafify_if_needed(site, f, opt.limits);
      catalogue.push_back({a.layers.empty() ? stem(path) : "a(" + stem(path) + ")", std::move(a.sheaf)});
    }
  }
  const TheoremReport r = verify_main_theorem(site, catalogue, opt.limits);
  return {theorem_report(r), r.ok() ? 0 : 1};
}

Outcome cmd_check_model(const Options& opt) {
  const Site site = read_site(opt.site, opt.limits);
  const Presheaf f = load_single(opt, site);
  const SheafSignature sig = sheaf_signature(site);
  const PartialStructure m = presheaf_to_structure(site, sig, f, opt.limits);
  const auto axioms = sheaf_theory(site, sig);
  Json failures = Json::array();
  for (const auto& axiom : axioms) {
    const auto s = satisfies(sig.signature, m, axiom, opt.limits);
    if (s.holds) continue;
    Json env = Json::object();
    for (std::size_t i = 0; i < axiom.context.size(); ++i)
      env[axiom.context[i].name] = m.carriers[axiom.context[i].sort][(*s.counterexample)[i]];
    failures.push_back({{"axiom", axiom.label}, {"sequent", to_string(sig.signature, axiom)}, {"counterexample", env}});
  }
  Json r = {{"site", site.name}, {"axioms", axioms.size()}, {"model", failures.empty()}, {"failures", failures}};
  if (failures.empty()) r["round_trip"] = model_to_sheaf(site, sig, m, opt.limits) == f;
  return {r, failures.empty() ? 0 : 1};
}

Json error_report(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"toposcheck: finite sites, sheaves and covariant isotropy"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", opt.output, "Write the report to a file");
  app.add_option("--max-families", opt.limits.max_families, "Matching families per object and cover")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-candidates", opt.limits.max_candidates, "Candidates in product searches")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-cone", opt.limits.max_cone, "Morphisms into one object when enumerating sieves")
      ->check(CLI::PositiveNumber);

  using Command = Outcome (*)(const Options&);
  Command chosen = nullptr;
  auto command = [&](const char* name, const char* help, Command fn, int presheaves) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("site", opt.site, "Site file")->required();
    if (presheaves == 1) sub->add_option("presheaf", opt.presheaves, "Presheaf file")->required()->expected(1);
    if (presheaves < 0) sub->add_option("presheaves", opt.presheaves, "Presheaf files");
    sub->callback([&chosen, fn] { chosen = fn; });
    return sub;
  };
  command("validate", "Check category laws and topology axioms", cmd_validate, 0);
  command("centre", "Aut(1_C) of the underlying category", cmd_centre, 0);
  command("sheaf-check", "Classify a presheaf as sheaf, separated or neither", cmd_sheaf_check, 1);
  command("sheafify", "Emit a(F) as a presheaf file", cmd_sheafify, 1);
  for (auto* sub : {command("free-ext", "Describe F<x> for a generator of the given sort", cmd_free_ext, 1),
                    command("normal-form", "Evaluate a term of F<x> and give its normal form", cmd_normal_form, 1)}) {
    sub->add_option("--at", opt.at, "Sort of the generator x")->required();
    sub->add_flag("--sheafify", opt.sheafify_input, "Sheafify the input first");
  }
  app.get_subcommand("normal-form")->add_option("--term", opt.term, "Term as an s-expression")->required();
  CLI::App* iso = command("isotropy", "Covariant isotropy group of a sheaf", cmd_isotropy, 1);
  iso->add_flag("--fast", opt.fast, "Enumerate pure families only");
  iso->add_flag("--sheafify", opt.sheafify_input, "Sheafify the input first");
  command("check-theorem", "Compare isotropy with the centre over a catalogue of sheaves", cmd_check_theorem, -1);
  command("check-model", "Check a presheaf against the theory of sheaves", cmd_check_model, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    Outcome out = chosen(opt);
    emit(opt, out.report);
    return out.code;
  } catch (const ValidationError& e) {
    Json r = error_report("ValidationError", "input violates the laws");
    r["violations"] = violations_to_json(e.violations());
    emit(opt, r);
    return 1;
  } catch (const SizeLimit& e) {
    emit(opt, error_report("SizeLimit", e.what()));
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "toposcheck: " << e.what() << "\n";
    return 3;
  } catch (const NotASheaf& e) {
    emit(opt, error_report("NotASheaf", e.what()));
    return 1;
  } catch (const HypothesisViolation& e) {
    emit(opt, error_report("HypothesisViolation", e.what()));
    return 1;
  } catch (const UnknownName& e) {
    emit(opt, error_report("UnknownName", e.what()));
    return 1;
  } catch (const SortMismatch& e) {
    emit(opt, error_report("SortMismatch", e.what()));
    return 1;
  } catch (const Error& e) {
    emit(opt, error_report("Error", e.what()));
    return 1;
  }
}
