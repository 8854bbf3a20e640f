#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topos/fincat.hpp"
#include "topos/freeext.hpp"
#include "topos/group.hpp"
#include "topos/presheaf.hpp"

namespace topos {

// One element of F⟨x_C⟩(C) per object C.
using IsotropyFamily = std::vector<Elem>;

struct MembershipReport {
  bool invertible = false;
  bool alpha_commutes = false;
  bool sigma_commutes = false;
  bool reflects_definedness = false;
  std::optional<IsotropyFamily> inverse;
  std::string witness;  // first failing object, morphism or cover

  bool member() const { return invertible && alpha_commutes && sigma_commutes && reflects_definedness; }
};

struct IsotropyGroup {
  std::vector<IsotropyFamily> elements;  // lexicographic in element ids
  FiniteGroup group;                     // product s·t = (s_C[t_C/x_C])_C

  std::size_t order() const { return elements.size(); }
  std::optional<std::size_t> find(const IsotropyFamily& f) const;
};

// Membership in G_T(F) for a sheaf F: the free extensions F⟨x_C⟩ and every
// substitution between them are built once and shared.
class IsotropyEngine {
 public:
  IsotropyEngine(const Site& site, const Presheaf& sheaf, const Limits& limits = {});
  ~IsotropyEngine();
  IsotropyEngine(const IsotropyEngine&) = delete;
  IsotropyEngine& operator=(const IsotropyEngine&) = delete;

  const Site& site() const { return site_; }
  const Presheaf& sheaf() const { return sheaf_; }
  const FreeExtension& extension(ObjId c) const { return *ext_[idx(c)]; }

  IsotropyFamily generic_family() const;
  // s[t/x_C] in F⟨x_C⟩(C).
  Elem substitute(ObjId c, Elem s, Elem t);
  std::optional<Elem> substitution_inverse(ObjId c, Elem s);
  IsotropyFamily product(const IsotropyFamily& s, const IsotropyFamily& t);

  // s_C[α_f(x_D)/x_C] = α_f(s_D) for f : C -> D.
  bool alpha_commutes(const IsotropyFamily& s, MorId f);
  // In a(F + S_J): s_C[σ_J(e)/x_C] = σ_J((s_{dom h}[e_h/x_{dom h}])_h).
  bool sigma_commutes(const IsotropyFamily& s, ObjId c, std::size_t cover);
  // If the images s_{dom h}[x_h/x_{dom h}] match then so do the x_h.
  bool reflects_definedness(const IsotropyFamily& s, ObjId c, std::size_t cover);

  MembershipReport check_membership(const IsotropyFamily& s);

  // By definition: invertible candidates per object, α-pruned search over
  // objects, then the σ and definedness conditions.
  IsotropyGroup isotropy_group();
  // Only families (α_{ψ_C}(x_C))_C, checked for invertibility and α-commutation.
  // Requires a subcanonical site with no empty covers.
  IsotropyGroup pure_isotropy_group();

  // (α_{ψ_C}(x_C))_C.
  IsotropyFamily centre_embedding(const CentreElement& psi) const;

 private:
  struct SigmaContext;
  struct ReflectContext;

  Substitution& self_substitution(ObjId c, Elem t);
  Substitution& cross_substitution(MorId f);
  SigmaContext& sigma_context(ObjId c, std::size_t cover);
  ReflectContext& reflect_context(ObjId c, std::size_t cover);
  IsotropyGroup build_group(std::vector<IsotropyFamily> elements);

  const Site& site_;
  Presheaf sheaf_;
  Limits limits_;
  std::vector<std::unique_ptr<FreeExtension>> ext_;
  std::vector<std::map<Elem, std::unique_ptr<Substitution>>> self_;
  std::vector<std::unique_ptr<Substitution>> cross_;
  std::map<std::pair<std::uint32_t, std::size_t>, std::unique_ptr<SigmaContext>> sigma_;
  std::map<std::pair<std::uint32_t, std::size_t>, std::unique_ptr<ReflectContext>> reflect_;
};

// Requires a subcanonical site. Some ψ in the centre with γ_C = F(ψ_C) for all C.
std::optional<CentreElement> is_inner(const Site& site, const Presheaf& f, const PresheafMap& gamma,
                                      const Limits& limits = {});

// Components G(ψ_C).
PresheafMap extended_action(const FinCategory& c, const CentreElement& psi, const Presheaf& g);

// The endomorphism of a sheaf E induced by β ∈ Aut(1_ayC): e ∈ E(X) corresponds to
// f_e : a(yX) -> E and is sent to f_e(β_X(ι_X)).
PresheafMap dense_extension(const Site& site, const AycCategory& ayc, const CentreElement& beta, const Presheaf& e);

struct NamedSheaf {
  std::string name;
  Presheaf sheaf;
};

// a(yX) for every X, the terminal sheaf, and a(P + Q) for every unordered pair of these.
std::vector<NamedSheaf> sheaf_catalogue(const Site& site, const Limits& limits = {});

struct SheafTheoremReport {
  std::string name;
  std::size_t isotropy_order = 0;
  std::vector<std::size_t> bijection;  // element of centre(ayC) -> element of the isotropy group
  bool isomorphic = false;
  std::optional<bool> embedding_isomorphic;  // centre(C) via centre_embedding, when applicable
  std::vector<IsotropyFamily> elements;
};

struct TheoremReport {
  std::string site;
  bool subcanonical = false;
  std::vector<std::string> empty_covered;
  std::size_t centre_order = 0;
  std::size_t subcategory_centre_order = 0;
  std::size_t ayc_centre_order = 0;
  std::vector<std::size_t> restriction_bijection;  // centre(C) -> centre(D), when it exists
  std::vector<std::size_t> ayc_bijection;          // centre(C) -> centre(ayC), subcanonical only
  std::vector<SheafTheoremReport> per_sheaf;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

TheoremReport verify_main_theorem(const Site& site, const std::vector<NamedSheaf>& catalogue,
                                  const Limits& limits = {});

}  // namespace topos
