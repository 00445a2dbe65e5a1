#pragma once

#include <optional>
#include <vector>

#include "versal/module.hpp"

namespace versal {

/// 0 -> G --iota--> E --kappa--> F -> 0
struct Extension {
  ModuleHom iota;
  ModuleHom kappa;

  const PresentedModule& middle() const { return iota.target(); }
  const PresentedModule& sub() const { return iota.source(); }
  const PresentedModule& quotient() const { return kappa.target(); }
};

struct ExactnessReport {
  bool composite_zero = false;
  bool iota_injective = false;
  bool kappa_surjective = false;
  bool middle_exact = false;

  bool ok() const { return composite_zero && iota_injective && kappa_surjective && middle_exact; }
};

ExactnessReport certify(const Extension& e);
/// Checks the maps compose and certifies exactness; throws std::invalid_argument otherwise.
Extension make_extension(ModuleHom iota, ModuleHom kappa);

/// G (+) F with the inclusion and projection.
Extension split_extension(const PresentedModule& f, const PresentedModule& g);

Extension baer_sum(const Extension& e1, const Extension& e2);
Extension opposite(const Extension& e);
/// g_* E for g: G -> G'.
Extension pushforward(const ModuleHom& g, const Extension& e);
/// f^* E for f: F' -> F.
Extension pullback(const ModuleHom& f, const Extension& e);

/// A retraction s: E -> G with s o iota = id_G, when one exists.
std::optional<ModuleHom> is_split(const Extension& e);

/// An isomorphism of extensions E1 -> E2, built from a splitting of
/// E1 - E2, when one exists.
std::optional<ModuleHom> extensions_isomorphic(const Extension& e1, const Extension& e2);

/// Homomorphism of extensions: iota and kappa compatibility.
bool is_extension_morphism(const ModuleHom& f, const Extension& e1, const Extension& e2);

/// Coordinates of the class of E in a fixed basis of Ext^1(F, G), computed
/// from the boundary cocycle of the resolution of F. Requires G to be
/// finite-dimensional over the field.
Vec extension_class(const Extension& e);

}  // namespace versal
