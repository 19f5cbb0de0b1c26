#pragma once

#include <string>
#include <vector>

#include "wcolim/localize.hpp"

namespace wcolim {

/// Full subcategory of Cat(p, x) on the functors inverting σ.
struct SigmaFunctorCat {
  FunctorCatPtr carrier;
  const CatPtr& cat() const { return carrier->cat(); }
};

SigmaFunctorCat sigma_functor_cat(const ColimitPresentation& pres, const CatPtr& x, const Budget& budget = {});

/// Everything phi and psi need: the presentation and Cat(E, x) as a
/// contravariant pseudo-functor with its fibers.
struct UniversalContext {
  ColimitPresentation pres;
  HomPseudoFunctor hom;

  const PseudoFunctor& e() const { return *pres.delta->e; }
  const PseudoFunctor& w() const { return *pres.delta->w; }
  const CatPtr& x() const { return hom.x; }
};

UniversalContext universal_context(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const CatPtr& x,
                                   const Budget& budget = {});
UniversalContext universal_context(ColimitPresentation pres, const CatPtr& x, const Budget& budget = {});

/// Σ-inverting F: p → x to the pseudo-natural W ⇒ Cat(E, x) with
/// component C: Y ↦ (X ↦ F(C, X, Y)) and coherence at f the F-images of
/// the classes (f, 1, 1).
PseudoNat phi(const UniversalContext& ctx, const Functor& f);
Modification phi_arrow(const UniversalContext& ctx, const PseudoNatPtr& source, const PseudoNatPtr& target,
                       const NatTransf& a);

/// Pseudo-natural θ to the functor p → x with (C, X, Y) ↦ θ_C(Y)(X) and
/// (f, u, v) ↦ θ_C(v)_X then (coherence f)_{B,X} then θ_D(B)(u).
/// Throws InvariantError when two members of a class disagree, or the
/// result is not a functor or does not invert σ.
Functor psi(const UniversalContext& ctx, const PseudoNat& t);
NatTransf psi_arrow(const UniversalContext& ctx, const Functor& source, const Functor& target,
                    const Modification& m);

bool same_pseudo_natural(const PseudoNat& a, const PseudoNat& b);

struct TheoremReport {
  IsoVerdict verdict = IsoVerdict::fail;
  std::string witness;
  int p_objects = 0;
  int p_arrows = 0;
  int sigma_arrows = 0;
  int functor_objects = 0;  // Σ-inverting functors
  int functor_arrows = 0;
  int pseudo_objects = 0;  // pseudo-naturals W ⇒ Cat(E, x)
  int pseudo_arrows = 0;
  std::vector<std::string> provenance;

  bool ok() const { return verdict != IsoVerdict::fail; }
};

/// Enumerates both sides, maps each through phi and psi and checks that the
/// two functors are strictly inverse.
TheoremReport verify_main_theorem(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const CatPtr& x,
                                  const Budget& budget = {});
TheoremReport verify_main_theorem(const UniversalContext& ctx, const Budget& budget = {});

/// The cocone W ⇒ Cat(E, result) of an exact localization: component C
/// sends Y to X ↦ L(C, X, Y), coherence cells are L of the classes (f, 1, 1).
/// ctx.x() must be loc.result.
PseudoNat canonical_cocone(const UniversalContext& ctx, const LocalizedCat& loc);

/// t followed by h: x → x′, landing in target (built over x′).
PseudoNat postcompose(const UniversalContext& ctx, const PseudoNat& t, const Functor& h,
                      const UniversalContext& target);

}  // namespace wcolim
