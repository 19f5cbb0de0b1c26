#pragma once

#include <string>

#include "wcolim/localize.hpp"

namespace wcolim {

/// E weighted by the representable at C against E(C).
/// F: E(C) → p sends X to (C, X, 1_C); G: p → E(C) sends (B, X, f) to f_!X.
struct EquivalenceReport {
  IsoVerdict verdict = IsoVerdict::fail;
  std::string witness;
  ColimitPresentation pres;
  LocalizedCat loc;
  Functor f;  // E(C) → p
  Functor g;  // p → E(C)
  bool gf_identity = false;
  bool g_well_defined = false;
  bool g_inverts_sigma = false;
  /// every component (f, 1, 1): (B, X, f) → (C, f_!X, 1_C) is cartesian and its class is in σ
  bool unit_cartesian = false;
  bool unit_natural = false;

  bool ok() const { return verdict != IsoVerdict::fail; }
};

EquivalenceReport yoneda_equivalence(const PseudoFunctorPtr& e, ObjId c, const Budget& budget = {});

}  // namespace wcolim
