#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcolim/universal.hpp"

namespace wcolim {

/// (C, D, X, Y, f) with X in EC, Y in WD, f: C → D.
struct Quintuple {
  ObjId c, d, x, y;
  ArrowId f;
};

/// (h, k, u, v, α): (C, D, X, Y, f) → (A, B, U, V, g) with h: C → A,
/// k: B → D, u: h_!X → U, v: k^*Y → V and α: f ⇒ h·g·k.
struct QuintupleArrow {
  ArrowId h, k, u, v;
  CellId alpha;
};

/// The presentation of E ⊗ W: Δ of the product bifunctor weighted by the
/// hom bifunctor, relabeled by quintuples.
struct TensorPresentation {
  PseudoFunctorPtr e, w;
  TwoCatPtr shape;           // product(k, op_dual(k))
  PseudoFunctorPtr product;  // (C, D) ↦ EC × WD
  PseudoFunctorPtr hom;      // (C, D) ↦ k(C, D)
  ColimitPresentation pres;
  std::vector<Quintuple> objects;     // by Δ object
  std::vector<QuintupleArrow> arrows; // by Δ arrow
  /// Generic 2-cell admissibility agrees with the quintuple conditions
  /// (two triangles and the pasting equality) on every candidate.
  bool relabeling_ok = false;
  std::string relabeling_failure;

  std::string object_label(ObjId o) const;
  std::string arrow_label(ArrowId a) const;
  /// Δ arrow with the given quintuple label between the given objects.
  std::optional<ArrowId> find_arrow(ObjId src, ObjId tgt, const QuintupleArrow& q) const;
};

TensorPresentation build_tensor(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const Budget& budget = {});

/// Both sides of the technical equivalence for a fixed target category a:
/// pseudo-naturals hom ⇒ Cat(E × W, a) against pseudo-naturals W ⇒ Cat(E, a).
struct TechContext {
  PseudoFunctorPtr e, w;
  TwoCatPtr shape;
  PseudoFunctorPtr product, hom;
  CatPtr a;
  HomPseudoFunctor left;   // Cat(E × W, a) on the product shape
  HomPseudoFunctor right;  // Cat(E, a) on k
  std::vector<HomSlice> slices;  // k(C, D) at C * n + D
};

TechContext tech_context(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const CatPtr& a,
                         const Budget& budget = {});

/// Φ(α)_C(Y)(X) = α_{C,C}(1_C)(X, Y).
PseudoNat tech_phi(const TechContext& ctx, const PseudoNat& alpha);
Modification tech_phi_arrow(const TechContext& ctx, const PseudoNatPtr& source, const PseudoNatPtr& target,
                            const Modification& m);
/// Ψ(θ)_{C,D}(f)(X, Y) = θ_D(Y)(f_!X).
PseudoNat tech_psi(const TechContext& ctx, const PseudoNat& theta);
Modification tech_psi_arrow(const TechContext& ctx, const PseudoNatPtr& source, const PseudoNatPtr& target,
                            const Modification& m);
/// The invertible modification α ⇒ Ψ(Φ(α)), component a_{(g, 1_D)} at 1_D.
Modification tech_unit(const TechContext& ctx, const PseudoNatPtr& alpha, const PseudoNatPtr& round_trip);

struct BicolimitReport {
  TheoremReport main;  // main theorem on the tensor presentation
  IsoVerdict verdict = IsoVerdict::fail;
  std::string witness;
  bool phi_psi_identity = false;  // Φ after Ψ is the identity, strictly
  bool unit_invertible = false;
  int tensor_objects = 0;
  int tensor_arrows = 0;
  int hom_side_objects = 0;  // pseudo-naturals hom ⇒ Cat(E × W, a)
  int weight_side_objects = 0;  // pseudo-naturals W ⇒ Cat(E, a)

  bool ok() const { return verdict != IsoVerdict::fail; }
};

BicolimitReport verify_bicolimit(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const CatPtr& a,
                                 const Budget& budget = {});

/// G: p(E ⊗ W) → p(E ⋆ W), (C, D, X, Y, f) ↦ (C, X, f^*Y).
struct ComparisonData {
  TensorPresentation tensor;
  ColimitPresentation pres;
  Functor functor;
  bool bracketing_agrees = false;
  bool well_defined = false;  // constant on classes, 2-cells land on 2-cells
  bool functorial = false;
  bool sigma_preserved = false;
  bool surjective = false;
  std::string witness;

  bool ok() const { return bracketing_agrees && well_defined && functorial && sigma_preserved && surjective; }
};

ComparisonData comparison_functor(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const Budget& budget = {});

struct CounterexampleReport {
  // pseudo side
  int pseudo_p_objects = 0;
  int pseudo_p_arrows = 0;
  std::string pseudo_strategy;
  int pseudo_objects = 0;
  int pseudo_arrows = 0;
  bool pseudo_groupoid = false;
  // bi side
  int tensor_p_objects = 0;
  int tensor_p_arrows = 0;
  int tensor_sigma = 0;
  std::string bi_strategy;
  std::string bi_status;
  int bi_objects = 0;
  int bi_arrows = 0;
  bool bi_groupoid = false;
  std::string xi_label;
  bool xi_in_sigma = false;
  bool xi_invertible_after = false;
  bool xi_identity_after = false;
  bool bi_has_noninvertible_idempotent = false;
  /// non-identity idempotent classes of σ: each is forced to the identity
  std::vector<std::string> sigma_idempotents;
  std::string verdict;  // "not equivalent" | "equivalent" | "undetermined"
};

CounterexampleReport example_idempotent(const Budget& budget = {});

}  // namespace wcolim
