#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "wcolim/twocat.hpp"

namespace wcolim {

enum class Variance { covariant, contravariant };

/// Normalized pseudo-functor into finite categories.
///
/// Covariant: transition f: A → B is f_!: value(A) → value(B) and
/// compositor(f, g) is g_! f_! ⇒ (f·g)_!, i.e. its source functor is
/// "f_! then g_!". Contravariant: f^*: value(B) → value(A) and
/// compositor(f, g) is f^* g^* ⇒ (f·g)^*, source functor "g^* then f^*".
/// 2-cells keep their direction under both variances.
struct PseudoFunctor {
  Variance variance = Variance::covariant;
  TwoCatPtr shape;
  std::vector<CatPtr> values;
  std::vector<Functor> transitions;
  std::vector<NatTransf> cells;
  /// Total over composable pairs (f then g), identity legs included.
  std::map<std::pair<ArrowId, ArrowId>, NatTransf> compositors;

  const CatPtr& value(ObjId a) const { return values[a]; }
  const Functor& transition(ArrowId f) const { return transitions[f]; }
  const NatTransf& cell(CellId a) const { return cells[a]; }
  const NatTransf& compositor(ArrowId f, ArrowId g) const;
  bool is_strict() const;
};

using PseudoFunctorPtr = std::shared_ptr<const PseudoFunctor>;

inline PseudoFunctorPtr share(PseudoFunctor f) { return std::make_shared<const PseudoFunctor>(std::move(f)); }

/// Source functor of compositor(f, g) as the variance dictates.
Functor compositor_source(const PseudoFunctor& e, ArrowId f, ArrowId g);

/// Fills every compositor with the identity ("strict shorthand"). The
/// transitions must then compose strictly or validation reports typing.
PseudoFunctor strict_pseudo_functor(Variance variance, TwoCatPtr shape, std::vector<CatPtr> values,
                                    std::vector<Functor> transitions, std::vector<NatTransf> cells);
PseudoFunctor constant_pseudo_functor(Variance variance, TwoCatPtr shape, const CatPtr& value);

/// The same data read as a covariant pseudo-functor. For a contravariant
/// input the shape becomes op_shape (which must be op_dual(shape)).
PseudoFunctor covariant_view(const PseudoFunctor& e, const TwoCatPtr& op_shape);

struct PseudoNat {
  PseudoFunctorPtr source;
  PseudoFunctorPtr target;
  /// component A: source.value(A) → target.value(A)
  std::vector<Functor> components;
  /// For f: A → B (covariant reading) coherence f: "F f then α_B" ⇒
  /// "α_A then G f". Contravariant f: C → D: "f^* then α_C" ⇒ "α_D then f^*".
  std::vector<NatTransf> coherence;

  bool is_two_natural() const;
};

using PseudoNatPtr = std::shared_ptr<const PseudoNat>;

struct Modification {
  PseudoNatPtr source;
  PseudoNatPtr target;
  std::vector<NatTransf> components;  // component A: source.components[A] ⇒ target.components[A]
};

ValidationReport validate_pseudo_functor(const PseudoFunctor& e);
ValidationReport validate_pseudo_natural(const PseudoNat& t);
ValidationReport validate_modification(const Modification& m);

PseudoNat identity_pseudo_natural(const PseudoFunctorPtr& e);
Modification identity_modification(const PseudoNatPtr& t);
/// a then b.
Modification compose_modifications(const Modification& a, const Modification& b);

/// 𝔠𝔞𝔱(E, 𝒳): contravariant, value at C the functor category Cat(EC, 𝒳).
struct HomPseudoFunctor {
  PseudoFunctorPtr functor;
  PseudoFunctorPtr base;
  CatPtr x;
  std::vector<FunctorCatPtr> fibers;
};

HomPseudoFunctor hom_pseudo_functor(const PseudoFunctorPtr& e, const CatPtr& x, const Budget& budget = {});

/// 𝐲C = k(−, C), strict and contravariant. value(B) = hom_slice(k, B, C).
PseudoFunctor representable(const TwoCatPtr& k, ObjId c);

/// Shape of the bifunctors: product(k, op_dual(k)).
TwoCatPtr bifunctor_shape(const TwoCat& k);
/// Covariant on bifunctor_shape: (C, D) ↦ EC × WD.
PseudoFunctor product_bifunctor(const PseudoFunctor& e, const PseudoFunctor& w, const TwoCatPtr& shape);
/// Contravariant on bifunctor_shape: (C, D) ↦ k(C, D), (h, k) acting by g ↦ h·g·k.
PseudoFunctor hom_bifunctor(const TwoCat& k, const TwoCatPtr& shape);

/// Complete deterministic list of pseudo-natural transformations e ⇒ h.
std::vector<PseudoNat> enumerate_pseudo_naturals(const PseudoFunctorPtr& e, const PseudoFunctorPtr& h,
                                                 const Budget& budget = {});
std::vector<Modification> enumerate_modifications(const PseudoNatPtr& s, const PseudoNatPtr& t,
                                                  const Budget& budget = {});

/// Pseudo-naturals e ⇒ h and modifications, composed componentwise.
struct PseudoNatCategory {
  CatPtr cat;
  std::vector<PseudoNatPtr> objects;
  std::vector<Modification> arrows;

  std::optional<ObjId> find(const PseudoNat& t) const;
  std::optional<ArrowId> find(const Modification& m) const;

  TupleIndex object_index;
  TupleIndex arrow_index;
};

PseudoNatCategory pseudo_natural_category(const PseudoFunctorPtr& e, const PseudoFunctorPtr& h,
                                          const Budget& budget = {});

std::vector<int> pseudo_natural_key(const PseudoNat& t);

}  // namespace wcolim
