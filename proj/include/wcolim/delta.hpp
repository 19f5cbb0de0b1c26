#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcolim/psfun.hpp"

namespace wcolim {

struct DeltaObject {
  ObjId c;  // object of the shape
  ObjId x;  // object of E(c)
  ObjId y;  // object of W(c)
};

/// (f, u, v): (C, X, Y) → (D, A, B) with u: f_!X → A in ED and v: Y → f^*B in WC.
struct DeltaArrow {
  ObjId src;
  ObjId tgt;
  ArrowId f;
  ArrowId u;
  ArrowId v;
};

/// The diagonal 2-category of a covariant E and contravariant W on one shape.
/// Objects ordered by (C, X, Y), arrows by (source, f, u, B, v).
/// 2-cells are shape 2-cells α: f ⇒ g between (f, u, v) and (g, x, y) with
/// (α_!)_X then x = u and v then (α^*)_B = y.
struct DeltaTwoCat {
  PseudoFunctorPtr e;
  PseudoFunctorPtr w;
  TwoCatPtr carrier;
  std::vector<DeltaObject> objects;
  std::vector<DeltaArrow> arrows;
  std::vector<CellId> cell_label;  // Δ 2-cell -> shape 2-cell
  TupleIndex object_index;         // [C, X, Y]
  TupleIndex arrow_index;          // [src, tgt, f, u, v]

  std::optional<ObjId> find_object(ObjId c, ObjId x, ObjId y) const;
  std::optional<ArrowId> find_arrow(ObjId src, ObjId tgt, ArrowId f, ArrowId u, ArrowId v) const;
  /// As find_*, throwing InvariantError when absent.
  ObjId object(ObjId c, ObjId x, ObjId y) const;
  ArrowId arrow(ObjId src, ObjId tgt, ArrowId f, ArrowId u, ArrowId v) const;
  /// u and v both invertible.
  bool is_cartesian(ArrowId a) const;
  std::string arrow_label(ArrowId a) const;
};

using DeltaPtr = std::shared_ptr<const DeltaTwoCat>;

DeltaTwoCat build_delta(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const Budget& budget = {});

/// p = π₀Δ(E, W) with the classes of cartesian arrows marked.
struct ColimitPresentation {
  CatPtr p;
  std::vector<char> sigma;                    // by arrow of p
  std::vector<std::array<int, 3>> object_label;  // (C, X, Y); Y = -1 from the oracle
  std::vector<std::array<int, 3>> arrow_label;   // least representative (f, u, v); v = -1 from the oracle
  DeltaPtr delta;                             // null for the oracle
  std::shared_ptr<const Pi0Result> classes;   // null for the oracle
  bool sigma_has_identities = true;
  /// Composites of cartesian arrows are cartesian (checked on Δ).
  bool cartesian_closed = true;
  std::vector<std::string> provenance;

  bool in_sigma(ArrowId a) const { return sigma[a] != 0; }
  int sigma_count() const;
  /// The p-class of a Δ arrow.
  ArrowId class_of(ArrowId delta_arrow) const { return classes->class_of[delta_arrow]; }
};

ColimitPresentation pscolim_presentation(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w,
                                         const Budget& budget = {});

/// Elements construction for E on a locally discrete shape: objects (C, X),
/// arrows (f, u: f_!X → Y), cartesian iff u invertible. Separate code path
/// from build_delta. Throws StructureError on a shape with non-identity 2-cells.
ColimitPresentation conical_oracle(const PseudoFunctor& e);

/// First difference in p, σ or the (C, X) / (f, u) labels, or nullopt.
std::optional<std::string> compare_with_oracle(const ColimitPresentation& pres, const ColimitPresentation& oracle);

}  // namespace wcolim
