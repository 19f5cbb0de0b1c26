#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wcolim/common.hpp"

namespace wcolim {

/// Finite 1-category with dense ids and a total composition table.
/// compose(f, g) is diagrammatic: "f then g", printed as g∘f.
class FinCat {
 public:
  struct Ends {
    ObjId dom;
    ObjId cod;
  };

  FinCat() = default;

  /// compose_fn is called once for every pair with cod f == dom g.
  static FinCat generate(int num_objects, std::vector<Ends> arrows, std::vector<ArrowId> identities,
                         const std::function<ArrowId(ArrowId, ArrowId)>& compose_fn);

  int num_objects() const { return num_objects_; }
  int num_arrows() const { return static_cast<int>(ends_.size()); }
  ObjId dom(ArrowId f) const { return ends_[f].dom; }
  ObjId cod(ArrowId f) const { return ends_[f].cod; }
  ArrowId identity(ObjId a) const { return identity_[a]; }
  bool is_identity(ArrowId f) const { return identity_[ends_[f].dom] == f; }

  /// f then g. Throws StructureError when not composable.
  ArrowId compose(ArrowId f, ArrowId g) const;
  ArrowId compose(std::initializer_list<ArrowId> path) const;

  /// Arrows out of a, sorted by (cod, id).
  std::span<const ArrowId> out(ObjId a) const { return out_[a]; }
  std::span<const ArrowId> hom(ObjId a, ObjId b) const;

  bool is_iso(ArrowId f) const { return inverse_[f] >= 0; }
  /// Inverse arrow, or -1.
  ArrowId inverse(ArrowId f) const { return inverse_[f]; }
  bool is_groupoid() const;

  void set_object_names(std::vector<std::string> names) { object_names_ = std::move(names); }
  void set_arrow_names(std::vector<std::string> names) { arrow_names_ = std::move(names); }
  std::string object_name(ObjId a) const;
  std::string arrow_name(ArrowId f) const;
  bool has_names() const { return !object_names_.empty() || !arrow_names_.empty(); }

  /// Structural equality of the tables (names ignored).
  bool operator==(const FinCat& other) const;

 private:
  int num_objects_ = 0;
  std::vector<Ends> ends_;
  std::vector<ArrowId> identity_;
  std::vector<std::vector<ArrowId>> out_;
  std::vector<int> pos_in_out_;                 // position of g in out_[dom g]
  std::vector<std::vector<ArrowId>> composite_; // composite_[f][pos_in_out_[g]]
  std::vector<ArrowId> inverse_;
  std::vector<std::string> object_names_;
  std::vector<std::string> arrow_names_;

  void index();
};

using CatPtr = std::shared_ptr<const FinCat>;

inline CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

/// Hand-written categories. Identities are created with their objects and
/// composites involving an identity default to the unit law unless set.
class FinCatBuilder {
 public:
  ObjId object(std::string name = {});
  ArrowId arrow(ObjId dom, ObjId cod, std::string name = {});
  ArrowId identity(ObjId a) const { return identity_.at(a); }
  void compose(ArrowId f, ArrowId g, ArrowId h);
  /// Throws StructureError when a composable pair has no composite.
  FinCat build() const;

 private:
  std::vector<std::string> object_names_;
  std::vector<std::string> arrow_names_;
  std::vector<FinCat::Ends> ends_;
  std::vector<ArrowId> identity_;
  std::unordered_map<long long, ArrowId> table_;
};

ValidationReport validate_category(const FinCat& c);

struct Functor {
  CatPtr source;
  CatPtr target;
  std::vector<ObjId> obj_map;
  std::vector<ArrowId> arr_map;

  ObjId obj(ObjId a) const { return obj_map[a]; }
  ArrowId arr(ArrowId f) const { return arr_map[f]; }
  bool operator==(const Functor& other) const;
};

struct NatTransf {
  Functor source;
  Functor target;
  std::vector<ArrowId> components;

  ArrowId operator[](ObjId a) const { return components[a]; }
  bool operator==(const NatTransf& other) const;
};

bool same_category(const CatPtr& a, const CatPtr& b);

Functor identity_functor(const CatPtr& c);
Functor constant_functor(const CatPtr& c, const CatPtr& x, ObjId value);
/// f then g.
Functor compose_functors(const Functor& f, const Functor& g);
bool is_identity_functor(const Functor& f);

NatTransf identity_nat(const Functor& f);
/// a then b (vertical).
NatTransf vcompose_nat(const NatTransf& a, const NatTransf& b);
/// f then a: components a_{f(X)}.
NatTransf whisker_before(const Functor& f, const NatTransf& a);
/// a then g: components g(a_X).
NatTransf whisker_after(const NatTransf& a, const Functor& g);
bool is_invertible(const NatTransf& a);
bool is_identity_nat(const NatTransf& a);
NatTransf inverse_nat(const NatTransf& a);

ValidationReport validate_functor(const Functor& f);
ValidationReport validate_nat_transf(const NatTransf& a);

/// Optional restriction of the arrow images allowed during a functor search.
using ArrowFilter = std::function<bool(ArrowId source_arrow, ArrowId target_arrow)>;

/// All functors c → x, lexicographic in (obj_map, arr_map).
std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& x, const Budget& budget = {},
                                        const ArrowFilter& filter = {});
/// All natural transformations f ⇒ g, lexicographic in components.
std::vector<NatTransf> enumerate_nat_transfs(const Functor& f, const Functor& g, const Budget& budget = {},
                                             bool invertible_only = false);

/// Functor category with decoding back to functors and transformations.
class FunctorCategory {
 public:
  static std::shared_ptr<const FunctorCategory> build(const CatPtr& c, const CatPtr& x,
                                                      const Budget& budget = {});
  /// Full subcategory on the given functors (all transformations between them).
  static std::shared_ptr<const FunctorCategory> build_full(const CatPtr& c, const CatPtr& x,
                                                           std::vector<Functor> objects,
                                                           const Budget& budget = {});

  const CatPtr& cat() const { return cat_; }
  const CatPtr& source() const { return source_; }
  const CatPtr& target() const { return target_; }
  const Functor& functor(ObjId a) const { return functors_[a]; }
  const std::vector<ArrowId>& components(ArrowId t) const { return components_[t]; }
  NatTransf nat_transf(ArrowId t) const;

  std::optional<ObjId> find(const Functor& f) const;
  std::optional<ArrowId> find(ObjId s, ObjId t, const std::vector<ArrowId>& components) const;
  /// As find, but throws InvariantError when absent.
  ObjId index_of(const Functor& f) const;
  ArrowId index_of(const NatTransf& a) const;

 private:
  CatPtr source_;
  CatPtr target_;
  CatPtr cat_;
  std::vector<Functor> functors_;
  std::vector<std::vector<ArrowId>> components_;
  TupleIndex functor_index_;
  TupleIndex arrow_index_;
};

using FunctorCatPtr = std::shared_ptr<const FunctorCategory>;

/// Objects enumerate_functors, arrows enumerate_nat_transfs, composition vertical.
FinCat functor_category(const CatPtr& c, const CatPtr& x, const Budget& budget = {});

FinCat product(const FinCat& c, const FinCat& d);
/// Same ids, arrows reversed.
FinCat opposite(const FinCat& c);
/// Decoding helpers for product(c, d).
inline ObjId product_object(const FinCat& d, ObjId a, ObjId b) { return a * d.num_objects() + b; }
inline ArrowId product_arrow(const FinCat& d, ArrowId f, ArrowId g) { return f * d.num_arrows() + g; }

struct FilteredReport {
  bool filtered = false;
  int failed_condition = 0;  // first failing condition: 1, 2 or 3; 0 when filtered
  bool nonempty = false;
  std::optional<std::pair<ObjId, ObjId>> no_span;          // condition 2 witness
  std::optional<std::pair<ArrowId, ArrowId>> no_equalizer;  // condition 3 witness
};

/// Nonempty; every pair X, Y has a span X ← Z → Y; every parallel pair f, g
/// has h with h then f = h then g.
FilteredReport is_filtered(const FinCat& c);

enum class IsoVerdict { iso, equiv_with_unit, fail };

struct CatIsoReport {
  Functor forward;
  Functor backward;
  IsoVerdict verdict = IsoVerdict::fail;
  std::string witness;
};

std::string to_string(IsoVerdict v);

/// iso iff bwd∘fwd and fwd∘bwd are literally identities.
CatIsoReport check_isomorphism(const Functor& fwd, const Functor& bwd);
/// unit: id ⇒ fwd then bwd; counit: bwd then fwd ⇒ id.
CatIsoReport check_equivalence(const Functor& fwd, const Functor& bwd, const NatTransf& unit,
                               const NatTransf& counit);

/// Equivalent to the terminal category: nonempty with every hom-set a singleton.
bool equivalent_to_terminal(const FinCat& c);

/// g∘f style rendering of a path given diagrammatically.
std::string render_composite(const FinCat& c, const std::vector<ArrowId>& path);

}  // namespace wcolim
