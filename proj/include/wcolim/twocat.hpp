#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wcolim/fincat.hpp"

namespace wcolim {

/// Strict finite 2-category. The underlying 1-category carries the
/// 1-cells; 2-cells are parallel pairs with explicit vertical and horizontal
/// composition tables (whiskers are horizontal composites with identities).
class TwoCat {
 public:
  struct CellEnds {
    ArrowId src;
    ArrowId tgt;
  };

  TwoCat() = default;

  /// vfn(a, b) is called for every a, b with tgt a == src b (a then b);
  /// hfn(a, b) for every a, b with cod(src a) == dom(src b).
  static TwoCat generate(FinCat underlying, std::vector<CellEnds> cells, std::vector<CellId> id2,
                         const std::function<CellId(CellId, CellId)>& vfn,
                         const std::function<CellId(CellId, CellId)>& hfn);

  const FinCat& one() const { return *one_; }
  const CatPtr& one_ptr() const { return one_; }
  int num_objects() const { return one_->num_objects(); }
  int num_one_cells() const { return one_->num_arrows(); }
  int num_two_cells() const { return static_cast<int>(cells_.size()); }
  ObjId dom(ArrowId f) const { return one_->dom(f); }
  ObjId cod(ArrowId f) const { return one_->cod(f); }
  ArrowId id1(ObjId a) const { return one_->identity(a); }
  ArrowId hcompose1(ArrowId f, ArrowId g) const { return one_->compose(f, g); }

  CellId id2(ArrowId f) const { return id2_[f]; }
  ArrowId src(CellId a) const { return cells_[a].src; }
  ArrowId tgt(CellId a) const { return cells_[a].tgt; }
  bool is_identity_cell(CellId a) const { return id2_[cells_[a].src] == a; }

  /// a then b. Throws StructureError when tgt a != src b.
  CellId vcompose(CellId a, CellId b) const;
  /// a on A→B, b on B→C. Throws StructureError when not composable.
  CellId hcompose(CellId a, CellId b) const;

  /// 2-cells with the given source 1-cell, sorted by (tgt, id).
  std::span<const CellId> cells_from(ArrowId f) const { return from_[f]; }
  std::span<const CellId> cells_between(ArrowId f, ArrowId g) const;
  /// 2-cells whose 1-cells start at object a.
  std::span<const CellId> cells_out_of(ObjId a) const { return out_of_obj_[a]; }

  bool is_locally_discrete() const;

  void set_cell_names(std::vector<std::string> names) { cell_names_ = std::move(names); }
  std::string cell_name(CellId a) const;
  std::string object_name(ObjId a) const { return one_->object_name(a); }
  std::string one_cell_name(ArrowId f) const { return one_->arrow_name(f); }

  bool operator==(const TwoCat& other) const;

 private:
  CatPtr one_;
  std::vector<CellEnds> cells_;
  std::vector<CellId> id2_;
  std::vector<std::vector<CellId>> from_;
  std::vector<int> pos_in_from_;
  std::vector<std::vector<CellId>> out_of_obj_;
  std::vector<int> pos_in_out_of_obj_;
  std::vector<std::vector<CellId>> vcomp_;  // vcomp_[a][pos_in_from_[b]]
  std::vector<std::vector<CellId>> hcomp_;  // hcomp_[a][pos_in_out_of_obj_[b]]
  std::vector<std::string> cell_names_;
};

using TwoCatPtr = std::shared_ptr<const TwoCat>;

inline TwoCatPtr share(TwoCat k) { return std::make_shared<const TwoCat>(std::move(k)); }

/// Hand-written 2-categories. Identity 2-cells are created for every 1-cell;
/// composites with identities default to the unit laws (a vertical unit, or
/// the identity 2-cell of an identity 1-cell horizontally) and
/// id2(f)∗id2(g) = id2(f·g). Every other composite must be given.
class TwoCatBuilder {
 public:
  explicit TwoCatBuilder(FinCat underlying);
  CellId cell(ArrowId src, ArrowId tgt, std::string name = {});
  CellId id2(ArrowId f) const { return id2_.at(f); }
  void vcompose(CellId a, CellId b, CellId c);
  void hcompose(CellId a, CellId b, CellId c);
  TwoCat build() const;

 private:
  FinCat one_;
  std::vector<TwoCat::CellEnds> cells_;
  std::vector<CellId> id2_;
  std::vector<std::string> names_;
  std::unordered_map<long long, CellId> v_, h_;
};

ValidationReport validate_two_category(const TwoCat& k);

/// One hom-slice k(a, b) as a 1-category, with id translations.
struct HomSlice {
  CatPtr cat;
  std::vector<ArrowId> one_cell;    // local object -> global 1-cell
  std::vector<CellId> cell;         // local arrow -> global 2-cell
  std::vector<int> local_object;    // global 1-cell -> local object or -1
  std::vector<int> local_arrow;     // global 2-cell -> local arrow or -1
};

HomSlice hom_slice(const TwoCat& k, ObjId a, ObjId b);

struct Pi0Result {
  CatPtr quotient;
  std::vector<ArrowId> class_of;              // 1-cell -> class
  std::vector<ArrowId> section;               // class -> least representative
  std::vector<std::vector<ArrowId>> members;  // class -> 1-cells, ascending
};

/// Local connected components. Classes are numbered by least member.
Pi0Result pi0(const TwoCat& k);

TwoCat op_dual(const TwoCat& k);
TwoCat co_dual(const TwoCat& k);
/// Objects (a, b) at a * |l| + b, 1-cells and 2-cells likewise.
TwoCat product(const TwoCat& k, const TwoCat& l);
TwoCat locally_discrete(const FinCat& c);

}  // namespace wcolim
