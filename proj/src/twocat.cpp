#include "wcolim/twocat.hpp"

#include <algorithm>
#include <numeric>

#include <boost/pending/disjoint_sets.hpp>

namespace wcolim {

TwoCat TwoCat::generate(FinCat underlying, std::vector<CellEnds> cells, std::vector<CellId> id2,
                        const std::function<CellId(CellId, CellId)>& vfn,
                        const std::function<CellId(CellId, CellId)>& hfn) {
  TwoCat k;
  k.one_ = share(std::move(underlying));
  k.cells_ = std::move(cells);
  k.id2_ = std::move(id2);
  const FinCat& one = *k.one_;
  const int n2 = k.num_two_cells();
  if (static_cast<int>(k.id2_.size()) != one.num_arrows()) throw StructureError("id2 list has wrong length");
  for (CellId a = 0; a < n2; ++a) {
    const auto [s, t] = k.cells_[a];
    if (s < 0 || s >= one.num_arrows() || t < 0 || t >= one.num_arrows())
      throw StructureError("2-cell " + std::to_string(a) + " has out-of-range 1-cell");
    if (one.dom(s) != one.dom(t) || one.cod(s) != one.cod(t))
      throw StructureError("2-cell " + std::to_string(a) + " joins non-parallel 1-cells");
  }
  for (CellId i : k.id2_)
    if (i < 0 || i >= n2) throw StructureError("identity 2-cell out of range");

  k.from_.assign(one.num_arrows(), {});
  k.out_of_obj_.assign(one.num_objects(), {});
  for (CellId a = 0; a < n2; ++a) {
    k.from_[k.cells_[a].src].push_back(a);
    k.out_of_obj_[one.dom(k.cells_[a].src)].push_back(a);
  }
  k.pos_in_from_.assign(n2, 0);
  for (auto& list : k.from_) {
    std::stable_sort(list.begin(), list.end(), [&](CellId a, CellId b) { return k.cells_[a].tgt < k.cells_[b].tgt; });
    for (std::size_t j = 0; j < list.size(); ++j) k.pos_in_from_[list[j]] = static_cast<int>(j);
  }
  k.pos_in_out_of_obj_.assign(n2, 0);
  for (auto& list : k.out_of_obj_)
    for (std::size_t j = 0; j < list.size(); ++j) k.pos_in_out_of_obj_[list[j]] = static_cast<int>(j);

  k.vcomp_.resize(n2);
  k.hcomp_.resize(n2);
  for (CellId a = 0; a < n2; ++a) {
    const auto& next = k.from_[k.cells_[a].tgt];
    k.vcomp_[a].resize(next.size());
    for (std::size_t j = 0; j < next.size(); ++j) {
      const CellId c = vfn(a, next[j]);
      if (c < 0 || c >= n2) throw StructureError("vertical composite missing for 2-cells " + std::to_string(a) + ", " + std::to_string(next[j]));
      k.vcomp_[a][j] = c;
    }
    const auto& right = k.out_of_obj_[one.cod(k.cells_[a].src)];
    k.hcomp_[a].resize(right.size());
    for (std::size_t j = 0; j < right.size(); ++j) {
      const CellId c = hfn(a, right[j]);
      if (c < 0 || c >= n2) throw StructureError("horizontal composite missing for 2-cells " + std::to_string(a) + ", " + std::to_string(right[j]));
      k.hcomp_[a][j] = c;
    }
  }
  return k;
}

CellId TwoCat::vcompose(CellId a, CellId b) const {
  if (cells_[a].tgt != cells_[b].src) throw StructureError("2-cells " + cell_name(a) + ", " + cell_name(b) + " not vertically composable");
  return vcomp_[a][pos_in_from_[b]];
}

CellId TwoCat::hcompose(CellId a, CellId b) const {
  if (one_->cod(cells_[a].src) != one_->dom(cells_[b].src))
    throw StructureError("2-cells " + cell_name(a) + ", " + cell_name(b) + " not horizontally composable");
  return hcomp_[a][pos_in_out_of_obj_[b]];
}

std::span<const CellId> TwoCat::cells_between(ArrowId f, ArrowId g) const {
  const auto& list = from_[f];
  auto lo = std::lower_bound(list.begin(), list.end(), g, [&](CellId a, ArrowId key) { return cells_[a].tgt < key; });
  auto hi = std::upper_bound(lo, list.end(), g, [&](ArrowId key, CellId a) { return key < cells_[a].tgt; });
  return {list.data() + (lo - list.begin()), static_cast<std::size_t>(hi - lo)};
}

bool TwoCat::is_locally_discrete() const {
  for (CellId a = 0; a < num_two_cells(); ++a)
    if (!is_identity_cell(a)) return false;
  return true;
}

std::string TwoCat::cell_name(CellId a) const {
  if (a >= 0 && a < static_cast<int>(cell_names_.size()) && !cell_names_[a].empty()) return cell_names_[a];
  if (a >= 0 && a < num_two_cells() && is_identity_cell(a)) return "1_" + one_cell_name(cells_[a].src);
  return "c" + std::to_string(a);
}

bool TwoCat::operator==(const TwoCat& o) const {
  if (!(*one_ == *o.one_) || id2_ != o.id2_ || cells_.size() != o.cells_.size()) return false;
  for (std::size_t a = 0; a < cells_.size(); ++a)
    if (cells_[a].src != o.cells_[a].src || cells_[a].tgt != o.cells_[a].tgt) return false;
  return vcomp_ == o.vcomp_ && hcomp_ == o.hcomp_ && from_ == o.from_ && out_of_obj_ == o.out_of_obj_;
}

// ---------------------------------------------------------------- builder

namespace {
long long pair_key(int a, int b) { return static_cast<long long>(a) * 1'000'003LL + b; }
}  // namespace

TwoCatBuilder::TwoCatBuilder(FinCat underlying) : one_(std::move(underlying)) {
  for (ArrowId f = 0; f < one_.num_arrows(); ++f) {
    id2_.push_back(static_cast<CellId>(cells_.size()));
    cells_.push_back({f, f});
    names_.push_back("1_" + one_.arrow_name(f));
  }
}

CellId TwoCatBuilder::cell(ArrowId src, ArrowId tgt, std::string name) {
  if (src < 0 || src >= one_.num_arrows() || tgt < 0 || tgt >= one_.num_arrows())
    throw StructureError("2-cell endpoint out of range");
  cells_.push_back({src, tgt});
  names_.push_back(std::move(name));
  return static_cast<CellId>(cells_.size()) - 1;
}

void TwoCatBuilder::vcompose(CellId a, CellId b, CellId c) { v_[pair_key(a, b)] = c; }
void TwoCatBuilder::hcompose(CellId a, CellId b, CellId c) { h_[pair_key(a, b)] = c; }

TwoCat TwoCatBuilder::build() const {
  auto is_id = [&](CellId a) { return id2_[cells_[a].src] == a; };
  auto is_unit = [&](CellId a) { return is_id(a) && one_.is_identity(cells_[a].src); };
  auto name = [&](CellId a) { return names_[a].empty() ? std::to_string(a) : names_[a]; };
  TwoCat k = TwoCat::generate(
      one_, cells_, id2_,
      [&](CellId a, CellId b) {
        if (auto it = v_.find(pair_key(a, b)); it != v_.end()) return it->second;
        if (is_id(a)) return b;
        if (is_id(b)) return a;
        throw StructureError("no vertical composite given for " + name(a) + " then " + name(b));
      },
      [&](CellId a, CellId b) {
        if (auto it = h_.find(pair_key(a, b)); it != h_.end()) return it->second;
        if (is_unit(a)) return b;
        if (is_unit(b)) return a;
        if (is_id(a) && is_id(b)) return id2_[one_.compose(cells_[a].src, cells_[b].src)];
        throw StructureError("no horizontal composite given for " + name(a) + " and " + name(b));
      });
  k.set_cell_names(names_);
  return k;
}

// ---------------------------------------------------------------- validation

ValidationReport validate_two_category(const TwoCat& k) {
  ValidationReport r;
  const FinCat& one = k.one();
  r.append(validate_category(one), "1-cells: ");
  const int n2 = k.num_two_cells();
  for (ArrowId f = 0; f < one.num_arrows(); ++f) {
    const CellId i = k.id2(f);
    if (k.src(i) != f || k.tgt(i) != f) r.add("identity-cell-typing", "id2 of " + k.one_cell_name(f), {f});
  }
  auto v = [&](CellId a, CellId b) { return k.tgt(a) == k.src(b) ? k.vcompose(a, b) : -1; };
  auto h = [&](CellId a, CellId b) {
    if (a < 0 || b < 0) return -1;
    return one.cod(k.src(a)) == one.dom(k.src(b)) ? k.hcompose(a, b) : -1;
  };
  auto hc1 = [&](ArrowId f, ArrowId g) { return one.cod(f) == one.dom(g) ? one.compose(f, g) : -1; };

  for (CellId a = 0; a < n2; ++a)
    for (CellId b : k.cells_from(k.tgt(a))) {
      const CellId c = k.vcompose(a, b);
      if (k.src(c) != k.src(a) || k.tgt(c) != k.tgt(b))
        r.add("vertical-typing", k.cell_name(a) + " then " + k.cell_name(b), {a, b, c});
    }
  for (CellId a = 0; a < n2; ++a) {
    if (v(k.id2(k.src(a)), a) != a) r.add("vertical-unit", "1 then " + k.cell_name(a), {a});
    if (v(a, k.id2(k.tgt(a))) != a) r.add("vertical-unit", k.cell_name(a) + " then 1", {a});
  }
  for (CellId a = 0; a < n2; ++a)
    for (CellId b : k.cells_from(k.tgt(a)))
      for (CellId c : k.cells_from(k.tgt(b))) {
        const CellId ab = k.vcompose(a, b);
        const CellId bc = k.vcompose(b, c);
        const CellId l = v(ab, c);
        const CellId rr = v(a, bc);
        if (l < 0 || rr < 0 || l != rr)
          r.add("vertical-associativity", "(" + k.cell_name(a) + ", " + k.cell_name(b) + ", " + k.cell_name(c) + ")",
                {a, b, c});
      }
  for (CellId a = 0; a < n2; ++a)
    for (CellId b : k.cells_out_of(one.cod(k.src(a)))) {
      const CellId c = k.hcompose(a, b);
      if (k.src(c) != hc1(k.src(a), k.src(b)) || k.tgt(c) != hc1(k.tgt(a), k.tgt(b)))
        r.add("horizontal-typing", k.cell_name(a) + " * " + k.cell_name(b), {a, b, c});
    }
  for (CellId a = 0; a < n2; ++a) {
    const ObjId d = one.dom(k.src(a));
    const ObjId e = one.cod(k.src(a));
    if (h(k.id2(k.id1(d)), a) != a) r.add("horizontal-unit", "1 * " + k.cell_name(a), {a});
    if (h(a, k.id2(k.id1(e))) != a) r.add("horizontal-unit", k.cell_name(a) + " * 1", {a});
  }
  for (ArrowId f = 0; f < one.num_arrows(); ++f)
    for (ArrowId g : one.out(one.cod(f))) {
      const ArrowId fg = one.compose(f, g);
      if (fg >= 0 && h(k.id2(f), k.id2(g)) != k.id2(fg))
        r.add("horizontal-identity", "id2 of " + k.one_cell_name(f) + " * id2 of " + k.one_cell_name(g), {f, g});
    }
  for (CellId a = 0; a < n2; ++a)
    for (CellId b : k.cells_out_of(one.cod(k.src(a))))
      for (CellId c : k.cells_out_of(one.cod(k.src(b)))) {
        const CellId l = h(h(a, b), c);
        const CellId rr = h(a, h(b, c));
        if (l < 0 || rr < 0 || l != rr)
          r.add("horizontal-associativity",
                "(" + k.cell_name(a) + ", " + k.cell_name(b) + ", " + k.cell_name(c) + ")", {a, b, c});
      }
  // interchange: (a then a') * (b then b') = (a * b) then (a' * b')
  for (CellId a = 0; a < n2; ++a)
    for (CellId a2 : k.cells_from(k.tgt(a)))
      for (CellId b : k.cells_out_of(one.cod(k.src(a))))
        for (CellId b2 : k.cells_from(k.tgt(b))) {
          const CellId l = h(k.vcompose(a, a2), k.vcompose(b, b2));
          const CellId ab = h(a, b);
          const CellId ab2 = h(a2, b2);
          const CellId rr = (ab >= 0 && ab2 >= 0) ? v(ab, ab2) : -1;
          if (l < 0 || rr < 0 || l != rr)
            r.add("interchange",
                  "(" + k.cell_name(a) + ", " + k.cell_name(a2) + ", " + k.cell_name(b) + ", " + k.cell_name(b2) + ")",
                  {a, a2, b, b2});
        }
  return r;
}

// ---------------------------------------------------------------- slices and π0

HomSlice hom_slice(const TwoCat& k, ObjId a, ObjId b) {
  HomSlice s;
  s.local_object.assign(k.num_one_cells(), -1);
  s.local_arrow.assign(k.num_two_cells(), -1);
  for (ArrowId f : k.one().hom(a, b)) {
    s.local_object[f] = static_cast<int>(s.one_cell.size());
    s.one_cell.push_back(f);
  }
  std::vector<FinCat::Ends> ends;
  for (ArrowId f : s.one_cell)
    for (CellId c : k.cells_from(f)) {
      s.local_arrow[c] = static_cast<int>(s.cell.size());
      s.cell.push_back(c);
      ends.push_back({s.local_object[k.src(c)], s.local_object[k.tgt(c)]});
    }
  std::vector<ArrowId> ids;
  for (ArrowId f : s.one_cell) ids.push_back(s.local_arrow[k.id2(f)]);
  FinCat c = FinCat::generate(static_cast<int>(s.one_cell.size()), std::move(ends), std::move(ids),
                              [&](ArrowId x, ArrowId y) { return s.local_arrow[k.vcompose(s.cell[x], s.cell[y])]; });
  std::vector<std::string> on, an;
  for (ArrowId f : s.one_cell) on.push_back(k.one_cell_name(f));
  for (CellId x : s.cell) an.push_back(k.cell_name(x));
  c.set_object_names(std::move(on));
  c.set_arrow_names(std::move(an));
  s.cat = share(std::move(c));
  return s;
}

Pi0Result pi0(const TwoCat& k) {
  const FinCat& one = k.one();
  const int n = one.num_arrows();
  std::vector<int> rank(n), parent(n);
  boost::disjoint_sets<int*, int*> sets(rank.data(), parent.data());
  for (int i = 0; i < n; ++i) sets.make_set(i);
  for (CellId a = 0; a < k.num_two_cells(); ++a) sets.union_set(k.src(a), k.tgt(a));

  Pi0Result r;
  r.class_of.assign(n, -1);
  std::vector<int> class_of_root(n, -1);
  for (ArrowId f = 0; f < n; ++f) {
    const int root = sets.find_set(f);
    if (class_of_root[root] < 0) {
      class_of_root[root] = static_cast<int>(r.section.size());
      r.section.push_back(f);
      r.members.emplace_back();
    }
    r.class_of[f] = class_of_root[root];
    r.members[r.class_of[f]].push_back(f);
  }
  std::vector<FinCat::Ends> ends;
  for (ArrowId f : r.section) ends.push_back({one.dom(f), one.cod(f)});
  std::vector<ArrowId> ids;
  for (ObjId a = 0; a < one.num_objects(); ++a) ids.push_back(r.class_of[one.identity(a)]);
  FinCat q = FinCat::generate(one.num_objects(), std::move(ends), std::move(ids), [&](ArrowId x, ArrowId y) {
    return r.class_of[one.compose(r.section[x], r.section[y])];
  });
  for (ArrowId f = 0; f < n; ++f)
    for (ArrowId g : one.out(one.cod(f)))
      if (r.class_of[one.compose(f, g)] != q.compose(r.class_of[f], r.class_of[g]))
        throw InvariantError("pi0: composition depends on representatives at (" + one.arrow_name(f) + ", " +
                             one.arrow_name(g) + ")");
  std::vector<std::string> on, an;
  for (ObjId a = 0; a < one.num_objects(); ++a) on.push_back(one.object_name(a));
  for (ArrowId f : r.section) an.push_back("[" + one.arrow_name(f) + "]");
  q.set_object_names(std::move(on));
  q.set_arrow_names(std::move(an));
  r.quotient = share(std::move(q));
  return r;
}

// ---------------------------------------------------------------- duals and products

namespace {
std::vector<TwoCat::CellEnds> cell_ends(const TwoCat& k, bool swap) {
  std::vector<TwoCat::CellEnds> e;
  for (CellId a = 0; a < k.num_two_cells(); ++a)
    e.push_back(swap ? TwoCat::CellEnds{k.tgt(a), k.src(a)} : TwoCat::CellEnds{k.src(a), k.tgt(a)});
  return e;
}
std::vector<CellId> id2_list(const TwoCat& k) {
  std::vector<CellId> ids;
  for (ArrowId f = 0; f < k.num_one_cells(); ++f) ids.push_back(k.id2(f));
  return ids;
}
std::vector<std::string> cell_names(const TwoCat& k) {
  std::vector<std::string> names;
  for (CellId a = 0; a < k.num_two_cells(); ++a) names.push_back(k.cell_name(a));
  return names;
}
}  // namespace

TwoCat op_dual(const TwoCat& k) {
  TwoCat o = TwoCat::generate(
      opposite(k.one()), cell_ends(k, false), id2_list(k), [&](CellId a, CellId b) { return k.vcompose(a, b); },
      [&](CellId a, CellId b) { return k.hcompose(b, a); });
  o.set_cell_names(cell_names(k));
  return o;
}

TwoCat co_dual(const TwoCat& k) {
  TwoCat o = TwoCat::generate(
      k.one(), cell_ends(k, true), id2_list(k), [&](CellId a, CellId b) { return k.vcompose(b, a); },
      [&](CellId a, CellId b) { return k.hcompose(a, b); });
  o.set_cell_names(cell_names(k));
  return o;
}

TwoCat product(const TwoCat& k, const TwoCat& l) {
  const FinCat& lo = l.one();
  const int m = l.num_two_cells();
  std::vector<TwoCat::CellEnds> ends;
  for (CellId a = 0; a < k.num_two_cells(); ++a)
    for (CellId b = 0; b < m; ++b)
      ends.push_back({product_arrow(lo, k.src(a), l.src(b)), product_arrow(lo, k.tgt(a), l.tgt(b))});
  std::vector<CellId> ids;
  for (ArrowId f = 0; f < k.num_one_cells(); ++f)
    for (ArrowId g = 0; g < l.num_one_cells(); ++g) ids.push_back(k.id2(f) * m + l.id2(g));
  TwoCat p = TwoCat::generate(
      product(k.one(), lo), std::move(ends), std::move(ids),
      [&](CellId x, CellId y) { return k.vcompose(x / m, y / m) * m + l.vcompose(x % m, y % m); },
      [&](CellId x, CellId y) { return k.hcompose(x / m, y / m) * m + l.hcompose(x % m, y % m); });
  std::vector<std::string> names;
  for (CellId a = 0; a < k.num_two_cells(); ++a)
    for (CellId b = 0; b < m; ++b) names.push_back("(" + k.cell_name(a) + "," + l.cell_name(b) + ")");
  p.set_cell_names(std::move(names));
  return p;
}

TwoCat locally_discrete(const FinCat& c) {
  std::vector<TwoCat::CellEnds> ends;
  std::vector<CellId> ids;
  for (ArrowId f = 0; f < c.num_arrows(); ++f) {
    ends.push_back({f, f});
    ids.push_back(f);
  }
  return TwoCat::generate(
      c, std::move(ends), std::move(ids), [](CellId a, CellId) { return a; },
      [&](CellId a, CellId b) { return c.compose(a, b); });
}

}  // namespace wcolim
