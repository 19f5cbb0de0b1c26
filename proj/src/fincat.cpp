#include "wcolim/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wcolim {

std::string ValidationReport::summary() const {
  if (violations.empty()) return "valid";
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (const auto& v : violations) os << "\n  " << v.kind << ": " << v.where;
  return os.str();
}

// ---------------------------------------------------------------- FinCat

FinCat FinCat::generate(int num_objects, std::vector<Ends> arrows, std::vector<ArrowId> identities,
                        const std::function<ArrowId(ArrowId, ArrowId)>& compose_fn) {
  FinCat c;
  c.num_objects_ = num_objects;
  c.ends_ = std::move(arrows);
  c.identity_ = std::move(identities);
  const int m = c.num_arrows();
  if (num_objects < 0) throw StructureError("negative object count");
  if (static_cast<int>(c.identity_.size()) != num_objects)
    throw StructureError("identity list has wrong length");
  for (int f = 0; f < m; ++f) {
    const auto [d, k] = c.ends_[f];
    if (d < 0 || d >= num_objects || k < 0 || k >= num_objects)
      throw StructureError("arrow " + std::to_string(f) + " has out-of-range endpoint");
  }
  for (ArrowId i : c.identity_)
    if (i < 0 || i >= m) throw StructureError("identity arrow out of range");
  c.index();
  c.composite_.resize(m);
  for (ArrowId f = 0; f < m; ++f) {
    const auto& next = c.out_[c.ends_[f].cod];
    c.composite_[f].resize(next.size());
    for (std::size_t j = 0; j < next.size(); ++j) {
      const ArrowId h = compose_fn(f, next[j]);
      if (h < 0 || h >= m)
        throw StructureError("composite of " + std::to_string(f) + " and " + std::to_string(next[j]) +
                             " missing or out of range");
      c.composite_[f][j] = h;
    }
  }
  c.inverse_.assign(m, -1);
  for (ArrowId f = 0; f < m; ++f) {
    const auto [d, k] = c.ends_[f];
    for (ArrowId g : c.hom(k, d)) {
      if (c.compose(f, g) == c.identity_[d] && c.compose(g, f) == c.identity_[k]) {
        c.inverse_[f] = g;
        break;
      }
    }
  }
  return c;
}

void FinCat::index() {
  out_.assign(num_objects_, {});
  for (ArrowId f = 0; f < num_arrows(); ++f) out_[ends_[f].dom].push_back(f);
  pos_in_out_.assign(num_arrows(), 0);
  for (auto& list : out_) {
    std::stable_sort(list.begin(), list.end(),
                     [&](ArrowId a, ArrowId b) { return ends_[a].cod < ends_[b].cod; });
    for (std::size_t j = 0; j < list.size(); ++j) pos_in_out_[list[j]] = static_cast<int>(j);
  }
}

ArrowId FinCat::compose(ArrowId f, ArrowId g) const {
  if (ends_[f].cod != ends_[g].dom)
    throw StructureError("arrows " + arrow_name(f) + " and " + arrow_name(g) + " are not composable");
  return composite_[f][pos_in_out_[g]];
}

ArrowId FinCat::compose(std::initializer_list<ArrowId> path) const {
  auto it = path.begin();
  ArrowId acc = *it++;
  for (; it != path.end(); ++it) acc = compose(acc, *it);
  return acc;
}

std::span<const ArrowId> FinCat::hom(ObjId a, ObjId b) const {
  const auto& list = out_[a];
  auto lo = std::lower_bound(list.begin(), list.end(), b,
                             [&](ArrowId f, ObjId key) { return ends_[f].cod < key; });
  auto hi = std::upper_bound(lo, list.end(), b, [&](ObjId key, ArrowId f) { return key < ends_[f].cod; });
  return {list.data() + (lo - list.begin()), static_cast<std::size_t>(hi - lo)};
}

bool FinCat::is_groupoid() const {
  return std::all_of(inverse_.begin(), inverse_.end(), [](ArrowId g) { return g >= 0; });
}

std::string FinCat::object_name(ObjId a) const {
  if (a >= 0 && a < static_cast<int>(object_names_.size()) && !object_names_[a].empty()) return object_names_[a];
  return "o" + std::to_string(a);
}

std::string FinCat::arrow_name(ArrowId f) const {
  if (f >= 0 && f < static_cast<int>(arrow_names_.size()) && !arrow_names_[f].empty()) return arrow_names_[f];
  if (f >= 0 && f < num_arrows() && is_identity(f)) return "1_" + object_name(ends_[f].dom);
  return "a" + std::to_string(f);
}

bool FinCat::operator==(const FinCat& o) const {
  if (num_objects_ != o.num_objects_ || num_arrows() != o.num_arrows() || identity_ != o.identity_) return false;
  for (ArrowId f = 0; f < num_arrows(); ++f)
    if (ends_[f].dom != o.ends_[f].dom || ends_[f].cod != o.ends_[f].cod) return false;
  return composite_ == o.composite_;
}

// ---------------------------------------------------------------- builder

ObjId FinCatBuilder::object(std::string name) {
  const ObjId a = static_cast<ObjId>(object_names_.size());
  object_names_.push_back(name);
  const ArrowId id = static_cast<ArrowId>(ends_.size());
  ends_.push_back({a, a});
  arrow_names_.push_back(name.empty() ? std::string{} : "1_" + name);
  identity_.push_back(id);
  return a;
}

ArrowId FinCatBuilder::arrow(ObjId dom, ObjId cod, std::string name) {
  const int n = static_cast<int>(object_names_.size());
  if (dom < 0 || dom >= n || cod < 0 || cod >= n) throw StructureError("arrow endpoint out of range");
  ends_.push_back({dom, cod});
  arrow_names_.push_back(std::move(name));
  return static_cast<ArrowId>(ends_.size()) - 1;
}

void FinCatBuilder::compose(ArrowId f, ArrowId g, ArrowId h) {
  const long long key = static_cast<long long>(f) * 1'000'003LL + g;
  table_[key] = h;
}

FinCat FinCatBuilder::build() const {
  auto is_id = [&](ArrowId f) { return identity_[ends_[f].dom] == f; };
  FinCat c = FinCat::generate(static_cast<int>(object_names_.size()), ends_, identity_, [&](ArrowId f, ArrowId g) {
    const long long key = static_cast<long long>(f) * 1'000'003LL + g;
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    if (is_id(f)) return g;
    if (is_id(g)) return f;
    std::string fn = arrow_names_[f].empty() ? std::to_string(f) : arrow_names_[f];
    std::string gn = arrow_names_[g].empty() ? std::to_string(g) : arrow_names_[g];
    throw StructureError("no composite given for " + fn + " then " + gn);
  });
  c.set_object_names(object_names_);
  c.set_arrow_names(arrow_names_);
  return c;
}

// ---------------------------------------------------------------- validation

ValidationReport validate_category(const FinCat& c) {
  ValidationReport r;
  const int m = c.num_arrows();
  for (ObjId a = 0; a < c.num_objects(); ++a) {
    const ArrowId i = c.identity(a);
    if (c.dom(i) != a || c.cod(i) != a)
      r.add("identity-typing", "identity of " + c.object_name(a) + " is not an endo-arrow of it", {a, i});
  }
  auto safe = [&](ArrowId f, ArrowId g) { return c.cod(f) == c.dom(g) ? c.compose(f, g) : -1; };
  for (ArrowId f = 0; f < m; ++f) {
    for (ArrowId g : c.out(c.cod(f))) {
      const ArrowId h = c.compose(f, g);
      if (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g))
        r.add("composite-typing", c.arrow_name(f) + " then " + c.arrow_name(g) + " has wrong dom/cod", {f, g, h});
    }
  }
  for (ArrowId f = 0; f < m; ++f) {
    if (safe(c.identity(c.dom(f)), f) != f) r.add("left-unit", "1 then " + c.arrow_name(f), {f});
    if (safe(f, c.identity(c.cod(f))) != f) r.add("right-unit", c.arrow_name(f) + " then 1", {f});
  }
  for (ArrowId f = 0; f < m; ++f)
    for (ArrowId g : c.out(c.cod(f)))
      for (ArrowId h : c.out(c.cod(g))) {
        const ArrowId fg = c.compose(f, g);
        const ArrowId gh = c.compose(g, h);
        const ArrowId left = safe(fg, h);
        const ArrowId right = safe(f, gh);
        if (left < 0 || right < 0 || left != right)
          r.add("associativity",
                "(" + c.arrow_name(f) + ", " + c.arrow_name(g) + ", " + c.arrow_name(h) + ")", {f, g, h});
      }
  return r;
}

// ---------------------------------------------------------------- functors

bool same_category(const CatPtr& a, const CatPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool Functor::operator==(const Functor& o) const {
  return obj_map == o.obj_map && arr_map == o.arr_map && same_category(source, o.source) &&
         same_category(target, o.target);
}

bool NatTransf::operator==(const NatTransf& o) const {
  return components == o.components && source == o.source && target == o.target;
}

Functor identity_functor(const CatPtr& c) {
  Functor f{c, c, {}, {}};
  f.obj_map.resize(c->num_objects());
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  f.arr_map.resize(c->num_arrows());
  std::iota(f.arr_map.begin(), f.arr_map.end(), 0);
  return f;
}

Functor constant_functor(const CatPtr& c, const CatPtr& x, ObjId value) {
  return Functor{c, x, std::vector<ObjId>(c->num_objects(), value),
                 std::vector<ArrowId>(c->num_arrows(), x->identity(value))};
}

Functor compose_functors(const Functor& f, const Functor& g) {
  if (!same_category(f.target, g.source)) throw StructureError("compose_functors: functors not composable");
  Functor h{f.source, g.target, {}, {}};
  h.obj_map.reserve(f.obj_map.size());
  for (ObjId a : f.obj_map) h.obj_map.push_back(g.obj_map[a]);
  h.arr_map.reserve(f.arr_map.size());
  for (ArrowId a : f.arr_map) h.arr_map.push_back(g.arr_map[a]);
  return h;
}

bool is_identity_functor(const Functor& f) {
  if (!same_category(f.source, f.target)) return false;
  for (std::size_t i = 0; i < f.obj_map.size(); ++i)
    if (f.obj_map[i] != static_cast<int>(i)) return false;
  for (std::size_t i = 0; i < f.arr_map.size(); ++i)
    if (f.arr_map[i] != static_cast<int>(i)) return false;
  return true;
}

NatTransf identity_nat(const Functor& f) {
  NatTransf a{f, f, {}};
  a.components.reserve(f.obj_map.size());
  for (ObjId x : f.obj_map) a.components.push_back(f.target->identity(x));
  return a;
}

NatTransf vcompose_nat(const NatTransf& a, const NatTransf& b) {
  NatTransf c{a.source, b.target, {}};
  const auto& x = *a.source.target;
  c.components.reserve(a.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) c.components.push_back(x.compose(a.components[i], b.components[i]));
  return c;
}

NatTransf whisker_before(const Functor& f, const NatTransf& a) {
  NatTransf c{compose_functors(f, a.source), compose_functors(f, a.target), {}};
  c.components.reserve(f.obj_map.size());
  for (ObjId x : f.obj_map) c.components.push_back(a.components[x]);
  return c;
}

NatTransf whisker_after(const NatTransf& a, const Functor& g) {
  NatTransf c{compose_functors(a.source, g), compose_functors(a.target, g), {}};
  c.components.reserve(a.components.size());
  for (ArrowId t : a.components) c.components.push_back(g.arr_map[t]);
  return c;
}

bool is_invertible(const NatTransf& a) {
  const auto& x = *a.source.target;
  return std::all_of(a.components.begin(), a.components.end(), [&](ArrowId t) { return x.is_iso(t); });
}

bool is_identity_nat(const NatTransf& a) {
  const auto& x = *a.source.target;
  return std::all_of(a.components.begin(), a.components.end(), [&](ArrowId t) { return x.is_identity(t); });
}

NatTransf inverse_nat(const NatTransf& a) {
  NatTransf b{a.target, a.source, {}};
  const auto& x = *a.source.target;
  for (ArrowId t : a.components) {
    const ArrowId inv = x.inverse(t);
    if (inv < 0) throw InvariantError("inverse_nat: component " + x.arrow_name(t) + " is not invertible");
    b.components.push_back(inv);
  }
  return b;
}

ValidationReport validate_functor(const Functor& f) {
  ValidationReport r;
  if (!f.source || !f.target) {
    r.add("functor-typing", "missing source or target");
    return r;
  }
  const FinCat& c = *f.source;
  const FinCat& x = *f.target;
  if (static_cast<int>(f.obj_map.size()) != c.num_objects() || static_cast<int>(f.arr_map.size()) != c.num_arrows()) {
    r.add("functor-typing", "map sizes do not match the source");
    return r;
  }
  for (ObjId a = 0; a < c.num_objects(); ++a)
    if (f.obj_map[a] < 0 || f.obj_map[a] >= x.num_objects()) {
      r.add("functor-typing", "object " + c.object_name(a) + " maps out of range", {a});
      return r;
    }
  for (ArrowId g = 0; g < c.num_arrows(); ++g)
    if (f.arr_map[g] < 0 || f.arr_map[g] >= x.num_arrows()) {
      r.add("functor-typing", "arrow " + c.arrow_name(g) + " maps out of range", {g});
      return r;
    }
  bool typed = true;
  for (ArrowId g = 0; g < c.num_arrows(); ++g) {
    const ArrowId h = f.arr_map[g];
    if (x.dom(h) != f.obj_map[c.dom(g)] || x.cod(h) != f.obj_map[c.cod(g)]) {
      r.add("functor-typing", "image of " + c.arrow_name(g) + " has wrong dom/cod", {g});
      typed = false;
    }
  }
  for (ObjId a = 0; a < c.num_objects(); ++a)
    if (f.arr_map[c.identity(a)] != x.identity(f.obj_map[a]))
      r.add("functor-identity", "identity of " + c.object_name(a) + " not preserved", {a});
  if (!typed) return r;
  for (ArrowId g = 0; g < c.num_arrows(); ++g)
    for (ArrowId h : c.out(c.cod(g)))
      if (f.arr_map[c.compose(g, h)] != x.compose(f.arr_map[g], f.arr_map[h]))
        r.add("functor-composition", c.arrow_name(g) + " then " + c.arrow_name(h), {g, h});
  return r;
}

ValidationReport validate_nat_transf(const NatTransf& a) {
  ValidationReport r;
  if (!same_category(a.source.source, a.target.source) || !same_category(a.source.target, a.target.target)) {
    r.add("nat-typing", "source and target functors are not parallel");
    return r;
  }
  const FinCat& c = *a.source.source;
  const FinCat& x = *a.source.target;
  if (static_cast<int>(a.components.size()) != c.num_objects()) {
    r.add("nat-typing", "wrong number of components");
    return r;
  }
  bool typed = true;
  for (ObjId o = 0; o < c.num_objects(); ++o) {
    const ArrowId t = a.components[o];
    if (t < 0 || t >= x.num_arrows() || x.dom(t) != a.source.obj_map[o] || x.cod(t) != a.target.obj_map[o]) {
      r.add("nat-typing", "component at " + c.object_name(o) + " has wrong dom/cod", {o});
      typed = false;
    }
  }
  if (!typed) return r;
  for (ArrowId f = 0; f < c.num_arrows(); ++f) {
    const ArrowId lhs = x.compose(a.source.arr_map[f], a.components[c.cod(f)]);
    const ArrowId rhs = x.compose(a.components[c.dom(f)], a.target.arr_map[f]);
    if (lhs != rhs) r.add("naturality", "square at " + c.arrow_name(f), {f});
  }
  return r;
}

// ---------------------------------------------------------------- enumeration

namespace {

struct FunctorSearch {
  const FinCat& c;
  const FinCat& x;
  const ArrowFilter& filter;
  CandidateCounter counter;
  std::vector<std::vector<ArrowId>> arrows_closing_at_object;  // arrows with max(dom,cod) = a
  std::vector<std::vector<std::pair<ArrowId, ArrowId>>> pairs_closing_at_arrow;
  std::vector<ObjId> obj;
  std::vector<ArrowId> arr;
  std::vector<ArrowId> order;  // non-identity arrows
  std::function<void(const std::vector<ObjId>&, const std::vector<ArrowId>&)> emit;

  FunctorSearch(const FinCat& c_, const FinCat& x_, const ArrowFilter& filter_, std::uint64_t limit)
      : c(c_), x(x_), filter(filter_), counter("functor enumeration", limit) {
    arrows_closing_at_object.resize(c.num_objects());
    for (ArrowId f = 0; f < c.num_arrows(); ++f)
      if (!c.is_identity(f)) arrows_closing_at_object[std::max(c.dom(f), c.cod(f))].push_back(f);
    for (ArrowId f = 0; f < c.num_arrows(); ++f)
      if (!c.is_identity(f)) order.push_back(f);
    pairs_closing_at_arrow.resize(c.num_arrows());
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
      if (c.is_identity(f)) continue;
      for (ArrowId g : c.out(c.cod(f))) {
        if (c.is_identity(g)) continue;
        const ArrowId h = c.compose(f, g);
        const ArrowId last = c.is_identity(h) ? std::max(f, g) : std::max({f, g, h});
        pairs_closing_at_arrow[last].push_back({f, g});
      }
    }
    obj.assign(c.num_objects(), -1);
    arr.assign(c.num_arrows(), -1);
  }

  bool allowed(ArrowId f, ArrowId t) const { return !filter || filter(f, t); }

  bool some_candidate(ArrowId f) const {
    for (ArrowId t : x.hom(obj[c.dom(f)], obj[c.cod(f)]))
      if (allowed(f, t)) return true;
    return false;
  }

  void objects(ObjId a) {
    if (a == c.num_objects()) {
      for (ObjId b = 0; b < c.num_objects(); ++b) {
        const ArrowId id = x.identity(obj[b]);
        if (!allowed(c.identity(b), id)) return;
        arr[c.identity(b)] = id;
      }
      arrows(0);
      return;
    }
    for (ObjId t = 0; t < x.num_objects(); ++t) {
      counter.tick();
      obj[a] = t;
      bool ok = true;
      for (ArrowId f : arrows_closing_at_object[a])
        if (!some_candidate(f)) {
          ok = false;
          break;
        }
      if (ok) objects(a + 1);
    }
    obj[a] = -1;
  }

  void arrows(std::size_t k) {
    if (k == order.size()) {
      emit(obj, arr);
      return;
    }
    const ArrowId f = order[k];
    for (ArrowId t : x.hom(obj[c.dom(f)], obj[c.cod(f)])) {
      counter.tick();
      if (!allowed(f, t)) continue;
      arr[f] = t;
      bool ok = true;
      for (auto [g, h] : pairs_closing_at_arrow[f])
        if (arr[c.compose(g, h)] != x.compose(arr[g], arr[h])) {
          ok = false;
          break;
        }
      if (ok) arrows(k + 1);
    }
    arr[f] = -1;
  }
};

}  // namespace

std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& x, const Budget& budget,
                                        const ArrowFilter& filter) {
  std::vector<Functor> out;
  FunctorSearch search(*c, *x, filter, budget.max_candidates);
  search.emit = [&](const std::vector<ObjId>& o, const std::vector<ArrowId>& a) { out.push_back(Functor{c, x, o, a}); };
  search.objects(0);
  return out;
}

std::vector<NatTransf> enumerate_nat_transfs(const Functor& f, const Functor& g, const Budget& budget,
                                             bool invertible_only) {
  if (!same_category(f.source, g.source) || !same_category(f.target, g.target))
    throw StructureError("enumerate_nat_transfs: functors are not parallel");
  const FinCat& c = *f.source;
  const FinCat& x = *f.target;
  std::vector<std::vector<ArrowId>> closing(c.num_objects());
  for (ArrowId a = 0; a < c.num_arrows(); ++a)
    if (!c.is_identity(a)) closing[std::max(c.dom(a), c.cod(a))].push_back(a);
  std::vector<NatTransf> out;
  std::vector<ArrowId> comp(c.num_objects(), -1);
  CandidateCounter counter("natural transformation enumeration", budget.max_candidates);
  std::function<void(ObjId)> rec = [&](ObjId o) {
    if (o == c.num_objects()) {
      out.push_back(NatTransf{f, g, comp});
      return;
    }
    for (ArrowId t : x.hom(f.obj_map[o], g.obj_map[o])) {
      counter.tick();
      if (invertible_only && !x.is_iso(t)) continue;
      comp[o] = t;
      bool ok = true;
      for (ArrowId a : closing[o])
        if (x.compose(f.arr_map[a], comp[c.cod(a)]) != x.compose(comp[c.dom(a)], g.arr_map[a])) {
          ok = false;
          break;
        }
      if (ok) rec(o + 1);
    }
    comp[o] = -1;
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------- functor categories

namespace {
std::vector<int> functor_key(const Functor& f) {
  std::vector<int> key(f.obj_map);
  key.insert(key.end(), f.arr_map.begin(), f.arr_map.end());
  return key;
}
}  // namespace

std::shared_ptr<const FunctorCategory> FunctorCategory::build(const CatPtr& c, const CatPtr& x, const Budget& budget) {
  return build_full(c, x, enumerate_functors(c, x, budget), budget);
}

std::shared_ptr<const FunctorCategory> FunctorCategory::build_full(const CatPtr& c, const CatPtr& x,
                                                                   std::vector<Functor> objects,
                                                                   const Budget& budget) {
  auto fc = std::make_shared<FunctorCategory>();
  fc->source_ = c;
  fc->target_ = x;
  fc->functors_ = std::move(objects);
  const int n = static_cast<int>(fc->functors_.size());
  for (int i = 0; i < n; ++i) fc->functor_index_.emplace(functor_key(fc->functors_[i]), i);
  std::vector<FinCat::Ends> ends;
  std::vector<ArrowId> identities(n, -1);
  std::uint64_t total = 0;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      for (auto& a : enumerate_nat_transfs(fc->functors_[s], fc->functors_[t], budget)) {
        if (++total > budget.max_cells) throw BudgetExceeded("functor category arrows", budget.max_cells);
        std::vector<int> key{s, t};
        key.insert(key.end(), a.components.begin(), a.components.end());
        const ArrowId id = static_cast<ArrowId>(ends.size());
        fc->arrow_index_.emplace(std::move(key), id);
        ends.push_back({s, t});
        fc->components_.push_back(std::move(a.components));
      }
    }
  const FinCat& xc = *x;
  for (int s = 0; s < n; ++s) {
    std::vector<int> key{s, s};
    for (ObjId o : fc->functors_[s].obj_map) key.push_back(xc.identity(o));
    identities[s] = fc->arrow_index_.at(key);
  }
  const std::vector<FinCat::Ends> ends2 = ends;
  FinCat result = FinCat::generate(n, std::move(ends), std::move(identities), [&](ArrowId a, ArrowId b) {
    std::vector<int> key{ends2[a].dom, ends2[b].cod};
    const auto& ca = fc->components_[a];
    const auto& cb = fc->components_[b];
    for (std::size_t i = 0; i < ca.size(); ++i) key.push_back(xc.compose(ca[i], cb[i]));
    auto it = fc->arrow_index_.find(key);
    if (it == fc->arrow_index_.end()) throw InvariantError("functor category: composite transformation missing");
    return it->second;
  });
  fc->cat_ = share(std::move(result));
  return fc;
}

NatTransf FunctorCategory::nat_transf(ArrowId t) const {
  return NatTransf{functors_[cat_->dom(t)], functors_[cat_->cod(t)], components_[t]};
}

std::optional<ObjId> FunctorCategory::find(const Functor& f) const {
  auto it = functor_index_.find(functor_key(f));
  if (it == functor_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> FunctorCategory::find(ObjId s, ObjId t, const std::vector<ArrowId>& components) const {
  std::vector<int> key{s, t};
  key.insert(key.end(), components.begin(), components.end());
  auto it = arrow_index_.find(key);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

ObjId FunctorCategory::index_of(const Functor& f) const {
  auto r = find(f);
  if (!r) throw InvariantError("functor not found in functor category");
  return *r;
}

ArrowId FunctorCategory::index_of(const NatTransf& a) const {
  auto r = find(index_of(a.source), index_of(a.target), a.components);
  if (!r) throw InvariantError("natural transformation not found in functor category");
  return *r;
}

FinCat functor_category(const CatPtr& c, const CatPtr& x, const Budget& budget) {
  return *FunctorCategory::build(c, x, budget)->cat();
}

// ---------------------------------------------------------------- products

FinCat product(const FinCat& c, const FinCat& d) {
  const int n = c.num_objects() * d.num_objects();
  std::vector<FinCat::Ends> ends;
  ends.reserve(static_cast<std::size_t>(c.num_arrows()) * d.num_arrows());
  for (ArrowId f = 0; f < c.num_arrows(); ++f)
    for (ArrowId g = 0; g < d.num_arrows(); ++g)
      ends.push_back({product_object(d, c.dom(f), d.dom(g)), product_object(d, c.cod(f), d.cod(g))});
  std::vector<ArrowId> ids(n);
  for (ObjId a = 0; a < c.num_objects(); ++a)
    for (ObjId b = 0; b < d.num_objects(); ++b)
      ids[product_object(d, a, b)] = product_arrow(d, c.identity(a), d.identity(b));
  const int m = d.num_arrows();
  FinCat p = FinCat::generate(n, std::move(ends), std::move(ids), [&](ArrowId x, ArrowId y) {
    return product_arrow(d, c.compose(x / m, y / m), d.compose(x % m, y % m));
  });
  if (c.has_names() || d.has_names()) {
    std::vector<std::string> on, an;
    for (ObjId a = 0; a < c.num_objects(); ++a)
      for (ObjId b = 0; b < d.num_objects(); ++b) on.push_back("(" + c.object_name(a) + "," + d.object_name(b) + ")");
    for (ArrowId f = 0; f < c.num_arrows(); ++f)
      for (ArrowId g = 0; g < d.num_arrows(); ++g) an.push_back("(" + c.arrow_name(f) + "," + d.arrow_name(g) + ")");
    p.set_object_names(std::move(on));
    p.set_arrow_names(std::move(an));
  }
  return p;
}

FinCat opposite(const FinCat& c) {
  std::vector<FinCat::Ends> ends;
  for (ArrowId f = 0; f < c.num_arrows(); ++f) ends.push_back({c.cod(f), c.dom(f)});
  std::vector<ArrowId> ids;
  for (ObjId a = 0; a < c.num_objects(); ++a) ids.push_back(c.identity(a));
  FinCat o = FinCat::generate(c.num_objects(), std::move(ends), std::move(ids),
                              [&](ArrowId f, ArrowId g) { return c.compose(g, f); });
  if (c.has_names()) {
    std::vector<std::string> on, an;
    for (ObjId a = 0; a < c.num_objects(); ++a) on.push_back(c.object_name(a));
    for (ArrowId f = 0; f < c.num_arrows(); ++f) an.push_back(c.arrow_name(f));
    o.set_object_names(std::move(on));
    o.set_arrow_names(std::move(an));
  }
  return o;
}

// ---------------------------------------------------------------- predicates

FilteredReport is_filtered(const FinCat& c) {
  FilteredReport r;
  r.nonempty = c.num_objects() > 0;
  const int n = c.num_objects();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (ObjId z = 0; z < n; ++z)
    for (ArrowId f : c.out(z)) reach[z][c.cod(f)] = 1;
  for (ObjId a = 0; a < n && !r.no_span; ++a)
    for (ObjId b = a + 1; b < n && !r.no_span; ++b) {
      bool found = false;
      for (ObjId z = 0; z < n && !found; ++z) found = reach[z][a] && reach[z][b];
      if (!found) r.no_span = std::make_pair(a, b);
    }
  for (ObjId a = 0; a < n && !r.no_equalizer; ++a)
    for (ObjId b = 0; b < n && !r.no_equalizer; ++b) {
      auto hom = c.hom(a, b);
      for (std::size_t i = 0; i < hom.size() && !r.no_equalizer; ++i)
        for (std::size_t j = i + 1; j < hom.size() && !r.no_equalizer; ++j) {
          bool found = false;
          for (ObjId z = 0; z < n && !found; ++z)
            for (ArrowId h : c.hom(z, a))
              if (c.compose(h, hom[i]) == c.compose(h, hom[j])) {
                found = true;
                break;
              }
          if (!found) r.no_equalizer = std::make_pair(hom[i], hom[j]);
        }
    }
  if (!r.nonempty)
    r.failed_condition = 1;
  else if (r.no_span)
    r.failed_condition = 2;
  else if (r.no_equalizer)
    r.failed_condition = 3;
  r.filtered = r.failed_condition == 0;
  return r;
}

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::iso: return "iso";
    case IsoVerdict::equiv_with_unit: return "equiv-with-unit";
    case IsoVerdict::fail: return "fail";
  }
  return "fail";
}

namespace {
// First place where `f then g` is not the identity of f.source, or empty.
std::string roundtrip_witness(const Functor& f, const Functor& g, const std::string& label) {
  const FinCat& c = *f.source;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    if (g.obj_map[f.obj_map[a]] != a)
      return label + ": object " + c.object_name(a) + " returns as " + c.object_name(g.obj_map[f.obj_map[a]]);
  for (ArrowId a = 0; a < c.num_arrows(); ++a)
    if (g.arr_map[f.arr_map[a]] != a)
      return label + ": arrow " + c.arrow_name(a) + " returns as " + c.arrow_name(g.arr_map[f.arr_map[a]]);
  return {};
}
}  // namespace

CatIsoReport check_isomorphism(const Functor& fwd, const Functor& bwd) {
  CatIsoReport r{fwd, bwd, IsoVerdict::fail, {}};
  if (!same_category(fwd.target, bwd.source) || !same_category(fwd.source, bwd.target)) {
    r.witness = "functors are not anti-parallel";
    return r;
  }
  for (const auto* f : {&fwd, &bwd}) {
    auto v = validate_functor(*f);
    if (!v.ok()) {
      r.witness = (f == &fwd ? "forward " : "backward ") + v.violations.front().kind + ": " + v.violations.front().where;
      return r;
    }
  }
  r.witness = roundtrip_witness(fwd, bwd, "backward after forward");
  if (r.witness.empty()) r.witness = roundtrip_witness(bwd, fwd, "forward after backward");
  if (r.witness.empty()) r.verdict = IsoVerdict::iso;
  return r;
}

CatIsoReport check_equivalence(const Functor& fwd, const Functor& bwd, const NatTransf& unit,
                               const NatTransf& counit) {
  CatIsoReport r{fwd, bwd, IsoVerdict::fail, {}};
  if (!same_category(fwd.target, bwd.source) || !same_category(fwd.source, bwd.target)) {
    r.witness = "functors are not anti-parallel";
    return r;
  }
  for (const auto* f : {&fwd, &bwd}) {
    auto v = validate_functor(*f);
    if (!v.ok()) {
      r.witness = (f == &fwd ? "forward " : "backward ") + v.violations.front().kind + ": " + v.violations.front().where;
      return r;
    }
  }
  struct Leg {
    const NatTransf* t;
    Functor src, tgt;
    const char* name;
  };
  const Leg legs[] = {{&unit, identity_functor(fwd.source), compose_functors(fwd, bwd), "unit"},
                      {&counit, compose_functors(bwd, fwd), identity_functor(fwd.target), "counit"}};
  for (const auto& leg : legs) {
    if (!(leg.t->source == leg.src) || !(leg.t->target == leg.tgt)) {
      r.witness = std::string(leg.name) + " has the wrong source or target functor";
      return r;
    }
    auto v = validate_nat_transf(*leg.t);
    if (!v.ok()) {
      r.witness = std::string(leg.name) + " " + v.violations.front().kind + ": " + v.violations.front().where;
      return r;
    }
    const FinCat& x = *leg.t->source.target;
    for (std::size_t i = 0; i < leg.t->components.size(); ++i)
      if (!x.is_iso(leg.t->components[i])) {
        r.witness = std::string(leg.name) + " component " + std::to_string(i) + " is not invertible";
        return r;
      }
  }
  r.verdict = IsoVerdict::equiv_with_unit;
  return r;
}

bool equivalent_to_terminal(const FinCat& c) {
  if (c.num_objects() == 0) return false;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    for (ObjId b = 0; b < c.num_objects(); ++b)
      if (c.hom(a, b).size() != 1) return false;
  return true;
}

std::string render_composite(const FinCat& c, const std::vector<ArrowId>& path) {
  if (path.empty()) return "1";
  std::string s;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (!s.empty()) s += "∘";
    s += c.arrow_name(*it);
  }
  return s;
}

}  // namespace wcolim
