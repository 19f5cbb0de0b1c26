#include "support.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wcolim::testing {

namespace {

bool covariant(const PseudoFunctor& f) { return f.variance == Variance::covariant; }

// fiber a transition of f starts from / lands in
ObjId from_fiber(const PseudoFunctor& e, ArrowId f) {
  return covariant(e) ? e.shape->dom(f) : e.shape->cod(f);
}
ObjId to_fiber(const PseudoFunctor& e, ArrowId f) { return covariant(e) ? e.shape->cod(f) : e.shape->dom(f); }

template <class T>
const T& choose(Rng& rng, const std::vector<T>& v) {
  return v[pick(rng, static_cast<int>(v.size()))];
}

std::vector<ArrowId> hom_list(const FinCat& c, ObjId a, ObjId b) {
  auto h = c.hom(a, b);
  return {h.begin(), h.end()};
}

// Arrows with the given ends other than `not_this`, filtered.
std::vector<ArrowId> alternatives(const FinCat& c, ArrowId not_this, const std::function<bool(ArrowId)>& keep) {
  std::vector<ArrowId> out;
  for (ArrowId a : c.hom(c.dom(not_this), c.cod(not_this)))
    if (a != not_this && keep(a)) out.push_back(a);
  return out;
}

// Arrows of c whose ends differ from those of f.
std::vector<ArrowId> mistyped(const FinCat& c, ArrowId f) {
  std::vector<ArrowId> out;
  for (ArrowId a = 0; a < c.num_arrows(); ++a)
    if (c.dom(a) != c.dom(f) || c.cod(a) != c.cod(f)) out.push_back(a);
  return out;
}

// All functors c → x, by trying every assignment and checking the laws.
std::vector<Functor> brute_force_functors(const CatPtr& c, const CatPtr& x) {
  std::vector<Functor> out;
  const int n = c->num_objects(), m = c->num_arrows();
  std::vector<ObjId> obj(n, 0);
  std::vector<ArrowId> arr(m, 0);
  std::function<void(int)> arrows = [&](int i) {
    if (i == m) {
      for (ArrowId f = 0; f < m; ++f)
        if (x->dom(arr[f]) != obj[c->dom(f)] || x->cod(arr[f]) != obj[c->cod(f)]) return;
      for (ObjId a = 0; a < n; ++a)
        if (arr[c->identity(a)] != x->identity(obj[a])) return;
      for (ArrowId f = 0; f < m; ++f)
        for (ArrowId g : c->out(c->cod(f)))
          if (arr[c->compose(f, g)] != x->compose(arr[f], arr[g])) return;
      out.push_back(Functor{c, x, obj, arr});
      return;
    }
    for (ArrowId a = 0; a < x->num_arrows(); ++a) {
      arr[i] = a;
      arrows(i + 1);
    }
  };
  std::function<void(int)> objects = [&](int i) {
    if (i == n) {
      arrows(0);
      return;
    }
    for (ObjId a = 0; a < x->num_objects(); ++a) {
      obj[i] = a;
      objects(i + 1);
    }
  };
  objects(0);
  return out;
}

bool natural(const Functor& f, const Functor& g, const std::vector<ArrowId>& comp) {
  const FinCat& c = *f.source;
  const FinCat& x = *f.target;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    if (x.dom(comp[a]) != f.obj(a) || x.cod(comp[a]) != g.obj(a)) return false;
  for (ArrowId u = 0; u < c.num_arrows(); ++u)
    if (x.compose(f.arr(u), comp[c.cod(u)]) != x.compose(comp[c.dom(u)], g.arr(u))) return false;
  return true;
}

// Mixed-radix counter over a list of choice counts.
bool advance(std::vector<int>& digits, const std::vector<int>& radix) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

// Pairs (p, q) reported by a validator with their composite in either order.
bool pair_involves(const TwoCat& k, const std::vector<int>& w, ArrowId f) {
  if (w.size() < 2) return false;
  if (w[0] == f || w[1] == f) return true;
  const FinCat& one = k.one();
  if (one.cod(w[0]) == one.dom(w[1]) && one.compose(w[0], w[1]) == f) return true;
  if (one.cod(w[1]) == one.dom(w[0]) && one.compose(w[1], w[0]) == f) return true;
  return false;
}

bool cell_touches(const TwoCat& k, CellId c, ArrowId f) { return k.src(c) == f || k.tgt(c) == f; }

bool is_one_of(const std::string& kind, std::initializer_list<const char*> kinds) {
  return std::any_of(kinds.begin(), kinds.end(), [&](const char* k) { return kind == k; });
}

}  // namespace

// ---------------------------------------------------------------- fixtures

FinCat parallel_pair() {
  FinCatBuilder b;
  const ObjId a = b.object("0");
  const ObjId c = b.object("1");
  b.arrow(a, c, "u");
  b.arrow(a, c, "v");
  return b.build();
}

TwoCat shape_composable_pair() {
  FinCatBuilder b;
  const ObjId a = b.object("a");
  const ObjId c = b.object("b");
  const ObjId d = b.object("c");
  const ArrowId f = b.arrow(a, c, "f");
  const ArrowId g = b.arrow(c, d, "g");
  const ArrowId fg = b.arrow(a, d, "fg");
  b.compose(f, g, fg);
  return locally_discrete(b.build());
}

PseudoFunctor broken_horizontal_coherence() {
  auto k = share(catalog::shape_whiskered_2cell());
  const FinCat& one = k->one();
  auto named = [&](const std::string& n) {
    for (ArrowId f = 0; f < one.num_arrows(); ++f)
      if (one.arrow_name(f) == n) return f;
    throw std::logic_error("no 1-cell " + n);
  };
  const ArrowId f = named("f"), g = named("g"), h = named("h"), fh = named("fh"), gh = named("gh");
  const CellId alpha = k->cells_between(f, g)[0];
  const CellId alpha_h = k->cells_between(fh, gh)[0];

  auto one_cat = share(catalog::terminal());
  auto arrow = share(catalog::walking_arrow());
  auto pair = share(parallel_pair());
  std::vector<CatPtr> values{one_cat, arrow, pair};
  const ArrowId a = 2, u = 2, v = 3;  // non-identity arrows follow the identities

  std::vector<Functor> transitions(one.num_arrows());
  for (ObjId o = 0; o < 3; ++o) transitions[one.identity(o)] = identity_functor(values[o]);
  transitions[f] = Functor{one_cat, arrow, {0}, {0}};
  transitions[g] = Functor{one_cat, arrow, {1}, {1}};
  transitions[h] = Functor{arrow, pair, {0, 1}, {0, 1, u}};
  transitions[fh] = Functor{one_cat, pair, {0}, {0}};
  transitions[gh] = Functor{one_cat, pair, {1}, {1}};

  std::vector<NatTransf> cells(k->num_two_cells());
  for (ArrowId x = 0; x < one.num_arrows(); ++x) cells[k->id2(x)] = identity_nat(transitions[x]);
  cells[alpha] = NatTransf{transitions[f], transitions[g], {a}};
  cells[alpha_h] = NatTransf{transitions[fh], transitions[gh], {v}};
  return strict_pseudo_functor(Variance::covariant, k, values, transitions, cells);
}

TwoCat broken_interchange() {
  FinCatBuilder c;
  const ObjId a = c.object("A");
  const ObjId b = c.object("B");
  const ObjId d = c.object("C");
  const ArrowId f = c.arrow(a, b, "f");
  const ArrowId g = c.arrow(b, d, "g");
  const ArrowId fg = c.arrow(a, d, "fg");
  c.compose(f, g, fg);
  TwoCatBuilder k(c.build());
  const CellId al = k.cell(f, f, "alpha");
  const CellId be = k.cell(g, g, "beta");
  const CellId ga = k.cell(fg, fg, "gamma");
  k.vcompose(al, al, al);
  k.vcompose(be, be, be);
  k.vcompose(ga, ga, ga);
  k.hcompose(al, k.id2(g), ga);
  k.hcompose(k.id2(f), be, ga);
  k.hcompose(al, be, k.id2(fg));
  return k.build();
}

std::vector<CatPtr> fiber_pool() {
  static const std::vector<CatPtr> pool{share(catalog::terminal()),        share(catalog::walking_arrow()),
                                        share(catalog::walking_idempotent()), share(catalog::cyclic_group(2)),
                                        share(catalog::cyclic_group(3)),     share(catalog::walking_iso()),
                                        share(catalog::discrete(2)),         share(parallel_pair())};
  return pool;
}

std::vector<TwoCatPtr> shape_pool() {
  static const std::vector<TwoCatPtr> pool{share(catalog::shape_point()),          share(catalog::shape_walking_arrow()),
                                           share(catalog::shape_idempotent()),     share(catalog::shape_idempotent_killing()),
                                           share(catalog::shape_walking_2cell()),  share(catalog::shape_whiskered_2cell()),
                                           share(shape_composable_pair())};
  return pool;
}

// ---------------------------------------------------------------- generators

Twist twist(const PseudoFunctorPtr& fp, Rng& rng) {
  const PseudoFunctor& F = *fp;
  const TwoCat& k = *F.shape;
  const FinCat& one = k.one();
  PseudoFunctor G = F;
  std::vector<std::vector<ArrowId>> th(one.num_arrows());
  for (ArrowId f = 0; f < one.num_arrows(); ++f) {
    const FinCat& s = *F.values[from_fiber(F, f)];
    const FinCat& t = *F.values[to_fiber(F, f)];
    const Functor& Ff = F.transitions[f];
    for (ObjId x = 0; x < s.num_objects(); ++x) {
      const ObjId y = Ff.obj(x);
      if (one.is_identity(f)) {
        th[f].push_back(t.identity(y));
        continue;
      }
      std::vector<ArrowId> isos;
      for (ArrowId a : t.out(y))
        if (t.is_iso(a)) isos.push_back(a);
      th[f].push_back(choose(rng, isos));
    }
    Functor& Gf = G.transitions[f];
    for (ObjId x = 0; x < s.num_objects(); ++x) Gf.obj_map[x] = t.cod(th[f][x]);
    for (ArrowId u = 0; u < s.num_arrows(); ++u)
      Gf.arr_map[u] = t.compose({t.inverse(th[f][s.dom(u)]), Ff.arr(u), th[f][s.cod(u)]});
  }
  for (CellId c = 0; c < k.num_two_cells(); ++c) {
    const ArrowId f = k.src(c), g = k.tgt(c);
    const FinCat& t = *F.values[to_fiber(F, f)];
    NatTransf& Gc = G.cells[c];
    Gc.source = G.transitions[f];
    Gc.target = G.transitions[g];
    for (std::size_t x = 0; x < Gc.components.size(); ++x)
      Gc.components[x] = t.compose({t.inverse(th[f][x]), F.cells[c][x], th[g][x]});
  }
  for (auto& [key, phi] : G.compositors) {
    const auto [f, g] = key;
    const ArrowId a = covariant(F) ? f : g;  // applied first
    const ArrowId b = covariant(F) ? g : f;
    const ArrowId fg = one.compose(f, g);
    const FinCat& t = *F.values[to_fiber(F, b)];
    const NatTransf& phiF = F.compositors.at(key);
    phi.source = compositor_source(G, f, g);
    phi.target = G.transitions[fg];
    for (std::size_t x = 0; x < phi.components.size(); ++x) {
      const FinCat& mid = *F.values[to_fiber(F, a)];
      phi.components[x] = t.compose({G.transitions[b].arr(mid.inverse(th[a][x])),
                                     t.inverse(th[b][F.transitions[a].obj(static_cast<ObjId>(x))]), phiF[x],
                                     th[fg][x]});
    }
  }
  Twist out{fp, share(std::move(G)), {}};
  for (ArrowId f = 0; f < one.num_arrows(); ++f)
    out.theta.push_back(NatTransf{F.transitions[f], out.target->transitions[f], th[f]});
  return out;
}

namespace {

PseudoNat identity_component_natural(const PseudoFunctorPtr& s, const PseudoFunctorPtr& t,
                                     const std::vector<std::vector<ArrowId>>& coh) {
  const PseudoFunctor& F = *s;
  PseudoNat n{s, t, {}, {}};
  for (const CatPtr& v : F.values) n.components.push_back(identity_functor(v));
  for (ArrowId f = 0; f < F.shape->num_one_cells(); ++f)
    n.coherence.push_back(NatTransf{compose_functors(F.transitions[f], n.components[to_fiber(F, f)]),
                                    compose_functors(n.components[from_fiber(F, f)], t->transitions[f]), coh[f]});
  return n;
}

}  // namespace

PseudoNat twist_natural(const Twist& t) {
  std::vector<std::vector<ArrowId>> coh;
  for (const NatTransf& th : t.theta) coh.push_back(th.components);
  return identity_component_natural(t.source, t.target, coh);
}

PseudoNat twist_natural_inverse(const Twist& t) {
  std::vector<std::vector<ArrowId>> coh;
  for (const NatTransf& th : t.theta) coh.push_back(inverse_nat(th).components);
  return identity_component_natural(t.target, t.source, coh);
}

PseudoNat compose_pseudo_naturals(const PseudoNat& s, const PseudoNat& t) {
  const PseudoFunctor& F = *s.source;
  PseudoNat n{s.source, t.target, {}, {}};
  for (std::size_t a = 0; a < s.components.size(); ++a)
    n.components.push_back(compose_functors(s.components[a], t.components[a]));
  for (ArrowId f = 0; f < F.shape->num_one_cells(); ++f) {
    const ObjId src = from_fiber(F, f), tgt = to_fiber(F, f);
    const FinCat& h = *t.target->values[tgt];
    std::vector<ArrowId> comp;
    for (ObjId x = 0; x < F.values[src]->num_objects(); ++x)
      comp.push_back(h.compose(t.components[tgt].arr(s.coherence[f][x]), t.coherence[f][s.components[src].obj(x)]));
    n.coherence.push_back(NatTransf{compose_functors(F.transitions[f], n.components[tgt]),
                                    compose_functors(n.components[src], t.target->transitions[f]), comp});
  }
  return n;
}

PseudoFunctorPtr random_pseudo_functor(Rng& rng, Variance variance, TwoCatPtr shape) {
  std::vector<PseudoFunctorPtr> bases;
  const auto fibers = fiber_pool();
  const auto suite = seeds::main_suite();
  const bool cov = variance == Variance::covariant;
  if (!shape) {
    // shapes with composable non-identity pairs carry non-trivial compositors
    const auto pool = shape_pool();
    const std::vector<TwoCatPtr> shapes{pool[0], pool[1], pool[2], pool[2], pool[3], pool[3],
                                        pool[4], pool[5], pool[5], pool[6], pool[6]};
    shape = choose(rng, shapes);
    for (const auto& s : suite)
      if (cov) bases.push_back(s.e);
      else bases.push_back(s.w);
  }
  // fibers with non-identity isomorphisms give the twist room to move
  const std::vector<CatPtr> rich{fibers[3], fibers[4], fibers[5]};
  for (int i = 0; i < 2; ++i) bases.push_back(share(constant_pseudo_functor(variance, shape, choose(rng, fibers))));
  for (int i = 0; i < 3; ++i) bases.push_back(share(constant_pseudo_functor(variance, shape, choose(rng, rich))));
  if (!cov) {
    bases.push_back(share(representable(shape, pick(rng, shape->num_objects()))));
    // small hom functors keep the fibers tiny
    static const std::vector<CatPtr> targets{share(catalog::terminal()), share(catalog::walking_arrow()),
                                             share(catalog::cyclic_group(2))};
    std::vector<PseudoFunctorPtr> es;
    for (const auto& s : suite)
      if (*s.e->shape == *shape) es.push_back(s.e);
    if (!es.empty()) bases.push_back(hom_pseudo_functor(choose(rng, es), choose(rng, targets)).functor);
  }
  PseudoFunctorPtr f = choose(rng, bases);
  const int rounds = 1 + pick(rng, 2);
  for (int i = 0; i < rounds; ++i) f = twist(f, rng).target;
  return f;
}

namespace {

struct CachedContext {
  UniversalContext ctx;
  std::vector<Functor> inverting;
};

const std::vector<CachedContext>& phi_contexts() {
  static const std::vector<CachedContext> all = [] {
    std::vector<CachedContext> out;
    for (const auto& s : seeds::main_suite())
      for (const auto& [name, x] : seeds::test_categories()) {
        UniversalContext ctx = universal_context(s.e, s.w, x);
        auto sf = sigma_functor_cat(ctx.pres, x);
        std::vector<Functor> fs;
        for (ObjId o = 0; o < sf.cat()->num_objects(); ++o) fs.push_back(sf.carrier->functor(o));
        if (!fs.empty()) out.push_back({std::move(ctx), std::move(fs)});
      }
    return out;
  }();
  return all;
}

}  // namespace

PseudoNat random_pseudo_natural(Rng& rng) {
  if (pick(rng, 2) == 0) {
    const Variance v = pick(rng, 2) == 0 ? Variance::covariant : Variance::contravariant;
    PseudoFunctorPtr f = random_pseudo_functor(rng, v);
    Twist t1 = twist(f, rng), t2 = twist(f, rng);
    return compose_pseudo_naturals(twist_natural_inverse(t1), twist_natural(t2));
  }
  const CachedContext& c = choose(rng, phi_contexts());
  PseudoNat t = phi(c.ctx, choose(rng, c.inverting));
  t = compose_pseudo_naturals(t, twist_natural(twist(t.target, rng)));
  if (pick(rng, 2) == 0) t = compose_pseudo_naturals(twist_natural_inverse(twist(t.source, rng)), t);
  return t;
}

seeds::Instance random_conical_instance(Rng& rng) {
  static const std::vector<TwoCatPtr> shapes{share(catalog::shape_point()), share(catalog::shape_walking_arrow()),
                                             share(shape_composable_pair())};
  const auto fibers = fiber_pool();
  TwoCatPtr k = choose(rng, shapes);
  const FinCat& one = k->one();
  std::vector<CatPtr> values;
  for (ObjId a = 0; a < k->num_objects(); ++a) values.push_back(choose(rng, fibers));
  std::vector<Functor> transitions(one.num_arrows());
  std::vector<char> done(one.num_arrows(), 0);
  for (ObjId a = 0; a < k->num_objects(); ++a) {
    transitions[one.identity(a)] = identity_functor(values[a]);
    done[one.identity(a)] = 1;
  }
  // generators get random functors, composites the composite functor
  for (ArrowId f = 0; f < one.num_arrows(); ++f) {
    if (done[f]) continue;
    bool composite = false;
    for (ArrowId g = 0; g < one.num_arrows() && !composite; ++g)
      for (ArrowId h : one.out(one.cod(g)))
        if (!one.is_identity(g) && !one.is_identity(h) && one.compose(g, h) == f) composite = true;
    if (composite) continue;
    auto fs = enumerate_functors(values[one.dom(f)], values[one.cod(f)]);
    transitions[f] = choose(rng, fs);
    done[f] = 1;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (ArrowId g = 0; g < one.num_arrows(); ++g)
      for (ArrowId h : one.out(one.cod(g))) {
        const ArrowId f = one.compose(g, h);
        if (!done[f] && done[g] && done[h]) {
          transitions[f] = compose_functors(transitions[g], transitions[h]);
          done[f] = 1;
          changed = true;
        }
      }
  }
  std::vector<NatTransf> cells;
  for (CellId c = 0; c < k->num_two_cells(); ++c) cells.push_back(identity_nat(transitions[k->src(c)]));
  PseudoFunctorPtr e = share(strict_pseudo_functor(Variance::covariant, k, values, transitions, cells));
  if (pick(rng, 2) == 0) e = twist(e, rng).target;
  PseudoFunctorPtr w = share(constant_pseudo_functor(Variance::contravariant, k, share(catalog::terminal())));
  return {"conical", e, w};
}

// ---------------------------------------------------------------- mutations

std::optional<FunctorMutation> mutate_pseudo_functor(const PseudoFunctor& F, Rng& rng) {
  const TwoCat& k = *F.shape;
  const FinCat& one = k.one();
  PseudoFunctor m = F;
  const int kind = pick(rng, 6);
  switch (kind) {
    case 0: {  // a cell component with the wrong ends
      const CellId c = pick(rng, k.num_two_cells());
      const FinCat& t = *F.values[to_fiber(F, k.src(c))];
      if (F.cells[c].components.empty()) return std::nullopt;
      const int x = pick(rng, static_cast<int>(F.cells[c].components.size()));
      auto bad = mistyped(t, F.cells[c][x]);
      if (bad.empty()) return std::nullopt;
      m.cells[c].components[x] = choose(rng, bad);
      return FunctorMutation{std::move(m), {"retype cell " + k.cell_name(c), [c](const Violation& v) {
                                              return v.kind == "cell-typing" && v.witness == std::vector<int>{c};
                                            }}};
    }
    case 1: {  // identity 2-cell sent to a non-identity endo
      const ArrowId f = pick(rng, one.num_arrows());
      const CellId c = k.id2(f);
      const FinCat& t = *F.values[to_fiber(F, f)];
      if (F.cells[c].components.empty()) return std::nullopt;
      const int x = pick(rng, static_cast<int>(F.cells[c].components.size()));
      auto alt = alternatives(t, F.cells[c][x], [](ArrowId) { return true; });
      if (alt.empty()) return std::nullopt;
      m.cells[c].components[x] = choose(rng, alt);
      return FunctorMutation{std::move(m), {"perturb identity cell on " + k.one_cell_name(f), [c](const Violation& v) {
                                              return is_one_of(v.kind, {"vertical-identity", "cell-naturality"}) &&
                                                     v.witness == std::vector<int>{c};
                                            }}};
    }
    case 2:    // compositor with an identity leg made non-identity
    case 3: {  // compositor component made non-invertible
      const bool unit_leg = kind == 2;
      std::vector<std::pair<ArrowId, ArrowId>> keys;
      for (const auto& [key, phi] : F.compositors)
        if (!unit_leg || one.is_identity(key.first) || one.is_identity(key.second)) keys.push_back(key);
      const auto key = choose(rng, keys);
      NatTransf& phi = m.compositors.at(key);
      if (phi.components.empty()) return std::nullopt;
      const FinCat& t = *phi.target.target;
      const int x = pick(rng, static_cast<int>(phi.components.size()));
      auto alt = alternatives(t, phi[x], [&](ArrowId a) { return unit_leg || !t.is_iso(a); });
      if (alt.empty()) return std::nullopt;
      phi.components[x] = choose(rng, alt);
      std::vector<int> w{key.first, key.second};
      return FunctorMutation{
          std::move(m),
          {"perturb compositor (" + k.one_cell_name(key.first) + ", " + k.one_cell_name(key.second) + ")",
           [w](const Violation& v) {
             return is_one_of(v.kind, {"compositor-naturality", "compositor-not-invertible", "normalization-compositor"}) &&
                    v.witness == w;
           }}};
    }
    case 4: {  // identity transition changed on one arrow
      const ObjId a = pick(rng, k.num_objects());
      const ArrowId id = one.identity(a);
      const FinCat& c = *F.values[a];
      if (c.num_arrows() == 0) return std::nullopt;
      const ArrowId u = pick(rng, c.num_arrows());
      auto alt = alternatives(c, u, [](ArrowId) { return true; });
      if (alt.empty()) return std::nullopt;
      m.transitions[id].arr_map[u] = choose(rng, alt);
      return FunctorMutation{std::move(m), {"perturb identity transition at " + k.object_name(a), [a, id](const Violation& v) {
                                              return (v.kind == "normalization-unit" && v.witness == std::vector<int>{a}) ||
                                                     (v.kind == "transition-functor" && v.witness == std::vector<int>{id});
                                            }}};
    }
    default: {  // any transition changed on one arrow; its identity cell no longer types
      const ArrowId f = pick(rng, one.num_arrows());
      const FinCat& s = *F.values[from_fiber(F, f)];
      const FinCat& t = *F.values[to_fiber(F, f)];
      if (s.num_arrows() == 0) return std::nullopt;
      const ArrowId u = pick(rng, s.num_arrows());
      const ArrowId old = F.transitions[f].arr(u);
      std::vector<ArrowId> alt;
      for (ArrowId b = 0; b < t.num_arrows(); ++b)
        if (b != old) alt.push_back(b);
      if (alt.empty()) return std::nullopt;
      m.transitions[f].arr_map[u] = choose(rng, alt);
      const TwoCatPtr shape = F.shape;
      const ObjId base = one.dom(f);
      return FunctorMutation{std::move(m), {"perturb transition of " + k.one_cell_name(f), [shape, f, base](const Violation& v) {
                                              const TwoCat& kk = *shape;
                                              if (is_one_of(v.kind, {"transition-typing", "transition-functor"}))
                                                return v.witness == std::vector<int>{f};
                                              if (v.kind == "normalization-unit")
                                                return kk.one().is_identity(f) && v.witness == std::vector<int>{base};
                                              if (is_one_of(v.kind, {"cell-typing", "cell-naturality"}))
                                                return cell_touches(kk, v.witness.at(0), f);
                                              if (v.kind.rfind("compositor", 0) == 0) return pair_involves(kk, v.witness, f);
                                              return false;
                                            }}};
    }
  }
}

std::optional<NaturalMutation> mutate_pseudo_natural(const PseudoNat& t, Rng& rng, bool oracle) {
  const PseudoFunctor& F = *t.source;
  const TwoCat& k = *F.shape;
  const FinCat& one = k.one();
  PseudoNat m = t;
  const TwoCatPtr shape = F.shape;
  auto involves = [shape](ArrowId f) {
    return [shape, f](const Violation& v) {
      const TwoCat& kk = *shape;
      if (v.kind.rfind("coherence", 0) == 0) return v.witness == std::vector<int>{f};
      if (v.kind == "pseudo-naturality-1") return pair_involves(kk, v.witness, f);
      if (v.kind == "pseudo-naturality-2") return cell_touches(kk, v.witness.at(0), f);
      return false;
    };
  };
  const int kind = pick(rng, oracle ? 5 : 4);
  if (kind == 3) {  // a component functor changed on one arrow
    const ObjId a = pick(rng, k.num_objects());
    const FinCat& s = *F.values[a];
    const FinCat& h = *t.target->values[a];
    if (s.num_arrows() == 0) return std::nullopt;
    const ArrowId u = pick(rng, s.num_arrows());
    std::vector<ArrowId> alt;
    for (ArrowId b = 0; b < h.num_arrows(); ++b)
      if (b != t.components[a].arr(u)) alt.push_back(b);
    if (alt.empty()) return std::nullopt;
    m.components[a].arr_map[u] = choose(rng, alt);
    return NaturalMutation{std::move(m), {"perturb component at " + k.object_name(a), [shape, a](const Violation& v) {
                                            if (v.kind.rfind("component", 0) == 0) return v.witness == std::vector<int>{a};
                                            if (v.kind == "coherence-typing") {
                                              const ArrowId f = v.witness.at(0);
                                              return shape->dom(f) == a || shape->cod(f) == a;
                                            }
                                            return false;
                                          }}};
  }
  // the other kinds change one coherence component
  ArrowId f = pick(rng, one.num_arrows());
  if (kind == 1) f = one.identity(pick(rng, k.num_objects()));
  NatTransf& c = m.coherence[f];
  if (c.components.empty()) return std::nullopt;
  const FinCat& h = *c.target.target;
  const int x = pick(rng, static_cast<int>(c.components.size()));
  std::vector<ArrowId> alt;
  switch (kind) {
    case 0:
      alt = mistyped(h, c[x]);
      break;
    case 1:
      alt = alternatives(h, c[x], [](ArrowId) { return true; });
      break;
    case 2:
      alt = alternatives(h, c[x], [&](ArrowId a) { return !h.is_iso(a); });
      break;
    default:
      alt = alternatives(h, c[x], [](ArrowId) { return true; });
      break;
  }
  if (alt.empty()) return std::nullopt;
  c.components[x] = choose(rng, alt);
  if (kind == 4) {
    // kept only when no valid pseudo-natural has this data
    try {
      for (const PseudoNat& n : enumerate_pseudo_naturals(t.source, t.target))
        if (same_pseudo_natural(n, m)) return std::nullopt;
    } catch (const BudgetExceeded&) {
      return std::nullopt;
    }
  }
  static const char* names[] = {"retype", "perturb identity", "make non-invertible", "", "perturb"};
  return NaturalMutation{std::move(m), {std::string(names[kind]) + " coherence at " + k.one_cell_name(f), involves(f)}};
}

SoundnessTally run_soundness(std::uint64_t seed, int valid, int mutations) {
  Rng rng(seed);
  SoundnessTally t;
  std::vector<PseudoFunctorPtr> fs;
  std::vector<PseudoNat> ns;
  for (int i = 0; i < valid; ++i) {
    const Variance v = i % 2 == 0 ? Variance::covariant : Variance::contravariant;
    PseudoFunctorPtr f = random_pseudo_functor(rng, v);
    ++t.functors;
    auto r = validate_pseudo_functor(*f);
    if (r.ok()) ++t.functors_valid;
    else t.failures.push_back("generated pseudo-functor rejected: " + r.summary());
    fs.push_back(f);
  }
  for (int i = 0; i < valid; ++i) {
    PseudoNat n = random_pseudo_natural(rng);
    ++t.naturals;
    auto r = validate_pseudo_natural(n);
    if (r.ok()) ++t.naturals_valid;
    else t.failures.push_back("generated pseudo-natural rejected: " + r.summary());
    ns.push_back(std::move(n));
  }
  auto judge = [&](const ValidationReport& r, const Mutation& m) {
    ++t.mutations;
    if (r.ok()) {
      t.failures.push_back("mutation accepted: " + m.description);
      return;
    }
    if (std::any_of(r.violations.begin(), r.violations.end(), m.names_it)) ++t.mutations_named;
    else t.failures.push_back("mutation rejected without naming it: " + m.description + ": " + r.summary());
  };
  for (int tries = 0; t.mutations < mutations && tries < 100 * mutations; ++tries) {
    if (tries % 2 == 0) {
      auto m = mutate_pseudo_functor(*choose(rng, fs), rng);
      if (m) judge(validate_pseudo_functor(m->mutated), m->what);
    } else {
      auto m = mutate_pseudo_natural(choose(rng, ns), rng, true);
      if (m) judge(validate_pseudo_natural(m->mutated), m->what);
    }
  }
  return t;
}

// ---------------------------------------------------------------- oracles

std::uint64_t brute_force_functor_count(const FinCat& c, const FinCat& x) {
  return brute_force_functors(std::make_shared<const FinCat>(c), std::make_shared<const FinCat>(x)).size();
}

std::uint64_t brute_force_nat_count(const Functor& f, const Functor& g) {
  const FinCat& x = *f.target;
  const int n = f.source->num_objects();
  std::vector<int> digits(n, 0), radix(n, x.num_arrows());
  if (x.num_arrows() == 0) return n == 0 ? 1 : 0;
  std::uint64_t count = 0;
  do {
    if (natural(f, g, digits)) ++count;
  } while (advance(digits, radix));
  return count;
}

std::uint64_t brute_force_pseudo_natural_count(const PseudoFunctorPtr& e, const PseudoFunctorPtr& h) {
  const PseudoFunctor& F = *e;
  const PseudoFunctor& G = *h;
  const TwoCat& k = *F.shape;
  const int n = k.num_objects();
  std::vector<std::vector<Functor>> comps;
  for (ObjId a = 0; a < n; ++a) comps.push_back(brute_force_functors(F.values[a], G.values[a]));
  for (const auto& c : comps)
    if (c.empty()) return 0;
  std::uint64_t count = 0;
  std::vector<int> ci(n, 0), cr(n);
  for (ObjId a = 0; a < n; ++a) cr[a] = static_cast<int>(comps[a].size());
  do {
    PseudoNat t{e, h, {}, {}};
    for (ObjId a = 0; a < n; ++a) t.components.push_back(comps[a][ci[a]]);
    // every coherence component is any arrow with the right ends
    std::vector<std::vector<ArrowId>> slots;  // per (f, x): candidates
    std::vector<std::pair<ArrowId, ObjId>> where;
    for (ArrowId f = 0; f < k.num_one_cells(); ++f) {
      const ObjId src = from_fiber(F, f), tgt = to_fiber(F, f);
      const Functor s = compose_functors(F.transitions[f], t.components[tgt]);
      const Functor g = compose_functors(t.components[src], G.transitions[f]);
      t.coherence.push_back(NatTransf{s, g, std::vector<ArrowId>(F.values[src]->num_objects(), -1)});
      for (ObjId x = 0; x < F.values[src]->num_objects(); ++x) {
        slots.push_back(hom_list(*G.values[tgt], s.obj(x), g.obj(x)));
        where.push_back({f, x});
      }
    }
    bool empty = std::any_of(slots.begin(), slots.end(), [](const auto& s) { return s.empty(); });
    if (empty) continue;
    std::vector<int> si(slots.size(), 0), sr;
    for (const auto& s : slots) sr.push_back(static_cast<int>(s.size()));
    do {
      for (std::size_t i = 0; i < slots.size(); ++i) t.coherence[where[i].first].components[where[i].second] = slots[i][si[i]];
      if (validate_pseudo_natural(t).ok()) ++count;
    } while (advance(si, sr));
  } while (advance(ci, cr));
  return count;
}

std::pair<int, int> filtered_sigma_functor_count(const ColimitPresentation& pres, const CatPtr& x) {
  std::vector<Functor> keep;
  for (const Functor& f : brute_force_functors(pres.p, x)) {
    bool ok = true;
    for (ArrowId s = 0; s < pres.p->num_arrows(); ++s)
      if (pres.in_sigma(s) && !x->is_iso(f.arr(s))) ok = false;
    if (ok) keep.push_back(f);
  }
  int arrows = 0;
  for (const Functor& a : keep)
    for (const Functor& b : keep) arrows += static_cast<int>(brute_force_nat_count(a, b));
  return {static_cast<int>(keep.size()), arrows};
}

bool brute_force_filtered(const FinCat& c) {
  const int n = c.num_objects();
  if (n == 0) return false;
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      bool span = false;
      for (ObjId z = 0; z < n && !span; ++z) span = !c.hom(z, x).empty() && !c.hom(z, y).empty();
      if (!span) return false;
    }
  for (ArrowId f = 0; f < c.num_arrows(); ++f)
    for (ArrowId g = 0; g < c.num_arrows(); ++g) {
      if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) continue;
      bool eq = false;
      for (ArrowId h = 0; h < c.num_arrows() && !eq; ++h)
        eq = c.cod(h) == c.dom(f) && c.compose(h, f) == c.compose(h, g);
      if (!eq) return false;
    }
  return true;
}

FinCat random_small_category(Rng& rng, int max_objects) {
  switch (pick(rng, 4)) {
    case 0:
      return catalog::cyclic_group(1 + pick(rng, 3));
    case 1:
      return pick(rng, 2) == 0 ? catalog::walking_idempotent() : parallel_pair();
    default: {
      const int n = 1 + pick(rng, max_objects);
      std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
      for (int i = 0; i < n; ++i) r[i][i] = 1;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && pick(rng, 3) == 0) r[i][j] = 1;
      for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (r[i][m] && r[m][j]) r[i][j] = 1;
      std::vector<FinCat::Ends> ends;
      std::vector<ArrowId> ids(n);
      std::map<std::pair<int, int>, ArrowId> index;
      for (int i = 0; i < n; ++i) {
        ids[i] = static_cast<ArrowId>(ends.size());
        index[{i, i}] = ids[i];
        ends.push_back({i, i});
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && r[i][j]) {
            index[{i, j}] = static_cast<ArrowId>(ends.size());
            ends.push_back({i, j});
          }
      auto e = ends;
      return FinCat::generate(n, ends, ids, [&](ArrowId f, ArrowId g) { return index.at({e[f].dom, e[g].cod}); });
    }
  }
}

}  // namespace wcolim::testing
