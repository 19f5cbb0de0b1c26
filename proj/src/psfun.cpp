#include "wcolim/psfun.hpp"

#include <algorithm>
#include <functional>

namespace wcolim {

const NatTransf& PseudoFunctor::compositor(ArrowId f, ArrowId g) const {
  auto it = compositors.find({f, g});
  if (it == compositors.end())
    throw StructureError("no compositor for (" + shape->one_cell_name(f) + ", " + shape->one_cell_name(g) + ")");
  return it->second;
}

bool PseudoFunctor::is_strict() const {
  return std::all_of(compositors.begin(), compositors.end(), [](const auto& kv) { return is_identity_nat(kv.second); });
}

Functor compositor_source(const PseudoFunctor& e, ArrowId f, ArrowId g) {
  return e.variance == Variance::covariant ? compose_functors(e.transitions[f], e.transitions[g])
                                           : compose_functors(e.transitions[g], e.transitions[f]);
}

PseudoFunctor strict_pseudo_functor(Variance variance, TwoCatPtr shape, std::vector<CatPtr> values,
                                    std::vector<Functor> transitions, std::vector<NatTransf> cells) {
  PseudoFunctor e{variance, std::move(shape), std::move(values), std::move(transitions), std::move(cells), {}};
  const FinCat& one = e.shape->one();
  for (ArrowId f = 0; f < one.num_arrows(); ++f)
    for (ArrowId g : one.out(one.cod(f))) {
      Functor src = compositor_source(e, f, g);
      NatTransf phi{src, e.transitions[one.compose(f, g)], {}};
      for (ObjId o : src.obj_map) phi.components.push_back(src.target->identity(o));
      e.compositors.emplace(std::make_pair(f, g), std::move(phi));
    }
  return e;
}

PseudoFunctor constant_pseudo_functor(Variance variance, TwoCatPtr shape, const CatPtr& value) {
  std::vector<CatPtr> values(shape->num_objects(), value);
  const Functor id = identity_functor(value);
  std::vector<Functor> transitions(shape->num_one_cells(), id);
  std::vector<NatTransf> cells(shape->num_two_cells(), identity_nat(id));
  return strict_pseudo_functor(variance, std::move(shape), std::move(values), std::move(transitions),
                               std::move(cells));
}

PseudoFunctor covariant_view(const PseudoFunctor& e, const TwoCatPtr& op_shape) {
  if (e.variance == Variance::covariant) return e;
  PseudoFunctor v{Variance::covariant, op_shape, e.values, e.transitions, e.cells, {}};
  for (const auto& [key, phi] : e.compositors) v.compositors.emplace(std::make_pair(key.second, key.first), phi);
  return v;
}

bool PseudoNat::is_two_natural() const {
  return std::all_of(coherence.begin(), coherence.end(), [](const NatTransf& a) { return is_identity_nat(a); });
}

// ---------------------------------------------------------------- coherence equations (covariant reading)

namespace {

/// Pseudo-naturality 1 at the pair (f, g) and every X of F(dom f).
bool pn1_holds(const PseudoFunctor& F, const PseudoFunctor& G, const std::vector<Functor>& comp,
               const std::vector<NatTransf>& coh, ArrowId f, ArrowId g, ObjId* bad_x = nullptr) {
  const FinCat& one = F.shape->one();
  const ObjId a = one.dom(f);
  const ObjId c = one.cod(g);
  const ArrowId fg = one.compose(f, g);
  const FinCat& gc = *G.values[c];
  const Functor& Ff = F.transitions[f];
  const Functor& Gg = G.transitions[g];
  const NatTransf& phiF = F.compositor(f, g);
  const NatTransf& phiG = G.compositor(f, g);
  for (ObjId x = 0; x < F.values[a]->num_objects(); ++x) {
    const ArrowId lhs = gc.compose({coh[g][Ff.obj(x)], Gg.arr(coh[f][x]), phiG[comp[a].obj(x)]});
    const ArrowId rhs = gc.compose(comp[c].arr(phiF[x]), coh[fg][x]);
    if (lhs != rhs) {
      if (bad_x) *bad_x = x;
      return false;
    }
  }
  return true;
}

/// Pseudo-naturality 2 at the 2-cell s.
bool pn2_holds(const PseudoFunctor& F, const PseudoFunctor& G, const std::vector<Functor>& comp,
               const std::vector<NatTransf>& coh, CellId s, ObjId* bad_x = nullptr) {
  const TwoCat& k = *F.shape;
  const ArrowId f = k.src(s);
  const ArrowId g = k.tgt(s);
  const ObjId a = k.dom(f);
  const ObjId b = k.cod(f);
  const FinCat& gb = *G.values[b];
  for (ObjId x = 0; x < F.values[a]->num_objects(); ++x) {
    const ArrowId lhs = gb.compose(coh[f][x], G.cells[s][comp[a].obj(x)]);
    const ArrowId rhs = gb.compose(comp[b].arr(F.cells[s][x]), coh[g][x]);
    if (lhs != rhs) {
      if (bad_x) *bad_x = x;
      return false;
    }
  }
  return true;
}

std::string pair_name(const TwoCat& k, ArrowId f, ArrowId g) {
  return "(" + k.one_cell_name(f) + ", " + k.one_cell_name(g) + ")";
}

ValidationReport validate_covariant(const PseudoFunctor& F, bool flipped) {
  ValidationReport r;
  const TwoCat& k = *F.shape;
  const FinCat& one = k.one();
  if (static_cast<int>(F.values.size()) != k.num_objects() ||
      static_cast<int>(F.transitions.size()) != k.num_one_cells() ||
      static_cast<int>(F.cells.size()) != k.num_two_cells()) {
    r.add("pseudo-functor-typing", "data sizes do not match the shape");
    return r;
  }
  auto wpair = [&](ArrowId f, ArrowId g) { return flipped ? std::vector<int>{g, f} : std::vector<int>{f, g}; };
  auto npair = [&](ArrowId f, ArrowId g) { return flipped ? pair_name(k, g, f) : pair_name(k, f, g); };

  for (ObjId a = 0; a < k.num_objects(); ++a)
    r.append(validate_category(*F.values[a]), "value at " + k.object_name(a) + ": ");
  bool typed = r.ok();
  for (ArrowId f = 0; f < one.num_arrows(); ++f) {
    const Functor& t = F.transitions[f];
    if (!same_category(t.source, F.values[one.dom(f)]) || !same_category(t.target, F.values[one.cod(f)])) {
      r.add("transition-typing", "transition of " + k.one_cell_name(f), {f});
      typed = false;
      continue;
    }
    auto v = validate_functor(t);
    if (!v.ok()) {
      r.add("transition-functor", "transition of " + k.one_cell_name(f) + ": " + v.violations.front().where, {f});
      typed = false;
    }
  }
  if (!typed) return r;
  for (ObjId a = 0; a < k.num_objects(); ++a)
    if (!is_identity_functor(F.transitions[k.id1(a)]))
      r.add("normalization-unit", "transition of the identity at " + k.object_name(a), {a});
  for (CellId c = 0; c < k.num_two_cells(); ++c) {
    const NatTransf& t = F.cells[c];
    if (!(t.source == F.transitions[k.src(c)]) || !(t.target == F.transitions[k.tgt(c)])) {
      r.add("cell-typing", "image of " + k.cell_name(c), {c});
      typed = false;
      continue;
    }
    auto v = validate_nat_transf(t);
    if (!v.ok()) {
      r.add(v.has("nat-typing") ? "cell-typing" : "cell-naturality", "image of " + k.cell_name(c), {c});
      typed = false;
    }
  }
  for (ArrowId f = 0; f < one.num_arrows(); ++f)
    for (ArrowId g : one.out(one.cod(f))) {
      auto it = F.compositors.find({f, g});
      if (it == F.compositors.end()) {
        r.add("compositor-missing", npair(f, g), wpair(f, g));
        typed = false;
        continue;
      }
      const NatTransf& phi = it->second;
      if (!(phi.source == compose_functors(F.transitions[f], F.transitions[g])) ||
          !(phi.target == F.transitions[one.compose(f, g)])) {
        r.add("compositor-typing", npair(f, g), wpair(f, g));
        typed = false;
        continue;
      }
      auto v = validate_nat_transf(phi);
      if (!v.ok()) {
        r.add(v.has("nat-typing") ? "compositor-typing" : "compositor-naturality", npair(f, g), wpair(f, g));
        typed = false;
        continue;
      }
      if (!is_invertible(phi)) r.add("compositor-not-invertible", npair(f, g), wpair(f, g));
      if ((one.is_identity(f) || one.is_identity(g)) && !is_identity_nat(phi))
        r.add("normalization-compositor", npair(f, g), wpair(f, g));
    }
  if (!typed) return r;

  for (ArrowId f = 0; f < one.num_arrows(); ++f)
    if (!is_identity_nat(F.cells[k.id2(f)]))
      r.add("vertical-identity", "image of the identity 2-cell on " + k.one_cell_name(f), {k.id2(f)});
  for (CellId a = 0; a < k.num_two_cells(); ++a)
    for (CellId b : k.cells_from(k.tgt(a))) {
      const NatTransf lhs = vcompose_nat(F.cells[a], F.cells[b]);
      if (lhs.components != F.cells[k.vcompose(a, b)].components)
        r.add("vertical-functoriality", k.cell_name(a) + " then " + k.cell_name(b), {a, b});
    }
  // horizontal coherence: φ_{g,k}(Fβ∗Fα) = F(β∗α)φ_{f,h}
  for (CellId al = 0; al < k.num_two_cells(); ++al)
    for (CellId be : k.cells_out_of(k.cod(k.src(al)))) {
      const ArrowId f = k.src(al), g = k.tgt(al), h = k.src(be), kk = k.tgt(be);
      const ObjId a = k.dom(f);
      const FinCat& target = *F.values[k.cod(h)];
      const NatTransf& composite = F.cells[k.hcompose(al, be)];
      const NatTransf& phi_gk = F.compositor(g, kk);
      const NatTransf& phi_fh = F.compositor(f, h);
      for (ObjId x = 0; x < F.values[a]->num_objects(); ++x) {
        const ArrowId lhs =
            target.compose({F.transitions[h].arr(F.cells[al][x]), F.cells[be][F.transitions[g].obj(x)], phi_gk[x]});
        const ArrowId rhs = target.compose(phi_fh[x], composite[x]);
        if (lhs != rhs) {
          r.add("horizontal-coherence",
                flipped ? "(" + k.cell_name(be) + ", " + k.cell_name(al) + ")"
                        : "(" + k.cell_name(al) + ", " + k.cell_name(be) + ")",
                flipped ? std::vector<int>{be, al} : std::vector<int>{al, be});
          break;
        }
      }
    }
  // associativity of compositors
  for (ArrowId f = 0; f < one.num_arrows(); ++f)
    for (ArrowId g : one.out(one.cod(f)))
      for (ArrowId h : one.out(one.cod(g))) {
        const ArrowId fg = one.compose(f, g);
        const ArrowId gh = one.compose(g, h);
        const FinCat& target = *F.values[one.cod(h)];
        const Functor& Ff = F.transitions[f];
        for (ObjId x = 0; x < F.values[one.dom(f)]->num_objects(); ++x) {
          const ArrowId lhs = target.compose(F.compositor(g, h)[Ff.obj(x)], F.compositor(f, gh)[x]);
          const ArrowId rhs = target.compose(F.transitions[h].arr(F.compositor(f, g)[x]), F.compositor(fg, h)[x]);
          if (lhs != rhs) {
            std::vector<int> w = flipped ? std::vector<int>{h, g, f} : std::vector<int>{f, g, h};
            r.add("compositor-associativity",
                  "(" + k.one_cell_name(w[0]) + ", " + k.one_cell_name(w[1]) + ", " + k.one_cell_name(w[2]) + ")", w);
            break;
          }
        }
      }
  return r;
}

TwoCatPtr view_shape(const PseudoFunctor& e) {
  return e.variance == Variance::covariant ? e.shape : share(op_dual(*e.shape));
}

}  // namespace

ValidationReport validate_pseudo_functor(const PseudoFunctor& e) {
  if (!e.shape) {
    ValidationReport r;
    r.add("pseudo-functor-typing", "missing shape");
    return r;
  }
  const bool flipped = e.variance == Variance::contravariant;
  return validate_covariant(covariant_view(e, view_shape(e)), flipped);
}

ValidationReport validate_pseudo_natural(const PseudoNat& t) {
  ValidationReport r;
  if (!t.source || !t.target || t.source->variance != t.target->variance ||
      !(t.source->shape == t.target->shape || *t.source->shape == *t.target->shape)) {
    r.add("pseudo-natural-typing", "source and target are not parallel");
    return r;
  }
  const bool flipped = t.source->variance == Variance::contravariant;
  const TwoCatPtr vs = view_shape(*t.source);
  const PseudoFunctor F = covariant_view(*t.source, vs);
  const PseudoFunctor G = covariant_view(*t.target, vs);
  const TwoCat& k = *vs;
  const FinCat& one = k.one();
  if (static_cast<int>(t.components.size()) != k.num_objects() ||
      static_cast<int>(t.coherence.size()) != k.num_one_cells()) {
    r.add("pseudo-natural-typing", "data sizes do not match the shape");
    return r;
  }
  bool typed = true;
  for (ObjId a = 0; a < k.num_objects(); ++a) {
    const Functor& c = t.components[a];
    if (!same_category(c.source, F.values[a]) || !same_category(c.target, G.values[a])) {
      r.add("component-typing", "component at " + k.object_name(a), {a});
      typed = false;
      continue;
    }
    if (!validate_functor(c).ok()) {
      r.add("component-functor", "component at " + k.object_name(a), {a});
      typed = false;
    }
  }
  if (!typed) return r;
  for (ArrowId f = 0; f < one.num_arrows(); ++f) {
    const NatTransf& c = t.coherence[f];
    if (!(c.source == compose_functors(F.transitions[f], t.components[one.cod(f)])) ||
        !(c.target == compose_functors(t.components[one.dom(f)], G.transitions[f]))) {
      r.add("coherence-typing", "coherence at " + k.one_cell_name(f), {f});
      typed = false;
      continue;
    }
    auto v = validate_nat_transf(c);
    if (!v.ok()) {
      r.add(v.has("nat-typing") ? "coherence-typing" : "coherence-naturality", "coherence at " + k.one_cell_name(f),
            {f});
      typed = false;
      continue;
    }
    if (!is_invertible(c)) r.add("coherence-not-invertible", "coherence at " + k.one_cell_name(f), {f});
  }
  if (!typed) return r;
  for (ArrowId f = 0; f < one.num_arrows(); ++f)
    for (ArrowId g : one.out(one.cod(f))) {
      ObjId x = -1;
      if (!pn1_holds(F, G, t.components, t.coherence, f, g, &x))
        r.add("pseudo-naturality-1",
              (flipped ? pair_name(k, g, f) : pair_name(k, f, g)) + " at object " + std::to_string(x),
              flipped ? std::vector<int>{g, f} : std::vector<int>{f, g});
    }
  for (CellId s = 0; s < k.num_two_cells(); ++s) {
    ObjId x = -1;
    if (!pn2_holds(F, G, t.components, t.coherence, s, &x))
      r.add("pseudo-naturality-2", k.cell_name(s) + " at object " + std::to_string(x), {s});
  }
  return r;
}

ValidationReport validate_modification(const Modification& m) {
  ValidationReport r;
  if (!m.source || !m.target || m.source->source != m.target->source || m.source->target != m.target->target) {
    r.add("modification-typing", "source and target are not parallel");
    return r;
  }
  const TwoCatPtr vs = view_shape(*m.source->source);
  const PseudoFunctor F = covariant_view(*m.source->source, vs);
  const PseudoFunctor G = covariant_view(*m.source->target, vs);
  const TwoCat& k = *vs;
  const FinCat& one = k.one();
  if (static_cast<int>(m.components.size()) != k.num_objects()) {
    r.add("modification-typing", "wrong number of components");
    return r;
  }
  bool typed = true;
  for (ObjId a = 0; a < k.num_objects(); ++a) {
    const NatTransf& c = m.components[a];
    if (!(c.source == m.source->components[a]) || !(c.target == m.target->components[a]) ||
        !validate_nat_transf(c).ok()) {
      r.add("modification-component", "component at " + k.object_name(a), {a});
      typed = false;
    }
  }
  if (!typed) return r;
  const auto& s = m.source->coherence;
  const auto& t = m.target->coherence;
  for (ArrowId f = 0; f < one.num_arrows(); ++f) {
    const ObjId a = one.dom(f), b = one.cod(f);
    const FinCat& gb = *G.values[b];
    for (ObjId x = 0; x < F.values[a]->num_objects(); ++x) {
      const ArrowId lhs = gb.compose(s[f][x], G.transitions[f].arr(m.components[a][x]));
      const ArrowId rhs = gb.compose(m.components[b][F.transitions[f].obj(x)], t[f][x]);
      if (lhs != rhs) {
        r.add("modification-condition", "at " + k.one_cell_name(f) + ", object " + std::to_string(x), {f});
        break;
      }
    }
  }
  return r;
}

PseudoNat identity_pseudo_natural(const PseudoFunctorPtr& e) {
  PseudoNat t{e, e, {}, {}};
  for (const auto& v : e->values) t.components.push_back(identity_functor(v));
  for (const auto& tr : e->transitions) t.coherence.push_back(identity_nat(tr));
  return t;
}

Modification identity_modification(const PseudoNatPtr& t) {
  Modification m{t, t, {}};
  for (const auto& c : t->components) m.components.push_back(identity_nat(c));
  return m;
}

Modification compose_modifications(const Modification& a, const Modification& b) {
  Modification m{a.source, b.target, {}};
  for (std::size_t i = 0; i < a.components.size(); ++i)
    m.components.push_back(vcompose_nat(a.components[i], b.components[i]));
  return m;
}

// ---------------------------------------------------------------- derived pseudo-functors

HomPseudoFunctor hom_pseudo_functor(const PseudoFunctorPtr& e, const CatPtr& x, const Budget& budget) {
  if (e->variance != Variance::covariant) throw StructureError("hom_pseudo_functor needs a covariant functor");
  const TwoCat& k = *e->shape;
  HomPseudoFunctor h{nullptr, e, x, {}};
  std::vector<CatPtr> values;
  for (ObjId c = 0; c < k.num_objects(); ++c) {
    h.fibers.push_back(FunctorCategory::build(e->values[c], x, budget));
    values.push_back(h.fibers.back()->cat());
  }
  std::vector<Functor> transitions;
  for (ArrowId f = 0; f < k.num_one_cells(); ++f) {
    const FunctorCategory& from = *h.fibers[k.cod(f)];
    const FunctorCategory& to = *h.fibers[k.dom(f)];
    const Functor& ef = e->transitions[f];
    Functor t{from.cat(), to.cat(), {}, {}};
    for (ObjId p = 0; p < from.cat()->num_objects(); ++p)
      t.obj_map.push_back(to.index_of(compose_functors(ef, from.functor(p))));
    for (ArrowId a = 0; a < from.cat()->num_arrows(); ++a) {
      std::vector<ArrowId> comps;
      for (ObjId o : ef.obj_map) comps.push_back(from.components(a)[o]);
      auto id = to.find(t.obj_map[from.cat()->dom(a)], t.obj_map[from.cat()->cod(a)], comps);
      if (!id) throw InvariantError("hom_pseudo_functor: restricted transformation missing");
      t.arr_map.push_back(*id);
    }
    transitions.push_back(std::move(t));
  }
  // P ↦ components P((α_!)_X)
  std::vector<NatTransf> cells;
  for (CellId c = 0; c < k.num_two_cells(); ++c) {
    const ArrowId f = k.src(c), g = k.tgt(c);
    const FunctorCategory& from = *h.fibers[k.cod(f)];
    const FunctorCategory& to = *h.fibers[k.dom(f)];
    NatTransf out{transitions[f], transitions[g], {}};
    for (ObjId p = 0; p < from.cat()->num_objects(); ++p) {
      const Functor& P = from.functor(p);
      std::vector<ArrowId> comps;
      for (ArrowId u : e->cells[c].components) comps.push_back(P.arr(u));
      auto id = to.find(transitions[f].obj(p), transitions[g].obj(p), comps);
      if (!id) throw InvariantError("hom_pseudo_functor: 2-cell image component missing");
      out.components.push_back(*id);
    }
    cells.push_back(std::move(out));
  }
  PseudoFunctor hf{Variance::contravariant, e->shape, std::move(values), std::move(transitions), std::move(cells), {}};
  const FinCat& one = k.one();
  for (ArrowId f = 0; f < one.num_arrows(); ++f)
    for (ArrowId g : one.out(one.cod(f))) {
      const FunctorCategory& from = *h.fibers[one.cod(g)];
      const FunctorCategory& to = *h.fibers[one.dom(f)];
      Functor src = compositor_source(hf, f, g);
      const Functor& tgt = hf.transitions[one.compose(f, g)];
      const NatTransf& phi = e->compositor(f, g);
      NatTransf out{src, tgt, {}};
      for (ObjId p = 0; p < from.cat()->num_objects(); ++p) {
        const Functor& P = from.functor(p);
        std::vector<ArrowId> comps;
        for (ArrowId u : phi.components) comps.push_back(P.arr(u));
        auto id = to.find(src.obj(p), tgt.obj(p), comps);
        if (!id) throw InvariantError("hom_pseudo_functor: compositor component missing");
        out.components.push_back(*id);
      }
      hf.compositors.emplace(std::make_pair(f, g), std::move(out));
    }
  h.functor = share(std::move(hf));
  return h;
}

PseudoFunctor representable(const TwoCatPtr& k, ObjId c) {
  const TwoCat& kk = *k;
  std::vector<HomSlice> slices;
  std::vector<CatPtr> values;
  for (ObjId b = 0; b < kk.num_objects(); ++b) {
    slices.push_back(hom_slice(kk, b, c));
    values.push_back(slices.back().cat);
  }
  std::vector<Functor> transitions;
  for (ArrowId h = 0; h < kk.num_one_cells(); ++h) {
    const HomSlice& from = slices[kk.cod(h)];
    const HomSlice& to = slices[kk.dom(h)];
    Functor t{from.cat, to.cat, {}, {}};
    for (ArrowId g : from.one_cell) t.obj_map.push_back(to.local_object[kk.hcompose1(h, g)]);
    for (CellId s : from.cell) t.arr_map.push_back(to.local_arrow[kk.hcompose(kk.id2(h), s)]);
    transitions.push_back(std::move(t));
  }
  std::vector<NatTransf> cells;
  for (CellId s = 0; s < kk.num_two_cells(); ++s) {
    const HomSlice& from = slices[kk.cod(kk.src(s))];
    const HomSlice& to = slices[kk.dom(kk.src(s))];
    NatTransf a{transitions[kk.src(s)], transitions[kk.tgt(s)], {}};
    for (ArrowId g : from.one_cell) a.components.push_back(to.local_arrow[kk.hcompose(s, kk.id2(g))]);
    cells.push_back(std::move(a));
  }
  return strict_pseudo_functor(Variance::contravariant, k, std::move(values), std::move(transitions),
                               std::move(cells));
}

TwoCatPtr bifunctor_shape(const TwoCat& k) { return share(product(k, op_dual(k))); }

PseudoFunctor hom_bifunctor(const TwoCat& k, const TwoCatPtr& shape) {
  const int n = k.num_objects();
  const int m1 = k.num_one_cells();
  const int m2 = k.num_two_cells();
  std::vector<HomSlice> slices;
  std::vector<CatPtr> values;
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d) {
      slices.push_back(hom_slice(k, c, d));
      values.push_back(slices.back().cat);
    }
  const TwoCat& s = *shape;
  std::vector<Functor> transitions;
  for (ArrowId p = 0; p < s.num_one_cells(); ++p) {
    const ArrowId h = p / m1, q = p % m1;
    const HomSlice& from = slices[s.cod(p)];
    const HomSlice& to = slices[s.dom(p)];
    Functor t{from.cat, to.cat, {}, {}};
    for (ArrowId g : from.one_cell) t.obj_map.push_back(to.local_object[k.one().compose({h, g, q})]);
    for (CellId c : from.cell)
      t.arr_map.push_back(to.local_arrow[k.hcompose(k.hcompose(k.id2(h), c), k.id2(q))]);
    transitions.push_back(std::move(t));
  }
  std::vector<NatTransf> cells;
  for (CellId pc = 0; pc < s.num_two_cells(); ++pc) {
    const CellId gamma = pc / m2, theta = pc % m2;
    const ArrowId p = s.src(pc);
    const HomSlice& from = slices[s.cod(p)];
    const HomSlice& to = slices[s.dom(p)];
    NatTransf a{transitions[s.src(pc)], transitions[s.tgt(pc)], {}};
    for (ArrowId g : from.one_cell)
      a.components.push_back(to.local_arrow[k.hcompose(k.hcompose(gamma, k.id2(g)), theta)]);
    cells.push_back(std::move(a));
  }
  return strict_pseudo_functor(Variance::contravariant, shape, std::move(values), std::move(transitions),
                               std::move(cells));
}

namespace {
Functor product_functor(const Functor& f, const Functor& g, const CatPtr& src, const CatPtr& tgt) {
  Functor p{src, tgt, {}, {}};
  const FinCat& gt = *g.target;
  for (ObjId a : f.obj_map)
    for (ObjId b : g.obj_map) p.obj_map.push_back(product_object(gt, a, b));
  for (ArrowId a : f.arr_map)
    for (ArrowId b : g.arr_map) p.arr_map.push_back(product_arrow(gt, a, b));
  return p;
}

NatTransf product_nat(const NatTransf& a, const NatTransf& b, Functor src, Functor tgt) {
  NatTransf p{std::move(src), std::move(tgt), {}};
  const FinCat& bt = *b.source.target;
  for (ArrowId x : a.components)
    for (ArrowId y : b.components) p.components.push_back(product_arrow(bt, x, y));
  return p;
}
}  // namespace

PseudoFunctor product_bifunctor(const PseudoFunctor& e, const PseudoFunctor& w, const TwoCatPtr& shape) {
  if (e.variance != Variance::covariant || w.variance != Variance::contravariant)
    throw StructureError("product_bifunctor needs a covariant and a contravariant functor");
  if (!(e.shape == w.shape || *e.shape == *w.shape)) throw StructureError("product_bifunctor: shapes differ");
  const TwoCat& k = *e.shape;
  const int n = k.num_objects();
  const int m1 = k.num_one_cells();
  const int m2 = k.num_two_cells();
  std::vector<CatPtr> values;
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d) values.push_back(share(product(*e.values[c], *w.values[d])));
  const TwoCat& s = *shape;
  std::vector<Functor> transitions;
  for (ArrowId p = 0; p < s.num_one_cells(); ++p)
    transitions.push_back(
        product_functor(e.transitions[p / m1], w.transitions[p % m1], values[s.dom(p)], values[s.cod(p)]));
  std::vector<NatTransf> cells;
  for (CellId pc = 0; pc < s.num_two_cells(); ++pc)
    cells.push_back(product_nat(e.cells[pc / m2], w.cells[pc % m2], transitions[s.src(pc)], transitions[s.tgt(pc)]));
  PseudoFunctor out{Variance::covariant, shape, std::move(values), std::move(transitions), std::move(cells), {}};
  const FinCat& one = s.one();
  for (ArrowId p = 0; p < one.num_arrows(); ++p)
    for (ArrowId q : one.out(one.cod(p))) {
      const NatTransf& pe = e.compositor(p / m1, q / m1);
      const NatTransf& pw = w.compositor(q % m1, p % m1);
      out.compositors.emplace(std::make_pair(p, q), product_nat(pe, pw, compositor_source(out, p, q),
                                                                out.transitions[one.compose(p, q)]));
    }
  return out;
}

// ---------------------------------------------------------------- enumeration

namespace {

struct PseudoNatSearch {
  const PseudoFunctor& F;  // covariant views
  const PseudoFunctor& G;
  const TwoCat& k;
  CandidateCounter counter;
  const Budget& budget;
  struct Step {
    bool is_object;
    int id;
  };
  std::vector<Step> steps;
  std::vector<std::vector<Functor>> component_candidates;
  std::vector<std::vector<CellId>> cells_closing;                     // by 1-cell
  std::vector<std::vector<std::pair<ArrowId, ArrowId>>> pairs_closing;  // by 1-cell
  std::vector<Functor> comp;
  std::vector<NatTransf> coh;
  std::vector<int> choice;
  std::map<std::tuple<ArrowId, int, int>, std::vector<NatTransf>> coherence_cache;
  std::function<void()> emit;

  PseudoNatSearch(const PseudoFunctor& f, const PseudoFunctor& g, const Budget& b)
      : F(f), G(g), k(*f.shape), counter("pseudo-natural enumeration", b.max_candidates), budget(b) {
    const FinCat& one = k.one();
    std::vector<int> when(one.num_arrows(), 0);
    int t = 0;
    for (ObjId a = 0; a < k.num_objects(); ++a) {
      steps.push_back({true, a});
      ++t;
      for (ArrowId f1 = 0; f1 < one.num_arrows(); ++f1)
        if (std::max(one.dom(f1), one.cod(f1)) == a) {
          steps.push_back({false, f1});
          when[f1] = t++;
        }
    }
    cells_closing.resize(one.num_arrows());
    for (CellId s = 0; s < k.num_two_cells(); ++s) {
      const ArrowId last = when[k.src(s)] >= when[k.tgt(s)] ? k.src(s) : k.tgt(s);
      cells_closing[last].push_back(s);
    }
    pairs_closing.resize(one.num_arrows());
    for (ArrowId f1 = 0; f1 < one.num_arrows(); ++f1)
      for (ArrowId g1 : one.out(one.cod(f1))) {
        const ArrowId h1 = one.compose(f1, g1);
        ArrowId last = f1;
        for (ArrowId z : {g1, h1})
          if (when[z] > when[last]) last = z;
        pairs_closing[last].push_back({f1, g1});
      }
    for (ObjId a = 0; a < k.num_objects(); ++a)
      component_candidates.push_back(enumerate_functors(F.values[a], G.values[a], budget));
    comp.resize(k.num_objects());
    coh.resize(one.num_arrows());
    choice.assign(k.num_objects(), -1);
  }

  const std::vector<NatTransf>& coherence_candidates(ArrowId f) {
    const FinCat& one = k.one();
    const ObjId a = one.dom(f), b = one.cod(f);
    auto key = std::make_tuple(f, choice[a], choice[b]);
    auto it = coherence_cache.find(key);
    if (it != coherence_cache.end()) return it->second;
    std::vector<NatTransf> list;
    const Functor src = compose_functors(F.transitions[f], comp[b]);
    const Functor tgt = compose_functors(comp[a], G.transitions[f]);
    if (one.is_identity(f)) {
      if (src == tgt) list.push_back(identity_nat(src));
    } else {
      list = enumerate_nat_transfs(src, tgt, budget, true);
    }
    return coherence_cache.emplace(key, std::move(list)).first->second;
  }

  void run(std::size_t i) {
    if (i == steps.size()) {
      emit();
      return;
    }
    const Step st = steps[i];
    if (st.is_object) {
      const auto& cands = component_candidates[st.id];
      for (std::size_t j = 0; j < cands.size(); ++j) {
        counter.tick();
        comp[st.id] = cands[j];
        choice[st.id] = static_cast<int>(j);
        run(i + 1);
      }
      choice[st.id] = -1;
      return;
    }
    const ArrowId f = st.id;
    for (const NatTransf& cand : coherence_candidates(f)) {
      counter.tick();
      coh[f] = cand;
      bool ok = true;
      for (CellId s : cells_closing[f])
        if (!pn2_holds(F, G, comp, coh, s)) {
          ok = false;
          break;
        }
      if (ok)
        for (auto [f1, g1] : pairs_closing[f])
          if (!pn1_holds(F, G, comp, coh, f1, g1)) {
            ok = false;
            break;
          }
      if (ok) run(i + 1);
    }
  }
};

}  // namespace

std::vector<PseudoNat> enumerate_pseudo_naturals(const PseudoFunctorPtr& e, const PseudoFunctorPtr& h,
                                                 const Budget& budget) {
  if (e->variance != h->variance || !(e->shape == h->shape || *e->shape == *h->shape))
    throw StructureError("enumerate_pseudo_naturals: functors are not parallel");
  const TwoCatPtr vs = view_shape(*e);
  const PseudoFunctor F = covariant_view(*e, vs);
  const PseudoFunctor G = covariant_view(*h, vs);
  PseudoNatSearch search(F, G, budget);
  std::vector<PseudoNat> out;
  search.emit = [&] { out.push_back(PseudoNat{e, h, search.comp, search.coh}); };
  search.run(0);
  return out;
}

std::vector<Modification> enumerate_modifications(const PseudoNatPtr& s, const PseudoNatPtr& t, const Budget& budget) {
  if (s->source != t->source || s->target != t->target)
    throw StructureError("enumerate_modifications: transformations are not parallel");
  const TwoCatPtr vs = view_shape(*s->source);
  const PseudoFunctor F = covariant_view(*s->source, vs);
  const PseudoFunctor G = covariant_view(*s->target, vs);
  const TwoCat& k = *vs;
  const FinCat& one = k.one();
  std::vector<std::vector<ArrowId>> closing(k.num_objects());
  for (ArrowId f = 0; f < one.num_arrows(); ++f) closing[std::max(one.dom(f), one.cod(f))].push_back(f);
  std::vector<std::vector<NatTransf>> cands;
  for (ObjId a = 0; a < k.num_objects(); ++a)
    cands.push_back(enumerate_nat_transfs(s->components[a], t->components[a], budget));
  CandidateCounter counter("modification enumeration", budget.max_candidates);
  std::vector<NatTransf> m(k.num_objects());
  std::vector<Modification> out;
  std::function<void(ObjId)> rec = [&](ObjId a) {
    if (a == k.num_objects()) {
      out.push_back(Modification{s, t, m});
      return;
    }
    for (const NatTransf& c : cands[a]) {
      counter.tick();
      m[a] = c;
      bool ok = true;
      for (ArrowId f : closing[a]) {
        const ObjId d = one.dom(f), e2 = one.cod(f);
        const FinCat& gb = *G.values[e2];
        for (ObjId x = 0; x < F.values[d]->num_objects() && ok; ++x)
          ok = gb.compose(s->coherence[f][x], G.transitions[f].arr(m[d][x])) ==
               gb.compose(m[e2][F.transitions[f].obj(x)], t->coherence[f][x]);
        if (!ok) break;
      }
      if (ok) rec(a + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<int> pseudo_natural_key(const PseudoNat& t) {
  std::vector<int> key;
  for (const auto& c : t.components) {
    key.insert(key.end(), c.obj_map.begin(), c.obj_map.end());
    key.insert(key.end(), c.arr_map.begin(), c.arr_map.end());
  }
  for (const auto& c : t.coherence) key.insert(key.end(), c.components.begin(), c.components.end());
  return key;
}

namespace {
std::vector<int> modification_key(int s, int t, const Modification& m) {
  std::vector<int> key{s, t};
  for (const auto& c : m.components) key.insert(key.end(), c.components.begin(), c.components.end());
  return key;
}
}  // namespace

std::optional<ObjId> PseudoNatCategory::find(const PseudoNat& t) const {
  auto it = object_index.find(pseudo_natural_key(t));
  if (it == object_index.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> PseudoNatCategory::find(const Modification& m) const {
  auto s = find(*m.source);
  auto t = find(*m.target);
  if (!s || !t) return std::nullopt;
  auto it = arrow_index.find(modification_key(*s, *t, m));
  if (it == arrow_index.end()) return std::nullopt;
  return it->second;
}

PseudoNatCategory pseudo_natural_category(const PseudoFunctorPtr& e, const PseudoFunctorPtr& h, const Budget& budget) {
  PseudoNatCategory pc;
  for (auto& t : enumerate_pseudo_naturals(e, h, budget)) {
    pc.object_index.emplace(pseudo_natural_key(t), static_cast<int>(pc.objects.size()));
    pc.objects.push_back(std::make_shared<const PseudoNat>(std::move(t)));
  }
  const int n = static_cast<int>(pc.objects.size());
  std::vector<FinCat::Ends> ends;
  std::vector<ArrowId> ids(n, -1);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (auto& m : enumerate_modifications(pc.objects[s], pc.objects[t], budget)) {
        if (pc.arrows.size() >= budget.max_cells) throw BudgetExceeded("modification count", budget.max_cells);
        const int id = static_cast<int>(pc.arrows.size());
        pc.arrow_index.emplace(modification_key(s, t, m), id);
        if (s == t && std::all_of(m.components.begin(), m.components.end(),
                                  [](const NatTransf& c) { return is_identity_nat(c); }))
          ids[s] = id;
        ends.push_back({s, t});
        pc.arrows.push_back(std::move(m));
      }
  FinCat cat = FinCat::generate(n, ends, ids, [&](ArrowId a, ArrowId b) {
    const Modification c = compose_modifications(pc.arrows[a], pc.arrows[b]);
    auto it = pc.arrow_index.find(modification_key(ends[a].dom, ends[b].cod, c));
    if (it == pc.arrow_index.end()) throw InvariantError("pseudo-natural category: composite modification missing");
    return it->second;
  });
  pc.cat = share(std::move(cat));
  return pc;
}

}  // namespace wcolim
