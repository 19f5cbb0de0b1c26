#include "wcolim/universal.hpp"

namespace wcolim {

SigmaFunctorCat sigma_functor_cat(const ColimitPresentation& pres, const CatPtr& x, const Budget& budget) {
  std::vector<Functor> keep;
  for (Functor& f : enumerate_functors(pres.p, x, budget))
    if (inverts(f, pres.sigma)) keep.push_back(std::move(f));
  return {FunctorCategory::build_full(pres.p, x, std::move(keep), budget)};
}

UniversalContext universal_context(ColimitPresentation pres, const CatPtr& x, const Budget& budget) {
  if (!pres.delta) throw StructureError("universal_context needs a presentation built from Δ");
  HomPseudoFunctor hom = hom_pseudo_functor(pres.delta->e, x, budget);
  return {std::move(pres), std::move(hom)};
}

UniversalContext universal_context(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const CatPtr& x,
                                   const Budget& budget) {
  return universal_context(pscolim_presentation(e, w, budget), x, budget);
}

namespace {

ArrowId find_arrow_or_throw(const FunctorCategory& fc, ObjId s, ObjId t, const std::vector<ArrowId>& comps,
                            const char* what) {
  auto id = fc.find(s, t, comps);
  if (!id) throw InvariantError(std::string(what) + ": transformation is not natural");
  return *id;
}

/// Components and coherence of a pseudo-natural W ⇒ Cat(E, x) from a table
/// value(o) on Δ objects and value(a) on the Δ arrows (1, u, 1), (1, 1, v), (f, 1, 1).
template <class Obj, class Arr>
PseudoNat assemble(const UniversalContext& ctx, Obj&& obj, Arr&& arr) {
  const DeltaTwoCat& d = *ctx.pres.delta;
  const PseudoFunctor& e = ctx.e();
  const PseudoFunctor& w = ctx.w();
  const TwoCat& k = *e.shape;
  PseudoNat out{d.w, ctx.hom.functor, {}, {}};
  for (ObjId c = 0; c < k.num_objects(); ++c) {
    const FinCat& ec = *e.value(c);
    const FinCat& wc = *w.value(c);
    const FunctorCategory& fib = *ctx.hom.fibers[c];
    Functor comp{w.values[c], fib.cat(), {}, {}};
    for (ObjId y = 0; y < wc.num_objects(); ++y) {
      Functor g{e.values[c], ctx.x(), {}, {}};
      for (ObjId x = 0; x < ec.num_objects(); ++x) g.obj_map.push_back(obj(d.object(c, x, y)));
      for (ArrowId u = 0; u < ec.num_arrows(); ++u)
        g.arr_map.push_back(arr(d.arrow(d.object(c, ec.dom(u), y), d.object(c, ec.cod(u), y), k.id1(c), u,
                                        wc.identity(y))));
      comp.obj_map.push_back(fib.index_of(g));
    }
    for (ArrowId v = 0; v < wc.num_arrows(); ++v) {
      std::vector<ArrowId> comps;
      for (ObjId x = 0; x < ec.num_objects(); ++x)
        comps.push_back(
            arr(d.arrow(d.object(c, x, wc.dom(v)), d.object(c, x, wc.cod(v)), k.id1(c), ec.identity(x), v)));
      comp.arr_map.push_back(find_arrow_or_throw(fib, comp.obj(wc.dom(v)), comp.obj(wc.cod(v)), comps, "component"));
    }
    out.components.push_back(std::move(comp));
  }
  const PseudoFunctor& h = *ctx.hom.functor;
  for (ArrowId f = 0; f < k.num_one_cells(); ++f) {
    const ObjId c = k.dom(f), dd = k.cod(f);
    const Functor& ef = e.transition(f);
    const Functor& wf = w.transition(f);
    const FinCat& ed = *e.value(dd);
    const FinCat& wc = *w.value(c);
    const FunctorCategory& fib = *ctx.hom.fibers[c];
    NatTransf coh{compose_functors(wf, out.components[c]), compose_functors(out.components[dd], h.transition(f)), {}};
    for (ObjId y = 0; y < w.value(dd)->num_objects(); ++y) {
      std::vector<ArrowId> comps;
      for (ObjId x = 0; x < e.value(c)->num_objects(); ++x)
        comps.push_back(arr(d.arrow(d.object(c, x, wf.obj(y)), d.object(dd, ef.obj(x), y), f,
                                    ed.identity(ef.obj(x)), wc.identity(wf.obj(y)))));
      coh.components.push_back(find_arrow_or_throw(fib, coh.source.obj(y), coh.target.obj(y), comps, "coherence"));
    }
    out.coherence.push_back(std::move(coh));
  }
  return out;
}

}  // namespace

PseudoNat phi(const UniversalContext& ctx, const Functor& f) {
  return assemble(
      ctx, [&](ObjId o) { return f.obj(o); }, [&](ArrowId a) { return f.arr(ctx.pres.class_of(a)); });
}

Modification phi_arrow(const UniversalContext& ctx, const PseudoNatPtr& source, const PseudoNatPtr& target,
                       const NatTransf& a) {
  const DeltaTwoCat& d = *ctx.pres.delta;
  const PseudoFunctor& e = ctx.e();
  Modification m{source, target, {}};
  for (ObjId c = 0; c < e.shape->num_objects(); ++c) {
    const FunctorCategory& fib = *ctx.hom.fibers[c];
    const Functor& s = source->components[c];
    const Functor& t = target->components[c];
    NatTransf comp{s, t, {}};
    for (ObjId y = 0; y < ctx.w().value(c)->num_objects(); ++y) {
      std::vector<ArrowId> comps;
      for (ObjId x = 0; x < e.value(c)->num_objects(); ++x) comps.push_back(a[d.object(c, x, y)]);
      comp.components.push_back(find_arrow_or_throw(fib, s.obj(y), t.obj(y), comps, "modification"));
    }
    m.components.push_back(std::move(comp));
  }
  return m;
}

Functor psi(const UniversalContext& ctx, const PseudoNat& t) {
  const DeltaTwoCat& d = *ctx.pres.delta;
  const FinCat& x = *ctx.x();
  Functor out{ctx.pres.p, ctx.x(), {}, std::vector<ArrowId>(ctx.pres.p->num_arrows(), -1)};
  auto at = [&](ObjId c, ObjId y) -> const Functor& {
    return ctx.hom.fibers[c]->functor(t.components[c].obj(y));
  };
  for (const DeltaObject& o : d.objects) out.obj_map.push_back(at(o.c, o.y).obj(o.x));
  for (ArrowId a = 0; a < static_cast<int>(d.arrows.size()); ++a) {
    const DeltaArrow& da = d.arrows[a];
    const DeltaObject& s = d.objects[da.src];
    const DeltaObject& g = d.objects[da.tgt];
    const FunctorCategory& fib = *ctx.hom.fibers[s.c];
    const ArrowId value = x.compose({fib.components(t.components[s.c].arr(da.v))[s.x],
                                     fib.components(t.coherence[da.f][g.y])[s.x], at(g.c, g.y).arr(da.u)});
    ArrowId& slot = out.arr_map[ctx.pres.class_of(a)];
    if (slot < 0)
      slot = value;
    else if (slot != value)
      throw InvariantError("psi: members of the class of " + d.arrow_label(a) + " disagree");
  }
  if (!validate_functor(out).ok()) throw InvariantError("psi: result is not a functor");
  if (!inverts(out, ctx.pres.sigma)) throw InvariantError("psi: result does not invert sigma");
  return out;
}

NatTransf psi_arrow(const UniversalContext& ctx, const Functor& source, const Functor& target,
                    const Modification& m) {
  NatTransf out{source, target, {}};
  for (const DeltaObject& o : ctx.pres.delta->objects)
    out.components.push_back(ctx.hom.fibers[o.c]->components(m.components[o.c][o.y])[o.x]);
  return out;
}

bool same_pseudo_natural(const PseudoNat& a, const PseudoNat& b) {
  if (a.components.size() != b.components.size() || a.coherence.size() != b.coherence.size()) return false;
  for (std::size_t i = 0; i < a.components.size(); ++i)
    if (a.components[i].obj_map != b.components[i].obj_map || a.components[i].arr_map != b.components[i].arr_map)
      return false;
  for (std::size_t i = 0; i < a.coherence.size(); ++i)
    if (a.coherence[i].components != b.coherence[i].components) return false;
  return true;
}

TheoremReport verify_main_theorem(const UniversalContext& ctx, const Budget& budget) {
  TheoremReport r;
  r.p_objects = ctx.pres.p->num_objects();
  r.p_arrows = ctx.pres.p->num_arrows();
  r.sigma_arrows = ctx.pres.sigma_count();
  const SigmaFunctorCat sfc = sigma_functor_cat(ctx.pres, ctx.x(), budget);
  const PseudoNatCategory pnc = pseudo_natural_category(ctx.pres.delta->w, ctx.hom.functor, budget);
  r.functor_objects = sfc.cat()->num_objects();
  r.functor_arrows = sfc.cat()->num_arrows();
  r.pseudo_objects = pnc.cat->num_objects();
  r.pseudo_arrows = pnc.cat->num_arrows();
  r.provenance.push_back("sigma-inverting functors: " + std::to_string(r.functor_objects));
  r.provenance.push_back("pseudo-natural transformations: " + std::to_string(r.pseudo_objects));
  auto fail = [&](std::string why) {
    r.verdict = IsoVerdict::fail;
    r.witness = std::move(why);
    return r;
  };

  Functor fwd{sfc.cat(), pnc.cat, {}, {}};
  for (ObjId i = 0; i < sfc.cat()->num_objects(); ++i) {
    const PseudoNat t = phi(ctx, sfc.carrier->functor(i));
    auto j = pnc.find(t);
    if (!j) return fail("phi of functor " + std::to_string(i) + " is not pseudo-natural: " +
                        validate_pseudo_natural(t).summary());
    fwd.obj_map.push_back(*j);
  }
  for (ArrowId a = 0; a < sfc.cat()->num_arrows(); ++a) {
    const Modification m = phi_arrow(ctx, pnc.objects[fwd.obj(sfc.cat()->dom(a))],
                                     pnc.objects[fwd.obj(sfc.cat()->cod(a))], sfc.carrier->nat_transf(a));
    auto b = pnc.find(m);
    if (!b) return fail("phi of transformation " + std::to_string(a) + " is not a modification");
    fwd.arr_map.push_back(*b);
  }
  Functor bwd{pnc.cat, sfc.cat(), {}, {}};
  for (ObjId j = 0; j < pnc.cat->num_objects(); ++j) {
    Functor f;
    try {
      f = psi(ctx, *pnc.objects[j]);
    } catch (const InvariantError& err) {
      return fail("psi of pseudo-natural " + std::to_string(j) + ": " + err.what());
    }
    auto i = sfc.carrier->find(f);
    if (!i) return fail("psi of pseudo-natural " + std::to_string(j) + " is not sigma-inverting");
    bwd.obj_map.push_back(*i);
  }
  for (ArrowId b = 0; b < pnc.cat->num_arrows(); ++b) {
    const ObjId s = bwd.obj(pnc.cat->dom(b)), t = bwd.obj(pnc.cat->cod(b));
    const NatTransf n = psi_arrow(ctx, sfc.carrier->functor(s), sfc.carrier->functor(t), pnc.arrows[b]);
    auto a = sfc.carrier->find(s, t, n.components);
    if (!a) return fail("psi of modification " + std::to_string(b) + " is not natural");
    bwd.arr_map.push_back(*a);
  }
  const CatIsoReport iso = check_isomorphism(fwd, bwd);
  r.verdict = iso.verdict;
  r.witness = iso.witness;
  return r;
}

TheoremReport verify_main_theorem(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const CatPtr& x,
                                  const Budget& budget) {
  return verify_main_theorem(universal_context(e, w, x, budget), budget);
}

PseudoNat canonical_cocone(const UniversalContext& ctx, const LocalizedCat& loc) {
  if (!loc.exact()) throw StructureError("canonical_cocone needs an exact localization");
  if (!same_category(loc.result, ctx.x())) throw StructureError("canonical_cocone: context target is not the localization");
  // the localization keeps the objects of p, and p's objects are Δ's
  const Functor& l = loc.localization_functor;
  const DeltaTwoCat& d = *ctx.pres.delta;
  std::vector<ArrowId> image(d.arrows.size());
  for (std::size_t a = 0; a < d.arrows.size(); ++a) image[a] = l.arr(ctx.pres.class_of(static_cast<int>(a)));
  return assemble(
      ctx, [&](ObjId o) { return l.obj(o); }, [&](ArrowId a) { return image[a]; });
}

PseudoNat postcompose(const UniversalContext& ctx, const PseudoNat& t, const Functor& h,
                      const UniversalContext& target) {
  const PseudoFunctor& w = ctx.w();
  const TwoCat& k = *w.shape;
  PseudoNat out{t.source, target.hom.functor, {}, {}};
  auto image = [&](const std::vector<ArrowId>& comps) {
    std::vector<ArrowId> r;
    for (ArrowId c : comps) r.push_back(h.arr(c));
    return r;
  };
  for (ObjId c = 0; c < k.num_objects(); ++c) {
    const FunctorCategory& from = *ctx.hom.fibers[c];
    const FunctorCategory& to = *target.hom.fibers[c];
    const Functor& tc = t.components[c];
    Functor comp{tc.source, to.cat(), {}, {}};
    for (ObjId p : tc.obj_map) comp.obj_map.push_back(to.index_of(compose_functors(from.functor(p), h)));
    for (ArrowId v = 0; v < tc.source->num_arrows(); ++v)
      comp.arr_map.push_back(find_arrow_or_throw(to, comp.obj(tc.source->dom(v)), comp.obj(tc.source->cod(v)),
                                                 image(from.components(tc.arr(v))), "postcompose"));
    out.components.push_back(std::move(comp));
  }
  for (ArrowId f = 0; f < k.num_one_cells(); ++f) {
    const ObjId c = k.dom(f), d = k.cod(f);
    const FunctorCategory& from = *ctx.hom.fibers[c];
    const FunctorCategory& to = *target.hom.fibers[c];
    NatTransf coh{compose_functors(w.transition(f), out.components[c]),
                  compose_functors(out.components[d], target.hom.functor->transition(f)), {}};
    for (ObjId y = 0; y < w.value(d)->num_objects(); ++y)
      coh.components.push_back(find_arrow_or_throw(to, coh.source.obj(y), coh.target.obj(y),
                                                   image(from.components(t.coherence[f][y])), "postcompose"));
    out.coherence.push_back(std::move(coh));
  }
  return out;
}

}  // namespace wcolim
