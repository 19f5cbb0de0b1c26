#include "wcolim/bicolim.hpp"

#include <set>
#include <tuple>

#include "wcolim/catalog.hpp"

namespace wcolim {

namespace {

std::vector<HomSlice> all_slices(const TwoCat& k) {
  std::vector<HomSlice> s;
  for (ObjId c = 0; c < k.num_objects(); ++c)
    for (ObjId d = 0; d < k.num_objects(); ++d) s.push_back(hom_slice(k, c, d));
  return s;
}

ArrowId find_or_throw(const FunctorCategory& fc, ObjId s, ObjId t, const std::vector<ArrowId>& comps,
                      const std::string& what) {
  auto id = fc.find(s, t, comps);
  if (!id) throw InvariantError(what + ": transformation is not natural");
  return *id;
}

ArrowId inverse_or_throw(const FinCat& c, ArrowId a, const char* what) {
  const ArrowId r = c.inverse(a);
  if (r < 0) throw InvariantError(std::string(what) + " is not invertible");
  return r;
}

}  // namespace

// ---------------------------------------------------------------- tensor

std::string TensorPresentation::object_label(ObjId o) const {
  const Quintuple& q = objects[o];
  const TwoCat& k = *e->shape;
  return "(" + k.object_name(q.c) + "," + k.object_name(q.d) + "," + e->values[q.c]->object_name(q.x) + "," +
         w->values[q.d]->object_name(q.y) + "," + k.one_cell_name(q.f) + ")";
}

std::string TensorPresentation::arrow_label(ArrowId a) const {
  const QuintupleArrow& q = arrows[a];
  const TwoCat& k = *e->shape;
  const Quintuple& t = objects[pres.delta->arrows[a].tgt];
  return "(" + k.one_cell_name(q.h) + "," + k.one_cell_name(q.k) + "," + e->values[t.c]->arrow_name(q.u) + "," +
         w->values[t.d]->arrow_name(q.v) + "," + k.cell_name(q.alpha) + ")";
}

std::optional<ArrowId> TensorPresentation::find_arrow(ObjId src, ObjId tgt, const QuintupleArrow& q) const {
  const TwoCat& k = *e->shape;
  const Quintuple& s = objects[src];
  const Quintuple& t = objects[tgt];
  const int local = hom_slice(k, s.c, s.d).local_arrow[q.alpha];
  if (local < 0) return std::nullopt;
  const ArrowId p = q.h * k.num_one_cells() + q.k;
  const ArrowId u = product_arrow(*w->values[t.d], q.u, q.v);
  return pres.delta->find_arrow(src, tgt, p, u, local);
}

TensorPresentation build_tensor(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const Budget& budget) {
  const TwoCat& k = *e->shape;
  const int n = k.num_objects();
  const int m1 = k.num_one_cells();
  const int m2 = k.num_two_cells();
  TensorPresentation t;
  t.e = e;
  t.w = w;
  t.shape = bifunctor_shape(k);
  t.product = share(product_bifunctor(*e, *w, t.shape));
  t.hom = share(hom_bifunctor(k, t.shape));
  t.pres = pscolim_presentation(t.product, t.hom, budget);
  const DeltaTwoCat& d = *t.pres.delta;
  const std::vector<HomSlice> slices = all_slices(k);

  std::set<std::tuple<int, int, int, int, int>> seen;
  for (const DeltaObject& o : d.objects) {
    const ObjId c = o.c / n, dd = o.c % n;
    const int wy = w->values[dd]->num_objects();
    Quintuple q{c, dd, o.x / wy, o.x % wy, slices[o.c].one_cell[o.y]};
    if (!seen.insert({q.c, q.d, q.x, q.y, q.f}).second) throw InvariantError("quintuple labels collide");
    t.objects.push_back(q);
  }
  for (const DeltaArrow& a : d.arrows) {
    const ObjId b = d.objects[a.tgt].c % n;
    const int wv = w->values[b]->num_arrows();
    t.arrows.push_back({a.f / m1, a.f % m1, a.u / wv, a.u % wv, slices[d.objects[a.src].c].cell[a.v]});
  }

  // generic admissibility against the quintuple conditions
  std::map<std::pair<ObjId, ObjId>, std::vector<ArrowId>> parallel;
  for (ArrowId a = 0; a < static_cast<int>(d.arrows.size()); ++a)
    parallel[{d.arrows[a].src, d.arrows[a].tgt}].push_back(a);
  const TwoCat& carrier = *d.carrier;
  const TwoCat& s = *t.shape;
  t.relabeling_ok = true;
  for (ArrowId a1 = 0; a1 < static_cast<int>(d.arrows.size()) && t.relabeling_ok; ++a1) {
    const QuintupleArrow& q1 = t.arrows[a1];
    const Quintuple& src = t.objects[d.arrows[a1].src];
    const Quintuple& tgt = t.objects[d.arrows[a1].tgt];
    const FinCat& ea = *e->values[tgt.c];
    const FinCat& wb = *w->values[tgt.d];
    for (CellId pc : s.cells_from(d.arrows[a1].f))
      for (ArrowId a2 : parallel[{d.arrows[a1].src, d.arrows[a1].tgt}]) {
        if (d.arrows[a2].f != s.tgt(pc)) continue;
        const QuintupleArrow& q2 = t.arrows[a2];
        const CellId gamma = pc / m2, theta = pc % m2;
        const bool quintuple =
            ea.compose(e->cells[gamma][src.x], q2.u) == q1.u && wb.compose(w->cells[theta][src.y], q2.v) == q1.v &&
            k.vcompose(q1.alpha, k.hcompose(k.hcompose(gamma, k.id2(tgt.f)), theta)) == q2.alpha;
        bool generic = false;
        for (CellId c : carrier.cells_between(a1, a2)) generic = generic || d.cell_label[c] == pc;
        if (generic != quintuple) {
          t.relabeling_ok = false;
          t.relabeling_failure = "(" + k.cell_name(gamma) + "," + k.cell_name(theta) + ") between " +
                                 t.arrow_label(a1) + " and " + t.arrow_label(a2);
          break;
        }
      }
  }
  t.pres.provenance.push_back(std::string("quintuple relabeling: ") +
                              (t.relabeling_ok ? "agrees" : "differs at " + t.relabeling_failure));
  return t;
}

// ---------------------------------------------------------------- technical equivalence

TechContext tech_context(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const CatPtr& a,
                         const Budget& budget) {
  TechContext ctx;
  ctx.e = e;
  ctx.w = w;
  ctx.shape = bifunctor_shape(*e->shape);
  ctx.product = share(product_bifunctor(*e, *w, ctx.shape));
  ctx.hom = share(hom_bifunctor(*e->shape, ctx.shape));
  ctx.a = a;
  ctx.left = hom_pseudo_functor(ctx.product, a, budget);
  ctx.right = hom_pseudo_functor(e, a, budget);
  ctx.slices = all_slices(*e->shape);
  return ctx;
}

namespace {

ObjId unit_at(const TechContext& ctx, ObjId c) {
  const TwoCat& k = *ctx.e->shape;
  return ctx.slices[c * k.num_objects() + c].local_object[k.id1(c)];
}

}  // namespace

PseudoNat tech_phi(const TechContext& ctx, const PseudoNat& alpha) {
  const TwoCat& k = *ctx.e->shape;
  const int n = k.num_objects();
  const int m1 = k.num_one_cells();
  const PseudoFunctor& e = *ctx.e;
  const PseudoFunctor& w = *ctx.w;
  const FinCat& a = *ctx.a;
  PseudoNat out{ctx.w, ctx.right.functor, {}, {}};
  for (ObjId c = 0; c < n; ++c) {
    const FunctorCategory& lf = *ctx.left.fibers[c * n + c];
    const FunctorCategory& rf = *ctx.right.fibers[c];
    const Functor& p = lf.functor(alpha.components[c * n + c].obj(unit_at(ctx, c)));
    const FinCat& ec = *e.value(c);
    const FinCat& wc = *w.value(c);
    Functor comp{w.values[c], rf.cat(), {}, {}};
    for (ObjId y = 0; y < wc.num_objects(); ++y) {
      Functor g{e.values[c], ctx.a, {}, {}};
      for (ObjId x = 0; x < ec.num_objects(); ++x) g.obj_map.push_back(p.obj(product_object(wc, x, y)));
      for (ArrowId u = 0; u < ec.num_arrows(); ++u) g.arr_map.push_back(p.arr(product_arrow(wc, u, wc.identity(y))));
      comp.obj_map.push_back(rf.index_of(g));
    }
    for (ArrowId v = 0; v < wc.num_arrows(); ++v) {
      std::vector<ArrowId> comps;
      for (ObjId x = 0; x < ec.num_objects(); ++x) comps.push_back(p.arr(product_arrow(wc, ec.identity(x), v)));
      comp.arr_map.push_back(find_or_throw(rf, comp.obj(wc.dom(v)), comp.obj(wc.cod(v)), comps, "tech_phi"));
    }
    out.components.push_back(std::move(comp));
  }
  for (ArrowId f = 0; f < m1; ++f) {
    const ObjId c = k.dom(f), d = k.cod(f);
    // (1_C, f): (C, D) → (C, C) and (f, 1_D): (C, D) → (D, D), both at the unit
    const NatTransf& c1 = alpha.coherence[k.id1(c) * m1 + f];
    const NatTransf& c2 = alpha.coherence[f * m1 + k.id1(d)];
    const FunctorCategory& lcd = *ctx.left.fibers[c * n + d];
    const FinCat& wd = *w.value(d);
    NatTransf coh{compose_functors(w.transition(f), out.components[c]),
                  compose_functors(out.components[d], ctx.right.functor->transition(f)), {}};
    for (ObjId y = 0; y < wd.num_objects(); ++y) {
      std::vector<ArrowId> comps;
      for (ObjId x = 0; x < e.value(c)->num_objects(); ++x) {
        const ObjId o = product_object(wd, x, y);
        const ArrowId to_c = lcd.components(c1[unit_at(ctx, c)])[o];
        const ArrowId to_d = lcd.components(c2[unit_at(ctx, d)])[o];
        comps.push_back(a.compose(inverse_or_throw(a, to_c, "tech_phi coherence"), to_d));
      }
      coh.components.push_back(
          find_or_throw(*ctx.right.fibers[c], coh.source.obj(y), coh.target.obj(y), comps, "tech_phi coherence"));
    }
    out.coherence.push_back(std::move(coh));
  }
  return out;
}

Modification tech_phi_arrow(const TechContext& ctx, const PseudoNatPtr& source, const PseudoNatPtr& target,
                            const Modification& m) {
  const int n = ctx.e->shape->num_objects();
  Modification out{source, target, {}};
  for (ObjId c = 0; c < n; ++c) {
    const FunctorCategory& lf = *ctx.left.fibers[c * n + c];
    const FunctorCategory& rf = *ctx.right.fibers[c];
    const FinCat& wc = *ctx.w->value(c);
    const Functor& s = source->components[c];
    const Functor& t = target->components[c];
    const std::vector<ArrowId>& at_unit = lf.components(m.components[c * n + c][unit_at(ctx, c)]);
    NatTransf comp{s, t, {}};
    for (ObjId y = 0; y < wc.num_objects(); ++y) {
      std::vector<ArrowId> comps;
      for (ObjId x = 0; x < ctx.e->value(c)->num_objects(); ++x) comps.push_back(at_unit[product_object(wc, x, y)]);
      comp.components.push_back(find_or_throw(rf, s.obj(y), t.obj(y), comps, "tech_phi modification"));
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

PseudoNat tech_psi(const TechContext& ctx, const PseudoNat& theta) {
  const TwoCat& k = *ctx.e->shape;
  const TwoCat& s = *ctx.shape;
  const int n = k.num_objects();
  const int m1 = k.num_one_cells();
  const PseudoFunctor& e = *ctx.e;
  const PseudoFunctor& w = *ctx.w;
  const FinCat& a = *ctx.a;
  PseudoNat out{ctx.hom, ctx.left.functor, {}, {}};
  auto at = [&](ObjId d, ObjId y) -> const Functor& {
    return ctx.right.fibers[d]->functor(theta.components[d].obj(y));
  };
  for (ObjId cd = 0; cd < n * n; ++cd) {
    const ObjId c = cd / n, d = cd % n;
    const HomSlice& slice = ctx.slices[cd];
    const FunctorCategory& lf = *ctx.left.fibers[cd];
    const FunctorCategory& rd = *ctx.right.fibers[d];
    const FinCat& ec = *e.value(c);
    const FinCat& wd = *w.value(d);
    Functor comp{ctx.hom->values[cd], lf.cat(), {}, {}};
    for (ArrowId f : slice.one_cell) {
      const Functor& ef = e.transition(f);
      Functor p{ctx.product->values[cd], ctx.a, {}, {}};
      for (ObjId x = 0; x < ec.num_objects(); ++x)
        for (ObjId y = 0; y < wd.num_objects(); ++y) p.obj_map.push_back(at(d, y).obj(ef.obj(x)));
      // either way round the naturality square; this is the top-right path
      for (ArrowId u = 0; u < ec.num_arrows(); ++u)
        for (ArrowId v = 0; v < wd.num_arrows(); ++v)
          p.arr_map.push_back(a.compose(at(d, wd.dom(v)).arr(ef.arr(u)),
                                        rd.components(theta.components[d].arr(v))[ef.obj(ec.cod(u))]));
      comp.obj_map.push_back(lf.index_of(p));
    }
    for (CellId sigma : slice.cell) {
      const ObjId from = slice.local_object[k.src(sigma)], to = slice.local_object[k.tgt(sigma)];
      std::vector<ArrowId> comps;
      for (ObjId x = 0; x < ec.num_objects(); ++x)
        for (ObjId y = 0; y < wd.num_objects(); ++y) comps.push_back(at(d, y).arr(e.cell(sigma)[x]));
      comp.arr_map.push_back(find_or_throw(lf, comp.obj(from), comp.obj(to), comps, "tech_psi"));
    }
    out.components.push_back(std::move(comp));
  }
  for (ArrowId p = 0; p < s.num_one_cells(); ++p) {
    const ArrowId h = p / m1, kk = p % m1;
    const ObjId cd = s.dom(p), cd2 = s.cod(p);
    const ObjId c = cd / n, d = cd % n, d2 = cd2 % n;
    const FinCat& ec = *e.value(c);
    const FinCat& wd = *w.value(d);
    const FinCat& ed = *e.value(d);
    const FinCat& ed2 = *e.value(d2);
    NatTransf coh{compose_functors(ctx.hom->transition(p), out.components[cd]),
                  compose_functors(out.components[cd2], ctx.left.functor->transition(p)), {}};
    const HomSlice& slice2 = ctx.slices[cd2];
    for (ObjId gl = 0; gl < static_cast<int>(slice2.one_cell.size()); ++gl) {
      const ArrowId g = slice2.one_cell[gl];
      const ArrowId hg = k.hcompose1(h, g);
      std::vector<ArrowId> comps;
      for (ObjId x = 0; x < ec.num_objects(); ++x) {
        // (hgk)_!X → k_!(hg)_!X → k_!g_!h_!X
        const ArrowId inner =
            ed.compose(inverse_or_throw(ed, e.compositor(hg, kk)[x], "E compositor"),
                       e.transition(kk).arr(inverse_or_throw(ed2, e.compositor(h, g)[x], "E compositor")));
        const ObjId z = e.transition(g).obj(e.transition(h).obj(x));
        for (ObjId y = 0; y < wd.num_objects(); ++y) {
          const ArrowId back = ctx.right.fibers[d2]->components(theta.coherence[kk][y])[z];
          comps.push_back(a.compose(at(d, y).arr(inner), inverse_or_throw(a, back, "weight coherence")));
        }
      }
      coh.components.push_back(
          find_or_throw(*ctx.left.fibers[cd], coh.source.obj(gl), coh.target.obj(gl), comps, "tech_psi coherence"));
    }
    out.coherence.push_back(std::move(coh));
  }
  return out;
}

Modification tech_psi_arrow(const TechContext& ctx, const PseudoNatPtr& source, const PseudoNatPtr& target,
                            const Modification& m) {
  const int n = ctx.e->shape->num_objects();
  Modification out{source, target, {}};
  for (ObjId cd = 0; cd < n * n; ++cd) {
    const ObjId c = cd / n, d = cd % n;
    const HomSlice& slice = ctx.slices[cd];
    const FunctorCategory& lf = *ctx.left.fibers[cd];
    const FunctorCategory& rd = *ctx.right.fibers[d];
    const Functor& s = source->components[cd];
    const Functor& t = target->components[cd];
    NatTransf comp{s, t, {}};
    for (ObjId fl = 0; fl < static_cast<int>(slice.one_cell.size()); ++fl) {
      const Functor& ef = ctx.e->transition(slice.one_cell[fl]);
      std::vector<ArrowId> comps;
      for (ObjId x = 0; x < ctx.e->value(c)->num_objects(); ++x)
        for (ObjId y = 0; y < ctx.w->value(d)->num_objects(); ++y)
          comps.push_back(rd.components(m.components[d][y])[ef.obj(x)]);
      comp.components.push_back(find_or_throw(lf, s.obj(fl), t.obj(fl), comps, "tech_psi modification"));
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

Modification tech_unit(const TechContext& ctx, const PseudoNatPtr& alpha, const PseudoNatPtr& round_trip) {
  const TwoCat& k = *ctx.e->shape;
  const int n = k.num_objects();
  const int m1 = k.num_one_cells();
  Modification out{alpha, round_trip, {}};
  for (ObjId cd = 0; cd < n * n; ++cd) {
    const ObjId d = cd % n;
    const HomSlice& slice = ctx.slices[cd];
    const FunctorCategory& lf = *ctx.left.fibers[cd];
    const Functor& s = alpha->components[cd];
    const Functor& t = round_trip->components[cd];
    NatTransf comp{s, t, {}};
    for (ObjId gl = 0; gl < static_cast<int>(slice.one_cell.size()); ++gl) {
      // (g, 1_D): (C, D) → (D, D) at 1_D
      const NatTransf& c = alpha->coherence[slice.one_cell[gl] * m1 + k.id1(d)];
      comp.components.push_back(
          find_or_throw(lf, s.obj(gl), t.obj(gl), lf.components(c[unit_at(ctx, d)]), "tech unit"));
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

BicolimitReport verify_bicolimit(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const CatPtr& a,
                                 const Budget& budget) {
  BicolimitReport r;
  const TechContext ctx = tech_context(e, w, a, budget);
  r.main = verify_main_theorem(ctx.product, ctx.hom, a, budget);
  r.tensor_objects = r.main.p_objects;
  r.tensor_arrows = r.main.p_arrows;
  auto fail = [&](std::string why) {
    r.verdict = IsoVerdict::fail;
    r.witness = std::move(why);
    return r;
  };
  if (!r.main.ok()) return fail("main theorem on the tensor presentation: " + r.main.witness);

  const PseudoNatCategory left = pseudo_natural_category(ctx.hom, ctx.left.functor, budget);
  const PseudoNatCategory right = pseudo_natural_category(ctx.w, ctx.right.functor, budget);
  r.hom_side_objects = left.cat->num_objects();
  r.weight_side_objects = right.cat->num_objects();

  Functor fwd{left.cat, right.cat, {}, {}};
  for (ObjId i = 0; i < left.cat->num_objects(); ++i) {
    auto j = right.find(tech_phi(ctx, *left.objects[i]));
    if (!j) return fail("tech_phi of hom-side transformation " + std::to_string(i) + " not found");
    fwd.obj_map.push_back(*j);
  }
  for (ArrowId b = 0; b < left.cat->num_arrows(); ++b) {
    auto j = right.find(tech_phi_arrow(ctx, right.objects[fwd.obj(left.cat->dom(b))],
                                       right.objects[fwd.obj(left.cat->cod(b))], left.arrows[b]));
    if (!j) return fail("tech_phi of hom-side modification " + std::to_string(b) + " not found");
    fwd.arr_map.push_back(*j);
  }
  Functor bwd{right.cat, left.cat, {}, {}};
  for (ObjId i = 0; i < right.cat->num_objects(); ++i) {
    auto j = left.find(tech_psi(ctx, *right.objects[i]));
    if (!j) return fail("tech_psi of weight-side transformation " + std::to_string(i) + " not found");
    bwd.obj_map.push_back(*j);
  }
  for (ArrowId b = 0; b < right.cat->num_arrows(); ++b) {
    auto j = left.find(tech_psi_arrow(ctx, left.objects[bwd.obj(right.cat->dom(b))],
                                      left.objects[bwd.obj(right.cat->cod(b))], right.arrows[b]));
    if (!j) return fail("tech_psi of weight-side modification " + std::to_string(b) + " not found");
    bwd.arr_map.push_back(*j);
  }
  r.phi_psi_identity = is_identity_functor(compose_functors(bwd, fwd));
  if (!r.phi_psi_identity) return fail("tech_phi after tech_psi is not the identity");

  NatTransf unit{identity_functor(left.cat), compose_functors(fwd, bwd), {}};
  r.unit_invertible = true;
  for (ObjId i = 0; i < left.cat->num_objects(); ++i) {
    auto j = left.find(tech_unit(ctx, left.objects[i], left.objects[bwd.obj(fwd.obj(i))]));
    if (!j) return fail("unit at hom-side transformation " + std::to_string(i) + " is not a modification");
    unit.components.push_back(*j);
    r.unit_invertible = r.unit_invertible && left.cat->is_iso(*j);
  }
  const NatTransf counit{compose_functors(bwd, fwd), identity_functor(right.cat),
                         identity_nat(identity_functor(right.cat)).components};
  const CatIsoReport rep = check_equivalence(fwd, bwd, unit, counit);
  r.verdict = rep.verdict;
  r.witness = rep.witness;
  return r;
}

// ---------------------------------------------------------------- comparison

ComparisonData comparison_functor(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const Budget& budget) {
  ComparisonData out;
  out.tensor = build_tensor(e, w, budget);
  out.pres = pscolim_presentation(e, w, budget);
  const TensorPresentation& t = out.tensor;
  const DeltaTwoCat& dt = *t.pres.delta;
  const DeltaTwoCat& d = *out.pres.delta;
  const TwoCat& k = *e->shape;
  const int m2 = k.num_two_cells();
  const PseudoFunctor& wf = *w;
  auto note = [&](std::string why) {
    if (out.witness.empty()) out.witness = std::move(why);
  };

  out.functor = Functor{t.pres.p, out.pres.p, {}, std::vector<ArrowId>(t.pres.p->num_arrows(), -1)};
  for (const Quintuple& q : t.objects) out.functor.obj_map.push_back(d.object(q.c, q.x, wf.transition(q.f).obj(q.y)));

  std::vector<ArrowId> image(dt.arrows.size());
  out.bracketing_agrees = true;
  out.well_defined = true;
  for (ArrowId a = 0; a < static_cast<int>(dt.arrows.size()); ++a) {
    const QuintupleArrow& q = t.arrows[a];
    const Quintuple& s = t.objects[dt.arrows[a].src];
    const Quintuple& g5 = t.objects[dt.arrows[a].tgt];
    const ArrowId h = q.h, kk = q.k, g = g5.f;
    const FinCat& wc = *wf.value(s.c);
    const FinCat& wa = *wf.value(g5.c);
    const ObjId ky = wf.transition(kk).obj(s.y);
    // f^*Y → (hgk)^*Y → (hg)^*k^*Y → h^*g^*k^*Y → h^*g^*V
    const ArrowId iso_left = wc.compose(inverse_or_throw(wc, wf.compositor(k.hcompose1(h, g), kk)[s.y], "W compositor"),
                                        inverse_or_throw(wc, wf.compositor(h, g)[ky], "W compositor"));
    // (hgk)^*Y → h^*(gk)^*Y → h^*g^*k^*Y
    const ArrowId iso_right = wc.compose(
        inverse_or_throw(wc, wf.compositor(h, k.hcompose1(g, kk))[s.y], "W compositor"),
        wf.transition(h).arr(inverse_or_throw(wa, wf.compositor(g, kk)[s.y], "W compositor")));
    if (iso_left != iso_right) {
      out.bracketing_agrees = false;
      note("bracketings of the W coherence differ at " + t.arrow_label(a));
    }
    const ArrowId v = wc.compose({wf.cell(q.alpha)[s.y], iso_left, wf.transition(h).arr(wf.transition(g).arr(q.v))});
    image[a] = d.arrow(out.functor.obj(dt.arrows[a].src), out.functor.obj(dt.arrows[a].tgt), h, q.u, v);
    ArrowId& slot = out.functor.arr_map[t.pres.class_of(a)];
    const ArrowId cls = out.pres.class_of(image[a]);
    if (slot < 0) {
      slot = cls;
    } else if (slot != cls) {
      out.well_defined = false;
      note("image of the class of " + t.arrow_label(a) + " is not constant");
    }
  }
  // (γ, θ) ↦ γ must be a 2-cell of Δ(E, W)
  const TwoCat& ct = *dt.carrier;
  for (CellId c = 0; c < ct.num_two_cells(); ++c) {
    const CellId gamma = dt.cell_label[c] / m2;
    bool found = false;
    for (CellId c2 : d.carrier->cells_between(image[ct.src(c)], image[ct.tgt(c)]))
      found = found || d.cell_label[c2] == gamma;
    if (!found) {
      out.well_defined = false;
      note("2-cell image missing between " + d.arrow_label(image[ct.src(c)]) + " and " +
           d.arrow_label(image[ct.tgt(c)]));
    }
  }
  out.functorial = out.well_defined && validate_functor(out.functor).ok();
  if (out.well_defined && !out.functorial) note("G is not a functor");

  out.sigma_preserved = true;
  for (ArrowId a = 0; a < static_cast<int>(dt.arrows.size()); ++a)
    if (dt.is_cartesian(a) && !d.is_cartesian(image[a])) {
      out.sigma_preserved = false;
      note("cartesian " + t.arrow_label(a) + " maps to non-cartesian " + d.arrow_label(image[a]));
    }
  for (ArrowId c = 0; c < t.pres.p->num_arrows() && out.well_defined; ++c)
    if (t.pres.in_sigma(c) && !out.pres.in_sigma(out.functor.arr(c))) {
      out.sigma_preserved = false;
      note("sigma class " + t.arrow_label(t.pres.classes->section[c]) + " leaves sigma");
    }

  out.surjective = true;
  for (ObjId o = 0; o < static_cast<int>(d.objects.size()); ++o) {
    const DeltaObject& x = d.objects[o];
    const int n = k.num_objects();
    const HomSlice slice = hom_slice(k, x.c, x.c);
    const ObjId pre = dt.object(x.c * n + x.c, product_object(*wf.value(x.c), x.x, x.y),
                                slice.local_object[k.id1(x.c)]);
    if (out.functor.obj(pre) != o) {
      out.surjective = false;
      note("object " + std::to_string(o) + " has no preimage (C, C, X, Y, 1)");
    }
  }
  return out;
}

// ---------------------------------------------------------------- the idempotent example

CounterexampleReport example_idempotent(const Budget& budget) {
  auto k = share(catalog::shape_idempotent());
  auto one = share(catalog::terminal());
  auto e = share(constant_pseudo_functor(Variance::covariant, k, one));
  auto w = share(constant_pseudo_functor(Variance::contravariant, k, one));
  CounterexampleReport r;

  const ColimitPresentation pres = pscolim_presentation(e, w, budget);
  const LocalizedCat loc = localize(pres, budget);
  r.pseudo_p_objects = pres.p->num_objects();
  r.pseudo_p_arrows = pres.p->num_arrows();
  r.pseudo_strategy = to_string(loc.strategy);
  if (loc.exact()) {
    r.pseudo_objects = loc.result->num_objects();
    r.pseudo_arrows = loc.result->num_arrows();
    r.pseudo_groupoid = loc.result->is_groupoid();
  }

  const TensorPresentation t = build_tensor(e, w, budget);
  const LocalizedCat bi = localize(t.pres, budget);
  r.tensor_p_objects = t.pres.p->num_objects();
  r.tensor_p_arrows = t.pres.p->num_arrows();
  r.tensor_sigma = t.pres.sigma_count();
  r.bi_strategy = to_string(bi.strategy);
  r.bi_status = to_string(bi.status);

  const ArrowId x = 1;
  const CellId xi = 2;
  ObjId at_x = -1;
  for (ObjId o = 0; o < static_cast<int>(t.objects.size()); ++o)
    if (t.objects[o].f == x) at_x = o;
  const auto xi_arrow = t.find_arrow(at_x, at_x, {k->id1(0), k->id1(0), 0, 0, xi});
  if (!xi_arrow) throw InvariantError("example_idempotent: the arrow (1,1,1,1,xi) is missing");
  const ArrowId xi_class = t.pres.class_of(*xi_arrow);
  r.xi_label = t.arrow_label(*xi_arrow);
  r.xi_in_sigma = t.pres.in_sigma(xi_class);

  const FinCat& p2 = *t.pres.p;
  for (ArrowId c = 0; c < p2.num_arrows(); ++c)
    if (t.pres.in_sigma(c) && !p2.is_identity(c) && p2.dom(c) == p2.cod(c) && p2.compose(c, c) == c)
      r.sigma_idempotents.push_back(t.arrow_label(t.pres.classes->section[c]));

  if (bi.exact()) {
    const FinCat& res = *bi.result;
    r.bi_objects = res.num_objects();
    r.bi_arrows = res.num_arrows();
    r.bi_groupoid = res.is_groupoid();
    const ArrowId img = bi.localization_functor.arr(xi_class);
    r.xi_invertible_after = res.is_iso(img);
    r.xi_identity_after = res.is_identity(img);
    for (ArrowId a = 0; a < res.num_arrows(); ++a)
      if (res.dom(a) == res.cod(a) && !res.is_identity(a) && !res.is_iso(a) && res.compose(a, a) == a)
        r.bi_has_noninvertible_idempotent = true;
  }
  if (!bi.exact() || !loc.exact())
    r.verdict = "undetermined";
  else if (r.pseudo_groupoid != r.bi_groupoid)
    r.verdict = "not equivalent";
  else if (equivalent_to_terminal(*loc.result) && equivalent_to_terminal(*bi.result))
    r.verdict = "equivalent";
  else
    r.verdict = "undetermined";
  return r;
}

}  // namespace wcolim
