#include "wcolim/delta.hpp"

#include <algorithm>
#include <map>

namespace wcolim {

std::optional<ObjId> DeltaTwoCat::find_object(ObjId c, ObjId x, ObjId y) const {
  auto it = object_index.find({c, x, y});
  if (it == object_index.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> DeltaTwoCat::find_arrow(ObjId src, ObjId tgt, ArrowId f, ArrowId u, ArrowId v) const {
  auto it = arrow_index.find({src, tgt, f, u, v});
  if (it == arrow_index.end()) return std::nullopt;
  return it->second;
}

ObjId DeltaTwoCat::object(ObjId c, ObjId x, ObjId y) const {
  auto o = find_object(c, x, y);
  if (!o) throw InvariantError("no object (" + std::to_string(c) + "," + std::to_string(x) + "," + std::to_string(y) + ")");
  return *o;
}

ArrowId DeltaTwoCat::arrow(ObjId src, ObjId tgt, ArrowId f, ArrowId u, ArrowId v) const {
  auto a = find_arrow(src, tgt, f, u, v);
  if (!a)
    throw InvariantError("no arrow (" + std::to_string(f) + "," + std::to_string(u) + "," + std::to_string(v) +
                         ") from object " + std::to_string(src) + " to " + std::to_string(tgt));
  return *a;
}

bool DeltaTwoCat::is_cartesian(ArrowId a) const {
  const DeltaArrow& r = arrows[a];
  const ObjId d = objects[r.tgt].c;
  const ObjId c = objects[r.src].c;
  return e->values[d]->is_iso(r.u) && w->values[c]->is_iso(r.v);
}

std::string DeltaTwoCat::arrow_label(ArrowId a) const {
  const DeltaArrow& r = arrows[a];
  const ObjId c = objects[r.src].c;
  const ObjId d = objects[r.tgt].c;
  return "(" + e->shape->one_cell_name(r.f) + "," + e->values[d]->arrow_name(r.u) + "," +
         w->values[c]->arrow_name(r.v) + ")";
}

DeltaTwoCat build_delta(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const Budget& budget) {
  if (e->variance != Variance::covariant || w->variance != Variance::contravariant)
    throw StructureError("build_delta needs a covariant E and a contravariant W");
  if (!(e->shape == w->shape || *e->shape == *w->shape)) throw StructureError("build_delta: shapes differ");
  const TwoCat& k = *e->shape;
  const FinCat& one = k.one();
  DeltaTwoCat d;
  d.e = e;
  d.w = w;

  for (ObjId c = 0; c < k.num_objects(); ++c)
    for (ObjId x = 0; x < e->values[c]->num_objects(); ++x)
      for (ObjId y = 0; y < w->values[c]->num_objects(); ++y) {
        d.object_index.emplace(std::vector<int>{c, x, y}, static_cast<int>(d.objects.size()));
        d.objects.push_back({c, x, y});
      }

  std::vector<std::vector<ArrowId>> by_dom(k.num_objects());
  for (ArrowId f = 0; f < one.num_arrows(); ++f) by_dom[one.dom(f)].push_back(f);

  for (ObjId src = 0; src < static_cast<int>(d.objects.size()); ++src) {
    const auto [c, x, y] = d.objects[src];
    for (ArrowId f : by_dom[c]) {
      const ObjId dd = one.cod(f);
      const FinCat& ed = *e->values[dd];
      const FinCat& wc = *w->values[c];
      std::vector<ArrowId> us(ed.out(e->transitions[f].obj(x)).begin(), ed.out(e->transitions[f].obj(x)).end());
      std::sort(us.begin(), us.end());
      for (ArrowId u : us)
        for (ObjId b = 0; b < w->values[dd]->num_objects(); ++b)
          for (ArrowId v : wc.hom(y, w->transitions[f].obj(b))) {
            const ObjId tgt = d.object(dd, ed.cod(u), b);
            d.arrow_index.emplace(std::vector<int>{src, tgt, f, u, v}, static_cast<int>(d.arrows.size()));
            d.arrows.push_back({src, tgt, f, u, v});
            if (d.arrows.size() > budget.max_cells) throw BudgetExceeded("diagonal arrow count", budget.max_cells);
          }
    }
  }

  std::vector<FinCat::Ends> ends;
  for (const auto& a : d.arrows) ends.push_back({a.src, a.tgt});
  std::vector<ArrowId> ids;
  for (ObjId o = 0; o < static_cast<int>(d.objects.size()); ++o) {
    const auto [c, x, y] = d.objects[o];
    ids.push_back(d.arrow(o, o, one.identity(c), e->values[c]->identity(x), w->values[c]->identity(y)));
  }
  auto compose = [&](ArrowId ia, ArrowId ib) {
    const DeltaArrow& a = d.arrows[ia];
    const DeltaArrow& b = d.arrows[ib];
    const ObjId c = d.objects[a.src].c;
    const ObjId x = d.objects[a.src].x;
    const ObjId b2 = d.objects[b.tgt].y;
    const ObjId d2 = d.objects[b.tgt].c;
    const FinCat& e2 = *e->values[d2];
    const FinCat& wc = *w->values[c];
    const ArrowId phi_e = e->compositor(a.f, b.f)[x];
    const ArrowId phi_e_inv = e2.inverse(phi_e);
    if (phi_e_inv < 0) throw InvariantError("E compositor component is not invertible");
    const ArrowId u = e2.compose({phi_e_inv, e->transitions[b.f].arr(a.u), b.u});
    const ArrowId v = wc.compose({a.v, w->transitions[a.f].arr(b.v), w->compositor(a.f, b.f)[b2]});
    return d.arrow(a.src, b.tgt, one.compose(a.f, b.f), u, v);
  };
  FinCat under = FinCat::generate(static_cast<int>(d.objects.size()), ends, ids, compose);

  // 2-cells, grouped by parallel arrows
  std::map<std::pair<ObjId, ObjId>, std::vector<ArrowId>> parallel;
  for (ArrowId a = 0; a < static_cast<int>(d.arrows.size()); ++a)
    parallel[{d.arrows[a].src, d.arrows[a].tgt}].push_back(a);
  std::vector<TwoCat::CellEnds> cells;
  TupleIndex cell_index;  // [a1, alpha, a2]
  auto admissible = [&](ArrowId i1, CellId alpha, ArrowId i2) {
    const DeltaArrow& a1 = d.arrows[i1];
    const DeltaArrow& a2 = d.arrows[i2];
    const DeltaObject& s = d.objects[a1.src];
    const DeltaObject& t = d.objects[a1.tgt];
    const FinCat& ed = *e->values[t.c];
    const FinCat& wc = *w->values[s.c];
    return ed.compose(e->cells[alpha][s.x], a2.u) == a1.u && wc.compose(a1.v, w->cells[alpha][t.y]) == a2.v;
  };
  for (ArrowId a1 = 0; a1 < static_cast<int>(d.arrows.size()); ++a1) {
    const auto& group = parallel[{d.arrows[a1].src, d.arrows[a1].tgt}];
    for (CellId alpha : k.cells_from(d.arrows[a1].f))
      for (ArrowId a2 : group)
        if (d.arrows[a2].f == k.tgt(alpha) && admissible(a1, alpha, a2)) {
          cell_index.emplace(std::vector<int>{a1, alpha, a2}, static_cast<int>(cells.size()));
          cells.push_back({a1, a2});
          d.cell_label.push_back(alpha);
          if (cells.size() > budget.max_cells) throw BudgetExceeded("diagonal 2-cell count", budget.max_cells);
        }
  }
  auto find_cell = [&](ArrowId a1, CellId alpha, ArrowId a2, const char* what) {
    auto it = cell_index.find({a1, alpha, a2});
    if (it == cell_index.end())
      throw InvariantError(std::string("diagonal 2-cells not closed under ") + what + ": (" +
                           k.cell_name(alpha) + ", " + d.arrow_label(a1) + ", " + d.arrow_label(a2) + ")");
    return it->second;
  };
  std::vector<CellId> id2;
  for (ArrowId a = 0; a < static_cast<int>(d.arrows.size()); ++a)
    id2.push_back(find_cell(a, k.id2(d.arrows[a].f), a, "identities"));
  auto vfn = [&](CellId a, CellId b) {
    return find_cell(cells[a].src, k.vcompose(d.cell_label[a], d.cell_label[b]), cells[b].tgt,
                     "vertical composition");
  };
  auto hfn = [&](CellId a, CellId b) {
    return find_cell(under.compose(cells[a].src, cells[b].src), k.hcompose(d.cell_label[a], d.cell_label[b]),
                     under.compose(cells[a].tgt, cells[b].tgt), "whiskering");
  };

  std::vector<std::string> onames, anames, cnames;
  for (const auto& o : d.objects)
    onames.push_back("(" + k.object_name(o.c) + "," + e->values[o.c]->object_name(o.x) + "," +
                     w->values[o.c]->object_name(o.y) + ")");
  for (ArrowId a = 0; a < static_cast<int>(d.arrows.size()); ++a) anames.push_back(d.arrow_label(a));
  for (CellId c : d.cell_label) cnames.push_back(k.cell_name(c));
  under.set_object_names(std::move(onames));
  under.set_arrow_names(std::move(anames));
  TwoCat carrier = TwoCat::generate(under, cells, id2, vfn, hfn);
  carrier.set_cell_names(std::move(cnames));
  d.carrier = share(std::move(carrier));
  return d;
}

int ColimitPresentation::sigma_count() const {
  return static_cast<int>(std::count(sigma.begin(), sigma.end(), 1));
}

ColimitPresentation pscolim_presentation(const PseudoFunctorPtr& e, const PseudoFunctorPtr& w, const Budget& budget) {
  ColimitPresentation pres;
  auto delta = std::make_shared<DeltaTwoCat>(build_delta(e, w, budget));
  pres.provenance.push_back("diagonal 2-category: " + std::to_string(delta->objects.size()) + " objects, " +
                            std::to_string(delta->arrows.size()) + " arrows, " +
                            std::to_string(delta->carrier->num_two_cells()) + " 2-cells");
  auto classes = std::make_shared<Pi0Result>(pi0(*delta->carrier));
  pres.p = classes->quotient;
  pres.provenance.push_back("connected components: " + std::to_string(pres.p->num_arrows()) + " classes");
  pres.sigma.assign(pres.p->num_arrows(), 0);
  for (ArrowId a = 0; a < static_cast<int>(delta->arrows.size()); ++a)
    if (delta->is_cartesian(a)) pres.sigma[classes->class_of[a]] = 1;
  for (ObjId o = 0; o < pres.p->num_objects(); ++o)
    if (!pres.sigma[pres.p->identity(o)]) pres.sigma_has_identities = false;
  const FinCat& under = delta->carrier->one();
  for (ArrowId a = 0; a < under.num_arrows() && pres.cartesian_closed; ++a) {
    if (!delta->is_cartesian(a)) continue;
    for (ArrowId b : under.out(under.cod(a)))
      if (delta->is_cartesian(b) && !delta->is_cartesian(under.compose(a, b))) {
        pres.cartesian_closed = false;
        break;
      }
  }
  for (const auto& o : delta->objects) pres.object_label.push_back({o.c, o.x, o.y});
  for (ArrowId cls = 0; cls < pres.p->num_arrows(); ++cls) {
    const DeltaArrow& r = delta->arrows[classes->section[cls]];
    pres.arrow_label.push_back({r.f, r.u, r.v});
  }
  pres.provenance.push_back("cartesian classes: " + std::to_string(pres.sigma_count()));
  pres.delta = std::move(delta);
  pres.classes = std::move(classes);
  return pres;
}

ColimitPresentation conical_oracle(const PseudoFunctor& e) {
  if (e.variance != Variance::covariant) throw StructureError("conical_oracle needs a covariant functor");
  const TwoCat& k = *e.shape;
  if (!k.is_locally_discrete()) throw StructureError("shape-not-locally-discrete");
  const FinCat& one = k.one();
  ColimitPresentation pres;
  TupleIndex obj;
  for (ObjId c = 0; c < k.num_objects(); ++c)
    for (ObjId x = 0; x < e.values[c]->num_objects(); ++x) {
      obj.emplace(std::vector<int>{c, x}, static_cast<int>(pres.object_label.size()));
      pres.object_label.push_back({c, x, -1});
    }
  struct El {
    ObjId src, tgt;
    ArrowId f, u;
  };
  std::vector<El> arrows;
  TupleIndex index;  // [src, f, u]
  for (ObjId s = 0; s < static_cast<int>(pres.object_label.size()); ++s) {
    const ObjId c = pres.object_label[s][0];
    const ObjId x = pres.object_label[s][1];
    for (ArrowId f = 0; f < one.num_arrows(); ++f) {
      if (one.dom(f) != c) continue;
      const FinCat& ed = *e.values[one.cod(f)];
      for (ArrowId u = 0; u < ed.num_arrows(); ++u) {
        if (ed.dom(u) != e.transitions[f].obj(x)) continue;
        index.emplace(std::vector<int>{s, f, u}, static_cast<int>(arrows.size()));
        arrows.push_back({s, obj.at({one.cod(f), ed.cod(u)}), f, u});
      }
    }
  }
  std::vector<FinCat::Ends> ends;
  for (const auto& a : arrows) ends.push_back({a.src, a.tgt});
  std::vector<ArrowId> ids;
  for (ObjId s = 0; s < static_cast<int>(pres.object_label.size()); ++s) {
    const ObjId c = pres.object_label[s][0];
    ids.push_back(index.at({s, one.identity(c), e.values[c]->identity(pres.object_label[s][1])}));
  }
  // (f, u) then (g, x) = (f·g, g_!(u) then x, after the inverse compositor)
  FinCat p = FinCat::generate(static_cast<int>(pres.object_label.size()), ends, ids, [&](ArrowId i, ArrowId j) {
    const El& a = arrows[i];
    const El& b = arrows[j];
    const FinCat& target = *e.values[one.cod(b.f)];
    const ArrowId phi = e.compositor(a.f, b.f)[pres.object_label[a.src][1]];
    const ArrowId step = target.inverse(phi);
    if (step < 0) throw InvariantError("oracle: compositor not invertible");
    const ArrowId u = target.compose(target.compose(step, e.transitions[b.f].arr(a.u)), b.u);
    return index.at({a.src, one.compose(a.f, b.f), u});
  });
  pres.p = share(std::move(p));
  for (const auto& a : arrows) {
    pres.arrow_label.push_back({a.f, a.u, -1});
    pres.sigma.push_back(e.values[one.cod(a.f)]->is_iso(a.u) ? 1 : 0);
  }
  pres.provenance.push_back("elements construction: " + std::to_string(arrows.size()) + " arrows");
  return pres;
}

std::optional<std::string> compare_with_oracle(const ColimitPresentation& pres, const ColimitPresentation& oracle) {
  if (pres.p->num_objects() != oracle.p->num_objects()) return "object counts differ";
  if (pres.p->num_arrows() != oracle.p->num_arrows()) return "arrow counts differ";
  for (ObjId o = 0; o < pres.p->num_objects(); ++o)
    if (pres.object_label[o][0] != oracle.object_label[o][0] || pres.object_label[o][1] != oracle.object_label[o][1])
      return "object " + std::to_string(o) + " labelled differently";
  for (ArrowId a = 0; a < pres.p->num_arrows(); ++a) {
    if (pres.arrow_label[a][0] != oracle.arrow_label[a][0] || pres.arrow_label[a][1] != oracle.arrow_label[a][1])
      return "arrow " + std::to_string(a) + " labelled differently";
    if (pres.sigma[a] != oracle.sigma[a]) return "arrow " + std::to_string(a) + " differs in sigma";
  }
  if (!(*pres.p == *oracle.p)) return "composition tables differ";
  return std::nullopt;
}

}  // namespace wcolim
