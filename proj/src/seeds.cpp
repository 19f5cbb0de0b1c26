#include "wcolim/seeds.hpp"

#include "wcolim/catalog.hpp"

namespace wcolim::seeds {

namespace {

Functor constant_at(const CatPtr& src, const CatPtr& tgt, ObjId o) { return constant_functor(src, tgt, o); }

std::vector<NatTransf> identity_cells(const TwoCat& k, const std::vector<Functor>& transitions) {
  std::vector<NatTransf> cells;
  for (CellId c = 0; c < k.num_two_cells(); ++c) cells.push_back(identity_nat(transitions[k.src(c)]));
  return cells;
}

}  // namespace

Instance point_arrow() {
  auto k = share(catalog::shape_point());
  auto e = share(constant_pseudo_functor(Variance::covariant, k, share(catalog::walking_arrow())));
  auto w = share(constant_pseudo_functor(Variance::contravariant, k, share(catalog::terminal())));
  return {"point_arrow", e, w};
}

Instance idempotent_constant() {
  auto k = share(catalog::shape_idempotent());
  auto one = share(catalog::terminal());
  return {"idempotent_constant", share(constant_pseudo_functor(Variance::covariant, k, one)),
          share(constant_pseudo_functor(Variance::contravariant, k, one))};
}

Instance arrow_split() {
  auto k = share(catalog::shape_walking_arrow());
  FinCat pq = catalog::discrete(2);
  pq.set_object_names({"p", "q"});
  pq.set_arrow_names({"1_p", "1_q"});
  auto e0 = share(std::move(pq));
  auto e1 = share(catalog::walking_arrow());
  // 1-cells: 1_0, 1_1, a
  std::vector<Functor> tr{identity_functor(e0), identity_functor(e1), Functor{e0, e1, {0, 1}, {0, 1}}};
  auto e = share(strict_pseudo_functor(Variance::covariant, k, {e0, e1}, tr, identity_cells(*k, tr)));
  auto w = share(constant_pseudo_functor(Variance::contravariant, k, share(catalog::terminal())));
  return {"arrow_split", e, w};
}

Instance idempotent_yoneda() {
  auto k = share(catalog::shape_idempotent());
  auto fib = share(catalog::walking_idempotent());
  const Functor id = identity_functor(fib);
  std::vector<Functor> tr{id, id};
  std::vector<NatTransf> cells{identity_nat(id), identity_nat(id), NatTransf{id, id, {1}}};
  auto e = share(strict_pseudo_functor(Variance::covariant, k, {fib}, tr, cells));
  auto w = share(representable(k, 0));
  return {"idempotent_yoneda", e, w};
}

Instance pseudo_z2() {
  auto k = share(catalog::shape_idempotent());
  FinCat z2 = catalog::cyclic_group(2);
  z2.set_arrow_names({"1", "s"});
  auto fib = share(std::move(z2));
  const Functor id = identity_functor(fib);
  std::vector<Functor> tr{id, id};
  PseudoFunctor e = strict_pseudo_functor(Variance::covariant, k, {fib}, tr, identity_cells(*k, tr));
  e.compositors.at({1, 1}).components = {1};
  auto w = share(constant_pseudo_functor(Variance::contravariant, k, share(catalog::terminal())));
  return {"pseudo_z2", share(std::move(e)), w};
}

Instance walking_2cell() {
  auto k = share(catalog::shape_walking_2cell());
  auto one = share(catalog::terminal());
  auto arrow = share(catalog::walking_arrow());
  // 1-cells: 1_A, 1_B, f, g; 2-cells: identities then alpha
  std::vector<Functor> etr{identity_functor(one), identity_functor(arrow), constant_at(one, arrow, 0),
                           constant_at(one, arrow, 1)};
  std::vector<NatTransf> ecells = identity_cells(*k, etr);
  ecells[4] = NatTransf{etr[2], etr[3], {2}};
  auto e = share(strict_pseudo_functor(Variance::covariant, k, {one, arrow}, etr, ecells));
  std::vector<Functor> wtr{identity_functor(arrow), identity_functor(one), constant_at(one, arrow, 0),
                           constant_at(one, arrow, 1)};
  std::vector<NatTransf> wcells = identity_cells(*k, wtr);
  wcells[4] = NatTransf{wtr[2], wtr[3], {2}};
  auto w = share(strict_pseudo_functor(Variance::contravariant, k, {arrow, one}, wtr, wcells));
  return {"walking_2cell", e, w};
}

std::vector<Instance> main_suite() { return {point_arrow(), idempotent_constant(), arrow_split(), idempotent_yoneda(), pseudo_z2(), walking_2cell()}; }

std::vector<Instance> conical_suite() {
  std::vector<Instance> out{point_arrow(), arrow_split()};
  // a non-strict one: Z/2 fibers over the walking arrow with a twisted transition
  auto k = share(catalog::shape_walking_arrow());
  FinCat z2 = catalog::cyclic_group(2);
  z2.set_arrow_names({"1", "s"});
  auto g = share(std::move(z2));
  auto arrow = share(catalog::walking_arrow());
  std::vector<Functor> tr{identity_functor(g), identity_functor(arrow), constant_at(g, arrow, 1)};
  auto e = share(strict_pseudo_functor(Variance::covariant, k, {g, arrow}, tr, identity_cells(*k, tr)));
  auto w = share(constant_pseudo_functor(Variance::contravariant, k, share(catalog::terminal())));
  out.push_back({"z2_over_arrow", e, w});
  return out;
}

std::vector<std::pair<std::string, CatPtr>> test_categories() {
  FinCat z2 = catalog::cyclic_group(2);
  z2.set_arrow_names({"1", "s"});
  return {{"walking_arrow", share(catalog::walking_arrow())},
          {"walking_idempotent", share(catalog::walking_idempotent())},
          {"z2", share(std::move(z2))}};
}

}  // namespace wcolim::seeds
