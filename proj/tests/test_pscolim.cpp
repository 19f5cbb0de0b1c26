#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "wcolim/yoneda.hpp"

using namespace wcolim;
using namespace wcolim::testing;

namespace {
CatPtr sp(FinCat c) { return share(std::move(c)); }

// 0 → 1 and nothing else, whatever the arrow numbering
bool is_walking_arrow(const FinCat& c) {
  return c.num_objects() == 2 && c.num_arrows() == 3 &&
         (c.hom(0, 1).size() + c.hom(1, 0).size()) == 1;
}
}  // namespace

TEST_CASE("diagonal of the idempotent example") {
  const auto s = seeds::idempotent_constant();
  DeltaTwoCat d = build_delta(s.e, s.w);
  CHECK(d.objects.size() == 1);
  CHECK(d.arrows.size() == 2);
  CHECK(d.carrier->num_two_cells() == 3);
  CHECK(validate_two_category(*d.carrier).ok());
  for (ArrowId a = 0; a < static_cast<ArrowId>(d.arrows.size()); ++a) CHECK(d.is_cartesian(a));
}

TEST_CASE("diagonals validate for every seed") {
  for (const auto& s : seeds::main_suite()) {
    INFO(s.name);
    DeltaTwoCat d = build_delta(s.e, s.w);
    CHECK(validate_two_category(*d.carrier).ok());
    // 2-cells only join arrows over 2-cells of the shape with matching ends
    for (CellId c = 0; c < d.carrier->num_two_cells(); ++c) {
      const DeltaArrow& a = d.arrows[d.carrier->src(c)];
      const DeltaArrow& b = d.arrows[d.carrier->tgt(c)];
      CHECK(s.e->shape->src(d.cell_label[c]) == a.f);
      CHECK(s.e->shape->tgt(d.cell_label[c]) == b.f);
    }
  }
}

TEST_CASE("presentations of the seeds") {
  const auto s2 = seeds::idempotent_constant();
  ColimitPresentation p2 = pscolim_presentation(s2.e, s2.w);
  CHECK(p2.p->num_objects() == 1);
  CHECK(p2.p->num_arrows() == 2);
  CHECK(p2.sigma_count() == 2);

  const auto s1 = seeds::point_arrow();
  ColimitPresentation p1 = pscolim_presentation(s1.e, s1.w);
  CHECK(is_walking_arrow(*p1.p));
  for (ArrowId a = 0; a < p1.p->num_arrows(); ++a) CHECK(p1.in_sigma(a) == p1.p->is_identity(a));
}

TEST_CASE("conical oracle agrees on the bundled conical instances") {
  for (const auto& s : seeds::conical_suite()) {
    INFO(s.name);
    auto diff = compare_with_oracle(pscolim_presentation(s.e, s.w), conical_oracle(*s.e));
    CHECK_MESSAGE(!diff.has_value(), diff.value_or(""));
  }
  // constant 1 on the walking arrow: p is the walking arrow, everything cartesian
  auto k = share(catalog::shape_walking_arrow());
  auto one = sp(catalog::terminal());
  PseudoFunctor c = constant_pseudo_functor(Variance::covariant, k, one);
  ColimitPresentation o = conical_oracle(c);
  CHECK(is_walking_arrow(*o.p));
  CHECK(o.sigma_count() == 3);
  CHECK_THROWS_AS(conical_oracle(*seeds::idempotent_constant().e), StructureError);
}

TEST_CASE("conical oracle agrees on generated conical instances") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_conical_instance(rng);
    REQUIRE(validate_pseudo_functor(*s.e).ok());
    auto diff = compare_with_oracle(pscolim_presentation(s.e, s.w), conical_oracle(*s.e));
    CHECK_MESSAGE(!diff.has_value(), diff.value_or(""));
  }
}

TEST_CASE("sigma functor categories agree with the filtered functor category") {
  for (const auto& s : seeds::main_suite())
    for (const auto& [name, x] : seeds::test_categories()) {
      INFO(s.name << " into " << name);
      ColimitPresentation pres = pscolim_presentation(s.e, s.w);
      auto sf = sigma_functor_cat(pres, x);
      auto [objects, arrows] = filtered_sigma_functor_count(pres, x);
      CHECK(sf.cat()->num_objects() == objects);
      CHECK(sf.cat()->num_arrows() == arrows);
    }
  // the idempotent example into the walking idempotent: [x] must go to the identity
  const auto s2 = seeds::idempotent_constant();
  auto idem = sp(catalog::walking_idempotent());
  auto sf = sigma_functor_cat(pscolim_presentation(s2.e, s2.w), idem);
  CHECK(sf.cat()->num_objects() == 1);
  // into 1: exactly one
  auto one = sp(catalog::terminal());
  for (const auto& s : seeds::main_suite())
    CHECK(sigma_functor_cat(pscolim_presentation(s.e, s.w), one).cat()->num_objects() == 1);
}

TEST_CASE("phi and psi") {
  const auto s2 = seeds::idempotent_constant();
  auto idem = sp(catalog::walking_idempotent());
  UniversalContext ctx = universal_context(s2.e, s2.w, idem);
  auto sf = sigma_functor_cat(ctx.pres, idem);
  const ArrowId xclass = 1;
  for (ObjId o = 0; o < sf.cat()->num_objects(); ++o) {
    const Functor& f = sf.carrier->functor(o);
    PseudoNat t = phi(ctx, f);
    CHECK(validate_pseudo_natural(t).ok());
    CHECK(ctx.hom.functor->values[0]->is_iso(t.coherence[1][0]));
    CHECK(psi(ctx, t) == f);
    CHECK(idem->is_iso(psi(ctx, t).arr(xclass)));
  }
  // constant functors give constant pseudo-naturals with identity coherence
  const auto s1 = seeds::point_arrow();
  auto arrow = sp(catalog::walking_arrow());
  UniversalContext c1 = universal_context(s1.e, s1.w, arrow);
  for (ObjId v = 0; v < arrow->num_objects(); ++v) {
    PseudoNat t = phi(c1, constant_functor(c1.pres.p, arrow, v));
    CHECK(t.is_two_natural());
    CHECK(psi(c1, t) == constant_functor(c1.pres.p, arrow, v));
  }
}

TEST_CASE("main theorem on the seed suite") {
  for (const auto& s : seeds::main_suite())
    for (const auto& [name, x] : seeds::test_categories()) {
      INFO(s.name << " into " << name);
      TheoremReport r = verify_main_theorem(s.e, s.w, x);
      CHECK(r.verdict == IsoVerdict::iso);
      CHECK(r.functor_objects == r.pseudo_objects);
      CHECK(r.functor_arrows == r.pseudo_arrows);
    }
  // empty weight: one object on both sides
  auto k = share(catalog::shape_idempotent());
  auto empty = share(constant_pseudo_functor(Variance::contravariant, k, sp(catalog::empty())));
  TheoremReport r = verify_main_theorem(seeds::idempotent_constant().e, empty, sp(catalog::walking_arrow()));
  CHECK(r.verdict == IsoVerdict::iso);
  CHECK(r.functor_objects == 1);
  CHECK(r.pseudo_objects == 1);
}

TEST_CASE("localization") {
  const auto s2 = seeds::idempotent_constant();
  LocalizedCat l2 = localize(pscolim_presentation(s2.e, s2.w));
  REQUIRE(l2.exact());
  CHECK(l2.result->num_objects() == 1);
  CHECK(l2.result->num_arrows() == 1);
  CHECK(l2.result->is_groupoid());

  const auto s1 = seeds::point_arrow();
  ColimitPresentation p1 = pscolim_presentation(s1.e, s1.w);
  LocalizedCat l1 = localize(p1);
  CHECK(l1.strategy == LocalizationTier::already_invertible);
  CHECK(*l1.result == *p1.p);
}

TEST_CASE("localizations satisfy the universal property on test categories") {
  // functors out of the localization correspond to σ-inverting functors out of p
  for (const auto& s : seeds::main_suite()) {
    ColimitPresentation pres = pscolim_presentation(s.e, s.w);
    LocalizedCat loc = localize(pres);
    REQUIRE(loc.exact());
    CHECK(inverts(loc.localization_functor, pres.sigma));
    for (const auto& [name, x] : seeds::test_categories()) {
      INFO(s.name << " into " << name);
      auto sf = sigma_functor_cat(pres, x);
      auto out = enumerate_functors(loc.result, x);
      CHECK(out.size() == static_cast<std::size_t>(sf.cat()->num_objects()));
      for (ObjId o = 0; o < sf.cat()->num_objects(); ++o) {
        const Functor& g = sf.carrier->functor(o);
        Functor h = induced_functor(loc, g);
        CHECK(compose_functors(loc.localization_functor, h) == g);
      }
    }
  }
}

TEST_CASE("fractions and zigzag tiers agree where both apply") {
  Rng rng(4);
  int compared = 0;
  for (int i = 0; i < 200; ++i) {
    auto p = share(random_small_category(rng, 4));
    std::vector<char> sigma(p->num_arrows(), 0);
    for (ArrowId a = 0; a < p->num_arrows(); ++a) sigma[a] = p->is_identity(a) || pick(rng, 3) == 0;
    auto closure = multiplicative_closure(*p, sigma);
    if (!check_right_fractions(*p, closure).ok) continue;
    LocalizedCat a = localize_fractions(p, sigma);
    LocalizedCat b = localize_zigzag(p, sigma);
    if (!b.exact()) continue;
    ++compared;
    CHECK(a.result->num_objects() == b.result->num_objects());
    CHECK(a.result->num_arrows() == b.result->num_arrows());
    CHECK(a.result->is_groupoid() == b.result->is_groupoid());
  }
  CHECK(compared > 20);
}

TEST_CASE("canonical cocone is phi of the localization functor") {
  for (const auto& s : seeds::main_suite()) {
    INFO(s.name);
    ColimitPresentation pres = pscolim_presentation(s.e, s.w);
    LocalizedCat loc = localize(pres);
    REQUIRE(loc.exact());
    UniversalContext ctx = universal_context(pres, loc.result);
    PseudoNat cocone = canonical_cocone(ctx, loc);
    CHECK(validate_pseudo_natural(cocone).ok());
    CHECK(same_pseudo_natural(cocone, phi(ctx, loc.localization_functor)));
  }
}

TEST_CASE("phi commutes with postcomposition") {
  for (const auto& s : seeds::main_suite()) {
    const auto cats = seeds::test_categories();
    for (const auto& [xn, x] : cats)
      for (const auto& [yn, y] : cats) {
        INFO(s.name << ": " << xn << " to " << yn);
        UniversalContext cx = universal_context(s.e, s.w, x);
        UniversalContext cy = universal_context(cx.pres, y);
        auto sf = sigma_functor_cat(cx.pres, x);
        for (const Functor& h : enumerate_functors(x, y))
          for (ObjId o = 0; o < sf.cat()->num_objects(); ++o) {
            const Functor& f = sf.carrier->functor(o);
            CHECK(same_pseudo_natural(postcompose(cx, phi(cx, f), h, cy), phi(cy, compose_functors(f, h))));
          }
      }
  }
}

TEST_CASE("yoneda") {
  for (const auto& s : seeds::main_suite())
    for (ObjId c = 0; c < s.e->shape->num_objects(); ++c) {
      INFO(s.name << " at " << c);
      EquivalenceReport r = yoneda_equivalence(s.e, c);
      CHECK(r.ok());
      CHECK(r.gf_identity);
      CHECK(r.unit_cartesian);
      CHECK(r.unit_natural);
    }
  // point shape: the weighted colimit is the fiber itself
  const auto s1 = seeds::point_arrow();
  EquivalenceReport r = yoneda_equivalence(s1.e, 0);
  CHECK(r.pres.p->num_objects() == s1.e->values[0]->num_objects());
  CHECK(r.pres.p->num_arrows() == s1.e->values[0]->num_arrows());
}
