#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace wcolim;
using namespace wcolim::testing;

TEST_CASE("generated pseudo-functors, pseudo-naturals and their mutations") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SoundnessTally t = run_soundness(seed, 120, 250);
    INFO("seed " << seed);
    for (const auto& f : t.failures) MESSAGE(f);
    CHECK(t.functors_valid == t.functors);
    CHECK(t.naturals_valid == t.naturals);
    CHECK(t.mutations == 250);
    CHECK(t.mutations_named == t.mutations);
  }
}

TEST_CASE("twisting twice and untwisting composes to the identity coherence") {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    PseudoFunctorPtr f = random_pseudo_functor(rng, Variance::covariant);
    Twist t = twist(f, rng);
    PseudoNat round = compose_pseudo_naturals(twist_natural(t), twist_natural_inverse(t));
    CHECK(validate_pseudo_natural(round).ok());
    CHECK(round.is_two_natural());
  }
}

TEST_CASE("hom, representable and product constructions validate on generated data") {
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    PseudoFunctorPtr e = random_pseudo_functor(rng, Variance::covariant);
    auto w = random_pseudo_functor(rng, Variance::contravariant, e->shape);
    for (const auto& [name, x] : seeds::test_categories()) {
      auto h = hom_pseudo_functor(e, x);
      CHECK(validate_pseudo_functor(*h.functor).ok());
    }
    auto shape = bifunctor_shape(*e->shape);
    CHECK(validate_pseudo_functor(product_bifunctor(*e, *w, shape)).ok());
  }
}

TEST_CASE("phi images of generated instances are pseudo-natural and psi inverts them") {
  Rng rng(13);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    PseudoFunctorPtr e = random_pseudo_functor(rng, Variance::covariant);
    auto w = random_pseudo_functor(rng, Variance::contravariant, e->shape);
    const auto cats = seeds::test_categories();
    const CatPtr x = cats[pick(rng, static_cast<int>(cats.size()))].second;
    try {
      Budget b;
      b.max_candidates = 200'000;
      UniversalContext ctx = universal_context(e, w, x, b);
      auto sf = sigma_functor_cat(ctx.pres, x, b);
      for (ObjId o = 0; o < sf.cat()->num_objects(); ++o) {
        const Functor& f = sf.carrier->functor(o);
        PseudoNat t = phi(ctx, f);
        CHECK(validate_pseudo_natural(t).ok());
        Functor back = psi(ctx, t);
        CHECK(back == f);
        CHECK(inverts(back, ctx.pres.sigma));
        ++checked;
      }
    } catch (const BudgetExceeded&) {
    }
  }
  CHECK(checked > 0);
  MESSAGE(checked << " round trips");
}
