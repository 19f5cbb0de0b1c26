#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"
#include "wcolim/bicolim.hpp"
#include "wcolim/runner.hpp"

using namespace wcolim;
using namespace wcolim::testing;

namespace {
CatPtr sp(FinCat c) { return share(std::move(c)); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot read " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("tensor presentation of the idempotent example") {
  const auto s = seeds::idempotent_constant();
  TensorPresentation t = build_tensor(s.e, s.w);
  CHECK(t.relabeling_ok);
  REQUIRE(t.objects.size() == 2);
  std::vector<std::string> labels;
  for (ObjId o = 0; o < 2; ++o) labels.push_back(t.object_label(o));
  CHECK(labels == std::vector<std::string>{"(X,X,*,*,1_X)", "(X,X,*,*,x)"});
  // (1, 1, 1, 1, ξ) from (X, X, *, *, x) to itself: ξ is not invertible, so not cartesian
  const ObjId xo = 1;
  auto a = t.find_arrow(xo, xo, QuintupleArrow{0, 0, 0, 0, 2});
  REQUIRE(a.has_value());
  CHECK_FALSE(t.pres.delta->is_cartesian(*a));
}

TEST_CASE("relabeling agrees with the generic diagonal on every seed") {
  for (const auto& s : seeds::main_suite()) {
    INFO(s.name);
    TensorPresentation t = build_tensor(s.e, s.w);
    CHECK_MESSAGE(t.relabeling_ok, t.relabeling_failure);
    CHECK(t.objects.size() == t.pres.delta->objects.size());
    CHECK(t.arrows.size() == t.pres.delta->arrows.size());
  }
}

TEST_CASE("point shape: tensor presentation is the weighted one") {
  const auto s = seeds::point_arrow();
  TensorPresentation t = build_tensor(s.e, s.w);
  ColimitPresentation p = pscolim_presentation(s.e, s.w);
  CHECK(t.pres.p->num_objects() == p.p->num_objects());
  CHECK(t.pres.p->num_arrows() == p.p->num_arrows());
  CHECK(t.pres.sigma_count() == p.sigma_count());
}

TEST_CASE("technical equivalence: phi after psi is the identity, psi after phi has an invertible unit") {
  for (const auto& s : {seeds::idempotent_constant(), seeds::point_arrow(), seeds::pseudo_z2()})
    for (const auto& [name, a] : seeds::test_categories()) {
      INFO(s.name << " into " << name);
      TechContext ctx = tech_context(s.e, s.w, a);
      auto right = enumerate_pseudo_naturals(s.w, ctx.right.functor);
      for (const PseudoNat& th : right) {
        PseudoNat psi_th = tech_psi(ctx, th);
        CHECK(validate_pseudo_natural(psi_th).ok());
        CHECK(same_pseudo_natural(tech_phi(ctx, psi_th), th));
      }
      auto left = enumerate_pseudo_naturals(ctx.hom, ctx.left.functor);
      for (const PseudoNat& al : left) {
        auto pa = std::make_shared<const PseudoNat>(al);
        auto round = std::make_shared<const PseudoNat>(tech_psi(ctx, tech_phi(ctx, al)));
        Modification u = tech_unit(ctx, pa, round);
        CHECK(validate_modification(u).ok());
        for (const NatTransf& c : u.components) CHECK(is_invertible(c));
      }
    }
}

TEST_CASE("verify_bicolimit on the seeds") {
  for (const auto& s : seeds::main_suite())
    for (const auto& [name, a] : seeds::test_categories()) {
      INFO(s.name << " into " << name);
      BicolimitReport r = verify_bicolimit(s.e, s.w, a);
      CHECK(r.ok());
      CHECK(r.phi_psi_identity);
      CHECK(r.unit_invertible);
      CHECK(r.main.verdict == IsoVerdict::iso);
    }
  // into 1 both sides are terminal
  BicolimitReport one = verify_bicolimit(seeds::idempotent_constant().e, seeds::idempotent_constant().w,
                                         sp(catalog::terminal()));
  CHECK(one.ok());
  CHECK(one.hom_side_objects == 1);
  CHECK(one.weight_side_objects == 1);
}

TEST_CASE("locally discrete shapes with terminal weight: bicolimit and pseudo-colimit hom-categories match") {
  for (const auto& s : seeds::conical_suite())
    for (const auto& [name, a] : seeds::test_categories()) {
      INFO(s.name << " into " << name);
      BicolimitReport b = verify_bicolimit(s.e, s.w, a);
      TheoremReport p = verify_main_theorem(s.e, s.w, a);
      CHECK(b.ok());
      CHECK(b.weight_side_objects == p.pseudo_objects);
      // only equivalent: phi is split by psi, so the hom side can only be larger
      CHECK(b.hom_side_objects >= b.weight_side_objects);
    }
}

TEST_CASE("comparison functor") {
  for (const auto& s : seeds::main_suite()) {
    INFO(s.name);
    ComparisonData c = comparison_functor(s.e, s.w);
    CHECK_MESSAGE(c.ok(), c.witness);
    CHECK(validate_functor(c.functor).ok());
    // cartesian quintuples land on σ
    for (ArrowId a = 0; a < c.tensor.pres.p->num_arrows(); ++a)
      if (c.tensor.pres.in_sigma(a)) CHECK(c.pres.in_sigma(c.functor.arr(a)));
  }
  const auto s2 = seeds::idempotent_constant();
  ComparisonData c2 = comparison_functor(s2.e, s2.w);
  CHECK(c2.functor.obj(0) == c2.functor.obj(1));
}

TEST_CASE("example_idempotent computes both sides") {
  CounterexampleReport r = example_idempotent();
  CHECK(r.pseudo_objects == 1);
  CHECK(r.pseudo_arrows == 1);
  CHECK(r.pseudo_groupoid);
  CHECK(r.tensor_p_objects == 2);
  CHECK(r.tensor_p_arrows == 9);
  CHECK(r.tensor_sigma == 8);
  CHECK_FALSE(r.xi_in_sigma);
  // every σ idempotent becomes an identity, and ξ with them
  CHECK(r.sigma_idempotents.size() == 3);
  CHECK(r.xi_identity_after);
}

TEST_CASE("example job report matches the golden file") {
  const std::string text = slurp(std::string(WCOLIM_DATA_DIR) + "/example_idempotent.json");
  RunReport rep = run(parse_spec(text), text);
  const auto golden = nlohmann::json::parse(slurp(std::string(WCOLIM_GOLDEN_DIR) + "/example_idempotent.json"));
  CHECK(rep.document == golden);
  CHECK(rep.exit_code() == 1);
}
