#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace wcolim;
using namespace wcolim::testing;

TEST_CASE("catalog shapes are valid") {
  for (const TwoCatPtr& k : shape_pool()) CHECK(validate_two_category(*k).ok());
  CHECK(validate_two_category(locally_discrete(catalog::terminal())).ok());
  CHECK(validate_two_category(locally_discrete(catalog::walking_idempotent())).ok());
}

TEST_CASE("idempotent shape tables") {
  TwoCat k = catalog::shape_idempotent();
  CHECK(k.num_objects() == 1);
  CHECK(k.num_one_cells() == 2);
  CHECK(k.num_two_cells() == 3);
  const ArrowId x = 1;
  const CellId xi = k.cells_between(x, x)[1];
  CHECK(k.vcompose(xi, xi) == xi);
  CHECK(k.hcompose(xi, xi) == xi);
  CHECK(k.hcompose(xi, k.id2(x)) == xi);
}

TEST_CASE("seeded interchange violation: exactly the failing quadruples are reported") {
  TwoCat k = broken_interchange();
  auto r = validate_two_category(k);
  REQUIRE_FALSE(r.ok());
  std::set<std::vector<int>> reported;
  for (const auto& v : r.violations) {
    CHECK(v.kind == "interchange");
    reported.insert(v.witness);
  }
  // oracle: (a then a′) ∗ (b then b′) against (a ∗ b) then (a′ ∗ b′), by brute force
  std::set<std::vector<int>> expected;
  const int n = k.num_two_cells();
  for (CellId a = 0; a < n; ++a)
    for (CellId a2 = 0; a2 < n; ++a2)
      for (CellId b = 0; b < n; ++b)
        for (CellId b2 = 0; b2 < n; ++b2) {
          if (k.tgt(a) != k.src(a2) || k.tgt(b) != k.src(b2)) continue;
          if (k.cod(k.src(a)) != k.dom(k.src(b))) continue;
          if (k.hcompose(k.vcompose(a, a2), k.vcompose(b, b2)) != k.vcompose(k.hcompose(a, b), k.hcompose(a2, b2)))
            expected.insert({a, a2, b, b2});
        }
  CHECK(reported == expected);
  // the seeded quadruple (α then 1) ∗ (1 then β)
  const CellId al = k.cells_between(3, 3)[1];
  const CellId be = k.cells_between(4, 4)[1];
  CHECK(reported.count({al, k.id2(3), k.id2(4), be}) == 1);
}

TEST_CASE("pi0") {
  // locally discrete: quotient is the underlying category
  TwoCat ld = catalog::shape_walking_arrow();
  Pi0Result q = pi0(ld);
  CHECK(*q.quotient == ld.one());
  std::set<int> classes(q.class_of.begin(), q.class_of.end());
  CHECK(classes.size() == static_cast<std::size_t>(ld.num_one_cells()));

  Pi0Result qi = pi0(catalog::shape_idempotent());
  CHECK(qi.quotient->num_objects() == 1);
  CHECK(qi.quotient->num_arrows() == 2);
  const ArrowId cx = qi.class_of[1];
  CHECK(qi.quotient->compose(cx, cx) == cx);

  Pi0Result q2 = pi0(catalog::shape_walking_2cell());
  CHECK(q2.class_of[2] == q2.class_of[3]);  // f and g joined by α
  CHECK(q2.quotient->num_arrows() == 3);
}

TEST_CASE("pi0 chain f ⇒ g ⇐ h gives one class") {
  FinCatBuilder c;
  const ObjId a = c.object("A");
  const ObjId b = c.object("B");
  const ArrowId f = c.arrow(a, b, "f");
  const ArrowId g = c.arrow(a, b, "g");
  const ArrowId h = c.arrow(a, b, "h");
  TwoCatBuilder kb(c.build());
  kb.cell(f, g, "s");
  kb.cell(h, g, "t");
  TwoCat k = kb.build();
  REQUIRE(validate_two_category(k).ok());
  Pi0Result q = pi0(k);
  CHECK(q.class_of[f] == q.class_of[g]);
  CHECK(q.class_of[h] == q.class_of[g]);
  CHECK(q.members[q.class_of[f]] == std::vector<ArrowId>{f, g, h});
}

TEST_CASE("pi0 composition does not depend on representatives") {
  for (const TwoCatPtr& k : shape_pool()) {
    Pi0Result q = pi0(*k);
    const FinCat& one = k->one();
    for (ArrowId f = 0; f < one.num_arrows(); ++f)
      for (ArrowId g : one.out(one.cod(f)))
        for (ArrowId f2 : q.members[q.class_of[f]])
          for (ArrowId g2 : q.members[q.class_of[g]])
            CHECK(q.class_of[one.compose(f, g)] == q.class_of[one.compose(f2, g2)]);
  }
}

TEST_CASE("duals") {
  for (const TwoCatPtr& k : shape_pool()) {
    CHECK(op_dual(op_dual(*k)) == *k);
    CHECK(co_dual(co_dual(*k)) == *k);
    CHECK(validate_two_category(op_dual(*k)).ok());
    CHECK(validate_two_category(co_dual(*k)).ok());
  }
  TwoCat op = op_dual(catalog::shape_walking_arrow());
  CHECK(op.dom(2) == 1);
  CHECK(op.cod(2) == 0);
  // ξ is an endo-2-cell, so reversing 2-cells leaves the tables unchanged
  CHECK(co_dual(catalog::shape_idempotent()) == catalog::shape_idempotent());
}

TEST_CASE("products") {
  TwoCat k = catalog::shape_idempotent();
  TwoCat kk = product(k, op_dual(k));
  CHECK(kk.num_objects() == 1);
  CHECK(kk.num_one_cells() == 4);
  CHECK(kk.num_two_cells() == 9);
  CHECK(validate_two_category(kk).ok());
  CHECK(product(k, catalog::shape_point()) == k);
  TwoCat six = product(catalog::shape_walking_arrow(), locally_discrete(catalog::discrete(3)));
  CHECK(six.num_objects() == 6);
}

TEST_CASE("locally discrete") {
  TwoCat t = locally_discrete(catalog::terminal());
  CHECK(t.num_objects() == 1);
  CHECK(t.num_two_cells() == 1);
  CHECK(t.is_locally_discrete());
  FinCat idem = catalog::walking_idempotent();
  CHECK(*pi0(locally_discrete(idem)).quotient == idem);
  CHECK_FALSE(catalog::shape_idempotent().is_locally_discrete());
}

TEST_CASE("hom slices") {
  TwoCat k = catalog::shape_walking_2cell();
  HomSlice s = hom_slice(k, 0, 1);
  CHECK(s.cat->num_objects() == 2);
  CHECK(s.cat->num_arrows() == 3);
  CHECK(validate_category(*s.cat).ok());
  HomSlice e = hom_slice(k, 1, 0);
  CHECK(e.cat->num_objects() == 0);
}
