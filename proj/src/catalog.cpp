#include "wcolim/catalog.hpp"

namespace wcolim::catalog {

FinCat terminal() {
  FinCatBuilder b;
  b.object("*");
  return b.build();
}

FinCat empty() { return FinCatBuilder{}.build(); }

FinCat discrete(int n) {
  FinCatBuilder b;
  for (int i = 0; i < n; ++i) b.object("d" + std::to_string(i));
  return b.build();
}

FinCat walking_arrow() {
  FinCatBuilder b;
  const ObjId a = b.object("0");
  const ObjId c = b.object("1");
  b.arrow(a, c, "a");
  return b.build();
}

FinCat walking_idempotent() {
  FinCatBuilder b;
  const ObjId o = b.object("*");
  const ArrowId e = b.arrow(o, o, "e");
  b.compose(e, e, e);
  return b.build();
}

FinCat walking_iso() {
  FinCatBuilder b;
  const ObjId a = b.object("a");
  const ObjId c = b.object("b");
  const ArrowId i = b.arrow(a, c, "i");
  const ArrowId j = b.arrow(c, a, "j");
  b.compose(i, j, b.identity(a));
  b.compose(j, i, b.identity(c));
  return b.build();
}

FinCat cyclic_group(int n) {
  FinCatBuilder b;
  const ObjId o = b.object("*");
  std::vector<ArrowId> g{b.identity(o)};
  for (int i = 1; i < n; ++i) g.push_back(b.arrow(o, o, "g" + std::to_string(i)));
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) b.compose(g[i], g[j], g[(i + j) % n]);
  return b.build();
}

TwoCat shape_point() { return locally_discrete(terminal()); }

TwoCat shape_walking_arrow() { return locally_discrete(walking_arrow()); }

namespace {
FinCat idempotent_one_cells() {
  FinCatBuilder b;
  const ObjId o = b.object("X");
  const ArrowId x = b.arrow(o, o, "x");
  b.compose(x, x, x);
  return b.build();
}
}  // namespace

TwoCat shape_idempotent() {
  TwoCatBuilder b(idempotent_one_cells());
  const ArrowId x = 1;
  const CellId xi = b.cell(x, x, "xi");
  b.vcompose(xi, xi, xi);
  b.hcompose(xi, b.id2(x), xi);
  b.hcompose(b.id2(x), xi, xi);
  b.hcompose(xi, xi, xi);
  return b.build();
}

TwoCat shape_idempotent_killing() {
  TwoCatBuilder b(idempotent_one_cells());
  const ArrowId x = 1;
  const CellId xi = b.cell(x, x, "xi");
  b.vcompose(xi, xi, xi);
  b.hcompose(xi, b.id2(x), b.id2(x));
  b.hcompose(b.id2(x), xi, b.id2(x));
  b.hcompose(xi, xi, b.id2(x));
  return b.build();
}

TwoCat shape_walking_2cell() {
  FinCatBuilder c;
  const ObjId a = c.object("A");
  const ObjId bb = c.object("B");
  const ArrowId f = c.arrow(a, bb, "f");
  const ArrowId g = c.arrow(a, bb, "g");
  TwoCatBuilder b(c.build());
  b.cell(f, g, "alpha");
  return b.build();
}

TwoCat shape_whiskered_2cell() {
  FinCatBuilder c;
  const ObjId a = c.object("A");
  const ObjId bb = c.object("B");
  const ObjId cc = c.object("C");
  const ArrowId f = c.arrow(a, bb, "f");
  const ArrowId g = c.arrow(a, bb, "g");
  const ArrowId h = c.arrow(bb, cc, "h");
  const ArrowId fh = c.arrow(a, cc, "fh");
  const ArrowId gh = c.arrow(a, cc, "gh");
  c.compose(f, h, fh);
  c.compose(g, h, gh);
  TwoCatBuilder b(c.build());
  const CellId alpha = b.cell(f, g, "alpha");
  const CellId alpha_h = b.cell(fh, gh, "alpha_h");
  b.hcompose(alpha, b.id2(h), alpha_h);
  return b.build();
}

}  // namespace wcolim::catalog
