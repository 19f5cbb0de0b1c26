#pragma once

#include "wcolim/twocat.hpp"

/// Small named categories and indexing shapes used by seeds and tests.
namespace wcolim::catalog {

FinCat terminal();
FinCat empty();
FinCat discrete(int n);
/// 0 → 1
FinCat walking_arrow();
/// one object, e with e·e = e
FinCat walking_idempotent();
/// a ≅ b
FinCat walking_iso();
/// one object, arrows g^0 .. g^{n-1}
FinCat cyclic_group(int n);

/// Locally discrete 2-category on one object.
TwoCat shape_point();
/// Locally discrete 0 → 1.
TwoCat shape_walking_arrow();
/// One object X, 1-cells {1, x} with x·x = x, 2-cells {1_1, 1_x, ξ: x ⇒ x}
/// with ξξ = ξ and every horizontal composite involving ξ equal to ξ.
TwoCat shape_idempotent();
/// As shape_idempotent, but whiskering by x sends ξ to 1_x.
TwoCat shape_idempotent_killing();
/// Objects A, B; 1-cells f, g: A → B; one 2-cell α: f ⇒ g.
TwoCat shape_walking_2cell();
/// Objects A, B, C; f, g: A → B, h: B → C; α: f ⇒ g and its whisker α·h.
TwoCat shape_whiskered_2cell();

}  // namespace wcolim::catalog
