#pragma once

#include <string>
#include <vector>

#include "wcolim/twocat.hpp"

namespace wcolim {

/// Objects as nodes, non-identity arrows as labeled edges. Arrows with
/// marked[f] set are drawn bold.
std::string category_dot(const FinCat& c, const std::string& title, const std::vector<char>& marked = {});
/// The 1-skeleton of k.
std::string shape_dot(const TwoCat& k, const std::string& title);
/// Hom-slice k(a, b): 1-cells as nodes, non-identity 2-cells as edges.
std::string hom_slice_dot(const TwoCat& k, ObjId a, ObjId b, const std::string& title);

/// Keeps [A-Za-z0-9_.-], replaces everything else with '_'.
std::string dot_file_stem(const std::string& name);

}  // namespace wcolim
