#pragma once

#include <string>
#include <vector>

#include "wcolim/psfun.hpp"

/// Named small instances (E covariant, W contravariant on one shape).
namespace wcolim::seeds {

struct Instance {
  std::string name;
  PseudoFunctorPtr e;
  PseudoFunctorPtr w;
};

/// point shape, E constant at the walking arrow, W constant at 1
Instance point_arrow();
/// idempotent shape, E = W = constant 1
Instance idempotent_constant();
/// walking arrow shape; E(0) = {p, q} discrete, E(1) = walking arrow,
/// a_! sends p to 0 and q to 1; W terminal
Instance arrow_split();
/// idempotent shape, E(X) = walking idempotent, x_! = id, ξ_! = e;
/// W the representable at X
Instance idempotent_yoneda();
/// idempotent shape, E(X) = Z/2 with the compositor at (x, x) the generator;
/// W constant 1. Not strict.
Instance pseudo_z2();
/// walking 2-cell; E(A) = 1, E(B) = walking arrow, α_! = a; W the mirror
Instance walking_2cell();

/// Instances for the main theorem suite.
std::vector<Instance> main_suite();
/// Instances whose shape is locally discrete with terminal weight.
std::vector<Instance> conical_suite();

/// Test categories used as targets.
std::vector<std::pair<std::string, CatPtr>> test_categories();

}  // namespace wcolim::seeds
