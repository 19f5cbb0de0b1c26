#pragma once

// Generators, fixtures and brute-force oracles shared by the unit tests and
// the acceptance binary.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wcolim/catalog.hpp"
#include "wcolim/seeds.hpp"
#include "wcolim/universal.hpp"

namespace wcolim::testing {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

// ---------------------------------------------------------------- fixtures

/// 0 ⇉ 1 with arrows u, v.
FinCat parallel_pair();
/// a → b → c, locally discrete.
TwoCat shape_composable_pair();
/// A → B → C with α: f ⇒ g on A → B, and E(C) = parallel_pair, h_! sending
/// a to u and (α∗1_h)_! = v: only the horizontal pair (α, 1_h) breaks coherence.
PseudoFunctor broken_horizontal_coherence();
/// f: A → B, g: B → C with idempotent 2-cells α, β, γ on f, g, fg, whiskers
/// α∗1 = 1∗β = γ and α∗β seeded as 1_fg, so interchange fails.
TwoCat broken_interchange();

/// Small categories used as fibers (several have non-identity isomorphisms).
std::vector<CatPtr> fiber_pool();
/// Shapes with at most two objects plus the composable pair.
std::vector<TwoCatPtr> shape_pool();

// ---------------------------------------------------------------- generators

/// G ≅ F obtained by conjugating each transition with a random invertible
/// 2-cell θ_f: F f ⇒ G f (identities on identity 1-cells).
struct Twist {
  PseudoFunctorPtr source;
  PseudoFunctorPtr target;
  std::vector<NatTransf> theta;  // by 1-cell, F f ⇒ G f
};

Twist twist(const PseudoFunctorPtr& f, Rng& rng);
/// The pseudo-natural F ⇒ G with identity components and coherence θ.
PseudoNat twist_natural(const Twist& t);
/// G ⇒ F with coherence θ⁻¹.
PseudoNat twist_natural_inverse(const Twist& t);
/// s then t.
PseudoNat compose_pseudo_naturals(const PseudoNat& s, const PseudoNat& t);

/// A valid pseudo-functor of the given variance on a random shape (or on
/// `shape` when given): a seed, constant, representable or hom functor,
/// then twisted.
PseudoFunctorPtr random_pseudo_functor(Rng& rng, Variance variance, TwoCatPtr shape = nullptr);
/// A valid pseudo-natural between twisted pseudo-functors: either
/// G₁ ⇒ F ⇒ G₂ through two twists, or a phi image post-composed with a twist.
PseudoNat random_pseudo_natural(Rng& rng);

/// Random E on a locally discrete shape with W constant at 1.
seeds::Instance random_conical_instance(Rng& rng);

// ---------------------------------------------------------------- mutations

struct Mutation {
  std::string description;
  /// true when the violation names the mutated data
  std::function<bool(const Violation&)> names_it;
};

struct FunctorMutation {
  PseudoFunctor mutated;
  Mutation what;
};

struct NaturalMutation {
  PseudoNat mutated;
  Mutation what;
};

/// One single-cell change that is invalid by construction, or nullopt when the
/// chosen kind does not apply to f.
std::optional<FunctorMutation> mutate_pseudo_functor(const PseudoFunctor& f, Rng& rng);
/// As above for pseudo-naturals. With `oracle` set, general retypings of a
/// coherence component are also tried and kept only when the result is absent
/// from the exhaustive enumeration.
std::optional<NaturalMutation> mutate_pseudo_natural(const PseudoNat& t, Rng& rng, bool oracle);

/// Outcome of validating generated instances and their mutations.
struct SoundnessTally {
  int functors = 0, functors_valid = 0;
  int naturals = 0, naturals_valid = 0;
  int mutations = 0, mutations_named = 0;  // named: rejected with a witness naming the change
  std::vector<std::string> failures;
};

/// Generates `valid` pseudo-functors and `valid` pseudo-naturals, then
/// mutates generated instances until `mutations` applicable changes were tried.
SoundnessTally run_soundness(std::uint64_t seed, int valid, int mutations);

// ---------------------------------------------------------------- oracles

/// Number of functors c → x by trying every object and arrow assignment.
std::uint64_t brute_force_functor_count(const FinCat& c, const FinCat& x);
/// Natural transformations f ⇒ g by trying every component family.
std::uint64_t brute_force_nat_count(const Functor& f, const Functor& g);
/// Pseudo-naturals e ⇒ h: every family of component functors and every raw
/// family of coherence arrows, filtered by validate_pseudo_natural.
std::uint64_t brute_force_pseudo_natural_count(const PseudoFunctorPtr& e, const PseudoFunctorPtr& h);
/// Objects and arrows of the full subcategory of functor_category(p, x) on
/// functors sending σ to isomorphisms.
std::pair<int, int> filtered_sigma_functor_count(const ColimitPresentation& pres, const CatPtr& x);

/// Filtered by the definition, with triple loops.
bool brute_force_filtered(const FinCat& c);
/// A random preorder on at most n objects (cycles allowed) or a small monoid.
FinCat random_small_category(Rng& rng, int max_objects);

}  // namespace wcolim::testing
