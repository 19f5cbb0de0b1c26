#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcolim/delta.hpp"

namespace wcolim {

enum class LocalizationTier { already_invertible, right_fractions, bounded_zigzag };
enum class LocalizationStatus { exact, undecided };

std::string to_string(LocalizationTier t);
std::string to_string(LocalizationStatus s);

/// One letter of a zigzag: an arrow of p, or the formal inverse of a σ arrow.
struct ZigzagLetter {
  ArrowId arrow;
  bool inverse;
  bool operator==(const ZigzagLetter&) const = default;
};

struct LocalizedCat {
  CatPtr source;  // p
  std::vector<char> sigma;
  CatPtr result;  // null when undecided
  LocalizationTier strategy = LocalizationTier::already_invertible;
  LocalizationStatus status = LocalizationStatus::exact;
  Functor localization_functor;  // p → result
  /// For each arrow of result, a zigzag in p (first letter first) it denotes.
  std::vector<std::vector<ZigzagLetter>> zigzag;
  std::string detail;

  bool exact() const { return status == LocalizationStatus::exact; }
};

/// Arrows reachable as composites of σ arrows and identities.
std::vector<char> multiplicative_closure(const FinCat& p, const std::vector<char>& sigma);

/// Gabriel–Zisman conditions for spans X ← Z → Y with left leg in σ:
/// identities, closure under composition, Ore completion
/// (f: Z → Y, t: W → Y in σ ⇒ t' in σ, f' with t' then f = f' then t) and
/// equalization (f then s = g then s, s in σ ⇒ t in σ with t then f = t then g).
struct FractionsCheck {
  bool ok = true;
  std::string failure;  // first failing condition with witness
};
FractionsCheck check_right_fractions(const FinCat& p, const std::vector<char>& sigma);

/// Tier (a) when σ is already invertible, tier (b) when the closure of σ
/// admits right fractions, tier (c) otherwise.
LocalizedCat localize(const CatPtr& p, const std::vector<char>& sigma, const Budget& budget = {});
LocalizedCat localize(const ColimitPresentation& pres, const Budget& budget = {});

/// Individual tiers, for cross-checking. localize_fractions requires the
/// closure to pass check_right_fractions.
LocalizedCat localize_fractions(const CatPtr& p, const std::vector<char>& sigma, const Budget& budget = {});
LocalizedCat localize_zigzag(const CatPtr& p, const std::vector<char>& sigma, const Budget& budget = {});

/// Functor sends every σ arrow to an isomorphism.
bool inverts(const Functor& f, const std::vector<char>& sigma);

/// The functor result → x through which a σ-inverting g: p → x factors.
/// Throws StructureError when g does not invert σ, InvariantError when the
/// zigzag evaluation is not a functor.
Functor induced_functor(const LocalizedCat& loc, const Functor& g);

}  // namespace wcolim
