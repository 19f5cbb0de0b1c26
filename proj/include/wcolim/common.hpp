#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container_hash/hash.hpp>

namespace wcolim {

using ObjId = int;
using ArrowId = int;
using CellId = int;

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const { return boost::hash_range(v.begin(), v.end()); }
};

/// Lookup from an integer tuple to a dense id.
using TupleIndex = std::unordered_map<std::vector<int>, int, VecHash>;

inline constexpr std::uint64_t kDefaultCandidateBudget = 1'000'000;

/// Size guards for exhaustive searches. Exceeding any of them raises
/// BudgetExceeded; nothing is ever truncated silently.
struct Budget {
  std::uint64_t max_candidates = kDefaultCandidateBudget;  // per enumeration
  std::uint64_t max_rewrite_rules = 4000;                  // zigzag tier
  std::size_t max_word_length = 32;                        // zigzag tier
  std::uint64_t max_cells = 2'000'000;                     // constructed tables
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string bound, std::uint64_t limit)
      : std::runtime_error("budget exceeded: " + bound + " > " + std::to_string(limit)),
        bound_(std::move(bound)),
        limit_(limit) {}
  const std::string& bound() const { return bound_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::string bound_;
  std::uint64_t limit_;
};

/// Malformed input tables (out-of-range ids, missing composites, bad typing).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A consistency check inside a construction failed. For valid input this
/// cannot happen, so it signals invalid data or a bug upstream.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Counts search nodes against Budget::max_candidates.
class CandidateCounter {
 public:
  CandidateCounter(std::string what, std::uint64_t limit) : what_(std::move(what)), limit_(limit) {}
  void tick() {
    if (++count_ > limit_) throw BudgetExceeded(what_ + " candidate assignments", limit_);
  }
  std::uint64_t count() const { return count_; }

 private:
  std::string what_;
  std::uint64_t limit_;
  std::uint64_t count_ = 0;
};

struct Violation {
  std::string kind;          // e.g. "associativity", "interchange"
  std::string where;         // human readable location
  std::vector<int> witness;  // ids of the cells involved, kind-specific order
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string kind, std::string where, std::vector<int> witness = {}) {
    violations.push_back({std::move(kind), std::move(where), std::move(witness)});
  }
  void append(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations) violations.push_back({v.kind, prefix + v.where, v.witness});
  }
  bool has(const std::string& kind) const {
    for (const auto& v : violations)
      if (v.kind == kind) return true;
    return false;
  }
  std::size_t count(const std::string& kind) const {
    std::size_t n = 0;
    for (const auto& v : violations) n += v.kind == kind;
    return n;
  }
  std::string summary() const;
};

}  // namespace wcolim
