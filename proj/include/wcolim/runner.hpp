#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wcolim/document.hpp"

namespace wcolim {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  std::uint64_t budget = kDefaultCandidateBudget;  // candidate budget unless a job sets its own
  std::optional<std::string> dot_dir;              // export-dot writes here
};

/// Job statuses: "pass", "fail" (a violation or a refuted claim), "undecided"
/// (localization ran out of budget without an answer), "error" (budget
/// exceeded or a construction failed).
struct RunReport {
  nlohmann::json document;  // everything except timing
  nlohmann::json timing;    // {"total_ms": .., "jobs_ms": [..]}
  int passed = 0;
  int failed = 0;
  int undecided = 0;
  int errors = 0;

  /// The process exit code: nonzero iff some job failed or errored.
  int exit_code() const { return failed + errors > 0 ? 1 : 0; }
  /// document with timing attached under "timing".
  nlohmann::json with_timing() const;
};

RunReport run(const SpecDocument& doc, std::string_view spec_text, const RunOptions& options = {});

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

/// WCOLIM_BUDGET when set (a positive integer), otherwise the built-in default.
/// Throws std::invalid_argument on a malformed value.
std::uint64_t default_budget();

}  // namespace wcolim
