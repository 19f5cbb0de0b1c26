#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wcolim/psfun.hpp"

namespace wcolim {

inline constexpr const char* kSpecVersion = "wcolim/1";

/// Syntax or semantic error in a spec document. line/column are 1-based and
/// 0 when no position applies; pointer is the JSON pointer of the offending value.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& message, int line, int column, std::string pointer)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                          message
                                    : message),
        message_(message),
        line_(line),
        column_(column),
        pointer_(std::move(pointer)) {}
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& pointer() const { return pointer_; }

 private:
  std::string message_;
  int line_, column_;
  std::string pointer_;
};

struct FunctorBlock {
  std::string shape;
  std::vector<std::string> values;  // category name per shape object
  PseudoFunctorPtr functor;
};

struct InstanceBlock {
  std::string e;  // covariant
  std::string w;  // contravariant, same shape
};

struct JobSpec {
  std::string command;
  std::map<std::string, std::string> args;
  std::optional<std::uint64_t> budget;  // candidate budget for this job
};

/// Named blocks plus a job list. Every block has passed its validator.
struct SpecDocument {
  std::string version = kSpecVersion;
  std::map<std::string, CatPtr> categories;
  std::map<std::string, TwoCatPtr> shapes;
  std::map<std::string, FunctorBlock> functors;
  std::map<std::string, InstanceBlock> instances;
  std::vector<JobSpec> jobs;

  bool has_block(const std::string& name) const;
};

/// The commands a job may run, in the order they are documented.
const std::vector<std::string>& job_commands();

SpecDocument parse_spec(std::string_view text);
nlohmann::json to_json(const SpecDocument& doc);
/// Canonical text: sorted keys, two-space indent, compositors omitted for
/// strict functors.
std::string serialize_spec(const SpecDocument& doc);
/// Two-space indented JSON with arrays of scalars kept on one line.
std::string pretty_json(const nlohmann::json& v);
inline std::string normalize_spec(std::string_view text) { return serialize_spec(parse_spec(text)); }

/// Programmatic construction. Each validates the block and rejects duplicate
/// names. add_functor registers the fiber categories, reusing an existing
/// category with equal tables and names or adding "<name>_<object>".
void add_category(SpecDocument& doc, const std::string& name, const CatPtr& c);
void add_shape(SpecDocument& doc, const std::string& name, const TwoCatPtr& k);
void add_functor(SpecDocument& doc, const std::string& name, const std::string& shape, const PseudoFunctorPtr& f);
void add_instance(SpecDocument& doc, const std::string& name, const std::string& e, const std::string& w);

/// Equal tables and equal names.
bool same_named_category(const FinCat& a, const FinCat& b);
/// Equal shapes, fibers, transitions, cells and compositors.
bool same_pseudo_functor(const PseudoFunctor& a, const PseudoFunctor& b);

}  // namespace wcolim
