#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "wcolim/runner.hpp"

using namespace wcolim;
using namespace wcolim::testing;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot read " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string seed_text(const std::string& name) { return slurp(std::filesystem::path(WCOLIM_DATA_DIR) / (name + ".json")); }

// one category, no jobs
const char* kMinimal = R"({
  "version": "wcolim/1",
  "categories": {"one": {"objects": ["*"]}}
})";

SpecError error_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e;
  }
  FAIL("no error for: " << text);
  return SpecError("", 0, 0, "");
}

}  // namespace

TEST_CASE("syntax errors carry line and column") {
  SpecError e = error_of("{\n  \"version\": \"wcolim/1\",\n  \"categories\": {\n    \"one\": {\"objects\": [\"*\",]}\n  }\n}");
  CHECK(e.line() == 4);
  CHECK(e.column() > 0);
  CHECK(std::string(e.what()).rfind("line 4, column", 0) == 0);
  SpecError t = error_of("{\"version\": \"wcolim/1\"");
  CHECK(t.line() == 1);
}

TEST_CASE("empty documents are rejected") {
  for (const char* text : {"", "   \n\t\n", "{\"version\": \"wcolim/1\"}", "{\"version\": \"wcolim/1\", \"jobs\": []}"}) {
    INFO("text: " << text);
    CHECK(error_of(text).message() == "no blocks");
  }
}

TEST_CASE("semantic errors name the offending value") {
  // unknown category in a functor
  SpecError u = error_of(R"({
  "version": "wcolim/1",
  "shapes": {"point": {"objects": ["*"]}},
  "functors": {"F": {"shape": "point", "variance": "covariant", "values": {"*": "nope"}}}
})");
  CHECK(u.message().find("unknown category 'nope'") != std::string::npos);
  CHECK(u.pointer().rfind("/functors/F/values", 0) == 0);
  CHECK(u.line() == 4);

  SpecError f = error_of(R"({"version": "wcolim/1", "categories": {"one": {"objects": ["*"], "colour": 1}}})");
  CHECK(f.message() == "unknown field 'colour'");
  CHECK(f.pointer() == "/categories/one/colour");

  SpecError d = error_of(R"({"version": "wcolim/1", "categories": {"one": {"objects": ["*"]}, "one": {"objects": []}}})");
  CHECK(d.message() == "duplicate key 'one'");
  CHECK(d.line() == 1);

  SpecError v = error_of(R"({"version": "wcolim/2", "categories": {"one": {"objects": ["*"]}}})");
  CHECK(v.pointer() == "/version");

  // e then e is not given
  SpecError a = error_of(R"({"version": "wcolim/1", "categories": {"c": {
    "objects": ["*"],
    "arrows": [{"name": "e", "dom": "*", "cod": "*"}]
  }}})");
  CHECK(a.pointer() == "/categories/c/compose");

  SpecError j = error_of(R"({"version": "wcolim/1", "categories": {"one": {"objects": ["*"]}},
    "jobs": [{"run": "pscolim", "instance": "missing"}]})");
  CHECK(j.message().find("missing") != std::string::npos);
}

TEST_CASE("serialization round trip") {
  for (const auto& entry : std::filesystem::directory_iterator(WCOLIM_DATA_DIR)) {
    INFO(entry.path());
    const std::string text = slurp(entry.path());
    const std::string once = normalize_spec(text);
    CHECK(normalize_spec(once) == once);
    SpecDocument a = parse_spec(text);
    SpecDocument b = parse_spec(once);
    CHECK(a.jobs.size() == b.jobs.size());
    REQUIRE(a.functors.size() == b.functors.size());
    for (const auto& [name, blk] : a.functors) CHECK(same_pseudo_functor(*blk.functor, *b.functors.at(name).functor));
  }
  CHECK(normalize_spec(kMinimal) == normalize_spec(normalize_spec(kMinimal)));
}

TEST_CASE("seed files match the built-in instances") {
  std::vector<seeds::Instance> all = seeds::main_suite();
  for (const auto& s : seeds::conical_suite()) all.push_back(s);
  int matched = 0;
  for (const auto& s : all) {
    const auto path = std::filesystem::path(WCOLIM_DATA_DIR) / (s.name + ".json");
    if (!std::filesystem::exists(path)) continue;
    INFO(s.name);
    SpecDocument doc = parse_spec(slurp(path));
    REQUIRE(doc.instances.count(s.name) == 1);
    const InstanceBlock& ib = doc.instances.at(s.name);
    CHECK(same_pseudo_functor(*doc.functors.at(ib.e).functor, *s.e));
    CHECK(same_pseudo_functor(*doc.functors.at(ib.w).functor, *s.w));
    ++matched;
  }
  CHECK(matched >= 6);
}

TEST_CASE("programmatic documents serialize and parse back") {
  const auto s = seeds::pseudo_z2();
  SpecDocument doc;
  add_shape(doc, "idempotent", s.e->shape);
  add_functor(doc, "E", "idempotent", s.e);
  add_functor(doc, "W", "idempotent", s.w);
  add_instance(doc, "z", "E", "W");
  CHECK_THROWS_AS(add_instance(doc, "z", "E", "W"), StructureError);
  SpecDocument back = parse_spec(serialize_spec(doc));
  CHECK(same_pseudo_functor(*back.functors.at("E").functor, *s.e));
  CHECK(same_pseudo_functor(*back.functors.at("W").functor, *s.w));
}

TEST_CASE("a document without jobs gives an empty report") {
  RunReport rep = run(parse_spec(kMinimal), kMinimal);
  CHECK(rep.document["jobs"].empty());
  CHECK(rep.document["summary"]["jobs"] == 0);
  CHECK(rep.exit_code() == 0);
  CHECK(rep.document["provenance"]["spec_sha256"] == sha256_hex(kMinimal));
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("runs are deterministic apart from timing") {
  const std::string text = seed_text("pseudo_z2");
  const SpecDocument doc = parse_spec(text);
  RunReport a = run(doc, text);
  RunReport b = run(doc, text);
  CHECK(a.document == b.document);
  CHECK_FALSE(a.document.contains("timing"));
  CHECK(a.with_timing().contains("timing"));
}

TEST_CASE("budget from the environment") {
  unsetenv("WCOLIM_BUDGET");
  CHECK(default_budget() == kDefaultCandidateBudget);
  setenv("WCOLIM_BUDGET", "1234", 1);
  CHECK(default_budget() == 1234);
  for (const char* bad : {"0", "-5", "12x", "lots"}) {
    setenv("WCOLIM_BUDGET", bad, 1);
    CHECK_THROWS_AS(default_budget(), std::invalid_argument);
  }
  unsetenv("WCOLIM_BUDGET");
}

TEST_CASE("a tiny budget turns enumeration jobs into errors") {
  const std::string text = seed_text("point_arrow");
  RunOptions opts;
  opts.budget = 1;
  RunReport rep = run(parse_spec(text), text, opts);
  CHECK(rep.errors > 0);
  CHECK(rep.exit_code() == 1);
  for (const auto& j : rep.document["jobs"])
    if (j["status"] == "error") CHECK(j["result"].contains("error"));
}

TEST_CASE("the point seed passes every job") {
  const std::string text = seed_text("point_arrow");
  RunReport rep = run(parse_spec(text), text);
  CHECK(rep.failed == 0);
  CHECK(rep.errors == 0);
  CHECK(rep.exit_code() == 0);
  bool saw_main = false;
  for (const auto& j : rep.document["jobs"]) {
    INFO(j["run"]);
    CHECK(j["status"] == "pass");
    saw_main = saw_main || j["run"] == "verify-main";
  }
  CHECK(saw_main);
}
