#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wcolim/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite weighted pseudo-colimits and bicolimits"};
  app.require_subcommand(1);

  std::string spec_path;
  auto* validate = app.add_subcommand("validate", "parse a spec and validate every block");
  validate->add_option("spec", spec_path, "spec document")->required();

  std::optional<std::uint64_t> budget;
  std::string out_path, dot_dir;
  auto* run = app.add_subcommand("run", "run the jobs of a spec and write a report");
  run->add_option("spec", spec_path, "spec document")->required();
  run->add_option("--budget", budget, "candidate budget per enumeration (default: WCOLIM_BUDGET or 1000000)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_path, "report file (default: stdout)");
  run->add_option("--dot", dot_dir, "directory for export-dot output");

  CLI11_PARSE(app, argc, argv);

  std::string text;
  wcolim::SpecDocument doc;
  try {
    text = read_file(spec_path);
    doc = wcolim::parse_spec(text);
  } catch (const wcolim::SpecError& e) {
    std::cerr << spec_path << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (*validate) {
    std::cout << spec_path << ": ok (" << doc.categories.size() << " categories, " << doc.shapes.size()
              << " shapes, " << doc.functors.size() << " functors, " << doc.instances.size() << " instances, "
              << doc.jobs.size() << " jobs)\n";
    return 0;
  }

  wcolim::RunOptions opts;
  try {
    opts.budget = budget ? *budget : wcolim::default_budget();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!dot_dir.empty()) opts.dot_dir = dot_dir;
  const wcolim::RunReport rep = wcolim::run(doc, text, opts);
  const std::string report = wcolim::pretty_json(rep.with_timing());
  if (out_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << report;
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
  }
  std::cerr << rep.passed << " passed, " << rep.failed << " failed, " << rep.undecided << " undecided, " << rep.errors
            << " errors\n";
  if (rep.undecided > 0) std::cerr << "warning: " << rep.undecided << " job(s) undecided within budget\n";
  return rep.exit_code();
}
