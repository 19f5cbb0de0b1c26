#include "wcolim/runner.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <openssl/evp.h>

#include "wcolim/bicolim.hpp"
#include "wcolim/dot.hpp"
#include "wcolim/yoneda.hpp"

namespace wcolim {

using nlohmann::json;

namespace {

struct Outcome {
  std::string status = "pass";
  json detail = json::object();
};

json loc_json(const LocalizedCat& loc) {
  json out{{"strategy", to_string(loc.strategy)}, {"status", to_string(loc.status)}};
  if (loc.exact()) {
    out["objects"] = loc.result->num_objects();
    out["arrows"] = loc.result->num_arrows();
    out["groupoid"] = loc.result->is_groupoid();
    out["equivalent_to_terminal"] = equivalent_to_terminal(*loc.result);
  } else {
    out["detail"] = loc.detail;
  }
  return out;
}

json theorem_json(const TheoremReport& r) {
  return {{"verdict", to_string(r.verdict)},   {"witness", r.witness},
          {"p_objects", r.p_objects},          {"p_arrows", r.p_arrows},
          {"sigma_arrows", r.sigma_arrows},    {"functor_objects", r.functor_objects},
          {"functor_arrows", r.functor_arrows}, {"pseudo_objects", r.pseudo_objects},
          {"pseudo_arrows", r.pseudo_arrows},  {"provenance", r.provenance}};
}

bool all_terminal(const PseudoFunctor& w) {
  for (const CatPtr& c : w.values)
    if (c->num_objects() != 1 || c->num_arrows() != 1) return false;
  return true;
}

class Runner {
 public:
  Runner(const SpecDocument& doc, const RunOptions& opts) : doc_(doc), opts_(opts) {}

  Outcome run(const JobSpec& job) {
    budget_ = Budget{};
    budget_.max_candidates = job.budget.value_or(opts_.budget);
    const std::string& c = job.command;
    if (c == "validate") return validate(job);
    if (c == "pscolim") return pscolim(job);
    if (c == "localize") return localize_job(job);
    if (c == "verify-main") return verify_main(job);
    if (c == "bicolim") return bicolim(job);
    if (c == "verify-bicolim") return verify_bicolim_job(job);
    if (c == "compare") return compare(job);
    if (c == "yoneda") return yoneda(job);
    if (c == "example-idempotent") return example();
    if (c == "export-dot") return export_dot(job);
    throw StructureError("unknown command " + c);
  }

 private:
  const SpecDocument& doc_;
  const RunOptions& opts_;
  Budget budget_;

  std::pair<PseudoFunctorPtr, PseudoFunctorPtr> instance(const JobSpec& job) const {
    const InstanceBlock& ib = doc_.instances.at(job.args.at("instance"));
    return {doc_.functors.at(ib.e).functor, doc_.functors.at(ib.w).functor};
  }

  Outcome validate(const JobSpec& job) {
    Outcome o;
    json blocks = json::array();
    auto add = [&](const std::string& name, const char* kind, const ValidationReport& r) {
      if (job.args.count("block") && job.args.at("block") != name) return;
      json b{{"name", name}, {"kind", kind}, {"violations", r.violations.size()}};
      if (!r.ok()) {
        b["summary"] = r.summary();
        o.status = "fail";
      }
      blocks.push_back(b);
    };
    for (const auto& [n, c] : doc_.categories) add(n, "category", validate_category(*c));
    for (const auto& [n, k] : doc_.shapes) add(n, "shape", validate_two_category(*k));
    for (const auto& [n, f] : doc_.functors) add(n, "functor", validate_pseudo_functor(*f.functor));
    for (const auto& [n, i] : doc_.instances) {
      ValidationReport r;
      if (*doc_.functors.at(i.e).functor->shape != *doc_.functors.at(i.w).functor->shape)
        r.add("instance-typing", "functors on different shapes");
      add(n, "instance", r);
    }
    o.detail["blocks"] = blocks;
    return o;
  }

  Outcome pscolim(const JobSpec& job) {
    auto [e, w] = instance(job);
    const ColimitPresentation pres = pscolim_presentation(e, w, budget_);
    Outcome o;
    o.detail = {{"delta", {{"objects", pres.delta->objects.size()},
                           {"arrows", pres.delta->arrows.size()},
                           {"two_cells", pres.delta->cell_label.size()}}},
                {"p_objects", pres.p->num_objects()},
                {"p_arrows", pres.p->num_arrows()},
                {"sigma_arrows", pres.sigma_count()},
                {"sigma_has_identities", pres.sigma_has_identities},
                {"cartesian_closed", pres.cartesian_closed},
                {"provenance", pres.provenance}};
    if (!pres.sigma_has_identities || !pres.cartesian_closed) o.status = "fail";
    if (e->shape->is_locally_discrete() && all_terminal(*w)) {
      const auto diff = compare_with_oracle(pres, conical_oracle(*e));
      o.detail["conical_oracle"] = diff ? "differs: " + *diff : "agrees";
      if (diff) o.status = "fail";
    }
    return o;
  }

  Outcome localize_job(const JobSpec& job) {
    auto [e, w] = instance(job);
    const ColimitPresentation pres = pscolim_presentation(e, w, budget_);
    const LocalizedCat loc = localize(pres, budget_);
    Outcome o;
    o.detail = {{"p_objects", pres.p->num_objects()},
                {"p_arrows", pres.p->num_arrows()},
                {"sigma_arrows", pres.sigma_count()},
                {"localization", loc_json(loc)}};
    if (!loc.exact()) o.status = "undecided";
    return o;
  }

  Outcome verify_main(const JobSpec& job) {
    auto [e, w] = instance(job);
    const TheoremReport r = verify_main_theorem(e, w, doc_.categories.at(job.args.at("target")), budget_);
    Outcome o;
    o.detail = theorem_json(r);
    if (!r.ok()) o.status = "fail";
    return o;
  }

  Outcome bicolim(const JobSpec& job) {
    auto [e, w] = instance(job);
    const TensorPresentation t = build_tensor(e, w, budget_);
    const LocalizedCat loc = localize(t.pres, budget_);
    Outcome o;
    o.detail = {{"p_objects", t.pres.p->num_objects()},
                {"p_arrows", t.pres.p->num_arrows()},
                {"sigma_arrows", t.pres.sigma_count()},
                {"quintuple_objects", t.objects.size()},
                {"quintuple_arrows", t.arrows.size()},
                {"relabeling_ok", t.relabeling_ok},
                {"localization", loc_json(loc)}};
    if (!t.relabeling_ok) {
      o.detail["relabeling_failure"] = t.relabeling_failure;
      o.status = "fail";
    } else if (!loc.exact()) {
      o.status = "undecided";
    }
    return o;
  }

  Outcome verify_bicolim_job(const JobSpec& job) {
    auto [e, w] = instance(job);
    const BicolimitReport r = verify_bicolimit(e, w, doc_.categories.at(job.args.at("target")), budget_);
    Outcome o;
    o.detail = {{"verdict", to_string(r.verdict)},
                {"witness", r.witness},
                {"phi_psi_identity", r.phi_psi_identity},
                {"unit_invertible", r.unit_invertible},
                {"tensor_objects", r.tensor_objects},
                {"tensor_arrows", r.tensor_arrows},
                {"hom_side_objects", r.hom_side_objects},
                {"weight_side_objects", r.weight_side_objects},
                {"main", theorem_json(r.main)}};
    if (!r.ok()) o.status = "fail";
    return o;
  }

  Outcome compare(const JobSpec& job) {
    auto [e, w] = instance(job);
    const ComparisonData d = comparison_functor(e, w, budget_);
    Outcome o;
    o.detail = {{"tensor_p_objects", d.tensor.pres.p->num_objects()},
                {"tensor_p_arrows", d.tensor.pres.p->num_arrows()},
                {"p_objects", d.pres.p->num_objects()},
                {"p_arrows", d.pres.p->num_arrows()},
                {"bracketing_agrees", d.bracketing_agrees},
                {"well_defined", d.well_defined},
                {"functorial", d.functorial},
                {"sigma_preserved", d.sigma_preserved},
                {"surjective", d.surjective},
                {"witness", d.witness}};
    if (!d.ok()) o.status = "fail";
    return o;
  }

  Outcome yoneda(const JobSpec& job) {
    const FunctorBlock& fb = doc_.functors.at(job.args.at("functor"));
    const FinCat& one = fb.functor->shape->one();
    ObjId c = -1;
    for (ObjId a = 0; a < one.num_objects(); ++a)
      if (one.object_name(a) == job.args.at("object")) c = a;
    const EquivalenceReport r = yoneda_equivalence(fb.functor, c, budget_);
    Outcome o;
    o.detail = {{"verdict", to_string(r.verdict)},
                {"witness", r.witness},
                {"p_objects", r.pres.p->num_objects()},
                {"p_arrows", r.pres.p->num_arrows()},
                {"sigma_arrows", r.pres.sigma_count()},
                {"gf_identity", r.gf_identity},
                {"g_well_defined", r.g_well_defined},
                {"g_inverts_sigma", r.g_inverts_sigma},
                {"unit_cartesian", r.unit_cartesian},
                {"unit_natural", r.unit_natural}};
    if (r.loc.source) o.detail["localization"] = loc_json(r.loc);
    if (!r.ok()) o.status = r.loc.source && !r.loc.exact() ? "undecided" : "fail";
    return o;
  }

  Outcome example() {
    const CounterexampleReport r = example_idempotent(budget_);
    Outcome o;
    o.detail = {{"pseudo", {{"p_objects", r.pseudo_p_objects},
                            {"p_arrows", r.pseudo_p_arrows},
                            {"strategy", r.pseudo_strategy},
                            {"objects", r.pseudo_objects},
                            {"arrows", r.pseudo_arrows},
                            {"groupoid", r.pseudo_groupoid}}},
                {"bi", {{"p_objects", r.tensor_p_objects},
                        {"p_arrows", r.tensor_p_arrows},
                        {"sigma_arrows", r.tensor_sigma},
                        {"strategy", r.bi_strategy},
                        {"status", r.bi_status},
                        {"objects", r.bi_objects},
                        {"arrows", r.bi_arrows},
                        {"groupoid", r.bi_groupoid},
                        {"has_noninvertible_idempotent", r.bi_has_noninvertible_idempotent},
                        {"sigma_idempotents", r.sigma_idempotents}}},
                {"xi", {{"label", r.xi_label},
                        {"in_sigma", r.xi_in_sigma},
                        {"invertible_after", r.xi_invertible_after},
                        {"identity_after", r.xi_identity_after}}},
                {"verdict", r.verdict},
                {"claimed_verdict", "not equivalent"}};
    if (r.verdict == "undetermined")
      o.status = "undecided";
    else if (r.verdict != "not equivalent")
      o.status = "fail";
    return o;
  }

  Outcome export_dot(const JobSpec& job) {
    const std::string& name = job.args.at("block");
    std::vector<std::pair<std::string, std::string>> files;  // stem, contents
    const std::string stem = dot_file_stem(name);
    if (auto it = doc_.categories.find(name); it != doc_.categories.end()) {
      files.emplace_back(stem, category_dot(*it->second, name));
    } else if (auto ks = doc_.shapes.find(name); ks != doc_.shapes.end()) {
      const TwoCat& k = *ks->second;
      files.emplace_back(stem, shape_dot(k, name));
      for (ObjId a = 0; a < k.num_objects(); ++a)
        for (ObjId b = 0; b < k.num_objects(); ++b)
          if (!k.one().hom(a, b).empty()) {
            const std::string s = name + "." + k.object_name(a) + "." + k.object_name(b);
            files.emplace_back(dot_file_stem(s), hom_slice_dot(k, a, b, s));
          }
    } else if (auto fs = doc_.functors.find(name); fs != doc_.functors.end()) {
      const PseudoFunctor& f = *fs->second.functor;
      for (ObjId a = 0; a < f.shape->num_objects(); ++a) {
        const std::string s = name + "." + f.shape->object_name(a);
        files.emplace_back(dot_file_stem(s), category_dot(*f.value(a), s));
      }
    } else {
      JobSpec inst = job;
      inst.args = {{"instance", name}};
      auto [e, w] = instance(inst);
      const ColimitPresentation pres = pscolim_presentation(e, w, budget_);
      files.emplace_back(stem + ".p", category_dot(*pres.p, name + ".p", pres.sigma));
      const LocalizedCat loc = localize(pres, budget_);
      if (loc.exact()) files.emplace_back(stem + ".localized", category_dot(*loc.result, name + ".localized"));
    }
    Outcome o;
    json names = json::array();
    for (const auto& [s, text] : files) names.push_back(s + ".dot");
    o.detail["files"] = names;
    if (!opts_.dot_dir) {
      o.detail["written"] = false;
      return o;
    }
    std::filesystem::create_directories(*opts_.dot_dir);
    for (const auto& [s, text] : files) {
      std::ofstream out(std::filesystem::path(*opts_.dot_dir) / (s + ".dot"));
      out << text;
      if (!out) throw std::runtime_error("cannot write " + s + ".dot");
    }
    o.detail["written"] = true;
    return o;
  }
};

}  // namespace

json RunReport::with_timing() const {
  json out = document;
  out["timing"] = timing;
  return out;
}

RunReport run(const SpecDocument& doc, std::string_view spec_text, const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  RunReport rep;
  rep.document = {{"tool", {{"name", "wcolim"}, {"version", kToolVersion}}},
                  {"provenance", {{"spec_sha256", sha256_hex(spec_text)},
                                  {"normalized_sha256", sha256_hex(serialize_spec(doc))},
                                  {"budget", options.budget}}}};
  json jobs = json::array();
  json jobs_ms = json::array();
  Runner runner(doc, options);
  for (std::size_t i = 0; i < doc.jobs.size(); ++i) {
    const JobSpec& job = doc.jobs[i];
    const auto t0 = clock::now();
    Outcome o;
    try {
      o = runner.run(job);
    } catch (const BudgetExceeded& e) {
      o.status = "error";
      o.detail = {{"error", e.what()}, {"bound", e.bound()}, {"limit", e.limit()}};
    } catch (const std::exception& e) {
      o.status = "error";
      o.detail = {{"error", e.what()}};
    }
    const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    jobs_ms.push_back(ms);
    json entry{{"index", i}, {"run", job.command}, {"args", job.args},
               {"budget", job.budget.value_or(options.budget)}, {"status", o.status}};
    entry["result"] = o.detail;
    jobs.push_back(entry);
    if (o.status == "pass") ++rep.passed;
    if (o.status == "fail") ++rep.failed;
    if (o.status == "undecided") ++rep.undecided;
    if (o.status == "error") ++rep.errors;
  }
  rep.document["jobs"] = jobs;
  rep.document["summary"] = {{"jobs", doc.jobs.size()},
                             {"pass", rep.passed},
                             {"fail", rep.failed},
                             {"undecided", rep.undecided},
                             {"error", rep.errors}};
  rep.timing = {{"total_ms", std::chrono::duration<double, std::milli>(clock::now() - start).count()},
                {"jobs_ms", jobs_ms}};
  return rep;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::uint64_t default_budget() {
  const char* env = std::getenv("WCOLIM_BUDGET");
  if (!env || !*env) return kDefaultCandidateBudget;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [p, ec] = std::from_chars(env, end, v);
  if (ec != std::errc{} || p != end || v == 0)
    throw std::invalid_argument(std::string("WCOLIM_BUDGET must be a positive integer, got '") + env + "'");
  return v;
}

}  // namespace wcolim
