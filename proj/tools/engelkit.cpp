#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "engelkit/engel.hpp"
#include "engelkit/nq.hpp"
#include "engelkit/subgroup.hpp"

using namespace engelkit;
using json = nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Presentation load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  try {
    return parse_presentation(text.str());
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
}

json divisors_json(const std::vector<Integer>& ds) {
  json out = json::array();
  for (const auto& d : ds) {
    if (d.fits_int64())
      out.push_back(d.small());
    else
      out.push_back(d.to_string());
  }
  return out;
}

json layers_json(const std::vector<LayerInvariants>& layers) {
  json out = json::array();
  for (const auto& l : layers) out.push_back({{"weight", l.weight}, {"rank", l.rank}, {"divisors", divisors_json(l.divisors)}});
  return out;
}

std::string layer_text(const LayerInvariants& l) {
  std::string s = "  weight " + std::to_string(l.weight) + ": rank " + std::to_string(l.rank);
  if (!l.divisors.empty()) {
    s += ", torsion";
    for (const auto& d : l.divisors) s += " " + d.to_string();
  }
  return s;
}

void echo(std::ostream& out, const std::string& label, const Presentation& p) {
  out << label << ":\n";
  std::istringstream lines(p.source.empty() ? print_presentation(p) : p.source);
  for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------

int cmd_nq(const std::string& file, int max_class, bool as_json) {
  const auto p = load(file);
  const auto q = nilpotent_quotient(p, max_class);
  const bool consistent = consistency_check(q.pcp).empty();
  if (as_json) {
    json j = {{"command", "nq"},
              {"file", file},
              {"max_class", max_class},
              {"class", q.nilpotency_class},
              {"stabilized", q.stabilized},
              {"layers", layers_json(q.layers)},
              {"checks", json::array({{{"label", "consistency"}, {"pass", consistent}}})}};
    std::cout << j.dump(2) << "\n";
  } else {
    echo(std::cout, "presentation " + file, p);
    std::cout << "max class: " << max_class << "\n";
    std::cout << "class: " << q.nilpotency_class << ", stabilized: " << yes_no(q.stabilized) << "\n";
    std::cout << "pc generators: " << q.pcp.size() << "\n";
    std::cout << "layers:\n";
    for (const auto& l : q.layers) std::cout << layer_text(l) << "\n";
    std::cout << "consistency: " << (consistent ? "ok" : "FAILED") << "\n";
  }
  return consistent ? ok : failed;
}

void print_suite(std::ostream& out, const SuiteReport& r) {
  out << "suite " << r.name << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.checks.size() - r.failures() << "/"
      << r.checks.size() << ")\n";
  for (const auto& q : r.quotients) {
    out << "  quotient " << q.presentation << ", class bound " << q.class_bound << ": class " << q.nilpotency_class
        << (q.stabilized ? ", stabilized" : ", not stabilized") << "\n";
    std::istringstream lines(q.source);
    for (std::string line; std::getline(lines, line);) out << "    " << line << "\n";
  }
  for (const auto& c : r.checks) {
    out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.label << "\n";
    if (!c.pass) out << "      expected " << c.expected << "\n      computed " << c.computed << "\n";
  }
}

int cmd_verify(const std::string& suite, bool as_json, std::uint64_t seed) {
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw InputError("unknown suite '" + suite + "' (expected one of: all, " + [] {
      std::string s;
      for (const auto& n : suite_names()) s += (s.empty() ? "" : ", ") + n;
      return s;
    }() + ")");
  const std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};

  QuotientRegistry registry;
  const SuiteOptions options{seed};
  std::vector<std::future<SuiteReport>> jobs;
  for (const auto& n : names)
    jobs.push_back(std::async(std::launch::async, [&registry, &options, n] { return run_suite(n, registry, options); }));
  std::vector<SuiteReport> reports;
  for (auto& j : jobs) reports.push_back(j.get());

  bool pass = true;
  int top = 0;
  bool stabilized = true;
  for (const auto& r : reports) {
    pass = pass && r.pass();
    for (const auto& q : r.quotients) {
      top = std::max(top, q.nilpotency_class);
      stabilized = stabilized && q.stabilized;
    }
  }

  if (as_json) {
    json checks = json::array();
    json suites = json::array();
    for (const auto& r : reports) {
      json detail = json::array();
      for (const auto& c : r.checks) {
        checks.push_back({{"label", r.name + ": " + c.label}, {"pass", c.pass}});
        detail.push_back({{"label", c.label}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
      }
      json quotients = json::array();
      for (const auto& q : r.quotients)
        quotients.push_back({{"presentation", q.presentation},
                             {"class_bound", q.class_bound},
                             {"class", q.nilpotency_class},
                             {"stabilized", q.stabilized}});
      suites.push_back({{"name", r.name}, {"pass", r.pass()}, {"quotients", quotients}, {"checks", detail}});
    }
    json j = {{"command", "verify"}, {"suite", suite},   {"seed", seed},     {"class", top},
              {"stabilized", stabilized}, {"layers", json::array()}, {"checks", checks}, {"suites", suites}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "suite: " << suite << ", seed: " << seed << ", class bound: " << suite_class_bound << "\n";
    for (const auto& r : reports) print_suite(std::cout, r);
    std::cout << (pass ? "all checks passed" : "verification FAILED") << "\n";
  }
  return pass ? ok : failed;
}

int cmd_subgroup(const std::string& file, const std::string& gens_text, bool derived_abelian, int max_class,
                 bool as_json) {
  const auto p = load(file);
  std::vector<GroupWord> gens;
  try {
    gens = parse_word_list(gens_text, p.generators);
  } catch (const ParseError& e) {
    throw InputError(std::string("--gens: ") + e.what());
  }
  for (const auto& w : gens)
    if (p.mentions_identical(w)) throw InputError("--gens: identical generators have no image");
  const auto q = nilpotent_quotient(p, max_class);
  std::vector<ExponentVector> elems;
  for (const auto& w : gens) elems.push_back(evaluate_word(q.pcp, w, q.images));
  const auto s = induced_subgroup(q.pcp, elems);
  const int cls = nilpotency_class(q.pcp, s);
  const bool abelian = is_abelian(q.pcp, derived_subgroup(q.pcp, s));

  if (as_json) {
    json checks = json::array();
    if (derived_abelian) checks.push_back({{"label", "derived subgroup abelian"}, {"pass", abelian}});
    json j = {{"command", "subgroup"}, {"file", file},       {"gens", gens_text},
              {"max_class", max_class}, {"class", cls},       {"stabilized", q.stabilized},
              {"layers", layers_json(q.layers)}, {"checks", checks}};
    std::cout << j.dump(2) << "\n";
  } else {
    echo(std::cout, "presentation " + file, p);
    std::cout << "max class: " << max_class << "\n";
    std::cout << "quotient class: " << q.nilpotency_class << ", stabilized: " << yes_no(q.stabilized) << "\n";
    std::cout << "subgroup <" << gens_text << ">: class " << cls;
    if (!q.stabilized && !gens.empty()) std::cout << " (lower bound: quotient not stabilized)";
    std::cout << "\n";
    if (derived_abelian) std::cout << "derived subgroup abelian: " << yes_no(abelian) << "\n";
  }
  return ok;
}

int cmd_paper_table(bool as_json, int max_class) {
  QuotientRegistry registry;
  const auto rows = reproduce_section4(registry, max_class);
  const bool pass = std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.pass; });
  if (as_json) {
    json checks = json::array();
    json entries = json::array();
    int top = 0;
    bool stabilized = true;
    for (const auto& r : rows) {
      top = std::max(top, r.computed);
      stabilized = stabilized && r.exact;
      checks.push_back({{"label", r.label}, {"pass", r.pass}});
      entries.push_back({{"label", r.label},
                         {"group", r.group},
                         {"subgroup", r.subgroup},
                         {"expected", r.expected},
                         {"at_most", r.at_most},
                         {"class", r.computed},
                         {"lower_bound", !r.exact},
                         {"pass", r.pass}});
    }
    json j = {{"command", "paper-table"}, {"max_class", max_class}, {"class", top},     {"stabilized", stabilized},
              {"layers", json::array()},  {"checks", checks},       {"rows", entries}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "max class: " << max_class << "\n";
    for (const auto& name : {"H", "K", "N", "M"}) echo(std::cout, std::string("presentation ") + name, registry.presentation(name));
    for (const auto& r : rows) {
      std::ostringstream line;
      line << r.label << ": class " << (r.exact ? "" : ">= ") << r.computed << ", expected "
           << (r.at_most ? "<= " : "") << r.expected;
      if (!r.exact) line << " (lower bound)";
      std::cout << (r.pass ? "PASS " : "FAIL ") << line.str() << "\n";
    }
  }
  return pass ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nilpotent quotients and Engel identity checks"};
  app.require_subcommand(1);

  std::string file;
  std::string suite;
  std::string gens;
  int max_class = table_class_bound;
  bool as_json = false;
  bool derived_abelian = false;
  std::uint64_t seed = default_suite_seed;

  auto* nq = app.add_subcommand("nq", "Nilpotent quotient of a presentation file");
  nq->add_option("file", file, "Presentation file")->required();
  nq->add_option("--max-class", max_class, "Class bound")->check(CLI::PositiveNumber);
  nq->add_flag("--json", as_json, "JSON output");

  auto* verify = app.add_subcommand("verify", "Run an identity suite (or all)");
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_flag("--json", as_json, "JSON output");
  verify->add_option("--seed", seed, "Seed for randomized checks");

  auto* sub = app.add_subcommand("subgroup", "Class of a subgroup of the nilpotent quotient");
  sub->add_option("file", file, "Presentation file")->required();
  sub->add_option("--gens", gens, "Comma-separated words")->required();
  sub->add_flag("--derived-abelian", derived_abelian, "Also report whether the derived subgroup is abelian");
  sub->add_option("--max-class", max_class, "Class bound")->check(CLI::PositiveNumber);
  sub->add_flag("--json", as_json, "JSON output");

  auto* table = app.add_subcommand("paper-table", "Classes of H, K, N, M and the subgroup checks");
  table->add_flag("--json", as_json, "JSON output");
  table->add_option("--max-class", max_class, "Class bound")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*nq) return cmd_nq(file, max_class, as_json);
    if (*verify) return cmd_verify(suite, as_json, seed);
    if (*sub) return cmd_subgroup(file, gens, derived_abelian, max_class, as_json);
    return cmd_paper_table(as_json, max_class);
  } catch (const std::exception& e) {
    std::cerr << "engelkit: " << e.what() << "\n";
    return usage;
  }
}
