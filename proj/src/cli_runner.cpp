#include "bergman/cli_runner.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "bergman/quadrature.hpp"

namespace bergman {

using nlohmann::json;

json suite_report(const SuiteResult& suite, const ExperimentConfig& cfg) {
  json quad = json::array();
  for (const CaseConfig& c : cfg.cases)
    quad.push_back({{"case", c.name}, {"rule", rule_metadata(build_rule(c.quadrature))}});
  return {{"suite", suite.name},          {"config_hash", config_hash(cfg)}, {"config", config_to_json(cfg)},
          {"quadrature", quad},           {"pass", suite.pass()},            {"failures", suite.failures},
          {"results", suite.results}};
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace

int run(const std::string& subcommand, const ExperimentConfig& cfg, std::ostream& log) {
  validate(cfg);
  std::vector<std::string> suites;
  if (subcommand == "all") {
    suites = suite_names();
  } else {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == subcommand;
    if (!known) throw DomainError("unknown subcommand '" + subcommand + "'");
    suites = {subcommand};
  }
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);

  json summary{{"config_hash", config_hash(cfg)}, {"suites", json::array()}};
  bool all_pass = true;
  for (const std::string& name : suites) {
    const SuiteResult res = run_suite(name, cfg);
    write_file(dir / (name + ".json"), suite_report(res, cfg).dump(2) + "\n");
    for (const CsvFile& f : res.csv) write_file(dir / f.name, f.content);
    log << (res.pass() ? "PASS " : "FAIL ") << name << "\n";
    for (const auto& f : res.failures) log << "  " << f << "\n";
    summary["suites"].push_back({{"suite", name}, {"pass", res.pass()}, {"failures", res.failures}});
    all_pass = all_pass && res.pass();
  }
  summary["pass"] = all_pass;
  if (subcommand == "all") write_file(dir / "summary.json", summary.dump(2) + "\n");
  return all_pass ? 0 : 1;
}

}  // namespace bergman
