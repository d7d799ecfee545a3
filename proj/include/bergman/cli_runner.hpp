#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/config.hpp"

namespace bergman {

struct CsvFile {
  std::string name;  ///< file name inside the output directory
  std::string content;
};

struct SuiteResult {
  std::string name;
  nlohmann::json results = nlohmann::json::object();
  std::vector<CsvFile> csv;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

/// geometry, sequence, basis, toeplitz, unitary, witness, prop1, separate.
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg);

/// Full report document for one suite: config, hash, quadrature metadata, results.
nlohmann::json suite_report(const SuiteResult& suite, const ExperimentConfig& cfg);

/// Runs a subcommand (a suite name or "all"), writes <out>/<suite>.json plus CSV
/// files, and returns 0 iff every check passed, 1 otherwise.
int run(const std::string& subcommand, const ExperimentConfig& cfg, std::ostream& log);

}  // namespace bergman
