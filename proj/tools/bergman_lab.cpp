#include <iostream>

#include <CLI11.hpp>

#include "bergman/cli_runner.hpp"
#include "bergman/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Truncated Bergman-space Toeplitz operator experiments"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path, out_dir;
  bool sweep = false;
  std::int64_t seed = -1;
  int jobs = 1;
  app.add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "report directory (default: out)");
  app.add_flag("--sweep", sweep, "run every degree of the sweep where a suite would use one");
  app.add_option("--seed", seed, "override the configured seed")->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> names = bergman::suite_names();
  names.push_back("all");
  for (const auto& n : names) app.add_subcommand(n, n == "all" ? "every suite" : n + " suite");

  CLI11_PARSE(app, argc, argv);

  try {
    bergman::ExperimentConfig cfg =
        config_path.empty() ? bergman::default_config() : bergman::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (sweep) cfg.sweep = true;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.jobs = jobs;
    bergman::set_worker_count(jobs);
    return bergman::run(app.get_subcommands().front()->get_name(), cfg, std::cout);
  } catch (const bergman::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
