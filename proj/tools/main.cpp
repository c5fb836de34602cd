#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

#include "suptail/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"suptail: exact tail, covering and discretization reports for bounded function classes"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out_dir;

  CLI::App* run = app.add_subcommand("run", "run a scenario file and write CSV/JSON verdict tables");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "override the scenario seed");
  CLI::Option* workers_opt = run->add_option("--workers", workers, "override the worker count");
  CLI::Option* out_opt = run->add_option("--out", out_dir, "override the output directory");

  CLI11_PARSE(app, argc, argv);

  suptail::ScenarioOverrides overrides;
  if (seed_opt->count() > 0) overrides.seed = seed;
  if (workers_opt->count() > 0) overrides.workers = workers;
  if (out_opt->count() > 0) overrides.out_dir = out_dir;

  const suptail::ScenarioResult result = suptail::run_scenario(scenario_path, overrides);
  if (result.exit_code == 2) {
    std::cerr << "error: " << result.summary << "\n";
    return 2;
  }
  std::cout << result.summary;
  for (const std::string& artifact : result.artifacts) {
    std::cout << "wrote " << artifact << "\n";
  }
  if (result.exit_code != 0) {
    std::cout << result.assertion_failures << " assertion-class check(s) failed\n";
  }
  return result.exit_code;
}
