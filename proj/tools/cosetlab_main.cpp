#include <CLI11.hpp>

#include <iostream>

#include "cosetlab/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cosetlab: exact experiments with averages on coset spaces"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  std::string config_path, out_dir = ".";
  run->add_option("--config", config_path, "path to the experiment config (JSON)")
      ->required();
  run->add_option("--out", out_dir, "output directory");
  long long seed = -1;
  run->add_option("--seed", seed, "override the config seed");
  long max_n = -1;
  run->add_option("--max-n", max_n, "override the config nmax");
  std::string format;
  run->add_option("--format", format, "override the output format (csv|json)");

  CLI11_PARSE(app, argc, argv);

  nlohmann::json overrides = nlohmann::json::object();
  if (seed >= 0) overrides["seed"] = static_cast<std::uint64_t>(seed);
  if (max_n >= 0) overrides["nmax"] = max_n;
  if (!format.empty()) overrides["format"] = format;

  cosetlab::RunResult result =
      cosetlab::run_experiment_file(config_path, out_dir, overrides);
  if (!result.message.empty()) std::cerr << result.message << "\n";
  for (const auto& f : result.output_files) std::cout << f << "\n";
  return result.exit_code;
}
