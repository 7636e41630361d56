// Command line front end: design / evaluate / compare.

#include <CLI11.hpp>

#include "rhex/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Receding-horizon excitation signal design toolkit"};
  app.require_subcommand(1);

  rhex::GlobalOptions opts;
  std::uint64_t seed_value = 0;
  std::string out_dir_value;
  auto* seed_opt = app.add_option("--seed", seed_value, "Override the config seed");
  auto* out_opt = app.add_option("--out-dir", out_dir_value, "Override the output directory");
  app.add_flag("--quiet", opts.quiet, "Suppress progress output");

  std::string config_path;
  auto* design = app.add_subcommand("design", "Design an excitation signal from a config file");
  design->fallthrough();
  design->add_option("config", config_path, "Experiment config file")->required();

  std::string signal_path, plant_spec, psi_spec;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a signal CSV against a plant");
  evaluate->fallthrough();
  evaluate->add_option("signal", signal_path, "Signal CSV (k,u)")->required();
  evaluate->add_option("--plant", plant_spec, "Config file with a [plant] section")->required();
  evaluate->add_option("--psi", psi_spec, "Config file with [psi]/[constraints] sections")
      ->required();

  std::string compare_config;
  std::vector<std::string> variant_specs;
  auto* compare = app.add_subcommand("compare", "Run and tabulate several design variants");
  compare->fallthrough();
  compare->add_option("config", compare_config, "Experiment config file")->required();
  compare
      ->add_option("--variants", variant_specs,
                   "Comma-separated list: uniform, boost:<rho>, uniform-random, aprbs")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : rhex::kExitConfig;
  }

  if (*seed_opt) opts.seed = seed_value;
  if (*out_opt) opts.out_dir = out_dir_value;

  if (design->parsed()) return rhex::cmd_design(config_path, opts);
  if (evaluate->parsed()) return rhex::cmd_evaluate(signal_path, plant_spec, psi_spec, opts);
  if (compare->parsed()) return rhex::cmd_compare(compare_config, variant_specs, opts);
  return rhex::kExitConfig;
}
