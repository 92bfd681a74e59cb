#include <iostream>

#include "CLI11.hpp"
#include "config.hpp"
#include "experiments.hpp"
#include "output.hpp"

int main(int argc, char** argv) {
  using namespace cdft::cli;

  CLI::App app{"Classical Dirac field experiments"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  struct Args {
    std::string config;
    std::string out = ".";
    bool assert_tolerances = false;
    std::uint64_t seed = 0;
  };
  Args args;
  CLI::Option* seed_opt = nullptr;

  const char* names[][2] = {
      {"evolve", "Evolve random mode states and track observables and continuity residuals"},
      {"packet", "Packet width sweep, radial profile and spin diagnostics"},
      {"em", "Electromagnetic energy identity and photon numbers"},
      {"fock", "Finite-mode Fock operator identities and spectra"},
      {"grassmann", "Grassmann algebra and field-operator identities"},
  };
  std::vector<CLI::Option*> seed_opts;
  for (const auto& [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config, "Experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", args.out, "Output directory");
    sub->add_flag("--assert", args.assert_tolerances, "Exit with code 3 when a tolerance is breached");
    seed_opts.push_back(sub->add_option("--seed", args.seed, "RNG seed, overrides the config"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  for (CLI::Option* opt : seed_opts)
    if (opt->count() > 0) seed_opt = opt;

  RunOptions options;
  options.out = args.out;
  options.assert_tolerances = args.assert_tolerances;
  if (seed_opt) options.seed = args.seed;

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    const Config config = Config::load(args.config);
    return run_experiment(experiment, config, options, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}
