#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "bcp/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Time-periodic harmonic-balance solver for Blackstock-Crighton problems"};
  app.require_subcommand(1);

  std::string config;
  std::string out = ".";
  std::uint64_t seed = 0;
  int workers = 1;
  const std::map<std::string, std::string> about{
      {"solve", "harmonic-balance fixed point for one problem"},
      {"mms", "manufactured-solution error table across resolutions"},
      {"resonance-sweep", "linear response against dissipation scale, optional frequency sweep"},
      {"oracle-compare", "fixed point against the time-stepping attractor"},
      {"epsilon-scan", "convergence verdicts over a forcing amplitude grid"},
      {"invertibility", "symbol table and minimum |sigma|"},
  };
  for (const auto& name : bcp::command_names()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (created if missing)");
    sub->add_option("--seed", seed, "seed for random initial states");
    sub->add_option("--workers", workers, "parallel workers for sweeps and scans")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : bcp::kExitConfig;
  }

  const CLI::App* sub = app.get_subcommands().front();
  bcp::RunOptions opt;
  opt.out_dir = out;
  opt.workers = workers;
  if (sub->count("--seed") > 0) opt.seed = seed;
  return bcp::run_command_file(sub->get_name(), config, opt, std::cout, std::cerr);
}
