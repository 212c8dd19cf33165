// Command-line driver: contactred verify <names|all> [options]

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contactred/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of contact reduction on cosphere bundles"};
  app.require_subcommand(1);

  contactred::RunConfig config;
  int n = 0;
  CLI::App* verify = app.add_subcommand("verify", "Run the verification suite on named scenarios");
  verify->add_option("names", config.scenarios, "Scenario names, or 'all'")->required();
  CLI::Option* n_opt = verify->add_option("--n", n, "Size parameter for every sized scenario");
  verify->add_option("--samples", config.samples, "Sample points per check");
  verify->add_option("--tol", config.tol, "Run tolerance; check tolerances scale with tol / 1e-9");
  verify->add_option("--seed", config.seed, "Random seed");
  verify->add_option("--out", config.out, "Path of the JSON report");
  verify->add_flag("--quiet", config.quiet, "Only print failing checks and summaries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (*n_opt) config.n = n;
  return contactred::run_verify(config, std::cout);
}
