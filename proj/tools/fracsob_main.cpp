// fracsob: command-line front end for the minimax density estimation experiments.
//
// Precedence of settings: built-in defaults < --config file < FRACSOB_* environment < flags.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracsob/error.hpp"
#include "fracsob/harness.hpp"

namespace {

using fracsob::harness::ExperimentConfig;

struct Flag {
  std::string key;
  std::string value;
  CLI::Option* option = nullptr;
};

class FlagSet {
 public:
  void add(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
    flags_.push_back(std::make_unique<Flag>());
    Flag& f = *flags_.back();
    f.key = key;
    f.option = app->add_option(name, f.value, help);
  }

  void apply(ExperimentConfig& config) const {
    for (const auto& f : flags_)
      if (f->option->count() > 0) fracsob::harness::set_field(config, f->key, f->value);
  }

 private:
  std::vector<std::unique_ptr<Flag>> flags_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax kernel density estimation on fractional Sobolev classes"};
  app.set_version_flag("--version", FRACSOB_VERSION);
  app.require_subcommand(1);

  FlagSet flags;
  std::string config_path;
  app.add_option("--config", config_path, "Config file with `key:type = value` lines")->check(CLI::ExistingFile);
  flags.add(&app, "--seed", "seed", "Master RNG seed");
  flags.add(&app, "--workers", "workers", "Worker threads (0 = all cores)");
  flags.add(&app, "--grid-points", "grid_points", "Grid size override (power of two)");
  flags.add(&app, "--out", "out", "Output CSV path (stdout when omitted)");

  auto* pinsker = app.add_subcommand("pinsker", "Pinsker's constant gamma(beta, L)");
  auto* kernel = app.add_subcommand("kernel", "Minimax kernel in the time domain");
  auto* risk = app.add_subcommand("risk", "Monte Carlo and exact MISE of the minimax estimator");
  auto* lower = app.add_subcommand("lower-bound", "Van Trees bound and prior membership audit");
  auto* theorem2 = app.add_subcommand("theorem2", "Sweep of the perturbed-family seminorm supremum");
  auto* accept = app.add_subcommand("accept", "Run the acceptance criteria");

  for (CLI::App* sub : {pinsker, kernel, risk, lower, theorem2}) {
    flags.add(sub, "--beta", "beta", "Smoothness index");
    flags.add(sub, "--L", "L", "Seminorm budget");
  }
  flags.add(kernel, "--n", "n", "Sample size");
  flags.add(risk, "--density", "density", "gaussian | f0 | ftheta");
  flags.add(risk, "--n-list", "n_list", "Comma-separated sample sizes");
  flags.add(risk, "--reps", "reps", "Monte Carlo replications");
  flags.add(risk, "--fill", "fill", "Gaussian seminorm^2 as a fraction of L");
  flags.add(risk, "--A", "A", "Half-support of the ftheta density");
  flags.add(risk, "--padding", "padding", "Evaluation grid padding factor");
  flags.add(lower, "--n", "n", "Sample size");
  flags.add(lower, "--eps", "eps", "Prior slack epsilon");
  flags.add(lower, "--trials", "trials", "Prior draws for the membership audit (0 skips it)");
  flags.add(lower, "--variance", "variance", "2A | 4A");
  flags.add(theorem2, "--A-list", "A_list", "Comma-separated half-supports");
  flags.add(theorem2, "--budget", "budget", "Probes per half-support");
  flags.add(accept, "--suite", "suite", "Criteria suite (primary)");
  flags.add(accept, "--criterion", "criterion", "Run a single criterion (1-11)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    ExperimentConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream text;
      text << in.rdbuf();
      config = fracsob::harness::parse_config(text.str(), config);
    }
    fracsob::harness::apply_environment(config, [](const char* name) { return std::getenv(name); });
    flags.apply(config);
    config.command = app.get_subcommands().front()->get_name();

    std::ostream& log = config.out.empty() ? std::cerr : std::cout;
    return fracsob::harness::run_command(config, std::cout, log);
  } catch (const fracsob::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == fracsob::Errc::parse_error || e.code() == fracsob::Errc::invalid_argument ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
