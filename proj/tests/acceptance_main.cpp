// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
//   fracsob_acceptance [--criterion N] [--seed S] [--workers W]

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "fracsob/harness.hpp"

int main(int argc, char** argv) {
  using namespace fracsob::harness;
  ExperimentConfig config;
  config.command = "accept";
  apply_environment(config, [](const char* key) { return std::getenv(key); });

  std::vector<int> ids = criterion_ids();
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (i + 1 >= argc) throw std::invalid_argument("missing value for " + arg);
      const std::string value = argv[++i];
      if (arg == "--criterion") {
        ids = {std::stoi(value)};
      } else if (arg == "--seed" || arg == "--workers") {
        set_field(config, arg.substr(2), value);
      } else {
        throw std::invalid_argument("unknown option " + arg);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  int failed = 0;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, config);
    std::cout << format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
