#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "charur/acceptance.hpp"

// Prints one line per criterion; exit status 0 iff every selected criterion passes.
int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  charur::AcceptanceOptions opts;
  app.add_option("--only", opts.only, "criterion ids")->delimiter(',');
  app.add_option("--jobs", opts.jobs, "OpenMP threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed, "RNG seed");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const charur::CriterionResult& r : charur::run_acceptance(opts)) {
    std::cout << charur::format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
