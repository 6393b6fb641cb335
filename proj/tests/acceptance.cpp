#include <iostream>

#include <CLI11.hpp>

#include "suite/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria, one pass/fail line each"};
  int criterion = 0;
  std::uint64_t seed = lpgroup::suite::kDefaultSeed;
  app.add_option("--criterion", criterion, "run only this criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_option("--seed", seed, "seed for randomized trials");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (int id = 1; id <= lpgroup::suite::kCriteria; ++id) {
    if (criterion != 0 && id != criterion) continue;
    const auto result = lpgroup::suite::run_criterion(id, seed);
    std::cout << lpgroup::suite::format_line(result) << '\n';
    all = all && result.passed;
  }
  return all ? 0 : 1;
}
