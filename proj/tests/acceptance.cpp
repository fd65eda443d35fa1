// Prints the full check table, then one PASS/FAIL line per criterion.
// Exit status is non-zero if any criterion fails.

#include <iostream>

#include "psring/reproduce.hpp"

int main() {
  const auto report = psring::run_acceptance();
  psring::print_table(std::cout, report);
  std::cout << '\n';
  psring::print_summary(std::cout, report);
  std::cout << "elapsed " << report.seconds << " s\n";
  return report.all_pass() ? 0 : 1;
}
