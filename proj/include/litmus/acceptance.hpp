#ifndef LITMUS_ACCEPTANCE_HPP
#define LITMUS_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace litmus::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CriterionResult> run_all();

/// Runs every criterion and prints one pass/fail line each; returns true when
/// all pass.
bool run_and_print(std::ostream& out);

}  // namespace litmus::acceptance

#endif
