#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Fifteen end-to-end checks covering enumeration counts, transform
// invariants, closed forms, witnesses, tensor-product behaviour, noise
// rigidity, sampling studies and the measure's axioms.  Each check runs
// independently and reports one pass/fail line; exceptions inside a check
// fail that check with the message as detail.

namespace qmagic {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  uint64_t seed = 424242;
  int threads = 0;  // 0 picks the hardware concurrency
  int max_n = 3;    // largest qubit count exercised by the count check
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

bool all_passed(const std::vector<CriterionResult>& results);

// One "[PASS]"/"[FAIL]" line per criterion plus a summary line.
void print_results(const std::vector<CriterionResult>& results,
                   std::ostream& out);

}  // namespace qmagic
