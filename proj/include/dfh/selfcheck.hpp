#pragma once

#include <string>
#include <vector>

namespace dfh {

struct SelftestResult {
  long instances = 0;
  long failures = 0;
  long skipped = 0;  // degenerate random draws (singular basis change)
  std::vector<std::string> notes;
  bool pass() const { return failures == 0; }
};

// Seeded randomized property suite: Siegel vanishing polynomials (exact
// vanishing and the n*C(n,2L) coefficient bound), the twist identity
// (recurrence-closed twist equals the derivative-form stream), and exact
// basis-change inverses. `count` instances of each property.
SelftestResult selfcheck_random_properties(unsigned long seed, long count);

}  // namespace dfh
