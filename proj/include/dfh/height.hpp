#pragma once

#include <vector>

#include "dfh/field.hpp"
#include "dfh/real.hpp"

namespace dfh {

// Weil height h(x) = log(base)/root when exact; [lo, hi] is always a rigorous
// enclosure of the value (width far below 2^-64 * (1 + |h|)).
struct HeightValue {
  bool exact = true;
  long root = 1;        // 1 for rational x, 2 for quadratic x
  Rational base = 1;    // >= 1, meaningful only when exact
  Real lo, hi;

  double value() const;
};

HeightValue height(const FieldElement& x);

// Smallest d >= 1 such that d*x is an algebraic integer.
Int denominator(const FieldElement& x);

struct PropertyTriple {
  bool power_ok = false;    // h(a^m) = |m| h(a)
  bool sum_ok = false;      // h(sum r_i) <= sum h(r_i) + log(count)
  bool product_ok = false;  // h(ab) <= h(a) + h(b) + log 2
};

PropertyTriple height_property_check(const FieldElement& a, const FieldElement& b,
                                     long m, const std::vector<FieldElement>& r_terms);

}  // namespace dfh
