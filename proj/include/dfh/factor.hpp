#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dfh/real.hpp"

namespace dfh {

// Prime factorization of n >= 1 (trial division, then a primality test on the
// cofactor). Throws PreconditionFailed on a composite cofactor too large to
// split; far beyond anything the library's denominators produce.
std::vector<std::pair<Int, unsigned long>> factorize(const Int& n);

// Multiplicative accumulator keyed by a pairwise-coprime basis. insert_value
// refines the basis by gcd splitting, so exponents are exact regardless of
// whether keys are prime; log_value is then an exact-sum log of the running
// lcm. Small prime factors are split off first to keep the basis mostly prime.
class FactorMap {
public:
  // lcm-style update: exponent of each key is the max seen so far.
  void insert_value(const Int& v);
  double log_value() const;
  Int to_int() const;
  size_t size() const { return exp_.size(); }

private:
  void insert_power_(const Int& key, unsigned long e);
  std::map<Int, unsigned long> exp_;
};

}  // namespace dfh
