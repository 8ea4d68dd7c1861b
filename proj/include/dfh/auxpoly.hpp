#pragma once

#include <string>
#include <vector>

#include "dfh/ode.hpp"
#include "dfh/poly.hpp"
#include "dfh/real.hpp"

namespace dfh {

// Integer-valued polynomial P(z) = sum_i c_i * C(z, i) in the binomial basis.
// Invariant: not all c_i zero.
struct BinomialPoly {
  std::vector<Int> c;

  long degree_bound() const { return (long)c.size() - 1; }

  // Text form "c0,c1,...,c2L".
  std::string str() const;
  static BinomialPoly parse(const std::string& text);
};

// Exact P(m) for any integer m; C(m, i) extends to negative m by falling
// factorials.
Int eval_binomial_poly(const BinomialPoly& P, const Int& m);

// Monomial-basis form of P over Q.
Poly binomial_to_poly(const BinomialPoly& P);

// Small integer vector c_0..c_{2L} with sum_i c_i C(m, i) = 0 for every
// m in `indices` and max|c_i| < n*C(n, 2L).  Exact integer kernel of the
// binomial constraint matrix, lattice-reduced; deterministic selection:
// minimal max-norm, then most trailing zeros, then lexicographically
// smallest with the first nonzero coordinate positive.
BinomialPoly siegel_vanishing_poly(const std::vector<long>& indices, long n);

// Stream with coefficients P(n) * a_n.  When the parent carries a recurrence
// the twist closes it (order preserved); otherwise the twist is the derived
// stream sum_j (c_j / j!) z^j f^(j).
SeriesPtr twist_series(SeriesPtr s, const BinomialPoly& P);

}  // namespace dfh
