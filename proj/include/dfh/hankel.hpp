#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dfh/field.hpp"
#include "dfh/ode.hpp"
#include "dfh/poly.hpp"
#include "dfh/real.hpp"

namespace dfh {

// One row of a Hankel scan: Delta_n = det(a_{i+j})_{0<=i,j<=n}.
struct HankelEntry {
  long n = 0;
  FieldElement delta;
  bool is_zero = true;
  Real log_abs;  // ln|Delta_n|, meaningful only when !is_zero
};

using HankelScan = std::vector<HankelEntry>;

// det(a_{l+i+j})_{0<=i,j<=m}, exact.  Rational inputs go through row
// denominator clearing plus fraction-free elimination; quadratic inputs
// through field elimination.  Needs a_0..a_{l+2m}.
FieldElement hankel_det(SeriesHandle& s, long l, long m);
FieldElement hankel_det_window(const std::vector<FieldElement>& a, long l, long m);
// Field-elimination path on the same input, kept callable for cross-audits.
FieldElement hankel_det_window_field(const std::vector<FieldElement>& a, long l, long m);

// Delta_0..Delta_{n_max} with exact zero flags and ln|Delta_n| for the rest.
HankelScan hankel_scan(SeriesHandle& s, long n_max);

// If det(a_{l+i+j}) = 0, returns (P, Q) with deg Q <= m, deg P <= l+m-1,
// ord(P - Q f) >= l+2m+1 and the first nonzero coefficient of Q equal to 1;
// among valid kernel vectors the minimal-degree Q is chosen.  Empty when the
// determinant is nonzero.
std::optional<std::pair<Poly, Poly>> kernel_approximant(SeriesHandle& s, long l, long m);
std::optional<std::pair<Poly, Poly>> kernel_approximant_window(const std::vector<FieldElement>& a,
                                                               long l, long m);

// Requires Delta_{m+i} = 0 for 0 <= i <= d (throws PreconditionFailed
// otherwise).  Returns the common reduced pair (P, Q) with gcd(P, Q) = 1,
// deg P <= m-1, deg Q <= m, Q(0) = 1, and ord(P - Q f) >= m+d+1.
std::pair<Poly, Poly> pade_from_vanishing_run(SeriesHandle& s, long m, long d);

// Scans Delta_0..Delta_{n_max} for `window` consecutive zeros, reconstructs a
// rational candidate from the run and cross-checks it against every cached
// coefficient, with at least `window` confirmations past the data the
// reconstruction consumed.  Empty when no run exists or validation fails.
std::optional<RatFunc> kronecker_guess(SeriesHandle& s, long n_max, long window);

}  // namespace dfh
