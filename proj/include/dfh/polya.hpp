#pragma once

#include <vector>

#include "dfh/hankel.hpp"
#include "dfh/ode.hpp"
#include "dfh/real.hpp"

namespace dfh {

// Inputs for determinant bounds on a disk of radius r > 1: M bounds |f| on
// the circle |z| = r, C is the disk constant (1 is rigorous), C1/C2 feed the
// twisted variant.
struct DiskBoundInput {
  Real M;
  Real r;
  Real C = Real(1.0);
  Real C1 = Real(1.0);
  Real C2 = Real(1.0);
};

// Upper bound for max |f| on |z| = r: grid maximum of the partial sum, plus
// the geometric tail of the majorant, plus a Lipschitz safety term for the
// gaps between grid points.
struct SupNormBound {
  Real value;
  Real tail;
  Real safety;
  long terms = 0;
};

struct DecayFit {
  Real sigma;
  Real residual;
  Real implied_r;
  std::vector<long> n_used;
};

// Requires |a_n| <= A * rho0^{-n} on the cached prefix (MajorantViolated
// otherwise) and r < rho0 (RadiusTooLarge otherwise).
SupNormBound sup_norm_on_circle(SeriesHandle& s, const Real& r, const Real& A, const Real& rho0,
                                long grid, const Real& tail_tol);

// (n+1)! (C M)^{n+1} r^{-n(n+1)}, rounded up.
Real polya_bound(const DiskBoundInput& in, long n);

// (n+1)! C1^{n+1} (sum_j |c_j| j! C2^j)^{n+1} r^{-n(n+1)}, rounded up.
Real polya_bound_twisted(const DiskBoundInput& in, const std::vector<Real>& c, long n);

// Least-squares slope of -log|Delta_n| against n(n+1) with an (n+1) term and
// a constant absorbing scale; exp(sigma) estimates the largest admissible r.
// Needs at least 5 nonzero scan entries with n >= n_min.
DecayFit decay_exponent_fit(const HankelScan& scan, long n_min);

}  // namespace dfh
