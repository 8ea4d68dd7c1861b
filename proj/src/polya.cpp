#include "dfh/polya.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dfh/errors.hpp"

namespace dfh {
namespace {

// Complex parts of a field element: a + b sqrt(d) splits into (a + b sqrt(d), 0)
// for d >= 0 and (a, b sqrt(|d|)) for d < 0.
void complex_parts(const FieldElement& v, Real& re, Real& im) {
  Real a(v.a(), MPFR_RNDN);
  if (v.d() == 0) {
    re = a;
    im = Real(0.0);
    return;
  }
  Real b(v.b(), MPFR_RNDN);
  Real root = Real::sqrt(Real((long)std::labs(v.d())), MPFR_RNDN);
  if (v.d() > 0) {
    re = Real::add(a, Real::mul(b, root, MPFR_RNDN), MPFR_RNDN);
    im = Real(0.0);
  } else {
    re = a;
    im = Real::mul(b, root, MPFR_RNDN);
  }
}

void check_disk(const DiskBoundInput& in) {
  if (!(in.r > Real(1.0))) throw PreconditionFailed("disk bound needs r > 1");
  if (in.M.sign() < 0) throw PreconditionFailed("disk bound needs M >= 0");
}

Real pow_up(const Real& base, long e) { return Real::pow_si(base, e, MPFR_RNDU); }

}  // namespace

SupNormBound sup_norm_on_circle(SeriesHandle& s, const Real& r, const Real& A, const Real& rho0,
                                long grid, const Real& tail_tol) {
  if (!(r < rho0)) throw RadiusTooLarge("circle radius must stay below the majorant radius");
  if (r.sign() <= 0) throw PreconditionFailed("circle radius must be positive");
  if (A.sign() < 0) throw PreconditionFailed("majorant constant must be nonnegative");
  if (grid < 4) throw PreconditionFailed("grid must have at least 4 points");
  if (tail_tol.sign() <= 0) throw PreconditionFailed("tail tolerance must be positive");

  // Truncation order from the requested tail size.
  double xd = r.to_double() / rho0.to_double();
  long N = 8;
  if (A.sign() > 0) {
    double want = tail_tol.to_double() * (1 - xd) / A.to_double();
    if (want > 0 && want < 1) N = (long)std::ceil(std::log(want) / std::log(xd));
    N = std::min(std::max(N, 8L), 6000L);
  }

  auto a = s.coefficients(N);
  long horizon = std::max(N, s.cached_count() - 1);
  auto all = s.coefficients(horizon);
  for (long n = 0; n <= horizon; ++n) {
    if (all[n].is_zero()) continue;
    Real cap = Real::mul(A, Real::pow_si(rho0, -n, MPFR_RNDD), MPFR_RNDD);
    if (all[n].abs_upper() > cap)
      throw MajorantViolated("coefficient exceeds the declared majorant at index " +
                             std::to_string(n));
  }

  // Exact-side pieces, rounded up: tail and Lipschitz safety.
  Real x = Real::div(r, rho0, MPFR_RNDU);
  Real one_minus_x = Real::sub(Real(1.0), x, MPFR_RNDD);
  Real tail = Real::mul(A, Real::div(pow_up(x, N + 1), one_minus_x, MPFR_RNDU), MPFR_RNDU);
  mpfr_t pi;
  mpfr_init2(pi, Real::kPrec);
  mpfr_const_pi(pi, MPFR_RNDU);
  Real pi_r;
  mpfr_set(pi_r.get(), pi, MPFR_RNDU);
  mpfr_clear(pi);
  // Lipschitz constant on the circle: sum over the kept terms of n |a_n| r^{n-1}
  // plus the derivative of the majorant tail; gap between grid points <= pi r / grid.
  Real L(0.0);
  for (long n = 1; n <= N; ++n) {
    if (a[n].is_zero()) continue;
    Real term = Real::mul(Real((long)n), a[n].abs_upper(), MPFR_RNDU);
    term = Real::mul(term, pow_up(r, n - 1), MPFR_RNDU);
    L = Real::add(L, term, MPFR_RNDU);
  }
  // sum_{n>N} n x^n = x^{N+1} ((N+1)(1-x) + x) / (1-x)^2
  Real tnum = Real::add(Real::mul(Real(N + 1), one_minus_x, MPFR_RNDU), x, MPFR_RNDU);
  Real tder = Real::mul(pow_up(x, N + 1), tnum, MPFR_RNDU);
  tder = Real::div(tder, Real::mul(one_minus_x, one_minus_x, MPFR_RNDD), MPFR_RNDU);
  L = Real::add(L, Real::div(Real::mul(A, tder, MPFR_RNDU), r, MPFR_RNDU), MPFR_RNDU);
  Real safety = Real::mul(L, Real::mul(pi_r, r, MPFR_RNDU), MPFR_RNDU);
  safety = Real::div(safety, Real((long)grid), MPFR_RNDU);

  // Coefficients as complex parts once.
  std::vector<Real> cre(N + 1), cim(N + 1);
  for (long n = 0; n <= N; ++n) complex_parts(a[n], cre[n], cim[n]);

  Real gridmax(0.0);
  mpfr_t theta, co, si, zr, zi, re, im, t1, t2;
  mpfr_inits2(Real::kPrec, theta, co, si, zr, zi, re, im, t1, t2, (mpfr_ptr)0);
  for (long k = 0; k < grid; ++k) {
    mpfr_const_pi(theta, MPFR_RNDN);
    mpfr_mul_si(theta, theta, 2 * k, MPFR_RNDN);
    mpfr_div_si(theta, theta, grid, MPFR_RNDN);
    mpfr_sin_cos(si, co, theta, MPFR_RNDN);
    mpfr_mul(zr, co, r.get(), MPFR_RNDN);
    mpfr_mul(zi, si, r.get(), MPFR_RNDN);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    for (long n = N; n >= 0; --n) {
      // (re, im) = (re, im) * z + a_n
      mpfr_mul(t1, re, zr, MPFR_RNDN);
      mpfr_mul(t2, im, zi, MPFR_RNDN);
      mpfr_sub(t1, t1, t2, MPFR_RNDN);
      mpfr_mul(t2, re, zi, MPFR_RNDN);
      mpfr_mul(im, im, zr, MPFR_RNDN);
      mpfr_add(im, im, t2, MPFR_RNDN);
      mpfr_add(re, t1, cre[n].get(), MPFR_RNDN);
      mpfr_add(im, im, cim[n].get(), MPFR_RNDN);
    }
    mpfr_sqr(t1, re, MPFR_RNDU);
    mpfr_sqr(t2, im, MPFR_RNDU);
    mpfr_add(t1, t1, t2, MPFR_RNDU);
    mpfr_sqrt(t1, t1, MPFR_RNDU);
    if (mpfr_cmp(t1, gridmax.get()) > 0) mpfr_set(gridmax.get(), t1, MPFR_RNDU);
  }
  mpfr_clears(theta, co, si, zr, zi, re, im, t1, t2, (mpfr_ptr)0);

  // Slack for grid-point rounding: relative 2^-180 on the running maximum.
  Real slack = Real::add(gridmax, Real(1.0), MPFR_RNDU);
  mpfr_mul_2si(slack.get(), slack.get(), -180, MPFR_RNDU);

  SupNormBound out;
  out.tail = tail;
  out.safety = safety;
  out.terms = N;
  out.value = Real::add(Real::add(gridmax, tail, MPFR_RNDU),
                        Real::add(safety, slack, MPFR_RNDU), MPFR_RNDU);
  return out;
}

Real polya_bound(const DiskBoundInput& in, long n) {
  check_disk(in);
  if (n < 0) throw PreconditionFailed("polya bound needs n >= 0");
  Real fact = Real::factorial((unsigned long)n + 1, MPFR_RNDU);
  Real cm = Real::mul(in.C, in.M, MPFR_RNDU);
  Real num = Real::mul(fact, pow_up(cm, n + 1), MPFR_RNDU);
  return Real::mul(num, pow_up(in.r, -n * (n + 1)), MPFR_RNDU);
}

Real polya_bound_twisted(const DiskBoundInput& in, const std::vector<Real>& c, long n) {
  check_disk(in);
  if (n < 0) throw PreconditionFailed("polya bound needs n >= 0");
  if (c.empty()) throw PreconditionFailed("twisted bound needs coefficient moduli");
  Real S(0.0);
  for (size_t j = 0; j < c.size(); ++j) {
    Real term = Real::mul(Real::abs(c[j]), Real::factorial((unsigned long)j, MPFR_RNDU), MPFR_RNDU);
    term = Real::mul(term, pow_up(in.C2, (long)j), MPFR_RNDU);
    S = Real::add(S, term, MPFR_RNDU);
  }
  Real fact = Real::factorial((unsigned long)n + 1, MPFR_RNDU);
  Real num = Real::mul(fact, pow_up(in.C1, n + 1), MPFR_RNDU);
  num = Real::mul(num, pow_up(S, n + 1), MPFR_RNDU);
  return Real::mul(num, pow_up(in.r, -n * (n + 1)), MPFR_RNDU);
}

DecayFit decay_exponent_fit(const HankelScan& scan, long n_min) {
  std::vector<Real> xs, us, ys;
  DecayFit out;
  for (const auto& e : scan) {
    if (e.n < n_min || e.is_zero) continue;
    xs.push_back(Real((long)(e.n * (e.n + 1))));
    us.push_back(Real(e.n + 1));
    ys.push_back(Real::neg(e.log_abs));
    out.n_used.push_back(e.n);
  }
  if (xs.size() < 5)
    throw InsufficientData("decay fit needs at least 5 nonzero hankel entries past n_min");

  // Normal equations for y = sigma x + beta u + gamma.
  size_t k = xs.size();
  auto rn = [](const Real& a, const Real& b) { return Real::mul(a, b, MPFR_RNDN); };
  Real Sxx(0.0), Sxu(0.0), Sx1(0.0), Suu(0.0), Su1(0.0), S11((long)k);
  Real Sxy(0.0), Suy(0.0), S1y(0.0);
  for (size_t i = 0; i < k; ++i) {
    Sxx = Real::add(Sxx, rn(xs[i], xs[i]), MPFR_RNDN);
    Sxu = Real::add(Sxu, rn(xs[i], us[i]), MPFR_RNDN);
    Sx1 = Real::add(Sx1, xs[i], MPFR_RNDN);
    Suu = Real::add(Suu, rn(us[i], us[i]), MPFR_RNDN);
    Su1 = Real::add(Su1, us[i], MPFR_RNDN);
    Sxy = Real::add(Sxy, rn(xs[i], ys[i]), MPFR_RNDN);
    Suy = Real::add(Suy, rn(us[i], ys[i]), MPFR_RNDN);
    S1y = Real::add(S1y, ys[i], MPFR_RNDN);
  }
  auto det3 = [&](const Real& a, const Real& b, const Real& c, const Real& d, const Real& e,
                  const Real& f, const Real& g, const Real& h, const Real& i) {
    Real t1 = rn(a, Real::sub(rn(e, i), rn(f, h), MPFR_RNDN));
    Real t2 = rn(b, Real::sub(rn(d, i), rn(f, g), MPFR_RNDN));
    Real t3 = rn(c, Real::sub(rn(d, h), rn(e, g), MPFR_RNDN));
    return Real::add(Real::sub(t1, t2, MPFR_RNDN), t3, MPFR_RNDN);
  };
  Real D = det3(Sxx, Sxu, Sx1, Sxu, Suu, Su1, Sx1, Su1, S11);
  if (D.is_zero()) throw InsufficientData("degenerate design matrix in decay fit");
  Real Ds = det3(Sxy, Sxu, Sx1, Suy, Suu, Su1, S1y, Su1, S11);
  Real Db = det3(Sxx, Sxy, Sx1, Sxu, Suy, Su1, Sx1, S1y, S11);
  Real Dg = det3(Sxx, Sxu, Sxy, Sxu, Suu, Suy, Sx1, Su1, S1y);
  Real sigma = Real::div(Ds, D, MPFR_RNDN);
  Real beta = Real::div(Db, D, MPFR_RNDN);
  Real gamma = Real::div(Dg, D, MPFR_RNDN);

  Real rss(0.0);
  for (size_t i = 0; i < k; ++i) {
    Real pred = Real::add(Real::add(rn(sigma, xs[i]), rn(beta, us[i]), MPFR_RNDN), gamma,
                          MPFR_RNDN);
    Real d = Real::sub(ys[i], pred, MPFR_RNDN);
    rss = Real::add(rss, rn(d, d), MPFR_RNDN);
  }
  out.sigma = sigma;
  out.residual = Real::sqrt(Real::div(rss, Real((long)k), MPFR_RNDN), MPFR_RNDN);
  out.implied_r = Real::exp(sigma, MPFR_RNDN);
  return out;
}

}  // namespace dfh
