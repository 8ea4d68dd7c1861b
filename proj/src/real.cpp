#include "dfh/real.hpp"

#include <cstdlib>

namespace dfh {

std::string Real::str(int digits) const {
  char* buf = nullptr;
  if (digits < 1) digits = 1;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real Real::add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r;
  mpfr_add(r.v_, a.v_, b.v_, rnd);
  return r;
}

Real Real::sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r;
  mpfr_sub(r.v_, a.v_, b.v_, rnd);
  return r;
}

Real Real::mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r;
  mpfr_mul(r.v_, a.v_, b.v_, rnd);
  return r;
}

Real Real::div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r;
  mpfr_div(r.v_, a.v_, b.v_, rnd);
  return r;
}

Real Real::neg(const Real& a) {
  Real r;
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real Real::abs(const Real& a) {
  Real r;
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real Real::log(const Real& a, mpfr_rnd_t rnd) {
  Real r;
  mpfr_log(r.v_, a.v_, rnd);
  return r;
}

Real Real::exp(const Real& a, mpfr_rnd_t rnd) {
  Real r;
  mpfr_exp(r.v_, a.v_, rnd);
  return r;
}

Real Real::sqrt(const Real& a, mpfr_rnd_t rnd) {
  Real r;
  mpfr_sqrt(r.v_, a.v_, rnd);
  return r;
}

Real Real::pow_si(const Real& a, long e, mpfr_rnd_t rnd) {
  Real r;
  mpfr_pow_si(r.v_, a.v_, e, rnd);
  return r;
}

Real Real::factorial(unsigned long n, mpfr_rnd_t rnd) {
  Real r;
  mpfr_fac_ui(r.v_, n, rnd);
  return r;
}

Real Real::log_q(const Rational& q, mpfr_rnd_t rnd) {
  Real x(q, rnd);
  return log(x, rnd);
}

Real Real::log_abs_q(const Rational& q, mpfr_rnd_t rnd) {
  Rational aq = ::abs(q);
  return log_q(aq, rnd);
}

}  // namespace dfh
