#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace dfh {

using Int = mpz_class;
using Rational = mpq_class;

// Fixed-precision MPFR value. 256-bit mantissa throughout; operations that
// feed one-sided bounds take an explicit rounding mode.
class Real {
public:
  static constexpr mpfr_prec_t kPrec = 256;

  Real() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
  explicit Real(double x) { mpfr_init2(v_, kPrec); mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Real(long x) { mpfr_init2(v_, kPrec); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const Rational& q, mpfr_rnd_t rnd) {
    mpfr_init2(v_, kPrec);
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  Real(const Int& z, mpfr_rnd_t rnd) {
    mpfr_init2(v_, kPrec);
    mpfr_set_z(v_, z.get_mpz_t(), rnd);
  }
  Real(const Real& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, kPrec); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }

  // Deterministic decimal string with `digits` significant digits.
  std::string str(int digits) const;

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  static Real add(const Real& a, const Real& b, mpfr_rnd_t rnd);
  static Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd);
  static Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd);
  static Real div(const Real& a, const Real& b, mpfr_rnd_t rnd);
  static Real neg(const Real& a);
  static Real abs(const Real& a);
  static Real log(const Real& a, mpfr_rnd_t rnd);
  static Real exp(const Real& a, mpfr_rnd_t rnd);
  static Real sqrt(const Real& a, mpfr_rnd_t rnd);
  static Real pow_si(const Real& a, long e, mpfr_rnd_t rnd);
  static Real factorial(unsigned long n, mpfr_rnd_t rnd);

  // log of a positive rational, directed.
  static Real log_q(const Rational& q, mpfr_rnd_t rnd);
  // log |q| as convenience; q must be nonzero.
  static Real log_abs_q(const Rational& q, mpfr_rnd_t rnd);

private:
  mpfr_t v_;
};

}  // namespace dfh
