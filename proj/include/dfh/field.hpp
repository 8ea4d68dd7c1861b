#pragma once

#include <gmpxx.h>

#include <string>

#include "dfh/errors.hpp"
#include "dfh/real.hpp"

namespace dfh {

// Exact element of Q or of a real/imaginary quadratic field Q(sqrt(d)).
// Value is a + b*sqrt(d). Canonical form: b == 0 implies d == 0 (the element
// is plain rational); otherwise d is squarefree, d != 0 and d != 1.
// Rationals mix freely with elements of any single quadratic field; mixing
// two distinct quadratic fields raises DegreeOverflow.
class FieldElement {
public:
  FieldElement() : a_(0), b_(0), d_(0) {}
  FieldElement(const Rational& a) : a_(a), b_(0), d_(0) { canon_(); }
  FieldElement(long v) : a_(v), b_(0), d_(0) {}
  FieldElement(const Int& v) : a_(v), b_(0), d_(0) {}
  FieldElement(Rational a, Rational b, long d);

  static FieldElement sqrt_of(long d) { return FieldElement(Rational(0), Rational(1), d); }

  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long d() const { return d_; }
  // Requires is_rational().
  const Rational& rational() const;

  Rational trace() const { return 2 * a_; }
  Rational norm() const { return a_ * a_ - d_ * b_ * b_; }
  FieldElement conjugate() const { return FieldElement(a_, -b_, d_); }

  FieldElement operator-() const { return FieldElement(-a_, -b_, d_); }
  FieldElement inverse() const;
  FieldElement pow(long e) const;

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
  FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
  FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }
  FieldElement& operator/=(const FieldElement& y) { return *this = *this / y; }

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

  // Rigorous enclosure of |a + b*sqrt(d)| (complex modulus when d < 0).
  Real abs_lower() const;
  Real abs_upper() const;

  // Text format: "p/q" or "p" for rationals, "(a)+(b)*sqrt(d)" otherwise.
  std::string str() const;
  static FieldElement parse(const std::string& text);

private:
  void canon_();
  Rational a_, b_;
  long d_;
};

bool is_squarefree(long d);
// Shared-field resolution: throws DegreeOverflow when dx and dy are distinct
// nonzero discriminants.
long common_discriminant(const FieldElement& x, const FieldElement& y);

}  // namespace dfh
