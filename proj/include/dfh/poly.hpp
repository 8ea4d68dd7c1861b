#pragma once

#include <string>
#include <vector>

#include "dfh/field.hpp"

namespace dfh {

// Dense univariate polynomial over Q or a quadratic field, lowest degree
// first. Zero polynomial has an empty coefficient vector and degree -1.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<FieldElement> coeffs) : c_(std::move(coeffs)) { normalize_(); }
  Poly(std::initializer_list<long> ints);

  static Poly zero() { return Poly(); }
  static Poly one() { return constant(FieldElement(1L)); }
  static Poly constant(const FieldElement& v);
  static Poly monomial(const FieldElement& v, size_t deg);

  bool is_zero() const { return c_.empty(); }
  long deg() const { return (long)c_.size() - 1; }
  // Order of vanishing at 0; -1 for the zero polynomial.
  long ord() const;
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coef(size_t i) const { return i < c_.size() ? c_[i] : FieldElement(); }
  const FieldElement& leading() const;

  FieldElement eval(const FieldElement& x) const;
  FieldElement eval_int(long n) const { return eval(FieldElement(n)); }

  Poly derivative() const;
  Poly shift_up(size_t k) const;      // multiply by z^k
  Poly truncate(long maxdeg) const;   // keep degrees 0..maxdeg
  Poly compose_shift(long c) const;   // P(x + c)

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const FieldElement& v) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a.c_ == b.c_); }

  // Euclidean division; b must be nonzero.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd(Poly a, Poly b);  // monic gcd
  Poly monic() const;

  // All nonnegative integer roots (for index polynomials and singular-index
  // computation). Coefficients must be rational or split componentwise.
  std::vector<long> nonneg_integer_roots() const;

  std::string str() const;

private:
  void normalize_();
  std::vector<FieldElement> c_;
};

// Reduced rational function. den(0) = 1 when den(0) != 0, else den is monic.
class RatFunc {
public:
  RatFunc() : num_(), den_(Poly::one()) {}
  RatFunc(Poly num, Poly den);
  RatFunc(const Poly& num) : num_(num), den_(Poly::one()) {}
  static RatFunc constant(const FieldElement& v) { return RatFunc(Poly::constant(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.deg() == 0; }
  // Requires is_polynomial().
  Poly as_polynomial() const;

  RatFunc derivative() const;
  FieldElement eval(const FieldElement& x) const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string str() const;

private:
  void reduce_();
  Poly num_, den_;
};

}  // namespace dfh
