#include "dfh/height.hpp"

#include <algorithm>

#include "dfh/errors.hpp"
#include "dfh/factor.hpp"

namespace dfh {

namespace {

Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rational pow_rat(const Rational& b, unsigned long e) {
  return Rational(pow_int(b.get_num(), e), pow_int(b.get_den(), e));
}

// Primitive integer minimal polynomial a0 x^2 + a1 x + a2 of a quadratic x,
// with a0 > 0 and gcd(a0, a1, a2) = 1.
void primitive_min_poly(const FieldElement& x, Int& a0, Int& a1, Int& a2) {
  Rational t = x.trace();
  Rational n = x.norm();
  Int L = lcm(t.get_den(), n.get_den());
  a0 = L;
  Rational a1q = -t * L;
  Rational a2q = n * L;
  a1 = a1q.get_num();
  a2 = a2q.get_num();
  Int g = gcd(gcd(a0, a1), a2);
  a0 /= g;
  a1 /= g;
  a2 /= g;
}

HeightValue exact_height(long root, const Rational& base) {
  HeightValue h;
  h.exact = true;
  h.root = root;
  h.base = base;
  Real r((long)root);
  h.lo = Real::div(Real::log_q(base, MPFR_RNDD), r, MPFR_RNDD);
  h.hi = Real::div(Real::log_q(base, MPFR_RNDU), r, MPFR_RNDU);
  return h;
}

// Number of real roots of a0 x^2 + a1 x + a2 (a0 > 0, irreducible over Q,
// positive discriminant) lying strictly above 1 and strictly below -1.
void outside_unit_counts(const Int& a0, const Int& a1, const Int& a2,
                         int& above, int& below) {
  Int p1 = a0 + a1 + a2;    // P(1)
  Int pm1 = a0 - a1 + a2;   // P(-1)
  // Vertex at -a1 / (2 a0): compare with +-1 by sign of a1 + 2 a0.
  if (p1 < 0) {
    above = 1;
  } else {
    above = (-a1 > 2 * a0) ? 2 : 0;  // vertex > 1 and P(1) > 0
  }
  if (pm1 < 0) {
    below = 1;
  } else {
    below = (-a1 < -2 * a0) ? 2 : 0;  // vertex < -1 and P(-1) > 0
  }
}

}  // namespace

double HeightValue::value() const {
  return Real::div(Real::add(lo, hi, MPFR_RNDN), Real(2L), MPFR_RNDN).to_double();
}

HeightValue height(const FieldElement& x) {
  if (x.is_rational()) {
    const Rational& q = x.rational();
    Int num = abs(q.get_num());
    Int den = q.get_den();
    Rational base(num > den ? num : den);
    if (base == 0) base = 1;  // h(0) = 0
    return exact_height(1, base);
  }
  Int a0, a1, a2;
  primitive_min_poly(x, a0, a1, a2);
  if (x.d() < 0) {
    // Conjugate pair of modulus sqrt(a2/a0); Mahler measure max(a0, a2).
    Rational base(a2 > a0 ? a2 : a0);
    return exact_height(2, base);
  }
  int above = 0, below = 0;
  outside_unit_counts(a0, a1, a2, above, below);
  int outside = above + below;
  if (outside == 0) return exact_height(2, Rational(a0));
  if (outside == 2) return exact_height(2, Rational(abs(a2)));
  // Split case: Mahler measure a0 * |outside root| = (c + sqrt(D)) / 2 with
  // D = a1^2 - 4 a0 a2 and c = -a1 (root above 1) or c = a1 (root below -1).
  Int D = a1 * a1 - 4 * a0 * a2;
  Int c = (above == 1) ? Int(-a1) : Int(a1);
  Real sD_lo = Real::sqrt(Real(D, MPFR_RNDD), MPFR_RNDD);
  Real sD_hi = Real::sqrt(Real(D, MPFR_RNDU), MPFR_RNDU);
  Real m_lo = Real::div(Real::add(Real(c, MPFR_RNDD), sD_lo, MPFR_RNDD), Real(2L), MPFR_RNDD);
  Real m_hi = Real::div(Real::add(Real(c, MPFR_RNDU), sD_hi, MPFR_RNDU), Real(2L), MPFR_RNDU);
  HeightValue h;
  h.exact = false;
  h.root = 2;
  h.base = 0;
  h.lo = Real::div(Real::log(m_lo, MPFR_RNDD), Real(2L), MPFR_RNDD);
  h.hi = Real::div(Real::log(m_hi, MPFR_RNDU), Real(2L), MPFR_RNDU);
  return h;
}

Int denominator(const FieldElement& x) {
  if (x.is_rational()) return x.rational().get_den();
  // d*x integral iff trace(d*x) = d * 2a and norm(d*x) = d^2 (a^2 - d b^2)
  // are both integers; solve prime by prime.
  Int dt = x.trace().get_den();
  Int dn = x.norm().get_den();
  FactorMap acc;
  for (auto& [p, e] : factorize(dt)) acc.insert_value(pow_int(p, e));
  for (auto& [p, e] : factorize(dn)) acc.insert_value(pow_int(p, (e + 1) / 2));
  return acc.to_int();
}

namespace {

// h(lhs) == scale * h(rhs) decided exactly when both sides are exact pairs,
// otherwise by enclosure overlap.
bool equals_scaled(const HeightValue& lhs, unsigned long scale, const HeightValue& rhs) {
  if (lhs.exact && rhs.exact) {
    Rational l = pow_rat(lhs.base, (unsigned long)rhs.root);
    Rational r = pow_rat(rhs.base, scale * (unsigned long)lhs.root);
    return l == r;
  }
  Real rl = Real::mul(rhs.lo, Real((long)scale), MPFR_RNDD);
  Real rh = Real::mul(rhs.hi, Real((long)scale), MPFR_RNDU);
  return lhs.lo <= rh && rl <= lhs.hi;
}

}  // namespace

PropertyTriple height_property_check(const FieldElement& a, const FieldElement& b,
                                     long m, const std::vector<FieldElement>& r_terms) {
  PropertyTriple out;
  if (a.is_zero()) throw PreconditionFailed("height_property_check: a must be nonzero");

  // (i) h(a^m) = |m| h(a)
  HeightValue ha = height(a);
  HeightValue hp = height(a.pow(m));
  unsigned long am = (m < 0) ? (unsigned long)(-m) : (unsigned long)m;
  if (am == 0) {
    out.power_ok = (hp.exact && hp.base == 1);
  } else {
    out.power_ok = equals_scaled(hp, am, ha);
  }

  // (ii) h(sum r_i) <= sum h(r_i) + log(count)
  if (r_terms.empty()) {
    out.sum_ok = true;
  } else {
    FieldElement s;
    Real bound = Real::log_q(Rational((long)r_terms.size()), MPFR_RNDU);
    for (const auto& r : r_terms) {
      s += r;
      bound = Real::add(bound, height(r).hi, MPFR_RNDU);
    }
    out.sum_ok = (height(s).lo <= bound);
  }

  // (iii) h(ab) <= h(a) + h(b) + log 2
  HeightValue hb = height(b);
  Real rhs = Real::add(Real::add(ha.hi, hb.hi, MPFR_RNDU),
                       Real::log_q(Rational(2), MPFR_RNDU), MPFR_RNDU);
  out.product_ok = (height(a * b).lo <= rhs);

  return out;
}

}  // namespace dfh
