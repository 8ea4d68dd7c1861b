#include "dfh/field.hpp"

#include <cstdlib>
#include <stdexcept>

namespace dfh {

bool is_squarefree(long d) {
  if (d == 0) return false;
  long n = std::labs(d);
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

FieldElement::FieldElement(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) != 0) {
    if (d_ == 0 || d_ == 1 || !is_squarefree(d_))
      throw std::invalid_argument("quadratic discriminant must be squarefree and not 0 or 1");
  }
  canon_();
}

void FieldElement::canon_() {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) == 0) d_ = 0;
}

const Rational& FieldElement::rational() const {
  if (!is_rational()) throw std::domain_error("element is not rational");
  return a_;
}

long common_discriminant(const FieldElement& x, const FieldElement& y) {
  if (x.d() == 0) return y.d();
  if (y.d() == 0 || y.d() == x.d()) return x.d();
  throw DegreeOverflow("operation mixes sqrt(" + std::to_string(x.d()) + ") and sqrt(" +
                       std::to_string(y.d()) + "), leaving the quadratic field");
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  long d = common_discriminant(x, y);
  return FieldElement(x.a_ + y.a_, x.b_ + y.b_, d);
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  long d = common_discriminant(x, y);
  return FieldElement(x.a_ - y.a_, x.b_ - y.b_, d);
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  long d = common_discriminant(x, y);
  return FieldElement(x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero field element");
  if (is_rational()) return FieldElement(Rational(1) / a_);
  Rational nm = norm();
  // norm != 0 for nonzero elements of a quadratic field (d squarefree).
  return FieldElement(a_ / nm, -b_ / nm, d_);
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) { return x * y.inverse(); }

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement acc(Rational(1));
  FieldElement base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

Real FieldElement::abs_lower() const {
  if (is_rational()) {
    Rational aq = ::abs(a_);
    return Real(aq, MPFR_RNDD);
  }
  if (d_ < 0) {
    // modulus^2 = a^2 + |d| b^2 = norm (positive here)
    Real n(norm(), MPFR_RNDD);
    return Real::sqrt(n, MPFR_RNDD);
  }
  // real embedding a + b*sqrt(d) with the positive square root
  Real s = Real::sqrt(Real(Rational(d_), MPFR_RNDD), MPFR_RNDD);
  Real su = Real::sqrt(Real(Rational(d_), MPFR_RNDU), MPFR_RNDU);
  Real lo, hi;
  if (sgn(b_) >= 0) {
    lo = Real::add(Real(a_, MPFR_RNDD), Real::mul(Real(b_, MPFR_RNDD), s, MPFR_RNDD), MPFR_RNDD);
    hi = Real::add(Real(a_, MPFR_RNDU), Real::mul(Real(b_, MPFR_RNDU), su, MPFR_RNDU), MPFR_RNDU);
  } else {
    lo = Real::add(Real(a_, MPFR_RNDD), Real::mul(Real(b_, MPFR_RNDD), su, MPFR_RNDD), MPFR_RNDD);
    hi = Real::add(Real(a_, MPFR_RNDU), Real::mul(Real(b_, MPFR_RNDU), s, MPFR_RNDU), MPFR_RNDU);
  }
  // |x| lower bound: if the enclosure straddles 0 the lower bound is 0.
  if (lo.sign() <= 0 && hi.sign() >= 0) return Real(0.0);
  Real al = Real::abs(lo), ah = Real::abs(hi);
  return al < ah ? al : ah;
}

Real FieldElement::abs_upper() const {
  if (is_rational()) {
    Rational aq = ::abs(a_);
    return Real(aq, MPFR_RNDU);
  }
  if (d_ < 0) {
    Real n(norm(), MPFR_RNDU);
    return Real::sqrt(n, MPFR_RNDU);
  }
  Real sd = Real::sqrt(Real(Rational(d_), MPFR_RNDD), MPFR_RNDD);
  Real su = Real::sqrt(Real(Rational(d_), MPFR_RNDU), MPFR_RNDU);
  Real lo, hi;
  if (sgn(b_) >= 0) {
    lo = Real::add(Real(a_, MPFR_RNDD), Real::mul(Real(b_, MPFR_RNDD), sd, MPFR_RNDD), MPFR_RNDD);
    hi = Real::add(Real(a_, MPFR_RNDU), Real::mul(Real(b_, MPFR_RNDU), su, MPFR_RNDU), MPFR_RNDU);
  } else {
    lo = Real::add(Real(a_, MPFR_RNDD), Real::mul(Real(b_, MPFR_RNDD), su, MPFR_RNDD), MPFR_RNDD);
    hi = Real::add(Real(a_, MPFR_RNDU), Real::mul(Real(b_, MPFR_RNDU), sd, MPFR_RNDU), MPFR_RNDU);
  }
  Real al = Real::abs(lo), ah = Real::abs(hi);
  return al < ah ? ah : al;
}

std::string FieldElement::str() const {
  if (is_rational()) return a_.get_str();
  return "(" + a_.get_str() + ")+(" + b_.get_str() + ")*sqrt(" + std::to_string(d_) + ")";
}

namespace {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw SchemaError("empty rational literal");
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
    if (!ok) throw SchemaError("invalid rational literal: " + s);
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw SchemaError("invalid rational literal: " + s);
  if (sgn(q.get_den()) == 0) throw SchemaError("zero denominator in rational literal: " + s);
  q.canonicalize();
  return q;
}

}  // namespace

FieldElement FieldElement::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw SchemaError("empty field element literal");
  if (s[0] != '(') return FieldElement(parse_rational(s));
  size_t close1 = s.find(')');
  if (close1 == std::string::npos) throw SchemaError("malformed field element: " + text);
  static const std::string mid = ")+(";
  if (s.compare(close1, mid.size(), mid) != 0)
    throw SchemaError("malformed field element: " + text);
  size_t bstart = close1 + mid.size();
  size_t close2 = s.find(')', bstart);
  if (close2 == std::string::npos) throw SchemaError("malformed field element: " + text);
  static const std::string tail = ")*sqrt(";
  if (s.compare(close2, tail.size(), tail) != 0)
    throw SchemaError("malformed field element: " + text);
  size_t dstart = close2 + tail.size();
  if (s.back() != ')') throw SchemaError("malformed field element: " + text);
  std::string dpart = s.substr(dstart, s.size() - 1 - dstart);
  Rational a = parse_rational(s.substr(1, close1 - 1));
  Rational b = parse_rational(s.substr(bstart, close2 - bstart));
  long d = 0;
  try {
    size_t used = 0;
    d = std::stol(dpart, &used);
    if (used != dpart.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw SchemaError("invalid discriminant in field element: " + text);
  }
  if (sgn(b) != 0 && (d == 0 || d == 1 || !is_squarefree(d)))
    throw SchemaError("discriminant must be squarefree, not 0 or 1: " + text);
  return FieldElement(a, b, sgn(b) == 0 ? 0 : d);
}

}  // namespace dfh
