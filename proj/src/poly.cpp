#include "dfh/poly.hpp"

#include <algorithm>
#include <set>

#include "dfh/errors.hpp"
#include "dfh/factor.hpp"

namespace dfh {

void Poly::normalize_() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly::Poly(std::initializer_list<long> ints) {
  for (long v : ints) c_.emplace_back(v);
  normalize_();
}

Poly Poly::constant(const FieldElement& v) {
  Poly p;
  if (!v.is_zero()) p.c_.push_back(v);
  return p;
}

Poly Poly::monomial(const FieldElement& v, size_t deg) {
  Poly p;
  if (!v.is_zero()) {
    p.c_.assign(deg + 1, FieldElement());
    p.c_[deg] = v;
  }
  return p;
}

long Poly::ord() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return (long)i;
  return -1;
}

const FieldElement& Poly::leading() const {
  if (c_.empty()) throw PreconditionFailed("leading coefficient of zero polynomial");
  return c_.back();
}

FieldElement Poly::eval(const FieldElement& x) const {
  FieldElement acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::derivative() const {
  std::vector<FieldElement> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * FieldElement((long)i));
  return Poly(std::move(d));
}

Poly Poly::shift_up(size_t k) const {
  if (is_zero()) return Poly();
  std::vector<FieldElement> d(k, FieldElement());
  d.insert(d.end(), c_.begin(), c_.end());
  return Poly(std::move(d));
}

Poly Poly::truncate(long maxdeg) const {
  if (maxdeg < 0) return Poly();
  std::vector<FieldElement> d(c_.begin(),
                              c_.begin() + std::min(c_.size(), (size_t)maxdeg + 1));
  return Poly(std::move(d));
}

Poly Poly::compose_shift(long c) const {
  Poly acc;
  FieldElement cc(c);
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc.shift_up(1) + acc.scaled(cc) + Poly::constant(c_[i]);
  }
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<FieldElement> d(std::max(a.c_.size(), b.c_.size()), FieldElement());
  for (size_t i = 0; i < d.size(); ++i) {
    if (i < a.c_.size()) d[i] += a.c_[i];
    if (i < b.c_.size()) d[i] += b.c_[i];
  }
  return Poly(std::move(d));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<FieldElement> d(a.c_.size() + b.c_.size() - 1, FieldElement());
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(d));
}

Poly Poly::operator-() const {
  std::vector<FieldElement> d;
  for (const auto& v : c_) d.push_back(-v);
  return Poly(std::move(d));
}

Poly Poly::scaled(const FieldElement& v) const {
  if (v.is_zero()) return Poly();
  std::vector<FieldElement> d;
  for (const auto& u : c_) d.push_back(u * v);
  return Poly(std::move(d));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw PreconditionFailed("polynomial division by zero");
  std::vector<FieldElement> rem = a.c_;
  long db = b.deg();
  std::vector<FieldElement> quo;
  if ((long)rem.size() - 1 >= db) quo.assign(rem.size() - db, FieldElement());
  FieldElement lead_inv = b.leading().inverse();
  for (long i = (long)rem.size() - 1; i >= db; --i) {
    if (rem[i].is_zero()) continue;
    FieldElement f = rem[i] * lead_inv;
    quo[i - db] = f;
    for (long j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
  }
  q = Poly(std::move(quo));
  r = Poly(std::move(rem));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a.monic();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

namespace {

std::vector<long> nonneg_integer_roots_rational(const std::vector<Rational>& c) {
  // Clear denominators, strip powers of n, enumerate divisors of the constant.
  size_t lo = 0;
  while (lo < c.size() && c[lo] == 0) ++lo;
  std::vector<long> roots;
  if (lo == c.size()) return roots;  // zero polynomial: caller guards
  if (lo > 0) roots.push_back(0);
  Int L = 1;
  for (size_t i = lo; i < c.size(); ++i) L = lcm(L, c[i].get_den());
  std::vector<Int> ic;
  for (size_t i = lo; i < c.size(); ++i) {
    Rational t = c[i] * L;
    ic.push_back(t.get_num());
  }
  if (ic.size() == 1) return roots;  // nonzero constant
  Int a0 = abs(ic[0]);
  std::vector<Int> divisors = {Int(1)};
  for (auto& [p, e] : factorize(a0)) {
    std::vector<Int> next;
    Int pe = 1;
    for (unsigned long k = 0; k <= e; ++k) {
      for (const Int& d : divisors) next.push_back(d * pe);
      pe *= p;
    }
    divisors = std::move(next);
    if (divisors.size() > 200000)
      throw PreconditionFailed("integer root search: constant term has too many divisors");
  }
  std::set<long> found;
  for (const Int& d : divisors) {
    if (!d.fits_slong_p()) continue;
    long r = d.get_si();
    Int acc = 0;
    for (size_t i = ic.size(); i-- > 0;) acc = acc * r + ic[i];
    if (acc == 0) found.insert(r);
  }
  for (long r : found) roots.push_back(r);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<long> Poly::nonneg_integer_roots() const {
  if (is_zero())
    throw PreconditionFailed("integer roots of the zero polynomial are not finite");
  std::vector<Rational> pa, pb;
  for (const auto& v : c_) {
    pa.push_back(v.a());
    pb.push_back(v.b());
  }
  bool a_zero = std::all_of(pa.begin(), pa.end(), [](const Rational& q) { return q == 0; });
  bool b_zero = std::all_of(pb.begin(), pb.end(), [](const Rational& q) { return q == 0; });
  if (b_zero) return nonneg_integer_roots_rational(pa);
  if (a_zero) return nonneg_integer_roots_rational(pb);
  std::vector<long> ra = nonneg_integer_roots_rational(pa);
  std::vector<long> rb = nonneg_integer_roots_rational(pb);
  std::vector<long> out;
  std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(out));
  return out;
}

std::string Poly::str() const {
  if (is_zero()) return "[]";
  std::string s = "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ", ";
    s += c_[i].str();
  }
  return s + "]";
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw PreconditionFailed("rational function with zero denominator");
  reduce_();
}

void RatFunc::reduce_() {
  if (num_.is_zero()) {
    den_ = Poly::one();
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.deg() > 0 || g.coef(0) != FieldElement(1L)) {
    Poly q, r;
    Poly::divmod(num_, g, q, r);
    num_ = q;
    Poly::divmod(den_, g, q, r);
    den_ = q;
  }
  FieldElement d0 = den_.coef(0);
  FieldElement scale = d0.is_zero() ? den_.leading().inverse() : d0.inverse();
  num_ = num_.scaled(scale);
  den_ = den_.scaled(scale);
}

Poly RatFunc::as_polynomial() const {
  if (den_ != Poly::one())
    throw PreconditionFailed("rational function is not a polynomial: " + str());
  return num_;
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

FieldElement RatFunc::eval(const FieldElement& x) const {
  return num_.eval(x) / den_.eval(x);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw PreconditionFailed("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}
RatFunc RatFunc::operator-() const {
  RatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

std::string RatFunc::str() const {
  if (den_ == Poly::one()) return num_.str();
  return num_.str() + " / " + den_.str();
}

}  // namespace dfh
