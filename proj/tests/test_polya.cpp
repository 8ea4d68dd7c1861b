#include <cmath>
#include <vector>

#include "doctest.h"
#include "dfh/errors.hpp"
#include "dfh/hankel.hpp"
#include "dfh/ode.hpp"
#include "dfh/polya.hpp"

using namespace dfh;

namespace {

Rational rat(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Poly P(std::initializer_list<long> c) { return Poly(c); }

SeriesPtr exp_series() {
  return SeriesHandle::make(ode_to_recurrence(DiffOperator({P({1}), P({-1})})),
                            {FieldElement(1L)}, "exp");
}

// a_n = 2^{-n}, f = 1/(1 - z/2)
SeriesPtr geomhalf_series() {
  PRecurrence rec;
  rec.B = {P({-1}), P({2})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L)}, "geomhalf");
}

// a_0 = 0, a_n = 1/(n 2^n); f = -log(1 - z/2)
SeriesPtr logm2_series() {
  PRecurrence rec;
  rec.B = {P({0, -1}), P({2, 2})};
  rec.start = 1;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(0L), FieldElement(rat(1, 2))}, "logm2");
}

// a_n = 1/(n+1)
SeriesPtr hilbert_series() {
  PRecurrence rec;
  rec.B = {P({-1, -1}), P({2, 1})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L)}, "hilbert");
}

SeriesPtr hilbert_scaled_series() {
  PRecurrence rec;
  rec.B = {P({-1, -1}), P({2, 1})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(rat(3, 7))}, "hilbert_scaled");
}

SeriesPtr onepz_series() {
  PRecurrence rec;
  rec.B = {P({0, -1, 1})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L), FieldElement(1L)}, "onepz");
}

SeriesPtr zero_series() {
  PRecurrence rec;
  rec.B = {Poly::one()};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {}, "zero");
}

SeriesPtr expi_series() {
  FieldElement i(Rational(0), Rational(1), -1);
  PRecurrence rec;
  rec.B = {Poly(std::vector<FieldElement>{-i}), P({1, 1})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L)}, "expi");
}

DiskBoundInput disk(double M, double r) {
  DiskBoundInput in;
  in.M = Real(M);
  in.r = Real(r);
  return in;
}

}  // namespace

TEST_CASE("polya bounds, pinned values") {
  CHECK(polya_bound(disk(1, 2), 1).to_double() == 0.5);
  CHECK(polya_bound(disk(1, 2), 3).to_double() == 3.0 / 512);
  CHECK(polya_bound(disk(0, 2), 0).to_double() == 0.0);
  CHECK(polya_bound(disk(0, 2), 5).to_double() == 0.0);

  DiskBoundInput t1 = disk(1, 2);
  t1.C2 = Real(2.0);
  CHECK(polya_bound_twisted(t1, {Real(0.0), Real(1.0)}, 1).to_double() == 2.0);

  DiskBoundInput t2 = disk(1, 2);
  t2.C1 = Real(2.0);
  CHECK(polya_bound_twisted(t2, {Real(1.0), Real(1.0)}, 0).to_double() == 4.0);

  DiskBoundInput t3 = disk(1, 2);
  for (long n = 0; n <= 5; ++n)
    CHECK(polya_bound_twisted(t3, {Real(1.0)}, n).to_double() ==
          polya_bound(disk(1, 2), n).to_double());

  DiskBoundInput bad = disk(1, 1);
  CHECK_THROWS_AS(polya_bound(bad, 1), PreconditionFailed);
  DiskBoundInput badm = disk(-1, 2);
  CHECK_THROWS_AS(polya_bound(badm, 1), PreconditionFailed);
}

TEST_CASE("sup norm on the circle") {
  auto g = geomhalf_series();
  auto b = sup_norm_on_circle(*g, Real(1.5), Real(1.0), Real(2.0), 256, Real(1e-40));
  // true maximum of |1/(1 - z/2)| on |z| = 1.5 is 4, attained at z = 1.5
  CHECK(b.value.to_double() >= 4.0);
  CHECK(b.value.to_double() < 4.2);
  CHECK(b.tail.to_double() < 1e-39);

  auto z = zero_series();
  auto bz = sup_norm_on_circle(*z, Real(1.5), Real(1.0), Real(2.0), 64, Real(1e-30));
  CHECK(bz.value.to_double() < 1e-20);

  auto lg = logm2_series();
  auto bl = sup_norm_on_circle(*lg, Real(1.5), Real(1.0), Real(2.0), 256, Real(1e-40));
  double log4 = std::log(4.0);
  CHECK(bl.value.to_double() >= log4);
  CHECK(bl.value.to_double() < log4 + 0.2);

  CHECK_THROWS_AS(sup_norm_on_circle(*g, Real(2.5), Real(1.0), Real(2.0), 64, Real(1e-20)),
                  RadiusTooLarge);
  auto e = exp_series();
  CHECK_THROWS_AS(sup_norm_on_circle(*e, Real(1.5), Real(1.0), Real(2.0), 64, Real(1e-20)),
                  MajorantViolated);
}

TEST_CASE("sup norm grid refinement and radius monotonicity") {
  auto g = geomhalf_series();
  SupNormBound prev;
  bool have_prev = false;
  for (long grid = 16; grid <= 512; grid *= 2) {
    auto b = sup_norm_on_circle(*g, Real(1.5), Real(1.0), Real(2.0), grid, Real(1e-45));
    CHECK(b.value.to_double() >= 4.0);
    if (have_prev) {
      Real cap = Real::add(prev.value, prev.safety, MPFR_RNDU);
      CHECK(b.value <= cap);
    }
    prev = b;
    have_prev = true;
  }
  // larger radii keep sound bounds against the closed form 1/(1 - r/2)
  for (double r : {1.2, 1.5, 1.8, 1.9}) {
    auto b = sup_norm_on_circle(*g, Real(r), Real(1.0), Real(2.0), 128, Real(1e-45));
    CHECK(b.value.to_double() >= 1.0 / (1.0 - r / 2));
  }
}

TEST_CASE("determinant bounds hold against exact scans") {
  struct Case {
    SeriesPtr s;
    double A;
  };
  std::vector<Case> cases = {{exp_series(), 2.0},    {expi_series(), 2.0},
                             {geomhalf_series(), 1.0}, {logm2_series(), 1.0},
                             {onepz_series(), 2.0},    {zero_series(), 1.0}};
  for (auto& c : cases) {
    auto sup = sup_norm_on_circle(*c.s, Real(1.5), Real(c.A), Real(2.0), 128, Real(1e-45));
    DiskBoundInput in;
    in.M = sup.value;
    in.r = Real(1.5);
    auto scan = hankel_scan(*c.s, 18);
    for (const auto& e : scan) {
      if (e.is_zero) continue;
      Real bound = polya_bound(in, e.n);
      Real du = e.delta.abs_upper();
      CHECK(du <= bound);
    }
  }
}

TEST_CASE("decay exponent fit") {
  auto h = hilbert_series();
  auto scan20 = hankel_scan(*h, 20);
  auto fit20 = decay_exponent_fit(scan20, 2);
  double s20 = fit20.sigma.to_double();
  CHECK(s20 >= std::log(2.0));
  CHECK(s20 <= 1.45);
  CHECK(fit20.implied_r.to_double() == doctest::Approx(std::exp(s20)).epsilon(1e-12));
  REQUIRE(fit20.n_used.size() == 19);
  CHECK(fit20.n_used.front() == 2);
  CHECK(fit20.n_used.back() == 20);

  auto scan12 = hankel_scan(*h, 12);
  auto fit12 = decay_exponent_fit(scan12, 2);
  CHECK(s20 > fit12.sigma.to_double());

  auto lg = logm2_series();
  auto fitl = decay_exponent_fit(hankel_scan(*lg, 16), 2);
  CHECK(fitl.sigma.to_double() >= std::log(2.0));
  CHECK(fitl.sigma.to_double() <= 2.2);

  // rational scans die out past the denominator degree
  auto g = SeriesHandle::make(ode_to_recurrence(DiffOperator({P({1, -2}), P({-2})})),
                              {FieldElement(1L)}, "geometric2");
  CHECK_THROWS_AS(decay_exponent_fit(hankel_scan(*g, 20), 2), InsufficientData);

  // scaling the series leaves the slope untouched
  auto hs = hilbert_scaled_series();
  auto fits = decay_exponent_fit(hankel_scan(*hs, 20), 2);
  Real diff = Real::abs(Real::sub(fits.sigma, fit20.sigma, MPFR_RNDN));
  CHECK(diff.to_double() < 1e-40);

  CHECK_THROWS_AS(decay_exponent_fit(hankel_scan(*h, 5), 2), InsufficientData);
}
