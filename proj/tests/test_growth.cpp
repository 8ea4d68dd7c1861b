#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dfh/errors.hpp"
#include "dfh/growth.hpp"
#include "dfh/ode.hpp"

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

// a_0 = 0, a_n = (-1)^{n+1}/n
SeriesPtr log1p_series() {
  PRecurrence rec;
  rec.B = {P({0, 1}), P({1, 1})};
  rec.start = 1;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(0L), FieldElement(1L)}, "log1p");
}

// a_n = 2^n
SeriesPtr geom2_series() {
  PRecurrence rec;
  rec.B = {P({-2, -2}), P({1, 1})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L)}, "geom2");
}

IndexSet set_of(long N, const std::vector<long>& members) {
  IndexSet s(N);
  for (long m : members) s.member[m] = true;
  return s;
}

// Same sieve with plain double thresholds, written against the construction
// text rather than the library.
std::vector<bool> oracle_sieve(long N, double (*alpha)(double)) {
  long K = 1;
  while ((1L << K) < N) ++K;
  std::vector<double> c(K + 1, 0.0);
  c[1] = std::min(1.0, alpha(1.0));
  for (long k = 2; k <= K; ++k)
    c[k] = std::min(std::min(1.9 * c[k - 1], static_cast<double>(k)),
                    alpha(static_cast<double>(1L << (k - 1))));
  std::vector<bool> is_comp(N + 1, false);
  std::vector<long> primes;
  for (long i = 2; i <= N; ++i) {
    if (is_comp[i]) continue;
    primes.push_back(i);
    for (long j = i * i; j <= N; j += i) is_comp[j] = true;
  }
  std::vector<bool> S(N + 1, false);
  for (long k = 1; k <= K; ++k) {
    long lo = 1L << (k - 1);
    long hi = std::min(1L << k, N);
    double thr = static_cast<double>(1L << k) / c[k];
    for (long p : primes) {
      if (p > hi) break;
      if (static_cast<double>(p) <= thr) continue;
      for (long m = (lo / p + 1) * p; m <= hi; m += p) S[m] = true;
    }
  }
  return S;
}

double alpha_log_d(double n) { return std::log2(n + 2); }
double alpha_loglog_d(double n) { return std::log2(std::log2(n + 2) + 2); }
double alpha_pow01_d(double n) { return std::pow(n, 0.1); }
double alpha_pow025_d(double n) { return std::pow(n, 0.25); }

const CounterexampleCheckpoint& checkpoint_at(const CounterexampleResult& res, long n) {
  for (const auto& cp : res.checkpoints)
    if (cp.n == n) return cp;
  REQUIRE(false);
  return res.checkpoints.front();
}

double scaled_ratio(AlphaKind kind, const CounterexampleCheckpoint& cp) {
  return cp.density.get_d() * std::log(static_cast<double>(cp.n)) /
         alpha_eval(kind, cp.n).to_double();
}

}  // namespace

TEST_CASE("upper density estimator") {
  IndexSet evens(10000);
  for (long n = 2; n <= 10000; n += 2) evens.member[n] = true;
  auto ev = upper_density(evens);
  CHECK(ev.top_half_max == rat(1, 2));
  CHECK(ev.bottom_half_max == rat(1, 2));
  CHECK(!ev.trend_down);

  auto empty = upper_density(IndexSet(100));
  CHECK(empty.top_half_max == 0);
  CHECK(empty.bottom_half_max == 0);
  CHECK(!empty.trend_down);

  IndexSet squares(1000000);
  for (long s = 1; s * s <= 1000000; ++s) squares.member[s * s] = true;
  auto sq = upper_density(squares);
  CHECK(sq.top_half_max == rat(707, 500001));
  CHECK(sq.top_half_max <= rat(3, 2000));
  CHECK(sq.trend_down);

  IndexSet cosq(1000000);
  for (long n = 1; n <= 1000000; ++n) cosq.member[n] = !squares.member[n];
  auto co = upper_density(cosq);
  CHECK(co.top_half_max >= rat(998, 1000));
  CHECK(!co.trend_down);

  auto single = upper_density(set_of(1, {1}));
  CHECK(single.top_half_max == 1);
  CHECK(single.bottom_half_max == 0);

  CHECK_THROWS_AS(upper_density(IndexSet()), PreconditionFailed);
  CHECK(set_of(20, {3, 5, 7}).count() == 3);
}

TEST_CASE("growth profile pinned examples") {
  auto lg = log1p_series();
  auto prof = growth_profile(*lg, 10);
  REQUIRE(prof.N == 10);
  REQUIRE(prof.den.size() == 11);
  std::vector<long> expect_den = {1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (long n = 0; n <= 10; ++n) CHECK(prof.den[n] == expect_den[n]);
  CHECK(prof.h[0].exact);
  CHECK(prof.h[0].base == 1);
  CHECK(prof.h[6].exact);
  CHECK(prof.h[6].root == 1);
  CHECK(prof.h[6].base == 6);
  CHECK(prof.lcm_int() == 2520);
  Real expected = Real::log(Real(Int(2520), MPFR_RNDN), MPFR_RNDN);
  CHECK(Real::abs(Real::sub(prof.log_lcm[10], expected, MPFR_RNDN)).to_double() < 1e-60);
  std::map<Int, unsigned long> want = {{Int(2), 3}, {Int(3), 2}, {Int(5), 1}, {Int(7), 1}};
  CHECK(prof.lcm_factors == want);
  for (long n = 1; n <= 10; ++n) CHECK(prof.log_lcm[n] >= prof.log_lcm[n - 1]);
  CHECK(!prof.mask.has_value());

  auto ex = exp_series();
  auto pe = growth_profile(*ex, 5);
  std::vector<long> expect_fact = {1, 1, 2, 6, 24, 120};
  for (long n = 0; n <= 5; ++n) CHECK(pe.den[n] == expect_fact[n]);
  CHECK(pe.h[5].base == 120);
  CHECK(pe.lcm_int() == 120);
  std::map<Int, unsigned long> want_fact = {{Int(2), 3}, {Int(3), 1}, {Int(5), 1}};
  CHECK(pe.lcm_factors == want_fact);

  auto g2 = geom2_series();
  auto pg = growth_profile(*g2, 5);
  for (long n = 0; n <= 5; ++n) CHECK(pg.den[n] == 1);
  CHECK(pg.h[3].base == 8);
  CHECK(pg.lcm_int() == 1);
  CHECK(pg.lcm_factors.empty());
  for (long n = 0; n <= 5; ++n) CHECK(pg.log_lcm[n].is_zero());

  IndexSet tail(10);
  for (long n = 5; n <= 10; ++n) tail.member[n] = true;
  auto masked = growth_profile(*lg, 10, tail);
  CHECK(masked.lcm_int() == 12);
  Real expected12 = Real::log(Real(Int(12), MPFR_RNDN), MPFR_RNDN);
  CHECK(Real::abs(Real::sub(masked.log_lcm[10], expected12, MPFR_RNDN)).to_double() < 1e-60);
  CHECK(masked.den[7] == 7);
  CHECK(masked.mask.has_value());

  CHECK_THROWS_AS(growth_profile(*lg, -1), PreconditionFailed);
  CHECK_THROWS_AS(growth_profile(*lg, 10, IndexSet(4)), PreconditionFailed);
}

TEST_CASE("profile lcm audited against big-integer recompute") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(424242UL);

  auto lg = log1p_series();
  IndexSet mask(2000);
  for (long n = 0; n <= 2000; ++n)
    mask.member[n] = (rng.get_z_range(4) == 0);
  auto prof = growth_profile(*lg, 2000, mask);
  for (long n = 1; n <= 2000; ++n) CHECK(prof.log_lcm[n] >= prof.log_lcm[n - 1]);

  std::vector<long> cps;
  for (int i = 0; i < 20; ++i) cps.push_back(mpz_class(rng.get_z_range(2001)).get_si());
  std::sort(cps.begin(), cps.end());
  Int naive = 1;
  long at = -1;
  for (long m : cps) {
    for (long i = at + 1; i <= m; ++i) {
      if (mask.contains(i)) continue;
      mpz_lcm(naive.get_mpz_t(), naive.get_mpz_t(), prof.den[i].get_mpz_t());
    }
    at = m;
    Real expect = Real::log(Real(naive, MPFR_RNDN), MPFR_RNDN);
    CHECK(Real::abs(Real::sub(prof.log_lcm[m], expect, MPFR_RNDN)).to_double() < 1e-50);
  }
  for (long i = at + 1; i <= 2000; ++i) {
    if (mask.contains(i)) continue;
    mpz_lcm(naive.get_mpz_t(), naive.get_mpz_t(), prof.den[i].get_mpz_t());
  }
  CHECK(prof.lcm_int() == naive);

  auto ex = exp_series();
  auto pe = growth_profile(*ex, 300);
  for (int i = 0; i < 20; ++i) {
    long m = mpz_class(rng.get_z_range(301)).get_si();
    Int naive_f = 1;
    for (long j = 0; j <= m; ++j)
      mpz_lcm(naive_f.get_mpz_t(), naive_f.get_mpz_t(), pe.den[j].get_mpz_t());
    Real expect = Real::log(Real(naive_f, MPFR_RNDN), MPFR_RNDN);
    CHECK(Real::abs(Real::sub(pe.log_lcm[m], expect, MPFR_RNDN)).to_double() < 1e-50);
  }
  Int fact;
  mpz_fac_ui(fact.get_mpz_t(), 300);
  CHECK(pe.lcm_int() == fact);
}

TEST_CASE("kappa density check") {
  auto lg = log1p_series();
  auto prof = growth_profile(*lg, 100);
  auto kc = kappa_density_check(prof, rat(1, 2));
  CHECK(kc.density.top_half_max == 1);
  CHECK(kc.pass);
  CHECK(kc.floor == rat(1, 20));
  CHECK(kc.set.contains(1));
  CHECK(kc.set.contains(100));

  auto g2 = geom2_series();
  auto pg = growth_profile(*g2, 100);
  auto kg = kappa_density_check(pg, rat(1, 2));
  CHECK(kg.density.top_half_max == rat(2, 51));
  CHECK(!kg.pass);
  CHECK(kg.density.trend_down);
  auto kg_low = kappa_density_check(pg, rat(1, 2), rat(1, 100));
  CHECK(kg_low.pass);

  auto ex = exp_series();
  auto pe = growth_profile(*ex, 50);
  auto ke = kappa_density_check(pe, Rational(1));
  CHECK(ke.density.top_half_max == 1);
  CHECK(ke.pass);

  CHECK_THROWS_AS(kappa_density_check(prof, Rational(0)), PreconditionFailed);
  CHECK_THROWS_AS(kappa_density_check(prof, Rational(-1)), PreconditionFailed);
}

TEST_CASE("alpha registry and threshold recurrence") {
  CHECK(alpha_by_name("log") == AlphaKind::Log);
  CHECK(alpha_by_name("loglog") == AlphaKind::LogLog);
  CHECK(alpha_by_name("pow01") == AlphaKind::Pow01);
  CHECK(alpha_by_name("pow025") == AlphaKind::Pow025);
  CHECK(alpha_name(AlphaKind::Pow025) == "pow025");
  CHECK_THROWS_AS(alpha_by_name("cubic"), SchemaError);

  CHECK(alpha_eval(AlphaKind::Log, 2) == Real(2L));
  CHECK(alpha_eval(AlphaKind::Log, 1).to_double() == doctest::Approx(1.5849625).epsilon(1e-6));
  CHECK(alpha_eval(AlphaKind::LogLog, 2) == Real(2L));
  CHECK(Real::abs(Real::sub(alpha_eval(AlphaKind::Pow025, 16), Real(2L), MPFR_RNDN)).to_double() <
        1e-70);
  CHECK(Real::abs(Real::sub(alpha_eval(AlphaKind::Pow01, 1024), Real(2L), MPFR_RNDN)).to_double() <
        1e-70);
  for (AlphaKind k : {AlphaKind::Log, AlphaKind::LogLog, AlphaKind::Pow01, AlphaKind::Pow025})
    for (long n : {1L, 10L, 100L, 10000L}) CHECK(alpha_eval(k, n) < alpha_eval(k, 4 * n));
  CHECK_THROWS_AS(alpha_eval(AlphaKind::Log, 0), PreconditionFailed);

  // huge alpha never binds: the recurrence degenerates to min{1.9 c_{k-1}, k}
  auto huge = [](long) { return Real(1e18); };
  auto c = counterexample_thresholds(12, huge);
  REQUIRE(c.size() == 12);
  CHECK(c[0] == Real(1L));
  CHECK(c[1] == Real(rat(19, 10), MPFR_RNDN));
  for (long k = 3; k <= 12; ++k) CHECK(c[k - 1] == Real(k));

  auto one = counterexample_thresholds(1, [](long n) { return alpha_eval(AlphaKind::Pow01, n); });
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Real(1L));
  CHECK_THROWS_AS(counterexample_thresholds(0, huge), PreconditionFailed);
}

TEST_CASE("counterexample hand sieve at N = 4") {
  auto res = counterexample_set(4, AlphaKind::Log);
  CHECK(res.S.N == 4);
  CHECK(!res.S.contains(1));
  CHECK(!res.S.contains(2));
  CHECK(res.S.contains(3));
  CHECK(!res.S.contains(4));
  CHECK(res.S.count() == 1);
  REQUIRE(res.c.size() == 2);
  CHECK(res.c[0] == Real(1L));
  CHECK(res.c[1] == Real(rat(19, 10), MPFR_RNDN));

  REQUIRE(res.checkpoints.size() == 2);
  const auto& c2 = checkpoint_at(res, 2);
  CHECK(c2.density == 0);
  Real log2v = Real::log(Real(2L), MPFR_RNDN);
  CHECK(Real::abs(Real::sub(c2.log_lcm_out, log2v, MPFR_RNDN)).to_double() < 1e-60);
  const auto& c4 = checkpoint_at(res, 4);
  CHECK(c4.density == rat(1, 4));
  Real log4v = Real::log(Real(4L), MPFR_RNDN);
  CHECK(Real::abs(Real::sub(c4.log_lcm_out, log4v, MPFR_RNDN)).to_double() < 1e-60);

  CHECK_THROWS_AS(counterexample_set(1, AlphaKind::Log), PreconditionFailed);
}

TEST_CASE("counterexample sieve matches independent oracle at N = 1024") {
  struct Expect {
    AlphaKind kind;
    double (*alpha)(double);
    long count;
  };
  const Expect table[] = {
      {AlphaKind::Log, alpha_log_d, 430},
      {AlphaKind::LogLog, alpha_loglog_d, 253},
      {AlphaKind::Pow01, alpha_pow01_d, 139},
      {AlphaKind::Pow025, alpha_pow025_d, 289},
  };
  for (const auto& e : table) {
    CAPTURE(alpha_name(e.kind));
    auto res = counterexample_set(1024, e.kind);
    auto oracle = oracle_sieve(1024, e.alpha);
    for (long n = 0; n <= 1024; ++n) CHECK(res.S.contains(n) == oracle[n]);
    CHECK(res.S.count() == e.count);
    CHECK(checkpoint_at(res, 1024).density == rat(e.count, 1024));
  }
  // the slow member keeps the horizon density under 1/4
  auto slow = counterexample_set(1024, AlphaKind::LogLog);
  CHECK(checkpoint_at(slow, 1024).density < rat(1, 4));
  CHECK(counterexample_set(1024, AlphaKind::Log).S.count() > 0);
}

TEST_CASE("counterexample diagnostics trends") {
  struct Probe {
    AlphaKind kind;
    long N;
  };
  const Probe probes[] = {
      {AlphaKind::Log, 4096},
      {AlphaKind::Pow025, 4096},
      {AlphaKind::LogLog, 1L << 18},
      {AlphaKind::Pow01, 1L << 18},
  };
  for (const auto& pr : probes) {
    CAPTURE(alpha_name(pr.kind));
    auto res = counterexample_set(pr.N, pr.kind);
    double r0 = scaled_ratio(pr.kind, checkpoint_at(res, pr.N / 8));
    double r1 = scaled_ratio(pr.kind, checkpoint_at(res, pr.N / 4));
    double r2 = scaled_ratio(pr.kind, checkpoint_at(res, pr.N / 2));
    double r3 = scaled_ratio(pr.kind, checkpoint_at(res, pr.N));
    CHECK(r0 > r1);
    CHECK(r1 > r2);
    CHECK(r2 > r3);
    double lcm_quarter =
        checkpoint_at(res, pr.N / 4).log_lcm_out.to_double() / static_cast<double>(pr.N / 4);
    double lcm_full =
        checkpoint_at(res, pr.N).log_lcm_out.to_double() / static_cast<double>(pr.N);
    CHECK(lcm_full < lcm_quarter);
  }
}

TEST_CASE("chebyshev trend of the included lcm") {
  auto lg = log1p_series();
  auto prof = growth_profile(*lg, 10000);
  double ratio = prof.log_lcm[10000].to_double() / 10000.0;
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);
}
