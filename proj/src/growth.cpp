#include "dfh/growth.hpp"

#include <algorithm>

#include "dfh/errors.hpp"
#include "dfh/factor.hpp"

namespace dfh {

namespace {

std::vector<long> primes_up_to(long n) {
  std::vector<long> primes;
  if (n < 2) return primes;
  std::vector<bool> comp(n + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    primes.push_back(i);
    for (long j = i * i; j <= n; j += i) comp[j] = true;
  }
  return primes;
}

// a/b > c/d for nonnegative counts against positive horizons.
bool ratio_greater(long a, long b, long c, long d) {
  return static_cast<__int128>(a) * d > static_cast<__int128>(c) * b;
}

}  // namespace

long IndexSet::count() const {
  long c = 0;
  for (long i = 1; i <= N; ++i)
    if (member[i]) ++c;
  return c;
}

DensityEstimate upper_density(const IndexSet& S) {
  if (S.N < 1) throw PreconditionFailed("upper_density: horizon must be >= 1");
  long half = S.N / 2;
  long cnt = 0;
  long top_c = 0, top_n = 1, bot_c = 0, bot_n = 1;
  for (long n = 1; n <= S.N; ++n) {
    if (S.member[n]) ++cnt;
    if (n <= half) {
      if (ratio_greater(cnt, n, bot_c, bot_n)) bot_c = cnt, bot_n = n;
    } else {
      if (ratio_greater(cnt, n, top_c, top_n)) top_c = cnt, top_n = n;
    }
  }
  DensityEstimate est;
  est.top_half_max = Rational(top_c, top_n);
  est.top_half_max.canonicalize();
  est.bottom_half_max = Rational(bot_c, bot_n);
  est.bottom_half_max.canonicalize();
  est.trend_down = est.top_half_max < est.bottom_half_max;
  return est;
}

Int GrowthProfile::lcm_int() const {
  Int v = 1;
  for (const auto& [p, e] : lcm_factors) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

GrowthProfile growth_profile(SeriesHandle& s, long N,
                             const std::optional<IndexSet>& exclude, bool with_lcm) {
  if (N < 0) throw PreconditionFailed("growth_profile: horizon must be >= 0");
  if (exclude && exclude->N < N)
    throw PreconditionFailed("growth_profile: exclusion mask shorter than horizon");
  GrowthProfile prof;
  prof.N = N;
  prof.mask = exclude;
  prof.h.reserve(N + 1);
  prof.den.reserve(N + 1);
  if (with_lcm) prof.log_lcm.reserve(N + 1);
  const auto coeffs = s.coefficients(N);
  std::map<Int, Real> log_cache;
  Real running(0.0);
  for (long n = 0; n <= N; ++n) {
    prof.h.push_back(height(coeffs[n]));
    Int d = denominator(coeffs[n]);
    bool included = with_lcm && !(exclude && exclude->contains(n));
    if (included && d > 1) {
      for (const auto& [p, e] : factorize(d)) {
        auto it = prof.lcm_factors.find(p);
        unsigned long seen = (it == prof.lcm_factors.end()) ? 0 : it->second;
        if (e <= seen) continue;
        auto lt = log_cache.find(p);
        if (lt == log_cache.end())
          lt = log_cache.emplace(p, Real::log(Real(p, MPFR_RNDN), MPFR_RNDN)).first;
        Real step = Real::mul(Real(static_cast<long>(e - seen)), lt->second, MPFR_RNDN);
        running = Real::add(running, step, MPFR_RNDN);
        prof.lcm_factors[p] = e;
      }
    }
    prof.den.push_back(std::move(d));
    if (with_lcm) prof.log_lcm.push_back(running);
  }
  return prof;
}

KappaCheck kappa_density_check(const GrowthProfile& profile, const Rational& kappa,
                               const Rational& floor) {
  if (kappa <= 0) throw PreconditionFailed("kappa_density_check: kappa must be positive");
  KappaCheck out;
  out.floor = floor;
  out.set = IndexSet(profile.N);
  for (long n = 0; n <= profile.N; ++n) {
    Int lhs = profile.den[n] * kappa.get_den();
    Int rhs = kappa.get_num() * n;
    out.set.member[n] = lhs >= rhs;
  }
  out.density = upper_density(out.set);
  out.pass = out.density.top_half_max > floor;
  return out;
}

AlphaKind alpha_by_name(const std::string& name) {
  if (name == "log") return AlphaKind::Log;
  if (name == "loglog") return AlphaKind::LogLog;
  if (name == "pow01") return AlphaKind::Pow01;
  if (name == "pow025") return AlphaKind::Pow025;
  throw SchemaError("unknown alpha name '" + name + "' (expected log, loglog, pow01, pow025)");
}

std::string alpha_name(AlphaKind kind) {
  switch (kind) {
    case AlphaKind::Log: return "log";
    case AlphaKind::LogLog: return "loglog";
    case AlphaKind::Pow01: return "pow01";
    case AlphaKind::Pow025: return "pow025";
  }
  return "";
}

namespace {

Real log2_of(const Real& x) {
  static const Real ln2 = Real::log(Real(2L), MPFR_RNDN);
  return Real::div(Real::log(x, MPFR_RNDN), ln2, MPFR_RNDN);
}

Real pow_frac(long n, const Rational& e) {
  return Real::exp(Real::mul(Real::log(Real(n), MPFR_RNDN), Real(e, MPFR_RNDN), MPFR_RNDN),
                   MPFR_RNDN);
}

}  // namespace

Real alpha_eval(AlphaKind kind, long n) {
  if (n < 1) throw PreconditionFailed("alpha_eval: argument must be >= 1");
  switch (kind) {
    case AlphaKind::Log: return log2_of(Real(n + 2));
    case AlphaKind::LogLog:
      return log2_of(Real::add(log2_of(Real(n + 2)), Real(2L), MPFR_RNDN));
    case AlphaKind::Pow01: return pow_frac(n, Rational(1, 10));
    case AlphaKind::Pow025: return pow_frac(n, Rational(1, 4));
  }
  throw PreconditionFailed("alpha_eval: invalid kind");
}

std::vector<Real> counterexample_thresholds(long k_max,
                                            const std::function<Real(long)>& alpha) {
  if (k_max < 1) throw PreconditionFailed("counterexample_thresholds: k_max must be >= 1");
  std::vector<Real> c;
  c.reserve(k_max);
  const Real one(1L);
  Real a1 = alpha(1);
  c.push_back(a1 < one ? a1 : one);
  const Real factor(Rational(19, 10), MPFR_RNDN);
  for (long k = 2; k <= k_max; ++k) {
    Real v = Real::mul(factor, c.back(), MPFR_RNDN);
    Real kk(k);
    if (kk < v) v = kk;
    Real av = alpha(1L << (k - 1));
    if (av < v) v = av;
    c.push_back(v);
  }
  return c;
}

CounterexampleResult counterexample_set(long N, AlphaKind alpha) {
  if (N < 2) throw PreconditionFailed("counterexample_set: horizon must be >= 2");
  long K = 1;
  while ((1L << K) < N) ++K;
  CounterexampleResult res;
  res.c = counterexample_thresholds(K, [&](long n) { return alpha_eval(alpha, n); });
  res.S = IndexSet(N);
  const auto primes = primes_up_to(N);
  for (long k = 1; k <= K; ++k) {
    long lo = 1L << (k - 1);
    long hi = std::min(1L << k, N);
    const Real two_k(1L << k);
    const Real& ck = res.c[k - 1];
    for (long p : primes) {
      if (p > hi) break;
      // p > 2^k / c_k, compared without division
      if (!(Real::mul(Real(p), ck, MPFR_RNDN) > two_k)) continue;
      for (long m = (lo / p + 1) * p; m <= hi; m += p) res.S.member[m] = true;
    }
  }
  long cnt = 0, next_cp = 2;
  for (long n = 1; n <= N; ++n) {
    if (res.S.member[n]) ++cnt;
    if (n == next_cp) {
      CounterexampleCheckpoint cp;
      cp.n = n;
      cp.density = Rational(cnt, n);
      cp.density.canonicalize();
      // lcm of the complement: p^a contributes iff some multiple <= n avoids S
      Int L = 1;
      for (long p : primes) {
        if (p > n) break;
        long pa = p;
        unsigned long e = 0;
        while (pa <= n) {
          bool outside = false;
          for (long m = pa; m <= n; m += pa)
            if (!res.S.member[m]) {
              outside = true;
              break;
            }
          if (!outside) break;
          ++e;
          if (pa > n / p) break;
          pa *= p;
        }
        if (e > 0) {
          Int pe;
          mpz_pow_ui(pe.get_mpz_t(), Int(p).get_mpz_t(), e);
          L *= pe;
        }
      }
      cp.log_lcm_out = Real::log(Real(L, MPFR_RNDN), MPFR_RNDN);
      res.checkpoints.push_back(std::move(cp));
      next_cp *= 2;
    }
  }
  return res;
}

}  // namespace dfh
