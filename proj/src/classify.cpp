#include "dfh/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "dfh/errors.hpp"
#include "dfh/hankel.hpp"
#include "dfh/height.hpp"
#include "dfh/polya.hpp"

namespace dfh {

std::string growth_tag_name(GrowthTag tag) {
  switch (tag) {
    case GrowthTag::Constant: return "Constant";
    case GrowthTag::LogN: return "LogN";
    case GrowthTag::Linear: return "Linear";
    case GrowthTag::NLogN: return "NLogN";
    case GrowthTag::Unknown: return "Unknown";
  }
  return "";
}

namespace {

double class_scale(GrowthTag tag, long n) {
  switch (tag) {
    case GrowthTag::LogN: return std::log((double)n);
    case GrowthTag::Linear: return (double)n;
    case GrowthTag::NLogN: return (double)n * std::log((double)n);
    default: return 1.0;
  }
}

double lower_median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

}  // namespace

GrowthClass growth_classify(SeriesHandle& s, long N, const ClassifyConfig& cfg) {
  if (N < 64) throw PreconditionFailed("growth_classify: horizon must be >= 64");
  const auto coeffs = s.coefficients(N);
  std::vector<double> hv(N + 1);
  for (long n = 0; n <= N; ++n) hv[n] = height(coeffs[n]).value();

  GrowthClass out;
  const GrowthTag ladder[] = {GrowthTag::Constant, GrowthTag::LogN, GrowthTag::Linear,
                              GrowthTag::NLogN};
  for (GrowthTag tag : ladder) {
    ClassEvidence ev;
    ev.tag = tag;
    IndexSet conforming(N);
    std::vector<double> ratios;
    for (long n = N / 2; n <= N; ++n) {
      double r = hv[n] / class_scale(tag, n);
      bool inside = tag == GrowthTag::Constant ? r <= cfg.band_hi
                                               : r >= cfg.band_lo && r <= cfg.band_hi;
      if (!inside) continue;
      conforming.member[n] = true;
      ratios.push_back(r);
    }
    ev.density = upper_density(conforming).top_half_max;
    ev.median = lower_median(std::move(ratios));
    bool dense = ev.density >= cfg.density_floor;
    ev.pass = tag == GrowthTag::Constant ? dense : dense && ev.median >= cfg.median_floor;
    if (ev.pass) out.tag = tag;
    out.evidence.push_back(ev);
  }
  return out;
}

namespace {

// Exact Newton interpolation through (x_j, y_j), distinct integer nodes.
Poly interpolate_poly(const std::vector<long>& xs, const std::vector<FieldElement>& ys) {
  long k = (long)xs.size();
  std::vector<FieldElement> dd = ys;
  for (long lev = 1; lev < k; ++lev)
    for (long j = k - 1; j >= lev; --j)
      dd[j] = (dd[j] - dd[j - 1]) / FieldElement(xs[j] - xs[j - lev]);
  Poly p;
  Poly basis = Poly::one();
  for (long j = 0; j < k; ++j) {
    p = p + basis.scaled(dd[j]);
    basis = basis * Poly({-xs[j], 1});
  }
  return p;
}

// One kernel vector of the row system M x = 0 (first free column set to 1);
// empty only if the matrix has full column rank.
std::vector<FieldElement> kernel_vector(std::vector<std::vector<FieldElement>> M, size_t cols) {
  size_t rows = M.size();
  std::vector<long> pivot_row(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pr = r;
    while (pr < rows && M[pr][c].is_zero()) ++pr;
    if (pr == rows) continue;
    std::swap(M[r], M[pr]);
    FieldElement inv = M[r][c].inverse();
    for (size_t j = c; j < cols; ++j) M[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      FieldElement f = M[i][c];
      for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_row[c] = (long)r;
    ++r;
  }
  long free_col = -1;
  for (size_t c = 0; c < cols; ++c)
    if (pivot_row[c] < 0) {
      free_col = (long)c;
      break;
    }
  if (free_col < 0) return {};
  std::vector<FieldElement> x(cols);
  x[(size_t)free_col] = FieldElement(1L);
  for (size_t c = 0; c < cols; ++c)
    if (pivot_row[c] >= 0) x[c] = -M[(size_t)pivot_row[c]][(size_t)free_col];
  return x;
}

long felt_bits(const FieldElement& v) {
  auto bits_q = [](const Rational& q) {
    long nb = (long)mpz_sizeinbase(q.get_num().get_mpz_t(), 2);
    long db = (long)mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
    return std::max(nb, db);
  };
  if (v.is_rational()) return bits_q(v.rational());
  return std::max(bits_q(v.a()), bits_q(v.b()));
}

}  // namespace

std::optional<Quasipolynomial> quasipolynomial_detect(SeriesHandle& s, long N, long s_max,
                                                      long deg_max) {
  if (N < 0 || s_max < 1 || deg_max < 0) return std::nullopt;
  const auto coeffs = s.coefficients(N);
  for (long mod = 1; mod <= s_max; ++mod) {
    std::vector<RatFunc> sections;
    bool all_ok = true;
    for (long res = 0; res < mod && all_ok; ++res) {
      all_ok = false;
      if (res > N) break;
      long K = (N - res) / mod + 1;
      long t0 = K / 2;
      long fit_a = deg_max + 1;
      long fit_b = 2 * deg_max + 1;
      if (K - t0 < fit_a + 4) break;
      auto val = [&](long k) -> const FieldElement& { return coeffs[(size_t)(mod * k + res)]; };

      std::optional<RatFunc> found;
      {
        std::vector<long> xs((size_t)fit_a);
        std::vector<FieldElement> ys((size_t)fit_a);
        for (long j = 0; j < fit_a; ++j) {
          xs[(size_t)j] = t0 + j;
          ys[(size_t)j] = val(t0 + j);
        }
        Poly cand = interpolate_poly(xs, ys);
        if (cand.deg() <= deg_max) {
          bool ok = true;
          for (long k = t0; k < K && ok; ++k) ok = cand.eval_int(k) == val(k);
          if (ok) found = RatFunc(cand);
        }
      }
      if (!found && K - t0 >= fit_b + 4) {
        // Size guard: sampled value heights must stay polynomially flat,
        // otherwise no bounded-degree rational section exists and the exact
        // kernel elimination below would grind on huge entries.
        std::vector<long> bits((size_t)fit_b);
        for (long i = 0; i < fit_b; ++i) bits[(size_t)i] = felt_bits(val(t0 + i));
        std::sort(bits.begin(), bits.end());
        long q1 = (fit_b - 1) / 4, q3 = 3 * (fit_b - 1) / 4;
        double xr = std::log2((double)(t0 + q3) / (double)(t0 + q1));
        if ((double)(bits[(size_t)q3] - bits[(size_t)q1]) <=
            (2.0 * (double)deg_max + 2.0) * xr + 64.0) {
          size_t cols = 2 * (size_t)(deg_max + 1);
          std::vector<std::vector<FieldElement>> M((size_t)fit_b,
                                                   std::vector<FieldElement>(cols));
          for (long i = 0; i < fit_b; ++i) {
            FieldElement x(t0 + i);
            const FieldElement& y = val(t0 + i);
            FieldElement xp(1L);
            for (long j = 0; j <= deg_max; ++j) {
              M[(size_t)i][(size_t)j] = xp;
              M[(size_t)i][(size_t)(deg_max + 1 + j)] = -(y * xp);
              xp *= x;
            }
          }
          auto kv = kernel_vector(std::move(M), cols);
          if (!kv.empty()) {
            std::vector<FieldElement> uc(kv.begin(), kv.begin() + deg_max + 1);
            std::vector<FieldElement> vc(kv.begin() + deg_max + 1, kv.end());
            Poly u(std::move(uc)), v(std::move(vc));
            if (!v.is_zero()) {
              RatFunc cand(u, v);
              bool ok = true;
              for (long k = t0; k < K && ok; ++k) {
                FieldElement dv = cand.den().eval_int(k);
                ok = !dv.is_zero() && cand.num().eval_int(k) == val(k) * dv;
              }
              if (ok) found = cand;
            }
          }
        }
      }
      if (!found) break;
      sections.push_back(std::move(*found));
      all_ok = true;
    }
    if (all_ok && (long)sections.size() == mod)
      return Quasipolynomial{mod, std::move(sections)};
  }
  return std::nullopt;
}

std::optional<RatFunc> quasipolynomial_to_ratfunc(const Quasipolynomial& qp) {
  long s = qp.s;
  if (s < 1 || (long)qp.Q.size() != s) return std::nullopt;
  long D = 0;
  std::vector<Poly> P((size_t)s);
  for (long i = 0; i < s; ++i) {
    if (!qp.Q[(size_t)i].is_polynomial()) return std::nullopt;
    P[(size_t)i] = qp.Q[(size_t)i].as_polynomial();
    D = std::max(D, std::max(P[(size_t)i].deg(), 0L));
  }
  Poly one_minus = Poly::one() - Poly::monomial(FieldElement(1L), (size_t)s);
  Poly den = Poly::one();
  for (long k = 0; k <= D; ++k) den = den * one_minus;
  Poly num;
  for (long i = 0; i < s; ++i) {
    if (P[(size_t)i].is_zero()) continue;
    long d = P[(size_t)i].deg();
    // U(z) = (1-z)^{d+1} * sum_n P_i(n) z^n has degree <= d
    std::vector<FieldElement> ucoef((size_t)d + 1);
    for (long m = 0; m <= d; ++m) {
      FieldElement acc;
      Int binom = 1;
      for (long j = 0; j <= m; ++j) {
        FieldElement term = P[(size_t)i].eval_int(m - j) * FieldElement(binom);
        acc = j % 2 == 0 ? acc + term : acc - term;
        binom = binom * (d + 1 - j) / (j + 1);
      }
      ucoef[(size_t)m] = acc;
    }
    std::vector<FieldElement> spread((size_t)(d * s) + 1);
    for (long m = 0; m <= d; ++m) spread[(size_t)(m * s)] = ucoef[(size_t)m];
    Poly term(std::move(spread));
    for (long k = 0; k < D - d; ++k) term = term * one_minus;
    num = num + term.shift_up((size_t)i);
  }
  if (num.is_zero()) return RatFunc();
  return RatFunc(num, den);
}

PoleVerdict root_of_unity_poles(const RatFunc& R, long M_max) {
  PoleVerdict out;
  const Poly& den = R.den();
  if (den.deg() <= 0) {
    out.kind = PoleVerdictKind::AllRootsOfUnity;
    out.M = 1;
    return out;
  }
  if (den.coef(0).is_zero()) {
    out.kind = PoleVerdictKind::HasOtherPole;
    return out;
  }
  Poly sf;
  {
    Poly g = Poly::gcd(den, den.derivative());
    Poly q, r;
    Poly::divmod(den, g, q, r);
    sf = q;
  }
  for (long M = 1; M <= M_max; ++M) {
    Poly cyc = Poly::one() - Poly::monomial(FieldElement(1L), (size_t)M);
    Poly q, r;
    Poly::divmod(cyc, sf, q, r);
    if (!r.is_zero()) continue;
    Poly pw = Poly::one();
    for (long k = 1; k <= den.deg(); ++k) {
      pw = pw * cyc;
      Poly q2, r2;
      Poly::divmod(pw, den, q2, r2);
      if (r2.is_zero()) {
        out.kind = PoleVerdictKind::AllRootsOfUnity;
        out.M = M;
        out.N = k;
        return out;
      }
    }
  }
  // Conservative obstructions: with den(0) = 1 a product of factors with all
  // roots on the unit circle has |leading| = 1 and coefficients below 2^deg.
  auto abs_not_one = [](const FieldElement& v) {
    if (v.is_rational()) return abs(v.rational()) != 1;
    return v.abs_upper() < Real(1L) || v.abs_lower() > Real(1L);
  };
  auto abs_above = [](const FieldElement& v, const Int& bound) {
    if (v.is_rational()) return abs(v.rational()) > Rational(bound);
    return v.abs_lower() > Real(bound, MPFR_RNDN);
  };
  if (abs_not_one(den.leading())) {
    out.kind = PoleVerdictKind::HasOtherPole;
    return out;
  }
  Int bound = Int(1) << (unsigned long)den.deg();
  for (long j = 0; j <= den.deg(); ++j)
    if (abs_above(den.coef((size_t)j), bound)) {
      out.kind = PoleVerdictKind::HasOtherPole;
      return out;
    }
  out.kind = PoleVerdictKind::Undetermined;
  return out;
}

std::optional<Rational> gevrey_estimate(SeriesHandle& s, long N, long denom_bound) {
  if (N < 100) throw PreconditionFailed("gevrey_estimate: horizon must be >= 100");
  if (denom_bound < 1)
    throw PreconditionFailed("gevrey_estimate: denominator bound must be >= 1");
  const auto coeffs = s.coefficients(N);
  std::vector<long> idx;
  std::vector<Real> la, lf;
  Real lfac(0.0);
  for (long n = 1; n <= N; ++n) {
    lfac = Real::add(lfac, Real::log(Real(n), MPFR_RNDN), MPFR_RNDN);
    if (n < N / 2 || coeffs[(size_t)n].is_zero()) continue;
    idx.push_back(n);
    la.push_back(coeffs[(size_t)n].is_rational()
                     ? Real::log_abs_q(coeffs[(size_t)n].rational(), MPFR_RNDN)
                     : Real::log(coeffs[(size_t)n].abs_upper(), MPFR_RNDN));
    lf.push_back(lfac);
  }
  if ((long)idx.size() < 8) return std::nullopt;
  const Real lo = Real::log(Real(Rational(1, 5), MPFR_RNDN), MPFR_RNDN);
  const Real hi = Real::log(Real(5L), MPFR_RNDN);
  std::optional<Rational> match;
  for (long b = 1; b <= denom_bound; ++b) {
    for (long a = -4; a <= 4; ++a) {
      if (std::gcd(std::abs(a), b) != 1) continue;
      Rational cand(a, b);
      cand.canonicalize();
      Real sr(cand, MPFR_RNDN);
      bool ok = true;
      for (size_t j = 0; j < idx.size() && ok; ++j) {
        Real t = Real::div(Real::add(la[j], Real::mul(sr, lf[j], MPFR_RNDN), MPFR_RNDN),
                           Real(idx[j]), MPFR_RNDN);
        ok = t >= lo && t <= hi;
      }
      if (!ok) continue;
      if (match) return std::nullopt;
      match = cand;
    }
  }
  return match;
}

TrichotomyReport trichotomy_report(const SeriesPtr& s, long N, long C, long max_dim) {
  if (!s) throw PreconditionFailed("trichotomy_report: null series");
  if (N < 16 || C < 1)
    throw PreconditionFailed("trichotomy_report: need horizon >= 16 and stretch >= 1");
  TrichotomyReport rep;
  const auto coeffs = s->coefficients(N);

  {
    long prev = -1;
    double worst = 0.0;
    for (long n = 0; n <= N; ++n) {
      if (coeffs[(size_t)n].is_zero()) continue;
      if (prev >= 8) worst = std::max(worst, (double)(n - prev) / (double)prev);
      prev = n;
    }
    rep.boundary.gap_score = worst;
    try {
      auto scan = hankel_scan(*s, 18);
      decay_exponent_fit(scan, 2);
    } catch (const Error&) {
      rep.boundary.decay_fit_failed = true;
    }
    rep.boundary.fires = rep.boundary.gap_score >= 0.5;
  }

  {
    auto prof = growth_profile(*s, N);
    rep.lcm.rate_full = prof.log_lcm[(size_t)N].to_double() / (double)N;
    auto sieve = counterexample_set(N, AlphaKind::Log);
    auto prof_ex = growth_profile(*s, N, sieve.S);
    rep.lcm.rate_excluded = prof_ex.log_lcm[(size_t)N].to_double() / (double)N;
    rep.lcm.strong = rep.lcm.rate_excluded >= 0.1;
  }

  {
    // exclusion set drawn from the support of small denominators; the twist
    // must keep P(0) != 0 so the j = 0 term of g = sum c_j z^j f^(j)/j!
    // retains f itself (a twist with c_0 = 0 rationalizes log-type series
    // and voids the run search)
    std::vector<std::pair<Int, long>> dens;
    for (long i = 1; i <= std::min<long>(24, N); ++i)
      dens.emplace_back(denominator(coeffs[(size_t)i]), i);
    std::sort(dens.begin(), dens.end());
    std::vector<long> excl;
    for (size_t j = 0; j < dens.size() && excl.size() < 3; ++j) excl.push_back(dens[j].second);
    std::sort(excl.begin(), excl.end());
    long L = (long)excl.size();
    long n_sv = std::max(4 * L + 1, excl.back());
    BinomialPoly P = siegel_vanishing_poly(excl, n_sv);
    for (long t = 1; t <= 8 && eval_binomial_poly(P, 0) == 0; ++t)
      P = siegel_vanishing_poly(excl, n_sv + t);
    SeriesPtr g = twist_series(s, P);
    rep.approx.P = P;

    for (long n = 16; n <= std::min(N / C, max_dim); n *= 2) {
      long hi = std::min(C * n, max_dim);
      long run_start = -1, run_len = 0;
      for (long m = n; m <= hi; ++m) {
        if (hankel_det(*g, 0, m).is_zero()) {
          if (run_start < 0) run_start = m;
          if (++run_len >= 4) break;
        } else {
          run_start = -1;
          run_len = 0;
        }
      }
      if (run_len < 4) continue;
      rep.approx.run_found = true;
      auto [u, v] = pade_from_vanishing_run(*g, run_start, run_len - 1);
      long H = C * n;
      std::vector<FieldElement> b((size_t)H + 1);
      long achieved = H + 1;
      for (long k = 0; k <= H; ++k) {
        FieldElement acc = u.coef((size_t)k);
        for (long j = 1; j <= v.deg() && j <= k; ++j)
          acc -= v.coef((size_t)j) * b[(size_t)(k - j)];
        b[(size_t)k] = acc;
        if (acc != g->coefficient(k)) {
          achieved = k;
          break;
        }
      }
      if (achieved > rep.approx.achieved_order) {
        rep.approx.achieved_order = achieved;
        rep.approx.ladder_n = n;
        rep.approx.threshold = H;
        rep.approx.uv = RatFunc(u, v);
        rep.approx.met_threshold = achieved > H;
      }
    }
  }
  return rep;
}

BranchEvidence branch_evidence(SeriesHandle& s, long N) {
  if (N < 64) throw PreconditionFailed("branch_evidence: horizon must be >= 64");
  BranchEvidence out;
  auto prof = growth_profile(s, N, std::nullopt, false);
  IndexSet hset(N), dset(N);
  for (long n = N / 2; n <= N; ++n) {
    double r = prof.h[(size_t)n].value() / (double)n;
    hset.member[(size_t)n] = r >= 0.1 && r <= 10.0;
    const Int& d = prof.den[(size_t)n];
    dset.member[(size_t)n] = d * 10 >= n && d <= Int(10) * n;
  }
  out.h_density = upper_density(hset).top_half_max;
  out.den_density = upper_density(dset).top_half_max;
  const Rational floor(1, 10);
  out.h_linear = out.h_density >= floor;
  out.den_linear = out.den_density >= floor;
  auto qp = quasipolynomial_detect(s, N);
  if (qp) {
    auto rf = quasipolynomial_to_ratfunc(*qp);
    if (rf) out.quasipolynomial = root_of_unity_poles(*rf).kind == PoleVerdictKind::AllRootsOfUnity;
  }
  return out;
}

}  // namespace dfh
