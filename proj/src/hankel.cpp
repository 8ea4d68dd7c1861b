#include "dfh/hankel.hpp"

#include <algorithm>
#include <tuple>

#include "dfh/errors.hpp"

namespace dfh {
namespace {

void check_window(const std::vector<FieldElement>& a, long l, long m) {
  if (l < 0 || m < 0) throw PreconditionFailed("hankel block needs l >= 0 and m >= 0");
  if ((long)a.size() <= l + 2 * m)
    throw PreconditionFailed("hankel block needs coefficients a_0..a_{l+2m}");
}

bool all_rational(const std::vector<FieldElement>& a, long l, long m) {
  for (long i = 0; i <= 2 * m; ++i)
    if (!a[l + i].is_rational()) return false;
  return true;
}

// Row-wise denominator clearing followed by fraction-free elimination.  With
// row i scaled by L_i the integer determinant equals Delta * prod_i L_i.
FieldElement det_bareiss(const std::vector<FieldElement>& a, long l, long m) {
  long n = m + 1;
  std::vector<std::vector<Int>> M(n, std::vector<Int>(n));
  Int scale = 1;
  for (long i = 0; i < n; ++i) {
    Int L = 1;
    for (long j = 0; j < n; ++j) L = lcm(L, Int(a[l + i + j].rational().get_den()));
    for (long j = 0; j < n; ++j) {
      const Rational& q = a[l + i + j].rational();
      M[i][j] = Int(q.get_num()) * (L / q.get_den());
    }
    scale *= L;
  }
  int sign = 1;
  Int prev = 1;
  for (long k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      long p = -1;
      for (long i = k + 1; i < n; ++i)
        if (M[i][k] != 0) { p = i; break; }
      if (p < 0) return FieldElement(0L);
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i) {
      for (long j = k + 1; j < n; ++j) {
        Int t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  Rational det(Int(M[n - 1][n - 1] * sign), scale);
  det.canonicalize();
  return FieldElement(det);
}

FieldElement det_field(const std::vector<FieldElement>& a, long l, long m) {
  long n = m + 1;
  std::vector<std::vector<FieldElement>> M(n, std::vector<FieldElement>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) M[i][j] = a[l + i + j];
  FieldElement det(1L);
  int sign = 1;
  for (long k = 0; k < n; ++k) {
    long p = -1;
    for (long i = k; i < n; ++i)
      if (!M[i][k].is_zero()) { p = i; break; }
    if (p < 0) return FieldElement(0L);
    if (p != k) {
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    det *= M[k][k];
    FieldElement inv = M[k][k].inverse();
    for (long i = k + 1; i < n; ++i) {
      if (M[i][k].is_zero()) continue;
      FieldElement f = M[i][k] * inv;
      for (long j = k; j < n; ++j) M[i][j] -= f * M[k][j];
    }
  }
  return sign < 0 ? -det : det;
}

// Kernel vector of (a_{l+i+j}) as the coefficient vector q_0..q_m of Q.
// Columns are eliminated in reversed order, so the first free column yields
// the kernel vector of minimal Q-degree (most trailing zeros in q).
std::optional<std::vector<FieldElement>> hankel_kernel(const std::vector<FieldElement>& a, long l,
                                                       long m) {
  long n = m + 1;
  std::vector<std::vector<FieldElement>> M(n, std::vector<FieldElement>(n));
  for (long i = 0; i < n; ++i)
    for (long jc = 0; jc < n; ++jc) M[i][jc] = a[l + i + (m - jc)];
  std::vector<long> pivot_row(n, -1);
  long r = 0;
  for (long c = 0; c < n && r < n; ++c) {
    long p = -1;
    for (long i = r; i < n; ++i)
      if (!M[i][c].is_zero()) { p = i; break; }
    if (p < 0) continue;
    std::swap(M[r], M[p]);
    FieldElement inv = M[r][c].inverse();
    for (long j = c; j < n; ++j) M[r][j] *= inv;
    for (long i = 0; i < n; ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      FieldElement f = M[i][c];
      for (long j = c; j < n; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_row[c] = r;
    ++r;
  }
  if (r == n) return std::nullopt;
  long cf = 0;
  while (pivot_row[cf] >= 0) ++cf;
  std::vector<FieldElement> q(n, FieldElement(0L));
  q[cf] = FieldElement(1L);
  for (long c = 0; c < cf; ++c) q[c] = -M[pivot_row[c]][cf];
  long t0 = 0;
  while (q[t0].is_zero()) ++t0;
  FieldElement inv = q[t0].inverse();
  for (auto& x : q) x *= inv;
  return q;
}

FieldElement window_dot(const std::vector<FieldElement>& q, const std::vector<FieldElement>& a,
                        long n) {
  FieldElement s(0L);
  long top = std::min<long>((long)q.size() - 1, n);
  for (long t = 0; t <= top; ++t) s += q[t] * a[n - t];
  return s;
}

}  // namespace

FieldElement hankel_det_window(const std::vector<FieldElement>& a, long l, long m) {
  check_window(a, l, m);
  if (all_rational(a, l, m)) return det_bareiss(a, l, m);
  return det_field(a, l, m);
}

FieldElement hankel_det_window_field(const std::vector<FieldElement>& a, long l, long m) {
  check_window(a, l, m);
  return det_field(a, l, m);
}

FieldElement hankel_det(SeriesHandle& s, long l, long m) {
  if (l < 0 || m < 0) throw PreconditionFailed("hankel block needs l >= 0 and m >= 0");
  return hankel_det_window(s.coefficients(l + 2 * m), l, m);
}

HankelScan hankel_scan(SeriesHandle& s, long n_max) {
  if (n_max < 0) throw PreconditionFailed("hankel scan needs n_max >= 0");
  auto a = s.coefficients(2 * n_max);
  HankelScan out;
  out.reserve(n_max + 1);
  for (long n = 0; n <= n_max; ++n) {
    HankelEntry e;
    e.n = n;
    e.delta = hankel_det_window(a, 0, n);
    e.is_zero = e.delta.is_zero();
    if (!e.is_zero) {
      if (e.delta.is_rational()) {
        e.log_abs = Real::log_abs_q(e.delta.rational(), MPFR_RNDN);
      } else {
        Real mid = Real::mul(Real::add(e.delta.abs_lower(), e.delta.abs_upper(), MPFR_RNDN),
                             Real(0.5), MPFR_RNDN);
        e.log_abs = Real::log(mid, MPFR_RNDN);
      }
    }
    out.push_back(e);
  }
  return out;
}

std::optional<std::pair<Poly, Poly>> kernel_approximant_window(const std::vector<FieldElement>& a,
                                                               long l, long m) {
  check_window(a, l, m);
  auto q = hankel_kernel(a, l, m);
  if (!q) return std::nullopt;
  Poly Q(*q);
  std::vector<FieldElement> pc;
  pc.reserve(l + m);
  for (long n = 0; n < l + m; ++n) pc.push_back(window_dot(*q, a, n));
  Poly P(std::move(pc));
  for (long n = l + m; n <= l + 2 * m; ++n)
    if (!window_dot(*q, a, n).is_zero())
      throw PreconditionFailed("kernel vector fails the approximation order contract");
  return std::make_pair(P, Q);
}

std::optional<std::pair<Poly, Poly>> kernel_approximant(SeriesHandle& s, long l, long m) {
  if (l < 0 || m < 0) throw PreconditionFailed("hankel block needs l >= 0 and m >= 0");
  return kernel_approximant_window(s.coefficients(l + 2 * m), l, m);
}

std::pair<Poly, Poly> pade_from_vanishing_run(SeriesHandle& s, long m, long d) {
  if (m < 0 || d < 0) throw PreconditionFailed("vanishing run needs m >= 0 and d >= 0");
  auto a = s.coefficients(2 * (m + d));
  std::vector<std::pair<Poly, Poly>> pairs;
  pairs.reserve(d + 1);
  for (long i = 0; i <= d; ++i) {
    auto pq = kernel_approximant_window(a, 0, m + i);
    if (!pq)
      throw PreconditionFailed("hankel determinant nonzero inside the claimed vanishing run");
    pairs.push_back(std::move(*pq));
  }
  for (long i = 0; i < d; ++i)
    if (pairs[i].first * pairs[i + 1].second != pairs[i + 1].first * pairs[i].second)
      throw PreconditionFailed("telescoping identity fails across the vanishing run");
  RatFunc r(pairs[0].first, pairs[0].second);
  const Poly& N = r.num();
  const Poly& D = r.den();
  if (D.coef(0) != FieldElement(1L))
    throw PreconditionFailed("reconstructed denominator vanishes at the origin");
  if (N.deg() > m - 1 || D.deg() > m)
    throw PreconditionFailed("reconstructed pair exceeds the degree bounds");
  for (long n = 0; n <= m + d; ++n) {
    FieldElement v = window_dot(D.coeffs(), a, n) - N.coef(n);
    if (!v.is_zero()) throw PreconditionFailed("reconstructed pair fails the agreement order");
  }
  return {N, D};
}

std::optional<RatFunc> kronecker_guess(SeriesHandle& s, long n_max, long window) {
  if (window < 2) throw PreconditionFailed("kronecker window must be at least 2");
  if (n_max < 0) throw PreconditionFailed("kronecker scan needs n_max >= 0");
  if (n_max + 1 < window) return std::nullopt;
  auto a = s.coefficients(2 * n_max);
  long m = -1;
  long run = 0;
  for (long n = 0; n <= n_max; ++n) {
    if (hankel_det_window(a, 0, n).is_zero()) {
      if (++run == window) { m = n - window + 1; break; }
    } else {
      run = 0;
    }
  }
  if (m < 0) return std::nullopt;
  Poly P, Q;
  std::tie(P, Q) = pade_from_vanishing_run(s, m, window - 1);
  long used = 2 * (m + window - 1);
  long horizon = std::max(used + window, s.cached_count() - 1);
  auto av = s.coefficients(horizon);
  // Expand P/Q by the Q-recurrence (Q(0) = 1) and compare term by term.
  std::vector<FieldElement> b(horizon + 1);
  for (long n = 0; n <= horizon; ++n) {
    FieldElement v = P.coef(n);
    for (long k = 1; k <= std::min<long>(Q.deg(), n); ++k) v -= Q.coef(k) * b[n - k];
    b[n] = v;
    if (b[n] != av[n]) return std::nullopt;
  }
  return RatFunc(P, Q);
}

}  // namespace dfh
