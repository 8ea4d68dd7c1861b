#include "dfh/ode.hpp"

#include <algorithm>
#include <climits>
#include <map>

#include "dfh/errors.hpp"

namespace dfh {

DiffOperator::DiffOperator(std::vector<Poly> A) : A_(std::move(A)) {
  if (A_.empty() || A_[0].is_zero())
    throw PreconditionFailed("differential operator requires A_0 != 0");
  delta_ = 0;
  for (const auto& a : A_) delta_ = std::max(delta_, a.deg());
}

RatFunc DiffOperator::apply(const RatFunc& r) const {
  long order = p();
  std::vector<RatFunc> der(order + 1);
  der[0] = r;
  for (long k = 1; k <= order; ++k) der[k] = der[k - 1].derivative();
  RatFunc acc;
  for (long i = 0; i <= order; ++i) {
    if (A_[i].is_zero()) continue;
    acc = acc + RatFunc(A_[i]) * der[order - i];
  }
  return acc;
}

PRecurrence ode_to_recurrence(const DiffOperator& L) {
  long p = L.p();
  std::map<long, Poly> C;
  long smin = LONG_MAX, smax = LONG_MIN;
  for (long i = 0; i <= p; ++i) {
    const Poly& Ai = L.A(i);
    long j = p - i;
    for (long k = 0; k <= Ai.deg(); ++k) {
      FieldElement c = Ai.coef(k);
      if (c.is_zero()) continue;
      long s = j - k;
      smin = std::min(smin, s);
      smax = std::max(smax, s);
      Poly prod = Poly::one();
      for (long t = 1; t <= j; ++t)
        prod = prod * Poly(std::vector<FieldElement>{FieldElement(t - k), FieldElement(1L)});
      auto it = C.find(s);
      if (it == C.end())
        C.emplace(s, prod.scaled(c));
      else
        it->second = it->second + prod.scaled(c);
    }
  }
  std::vector<Poly> B;
  for (long s = smin; s <= smax; ++s) {
    auto it = C.find(s);
    B.push_back(it == C.end() ? Poly() : it->second.compose_shift(-smin));
  }
  long start = std::max(0L, smin);
  while (!B.empty() && B.back().is_zero()) B.pop_back();
  while (!B.empty() && B.front().is_zero()) {
    B.erase(B.begin());
    for (auto& b : B) b = b.compose_shift(-1);
    start += 1;
  }
  if (B.empty()) throw PreconditionFailed("operator translates to the zero recurrence");
  PRecurrence rec;
  rec.B = std::move(B);
  rec.start = start;
  rec.recompute_singular();
  return rec;
}

void PRecurrence::recompute_singular() {
  singular_indices = B.back().nonneg_integer_roots();
}

long PRecurrence::required_initial() const {
  long q = order();
  long need = std::max(q, start + q);
  for (long r : singular_indices) need = std::max(need, r + q + 1);
  return need;
}

PRecurrence PRecurrence::simplified() const {
  std::vector<Poly> nb = B;
  Poly g;
  for (const auto& b : nb)
    if (!b.is_zero()) g = g.is_zero() ? b : Poly::gcd(g, b);
  long ns = start;
  if (g.deg() >= 1) {
    for (auto& b : nb) {
      if (b.is_zero()) continue;
      Poly q, r;
      Poly::divmod(b, g, q, r);
      b = q;
    }
    for (long r : g.nonneg_integer_roots()) ns = std::max(ns, r + 1);
  }
  // Scale to primitive integer coefficients with positive leading term when
  // everything is rational.
  bool rational = true;
  for (const auto& b : nb)
    for (const auto& c : b.coeffs())
      if (!c.is_rational()) rational = false;
  if (rational) {
    Int L = 1, G = 0;
    for (const auto& b : nb)
      for (const auto& c : b.coeffs()) {
        if (c.is_zero()) continue;
        L = lcm(L, c.rational().get_den());
        G = gcd(G, c.rational().get_num());
      }
    if (G == 0) G = 1;
    G = abs(G);
    Rational scale(L, G);
    scale.canonicalize();
    FieldElement sc(scale);
    if (nb.back().leading().rational() < 0) sc = -sc;
    for (auto& b : nb) b = b.scaled(sc);
  }
  PRecurrence out;
  out.B = std::move(nb);
  out.start = ns;
  out.recompute_singular();
  return out;
}

bool verify_annihilation(SeriesHandle& s, const DiffOperator& L, long N) {
  long p = L.p();
  if (N < p + L.delta())
    throw PreconditionFailed("verify_annihilation needs N >= p + delta");
  auto a = s.coefficients(N + p);
  std::vector<FieldElement> acc((size_t)N + 1, FieldElement());
  for (long i = 0; i <= p; ++i) {
    const Poly& Ai = L.A(i);
    long j = p - i;
    for (long k = 0; k <= Ai.deg(); ++k) {
      FieldElement c = Ai.coef(k);
      if (c.is_zero()) continue;
      for (long n = k; n <= N; ++n) {
        FieldElement fac(1L);
        for (long t = 1; t <= j; ++t) fac *= FieldElement(n - k + t);
        acc[n] += c * fac * a[n - k + j];
      }
    }
  }
  for (const auto& v : acc)
    if (!v.is_zero()) return false;
  return true;
}

namespace {

std::vector<RatFunc> reduction_base(const DiffOperator& L) {
  long p = L.p();
  RatFunc A0(L.A(0));
  std::vector<RatFunc> base(p);
  for (long i = 0; i < p; ++i) base[i] = -(RatFunc(L.A(p - i)) / A0);
  return base;
}

std::vector<RatFunc> advance_row(const std::vector<RatFunc>& cur,
                                 const std::vector<RatFunc>& base) {
  long p = (long)base.size();
  std::vector<RatFunc> nxt(p);
  const RatFunc& top = cur[p - 1];
  for (long i = 0; i < p; ++i) {
    nxt[i] = cur[i].derivative() + top * base[i];
    if (i > 0) nxt[i] = nxt[i] + cur[i - 1];
  }
  return nxt;
}

}  // namespace

std::vector<RatFunc> reduce_derivative(const DiffOperator& L, long j) {
  long p = L.p();
  if (p == 0)
    throw PreconditionFailed("order-zero operator has no derivative reduction");
  std::vector<RatFunc> base = reduction_base(L);
  std::vector<RatFunc> cur = base;
  for (long step = 0; step < j; ++step) cur = advance_row(cur, base);
  RatFunc a0p(Poly::one());
  RatFunc A0(L.A(0));
  for (long t = 0; t <= j; ++t) a0p = a0p * A0;
  long bound = L.delta() * (j + 1);
  for (const auto& r : cur) {
    RatFunc e = r * a0p;
    if (!e.is_polynomial() || e.num().deg() > bound)
      throw PreconditionFailed("derivative reduction degree bound violated");
  }
  return cur;
}

void basis_change_matrix(const DiffOperator& L, const std::vector<Poly>& P_list,
                         std::vector<std::vector<RatFunc>>& C,
                         std::vector<std::vector<RatFunc>>& Bout) {
  long p = L.p();
  if (p == 0) throw PreconditionFailed("basis change requires operator order >= 1");
  std::vector<RatFunc> base = reduction_base(L);
  std::vector<RatFunc> row(p);
  for (size_t i = 0; i < P_list.size(); ++i) {
    if (P_list[i].is_zero()) continue;
    if ((long)i < p) {
      row[i] = row[i] + RatFunc(P_list[i]);
    } else {
      auto red = reduce_derivative(L, (long)i - p);
      for (long t = 0; t < p; ++t) row[t] = row[t] + RatFunc(P_list[i]) * red[t];
    }
  }
  C.assign((size_t)p, {});
  C[0] = row;
  for (long r = 1; r < p; ++r) C[r] = advance_row(C[r - 1], base);

  // Gauss-Jordan inversion over the rational function field.
  std::vector<std::vector<RatFunc>> M = C;
  Bout.assign((size_t)p, std::vector<RatFunc>((size_t)p));
  for (long i = 0; i < p; ++i) Bout[i][i] = RatFunc(Poly::one());
  for (long col = 0; col < p; ++col) {
    long piv = -1;
    for (long r = col; r < p; ++r)
      if (!M[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw SingularMatrix("twist matrix is singular");
    std::swap(M[col], M[piv]);
    std::swap(Bout[col], Bout[piv]);
    RatFunc inv = RatFunc(Poly::one()) / M[col][col];
    for (long c = 0; c < p; ++c) {
      M[col][c] = M[col][c] * inv;
      Bout[col][c] = Bout[col][c] * inv;
    }
    for (long r = 0; r < p; ++r) {
      if (r == col || M[r][col].is_zero()) continue;
      RatFunc f = M[r][col];
      for (long c = 0; c < p; ++c) {
        M[r][c] = M[r][c] - f * M[col][c];
        Bout[r][c] = Bout[r][c] - f * Bout[col][c];
      }
    }
  }

  long n = 1;
  for (const auto& P : P_list) n = std::max(n, P.deg());
  long bound = (2 * L.delta() + 1) * n * p;
  for (const auto& r : Bout)
    for (const auto& e : r)
      if (e.num().deg() > bound || e.den().deg() > bound)
        throw PreconditionFailed("basis change degree bound violated");
}

std::vector<long> exceptional_orders(const DiffOperator& L) {
  long p = L.p();
  long mu = LONG_MAX;
  for (long i = 0; i <= p; ++i)
    if (!L.A(i).is_zero()) mu = std::min(mu, i + L.A(i).ord());
  Poly chi;
  for (long i = 0; i <= p; ++i) {
    const Poly& Ai = L.A(i);
    if (Ai.is_zero() || i + Ai.ord() != mu) continue;
    FieldElement alpha = Ai.coef((size_t)Ai.ord());
    Poly ff = Poly::one();
    for (long t = 0; t < p - i; ++t)
      ff = ff * Poly(std::vector<FieldElement>{FieldElement(-t), FieldElement(1L)});
    chi = chi + ff.scaled(alpha);
  }
  auto T = chi.nonneg_integer_roots();
  if ((long)T.size() > p)
    throw PreconditionFailed("exceptional order count exceeds operator order");
  return T;
}

RationalApproxVerdict rational_approx_principle(const DiffOperator& L, const Poly& P,
                                                const Poly& Q, SeriesHandle& s,
                                                long cap) {
  if (Q.is_zero() || Q.coef(0).is_zero())
    throw ZeroAtOrigin("rational approximant requires Q(0) != 0");
  long ell = std::max(P.deg(), Q.deg());
  if (ell < 0) ell = 0;
  long p = L.p();
  long tau = (p + 2) * ell + L.delta() + p;
  auto T = exceptional_orders(L);
  if (cap <= 0) {
    // The default scan must reach past every exceptional order, or a finite
    // exceptional agreement could masquerade as infinite.
    cap = 4 * tau;
    for (long t : T) cap = std::max(cap, t + 1);
  }
  if (cap <= tau) cap = tau + 1;
  auto a = s.coefficients(cap);
  RationalApproxVerdict v;
  v.threshold = tau;
  v.cap = cap;
  for (long n = 0; n <= cap; ++n) {
    FieldElement c = P.coef((size_t)n);
    for (long k = 0; k <= std::min(Q.deg(), n); ++k) c -= Q.coef((size_t)k) * a[(size_t)(n - k)];
    if (!c.is_zero()) {
      v.m = n;
      break;
    }
  }
  v.m_infinite = (v.m < 0);
  if (!v.m_infinite && v.m <= tau) {
    v.kind = RationalApproxVerdict::Kind::Inconclusive;
    return v;
  }
  if (!L.apply(RatFunc(P, Q)).is_zero())
    throw PreconditionFailed(
        "coefficient agreement beyond threshold but L(P/Q) != 0; series does not solve L");
  if (!v.m_infinite && std::find(T.begin(), T.end(), v.m) != T.end())
    v.kind = RationalApproxVerdict::Kind::AnnihilatedButExceptional;
  else
    v.kind = RationalApproxVerdict::Kind::ForcedEqual;
  return v;
}

}  // namespace dfh
