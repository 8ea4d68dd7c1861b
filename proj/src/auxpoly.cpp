#include "dfh/auxpoly.hpp"

#include <algorithm>
#include <sstream>

#include "dfh/errors.hpp"

namespace dfh {
namespace {

using IVec = std::vector<Int>;

// Nearest integer to q, halves rounded down.
Int nearest(const Rational& q) {
  Rational t = q + Rational(1, 2);
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  if (Rational(out) == t) out -= 1;
  return out;
}

// Basis of {x in Z^N : A x = 0} via column elimination with unimodular
// tracking.  Deterministic: first nonzero column becomes the pivot, pairs are
// merged by extended gcd.
std::vector<IVec> integer_kernel(std::vector<IVec> A, long N) {
  long rows = (long)A.size();
  std::vector<IVec> U(N, IVec(N, 0));
  for (long i = 0; i < N; ++i) U[i][i] = 1;  // U[i] is column i
  auto colswap = [&](long i, long j) {
    for (long r = 0; r < rows; ++r) std::swap(A[r][i], A[r][j]);
    std::swap(U[i], U[j]);
  };
  long p = 0;
  for (long r = 0; r < rows && p < N; ++r) {
    long j0 = -1;
    for (long j = p; j < N; ++j)
      if (A[r][j] != 0) { j0 = j; break; }
    if (j0 < 0) continue;
    if (j0 != p) colswap(p, j0);
    for (long j = p + 1; j < N; ++j) {
      if (A[r][j] == 0) continue;
      Int g, u, v;
      mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), A[r][p].get_mpz_t(),
                 A[r][j].get_mpz_t());
      Int a = A[r][p] / g, b = A[r][j] / g;
      for (long rr = 0; rr < rows; ++rr) {
        Int np = u * A[rr][p] + v * A[rr][j];
        Int nj = a * A[rr][j] - b * A[rr][p];
        A[rr][p] = np;
        A[rr][j] = nj;
      }
      for (long k = 0; k < N; ++k) {
        Int np = u * U[p][k] + v * U[j][k];
        Int nj = a * U[j][k] - b * U[p][k];
        U[p][k] = np;
        U[j][k] = nj;
      }
    }
    if (A[r][p] < 0) {
      for (long rr = 0; rr < rows; ++rr) A[rr][p] = -A[rr][p];
      for (long k = 0; k < N; ++k) U[p][k] = -U[p][k];
    }
    ++p;
  }
  std::vector<IVec> kernel;
  for (long j = p; j < N; ++j) kernel.push_back(U[j]);
  return kernel;
}

// Exact LLL, delta = 3/4, Gram-Schmidt recomputed over Q after each change.
void lll_reduce(std::vector<IVec>& b) {
  size_t n = b.size();
  if (n < 2) return;
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, 0));
  std::vector<Rational> B(n, 0);
  auto gram = [&]() {
    std::vector<std::vector<Rational>> star(n, std::vector<Rational>(b[0].size(), 0));
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < b[i].size(); ++k) star[i][k] = Rational(b[i][k]);
      for (size_t j = 0; j < i; ++j) {
        Rational num = 0;
        for (size_t k = 0; k < b[i].size(); ++k) num += Rational(b[i][k]) * star[j][k];
        mu[i][j] = num / B[j];
        for (size_t k = 0; k < b[i].size(); ++k) star[i][k] -= mu[i][j] * star[j][k];
      }
      B[i] = 0;
      for (size_t k = 0; k < b[i].size(); ++k) B[i] += star[i][k] * star[i][k];
    }
  };
  gram();
  size_t k = 1;
  while (k < n) {
    for (size_t j = k; j-- > 0;) {
      if (2 * abs(mu[k][j].get_num()) > mu[k][j].get_den()) {
        Int r = nearest(mu[k][j]);
        for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[j][t];
        gram();
      }
    }
    Rational lhs = B[k];
    Rational rhs = (Rational(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram();
      k = k > 1 ? k - 1 : 1;
    }
  }
}

Int max_norm(const IVec& v) {
  Int m = 0;
  for (const Int& x : v) {
    Int a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

long trailing_zeros(const IVec& v) {
  long t = 0;
  for (size_t i = v.size(); i-- > 0 && v[i] == 0;) ++t;
  return t;
}

IVec sign_normalized(IVec v) {
  for (const Int& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    break;
  }
  return v;
}

bool lex_less(const IVec& a, const IVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

// (max-norm, most trailing zeros, lex) preference on sign-normalized vectors.
bool better(const IVec& a, const IVec& b) {
  Int na = max_norm(a), nb = max_norm(b);
  if (na != nb) return na < nb;
  long ta = trailing_zeros(a), tb = trailing_zeros(b);
  if (ta != tb) return ta > tb;
  return lex_less(a, b);
}

Int binom_int(const Int& m, unsigned long i) {
  Int num = 1;
  for (unsigned long t = 0; t < i; ++t) num *= m - (long)t;
  Int fact;
  mpz_fac_ui(fact.get_mpz_t(), i);
  Int out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
  return out;
}

}  // namespace

std::string BinomialPoly::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i].get_str();
  }
  return os.str();
}

BinomialPoly BinomialPoly::parse(const std::string& text) {
  BinomialPoly out;
  std::string tok;
  std::istringstream is(text);
  bool any = false;
  while (std::getline(is, tok, ',')) {
    size_t a = tok.find_first_not_of(" \t");
    size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) throw SchemaError("empty entry in binomial coefficient list");
    tok = tok.substr(a, b - a + 1);
    Int v;
    if (mpz_set_str(v.get_mpz_t(), tok.c_str(), 10) != 0)
      throw SchemaError("bad integer '" + tok + "' in binomial coefficient list");
    out.c.push_back(v);
    any = true;
  }
  if (!any) throw SchemaError("empty binomial coefficient list");
  bool nonzero = false;
  for (const Int& v : out.c)
    if (v != 0) nonzero = true;
  if (!nonzero) throw SchemaError("binomial polynomial must not be identically zero");
  return out;
}

Int eval_binomial_poly(const BinomialPoly& P, const Int& m) {
  Int s = 0;
  for (size_t i = 0; i < P.c.size(); ++i)
    if (P.c[i] != 0) s += P.c[i] * binom_int(m, i);
  return s;
}

Poly binomial_to_poly(const BinomialPoly& P) {
  Poly out;
  Poly ff = Poly::one();
  Int fact = 1;
  for (size_t i = 0; i < P.c.size(); ++i) {
    if (i > 0) {
      ff = ff * Poly({-(long)(i - 1), 1});
      fact *= (long)i;
    }
    if (P.c[i] != 0) {
      Rational r(P.c[i], fact);
      r.canonicalize();
      out = out + ff.scaled(FieldElement(r));
    }
  }
  return out;
}

BinomialPoly siegel_vanishing_poly(const std::vector<long>& indices, long n) {
  long L = (long)indices.size();
  if (L == 0) throw PreconditionFailed("siegel construction needs a nonempty index set");
  if (n <= 4 * L) throw PreconditionFailed("siegel construction needs n > 4L");
  for (long r = 0; r < L; ++r) {
    if (indices[r] < 1) throw PreconditionFailed("siegel indices must be >= 1");
    if (indices[r] > n) throw PreconditionFailed("siegel indices must be <= n");
    if (r > 0 && indices[r] <= indices[r - 1])
      throw PreconditionFailed("siegel indices must be strictly increasing");
  }
  long N = 2 * L + 1;
  std::vector<IVec> A(L, IVec(N));
  for (long r = 0; r < L; ++r)
    for (long i = 0; i < N; ++i) A[r][i] = binom_int(Int(indices[r]), i);
  auto kernel = integer_kernel(std::move(A), N);
  if (kernel.empty()) throw PreconditionFailed("binomial constraint matrix has full column rank");
  lll_reduce(kernel);

  Int bound;
  mpz_bin_uiui(bound.get_mpz_t(), n, 2 * L);
  bound *= n;

  long rank = (long)kernel.size();
  for (long R = 1; R <= 64; R *= 2) {
    IVec best;
    double combos = 1;
    for (long i = 0; i < rank; ++i) combos *= 2 * R + 1;
    if (combos <= 300000) {
      std::vector<long> x(rank, -R);
      while (true) {
        IVec v(N, 0);
        bool zero = true;
        for (long i = 0; i < rank; ++i) {
          if (x[i] == 0) continue;
          for (long t = 0; t < N; ++t) v[t] += x[i] * kernel[i][t];
        }
        for (const Int& t : v)
          if (t != 0) zero = false;
        if (!zero) {
          v = sign_normalized(std::move(v));
          if (best.empty() || better(v, best)) best = v;
        }
        long i = 0;
        while (i < rank && x[i] == R) x[i++] = -R;
        if (i == rank) break;
        ++x[i];
      }
    } else {
      // Rank too large for a box scan: basis vectors and pairwise sums.
      std::vector<IVec> pool;
      for (auto& v : kernel) pool.push_back(v);
      for (long i = 0; i < rank; ++i)
        for (long j = i + 1; j < rank; ++j) {
          IVec s(N), d(N);
          for (long t = 0; t < N; ++t) {
            s[t] = kernel[i][t] + kernel[j][t];
            d[t] = kernel[i][t] - kernel[j][t];
          }
          pool.push_back(s);
          pool.push_back(d);
        }
      for (auto& v : pool) {
        bool zero = true;
        for (const Int& t : v)
          if (t != 0) zero = false;
        if (zero) continue;
        IVec w = sign_normalized(v);
        if (best.empty() || better(w, best)) best = w;
      }
    }
    if (!best.empty() && max_norm(best) < bound) {
      BinomialPoly out;
      out.c = std::move(best);
      return out;
    }
  }
  throw PreconditionFailed("no kernel vector inside the siegel bound");
}

SeriesPtr twist_series(SeriesPtr s, const BinomialPoly& bp) {
  bool nonzero = false;
  for (const Int& v : bp.c)
    if (v != 0) nonzero = true;
  if (!nonzero) throw PreconditionFailed("twist polynomial must not be identically zero");
  std::string nm = s->name() + ":twist";
  if (!s->has_recurrence()) {
    std::vector<Poly> PL;
    Int fact = 1;
    for (size_t j = 0; j < bp.c.size(); ++j) {
      if (j > 0) fact *= (long)j;
      Rational r(bp.c[j], fact);
      r.canonicalize();
      PL.push_back(Poly::monomial(FieldElement(r), j));
    }
    return SeriesHandle::derived(std::move(s), std::move(PL), nm);
  }
  Poly Pm = binomial_to_poly(bp);
  const PRecurrence& rec = s->recurrence();
  long q = rec.order();
  std::vector<Poly> shifted(q + 1);
  for (long k = 0; k <= q; ++k) shifted[k] = Pm.compose_shift(k);
  PRecurrence t;
  t.B.resize(q + 1);
  for (long j = 0; j <= q; ++j) {
    Poly prod = rec.B[j];
    for (long k = 0; k <= q; ++k)
      if (k != j) prod = prod * shifted[k];
    t.B[j] = prod;
  }
  t.start = rec.start;
  t.recompute_singular();
  long need = t.required_initial();
  std::vector<FieldElement> init;
  if (need > 0) {
    auto pref = s->coefficients(need - 1);
    for (long m = 0; m < need; ++m)
      init.push_back(FieldElement(Rational(eval_binomial_poly(bp, Int(m)))) * pref[m]);
  }
  return SeriesHandle::make(std::move(t), std::move(init), nm);
}

}  // namespace dfh
