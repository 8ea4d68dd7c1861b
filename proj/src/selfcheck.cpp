#include "dfh/selfcheck.hpp"

#include <random>

#include "dfh/auxpoly.hpp"
#include "dfh/errors.hpp"
#include "dfh/ode.hpp"

namespace dfh {

namespace {

SeriesPtr exp_series() {
  return SeriesHandle::make(ode_to_recurrence(DiffOperator({Poly({1}), Poly({-1})})),
                            {FieldElement(1L)}, "exp");
}

Poly random_poly(std::mt19937_64& rng, long max_deg, bool nonzero) {
  std::uniform_int_distribution<long> deg(0, max_deg);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (;;) {
    std::vector<FieldElement> c((size_t)deg(rng) + 1);
    for (auto& x : c) x = FieldElement(coef(rng));
    Poly p{std::move(c)};
    if (!nonzero || !p.is_zero()) return p;
  }
}

bool check_siegel(std::mt19937_64& rng, std::string& note) {
  std::uniform_int_distribution<long> Ld(1, 3);
  long L = Ld(rng);
  std::uniform_int_distribution<long> nd(4 * L + 1, 4 * L + 13);
  long n = nd(rng);
  std::vector<long> idx;
  std::uniform_int_distribution<long> pick(1, n);
  while ((long)idx.size() < L) {
    long v = pick(rng);
    bool dup = false;
    for (long u : idx) dup |= (u == v);
    if (!dup) idx.push_back(v);
  }
  std::sort(idx.begin(), idx.end());
  BinomialPoly P = siegel_vanishing_poly(idx, n);
  for (long m : idx)
    if (eval_binomial_poly(P, m) != 0) {
      note = "siegel vanishing failed at m=" + std::to_string(m);
      return false;
    }
  Int cap;
  mpz_bin_uiui(cap.get_mpz_t(), (unsigned long)n, (unsigned long)(2 * L));
  cap *= n;
  for (const Int& c : P.c)
    if (abs(c) >= cap) {
      note = "siegel coefficient bound violated";
      return false;
    }
  return true;
}

bool check_twist(std::mt19937_64& rng, std::string& note) {
  std::uniform_int_distribution<long> len(1, 4);
  std::uniform_int_distribution<long> coef(-3, 3);
  BinomialPoly P;
  do {
    P.c.assign((size_t)len(rng), Int(0));
    for (auto& c : P.c) c = coef(rng);
  } while (std::all_of(P.c.begin(), P.c.end(), [](const Int& c) { return c == 0; }));

  auto f = exp_series();
  auto t = twist_series(f, P);

  std::vector<Poly> dform;
  Rational fac = 1;
  for (size_t j = 0; j < P.c.size(); ++j) {
    if (j) fac *= (long)j;
    dform.push_back(Poly::monomial(FieldElement(Rational(P.c[j]) / fac), j));
  }
  auto g = SeriesHandle::derived(f, dform, "dform");

  auto ta = t->coefficients(30);
  auto ga = g->coefficients(30);
  auto fa = f->coefficients(30);
  for (long n = 0; n <= 30; ++n) {
    FieldElement want = FieldElement(eval_binomial_poly(P, n)) * fa[(size_t)n];
    if (ta[(size_t)n] != want || ga[(size_t)n] != want) {
      note = "twist stream mismatch at n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

// true = ok, false = failure; skipped reported via the flag
bool check_basis_change(std::mt19937_64& rng, bool& skipped, std::string& note) {
  skipped = false;
  std::uniform_int_distribution<long> pd(1, 2);
  long p = pd(rng);
  std::vector<Poly> A;
  A.push_back(random_poly(rng, 2, true));
  for (long i = 0; i < p; ++i) A.push_back(random_poly(rng, 2, false));
  DiffOperator L(std::move(A));
  std::vector<Poly> P_list;
  bool all_zero = true;
  for (long i = 0; i < p; ++i) {
    P_list.push_back(random_poly(rng, 2, false));
    all_zero &= P_list.back().is_zero();
  }
  if (all_zero) P_list[0] = Poly::one();

  std::vector<std::vector<RatFunc>> C, B;
  try {
    basis_change_matrix(L, P_list, C, B);
  } catch (const SingularMatrix&) {
    skipped = true;
    return true;
  }
  for (long i = 0; i < p; ++i)
    for (long j = 0; j < p; ++j) {
      RatFunc sum;
      for (long k = 0; k < p; ++k) sum = sum + B[(size_t)i][(size_t)k] * C[(size_t)k][(size_t)j];
      RatFunc want = (i == j) ? RatFunc(Poly::one()) : RatFunc();
      if (sum != want) {
        note = "B*C is not the identity";
        return false;
      }
    }
  return true;
}

}  // namespace

SelftestResult selfcheck_random_properties(unsigned long seed, long count) {
  if (count < 1) throw PreconditionFailed("selfcheck needs count >= 1");
  SelftestResult r;
  std::mt19937_64 rng(seed);
  std::string note;
  for (long i = 0; i < count; ++i) {
    ++r.instances;
    if (!check_siegel(rng, note)) {
      ++r.failures;
      r.notes.push_back("siegel: " + note);
    }
  }
  for (long i = 0; i < count; ++i) {
    ++r.instances;
    if (!check_twist(rng, note)) {
      ++r.failures;
      r.notes.push_back("twist: " + note);
    }
  }
  for (long i = 0; i < count; ++i) {
    ++r.instances;
    bool skipped = false;
    if (!check_basis_change(rng, skipped, note)) {
      ++r.failures;
      r.notes.push_back("basis_change: " + note);
    } else if (skipped) {
      ++r.skipped;
    }
  }
  return r;
}

}  // namespace dfh
