#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dfh/height.hpp"
#include "dfh/ode.hpp"
#include "dfh/real.hpp"

namespace dfh {

// Membership bitmask over [0, N]. Densities always count from index 1.
struct IndexSet {
  long N = 0;
  std::vector<bool> member;

  IndexSet() : member(1, false) {}
  explicit IndexSet(long horizon) : N(horizon), member(horizon + 1, false) {}

  bool contains(long i) const { return i >= 0 && i <= N && member[i]; }
  long count() const;  // |S cap [1, N]|
};

// Finite-horizon limsup estimator: max of |S cap [1,n]|/n over the top half
// of the horizon. The bottom-half max is kept so a falling trend is visible;
// neither value certifies anything about the true limsup.
struct DensityEstimate {
  Rational top_half_max = 0;
  Rational bottom_half_max = 0;
  bool trend_down = false;
};

DensityEstimate upper_density(const IndexSet& S);

// Per-index heights and denominators with the running lcm of the included
// denominators. The lcm is held as a prime -> max exponent map; log_lcm[n]
// is the exact-sum log of that map after index n. With with_lcm = false the
// lcm fields stay empty (factorial-sized denominators make the factor map
// far more expensive than the heights).
struct GrowthProfile {
  long N = 0;
  std::vector<HeightValue> h;
  std::vector<Int> den;
  std::vector<Real> log_lcm;
  std::optional<IndexSet> mask;
  std::map<Int, unsigned long> lcm_factors;

  Int lcm_int() const;
};

GrowthProfile growth_profile(SeriesHandle& s, long N,
                             const std::optional<IndexSet>& exclude = std::nullopt,
                             bool with_lcm = true);

struct KappaCheck {
  IndexSet set;  // {n <= N : den(a_n) >= kappa * n}
  DensityEstimate density;
  Rational floor = 0;
  bool pass = false;
};

KappaCheck kappa_density_check(const GrowthProfile& profile, const Rational& kappa,
                               const Rational& floor = Rational(1, 20));

// Closed registry of admissible rate functions: increasing and unbounded.
enum class AlphaKind { Log, LogLog, Pow01, Pow025 };

AlphaKind alpha_by_name(const std::string& name);  // log, loglog, pow01, pow025
std::string alpha_name(AlphaKind kind);
Real alpha_eval(AlphaKind kind, long n);

struct CounterexampleCheckpoint {
  long n = 0;            // a power of two
  Rational density = 0;  // |S cap [1,n]| / n
  Real log_lcm_out;      // log lcm{i <= n : i not in S}
};

struct CounterexampleResult {
  IndexSet S;
  std::vector<Real> c;  // c_1..c_K
  std::vector<CounterexampleCheckpoint> checkpoints;
};

// Dyadic sieve: c_1 = min{1, alpha(1)}, c_k = min{1.9 c_{k-1}, k, alpha(2^{k-1})},
// and S collects the n in (2^{k-1}, 2^k] divisible by a prime in (2^k/c_k, 2^k].
CounterexampleResult counterexample_set(long N, AlphaKind alpha);

// The threshold recurrence alone, for auditing degenerate rate functions.
std::vector<Real> counterexample_thresholds(long k_max,
                                            const std::function<Real(long)>& alpha);

}  // namespace dfh
