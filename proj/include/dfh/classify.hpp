#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfh/auxpoly.hpp"
#include "dfh/growth.hpp"
#include "dfh/ode.hpp"
#include "dfh/poly.hpp"

namespace dfh {

enum class GrowthTag { Constant, LogN, Linear, NLogN, Unknown };
std::string growth_tag_name(GrowthTag tag);

// Fit diagnostics for one candidate class: estimated upper density of the
// conforming window indices and the median height ratio over them.
struct ClassEvidence {
  GrowthTag tag = GrowthTag::Unknown;
  Rational density = 0;
  double median = 0.0;
  bool pass = false;
};

struct ClassifyConfig {
  double band_lo = 0.1;
  double band_hi = 10.0;
  Rational density_floor = Rational(1, 10);
  double median_floor = 0.2;
};

struct GrowthClass {
  GrowthTag tag = GrowthTag::Unknown;
  std::vector<ClassEvidence> evidence;  // Constant, LogN, Linear, NLogN
};

// Ratio fit of h(a_n) against {1, log n, n, n log n} over the window
// [N/2, N]; the largest class whose conforming set keeps estimated upper
// density >= density_floor (and median ratio >= median_floor for the
// unbounded classes) wins; Unknown iff none pass.
GrowthClass growth_classify(SeriesHandle& s, long N, const ClassifyConfig& cfg = {});

// a_{sn+i} = Q_i(n) on the cached tail, one rational section per residue.
struct Quasipolynomial {
  long s = 0;
  std::vector<RatFunc> Q;
};

// Smallest modulus s <= s_max for which every residue section interpolates
// as a polynomial of degree <= deg_max or as a rational function with
// numerator and denominator degrees <= deg_max, validated exactly on every
// cached tail term beyond the fit window.
std::optional<Quasipolynomial> quasipolynomial_detect(SeriesHandle& s, long N, long s_max = 6,
                                                      long deg_max = 8);

// Tail generating function sum_i z^i sum_n Q_i(n) z^{sn} when every section
// is a polynomial; empty otherwise.
std::optional<RatFunc> quasipolynomial_to_ratfunc(const Quasipolynomial& qp);

enum class PoleVerdictKind { AllRootsOfUnity, HasOtherPole, Undetermined };

struct PoleVerdict {
  PoleVerdictKind kind = PoleVerdictKind::Undetermined;
  long M = 0;  // den | (1 - z^M)^N, smallest such M
  long N = 0;  // max pole multiplicity
};

PoleVerdict root_of_unity_poles(const RatFunc& R, long M_max = 64);

// Unique s = a/b with |a| <= 4, b <= denom_bound for which every windowed
// n-th root of |a_n| (n!)^s over [N/2, N] stays inside [0.2, 5]; empty when
// none or several pass, or the window has fewer than 8 nonzero terms.
std::optional<Rational> gevrey_estimate(SeriesHandle& s, long N, long denom_bound = 1);

struct BoundaryEvidence {
  double gap_score = 0.0;       // max relative gap between support points
  bool decay_fit_failed = false;
  bool fires = false;
};

struct LcmEvidence {
  double rate_full = 0.0;      // log lcm(den) / N, no exclusions
  double rate_excluded = 0.0;  // same with the dyadic sieve set removed
  bool strong = false;
};

struct ApproxEvidence {
  bool run_found = false;
  bool met_threshold = false;
  long ladder_n = 0;
  long achieved_order = 0;
  long threshold = 0;
  BinomialPoly P;
  RatFunc uv;
};

struct TrichotomyReport {
  BoundaryEvidence boundary;
  LcmEvidence lcm;
  ApproxEvidence approx;
};

// Three-branch evidence report: support-gap heuristic, lcm growth with and
// without sparse exclusions, and twisted Hankel vanishing-run search over a
// geometric ladder n in {16, 32, ...} with scan dimension capped at max_dim.
TrichotomyReport trichotomy_report(const SeriesPtr& s, long N, long C, long max_dim = 48);

// Mutually exclusive growth dichotomy evidence at one horizon: height or
// denominator comparable to n on a dense window set, or a quasipolynomial
// tail whose poles are all roots of unity.
struct BranchEvidence {
  bool h_linear = false;
  bool den_linear = false;
  bool quasipolynomial = false;
  Rational h_density = 0;
  Rational den_density = 0;
};

BranchEvidence branch_evidence(SeriesHandle& s, long N);

}  // namespace dfh
