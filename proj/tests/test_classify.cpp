#include <vector>

#include "doctest.h"
#include "dfh/classify.hpp"
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

// a_n = 1
SeriesPtr invgeom_series() {
  PRecurrence rec;
  rec.B = {P({-1}), P({1})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L)}, "invgeom");
}

// a_n = n
SeriesPtr nzn_series() {
  PRecurrence rec;
  rec.B = {P({-1, -1}), P({0, 1})};
  rec.start = 1;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(0L), FieldElement(1L)}, "nzn");
}

// a_n = 2^{-n}
SeriesPtr halfgeom_series() {
  PRecurrence rec;
  rec.B = {P({-1}), P({2})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L)}, "halfgeom");
}

// a_n = C(2n, n)
SeriesPtr catalanish_series() {
  PRecurrence rec;
  rec.B = {P({-2, -4}), P({1, 1})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L)}, "catalanish");
}

// 1/(1+z^2)
SeriesPtr altperiodic_series() {
  PRecurrence rec;
  rec.B = {P({1}), P({0}), P({1})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L), FieldElement(0L)}, "altperiodic");
}

// a_n = n!
SeriesPtr factish_series() {
  PRecurrence rec;
  rec.B = {P({1, 1}), P({-1})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L)}, "factish");
}

// a_0 = 0, a_n = i^n / n over Q(i)
SeriesPtr gauss_i_series() {
  FieldElement im = FieldElement::sqrt_of(-1);
  PRecurrence rec;
  rec.B = {Poly(std::vector<FieldElement>{FieldElement(0L), im}),
           Poly(std::vector<FieldElement>{FieldElement(-1L), FieldElement(-1L)})};
  rec.start = 1;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(0L), im}, "gauss_i");
}

// a_n = (2^150)^n, heights far above every class band at small horizons
SeriesPtr bigratio_series() {
  FieldElement r(Rational(Int(1) << 150));
  PRecurrence rec;
  rec.B = {Poly(std::vector<FieldElement>{-r}),
           Poly(std::vector<FieldElement>{FieldElement(1L)})};
  rec.start = 0;
  rec.recompute_singular();
  return SeriesHandle::make(rec, {FieldElement(1L)}, "bigratio");
}

// truncated lacunary: a_n = 1 iff n is a power of two <= T, zero past T
SeriesPtr lacunary_series(long T) {
  std::vector<FieldElement> init((size_t)T + 1, FieldElement(0L));
  for (long p = 1; p <= T; p *= 2) init[(size_t)p] = FieldElement(1L);
  PRecurrence rec;
  rec.B = {P({1})};
  rec.start = T + 1;
  rec.recompute_singular();
  return SeriesHandle::make(rec, std::move(init), "lacunary");
}

SeriesPtr scaled_by(SeriesPtr parent, const Rational& c, const char* name) {
  return SeriesHandle::derived(std::move(parent),
                               {Poly(std::vector<FieldElement>{FieldElement(c)})}, name);
}

const ClassEvidence& ev_of(const GrowthClass& gc, GrowthTag tag) {
  for (const auto& ev : gc.evidence)
    if (ev.tag == tag) return ev;
  REQUIRE(false);
  return gc.evidence.front();
}

}  // namespace

TEST_CASE("growth classifier pinned examples") {
  auto constant = growth_classify(*invgeom_series(), 128);
  CHECK(constant.tag == GrowthTag::Constant);
  CHECK(ev_of(constant, GrowthTag::Constant).density == rat(65, 128));
  CHECK(ev_of(constant, GrowthTag::LogN).density == 0);

  auto logn = growth_classify(*log1p_series(), 256);
  CHECK(logn.tag == GrowthTag::LogN);
  CHECK(ev_of(logn, GrowthTag::LogN).density == rat(129, 256));
  CHECK(ev_of(logn, GrowthTag::LogN).median == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ev_of(logn, GrowthTag::Constant).pass);  // bounded too, but LogN outranks
  CHECK_FALSE(ev_of(logn, GrowthTag::Linear).pass);

  CHECK(growth_classify(*nzn_series(), 256).tag == GrowthTag::LogN);
  CHECK(growth_classify(*gauss_i_series(), 256).tag == GrowthTag::LogN);

  auto lin = growth_classify(*geom2_series(), 256);
  CHECK(lin.tag == GrowthTag::Linear);
  CHECK(ev_of(lin, GrowthTag::Linear).median == doctest::Approx(0.693147).epsilon(1e-4));
  // n log n band holds but the median ratio collapses below the floor
  CHECK(ev_of(lin, GrowthTag::NLogN).density == rat(129, 256));
  CHECK(ev_of(lin, GrowthTag::NLogN).median == doctest::Approx(0.131840).epsilon(1e-4));
  CHECK_FALSE(ev_of(lin, GrowthTag::NLogN).pass);

  CHECK(growth_classify(*halfgeom_series(), 128).tag == GrowthTag::Linear);

  auto nlogn = growth_classify(*exp_series(), 256);
  CHECK(nlogn.tag == GrowthTag::NLogN);
  CHECK(ev_of(nlogn, GrowthTag::NLogN).median == doctest::Approx(0.813310).epsilon(1e-4));
  CHECK(ev_of(nlogn, GrowthTag::Linear).pass);  // in band, outranked
  CHECK(growth_classify(*factish_series(), 256).tag == GrowthTag::NLogN);

  auto cat = growth_classify(*catalanish_series(), 2048);
  CHECK(cat.tag == GrowthTag::Linear);
  CHECK(ev_of(cat, GrowthTag::Linear).median == doctest::Approx(1.383533).epsilon(1e-4));
  CHECK(ev_of(cat, GrowthTag::NLogN).median == doctest::Approx(0.188571).epsilon(1e-4));
  CHECK_FALSE(ev_of(cat, GrowthTag::NLogN).pass);

  CHECK(growth_classify(*altperiodic_series(), 128).tag == GrowthTag::Constant);

  auto unknown = growth_classify(*bigratio_series(), 64);
  CHECK(unknown.tag == GrowthTag::Unknown);
  for (const auto& ev : unknown.evidence) CHECK_FALSE(ev.pass);

  CHECK_THROWS_AS(growth_classify(*log1p_series(), 63), PreconditionFailed);
}

TEST_CASE("classifier tag is invariant under rational scaling") {
  Rational c = rat(3, 7);
  CHECK(growth_classify(*scaled_by(log1p_series(), c, "c*log1p"), 256).tag == GrowthTag::LogN);
  CHECK(growth_classify(*scaled_by(geom2_series(), c, "c*geom2"), 256).tag ==
        GrowthTag::Linear);
  CHECK(growth_classify(*scaled_by(exp_series(), c, "c*exp"), 256).tag == GrowthTag::NLogN);
}

TEST_CASE("quasipolynomial detection") {
  auto nzn = quasipolynomial_detect(*nzn_series(), 200);
  REQUIRE(nzn.has_value());
  CHECK(nzn->s == 1);
  CHECK(nzn->Q[0] == RatFunc(P({0, 1})));

  auto one = quasipolynomial_detect(*invgeom_series(), 200);
  REQUIRE(one.has_value());
  CHECK(one->s == 1);
  CHECK(one->Q[0] == RatFunc(P({1})));

  auto alt = quasipolynomial_detect(*altperiodic_series(), 400);
  REQUIRE(alt.has_value());
  CHECK(alt->s == 4);
  CHECK(alt->Q[0] == RatFunc(P({1})));
  CHECK(alt->Q[1] == RatFunc());
  CHECK(alt->Q[2] == RatFunc(P({-1})));
  CHECK(alt->Q[3] == RatFunc());

  // rational, non-polynomial sections: a_{2n} = -1/(2n), a_{2n+1} = 1/(2n+1)
  auto lg = log1p_series();
  auto qp = quasipolynomial_detect(*lg, 400);
  REQUIRE(qp.has_value());
  CHECK(qp->s == 2);
  CHECK(qp->Q[0] == RatFunc(Poly(std::vector<FieldElement>{FieldElement(rat(-1, 2))}),
                            P({0, 1})));
  CHECK(qp->Q[1] == RatFunc(P({1}), P({1, 2})));
  CHECK_FALSE(qp->Q[0].is_polynomial());
  // exact reproduction of the cached tail beyond the fit window
  auto coeffs = lg->coefficients(400);
  for (long k = 150; k <= 170; ++k) {
    CHECK(qp->Q[0].num().eval_int(k) ==
          coeffs[(size_t)(2 * k)] * qp->Q[0].den().eval_int(k));
    CHECK(qp->Q[1].num().eval_int(k) ==
          coeffs[(size_t)(2 * k + 1)] * qp->Q[1].den().eval_int(k));
  }

  // same shape over Q(i): a_{4n+r} = i^r / (4n+r)
  auto gi = gauss_i_series();
  auto gqp = quasipolynomial_detect(*gi, 800);
  REQUIRE(gqp.has_value());
  CHECK(gqp->s == 4);
  auto gco = gi->coefficients(800);
  for (long k = 120; k <= 130; ++k)
    for (long r = 0; r < 4; ++r)
      CHECK(gqp->Q[(size_t)r].num().eval_int(k) ==
            gco[(size_t)(4 * k + r)] * gqp->Q[(size_t)r].den().eval_int(k));
  CHECK_FALSE(gqp->Q[1].num().coef(0).is_rational());

  // exponential-scale sections admit no bounded-degree rational law
  CHECK_FALSE(quasipolynomial_detect(*geom2_series(), 400).has_value());
  CHECK_FALSE(quasipolynomial_detect(*exp_series(), 400).has_value());
  CHECK_FALSE(quasipolynomial_detect(*halfgeom_series(), 400).has_value());
}

TEST_CASE("quasipolynomial generating functions and pole verdicts") {
  auto nzn = quasipolynomial_detect(*nzn_series(), 200);
  REQUIRE(nzn.has_value());
  auto rf = quasipolynomial_to_ratfunc(*nzn);
  REQUIRE(rf.has_value());
  CHECK(*rf == RatFunc(P({0, 1}), P({1, -2, 1})));
  auto v = root_of_unity_poles(*rf);
  CHECK(v.kind == PoleVerdictKind::AllRootsOfUnity);
  CHECK(v.M == 1);
  CHECK(v.N == 2);

  auto one = quasipolynomial_to_ratfunc(*quasipolynomial_detect(*invgeom_series(), 200));
  REQUIRE(one.has_value());
  CHECK(*one == RatFunc(P({1}), P({1, -1})));
  auto v1 = root_of_unity_poles(*one);
  CHECK(v1.kind == PoleVerdictKind::AllRootsOfUnity);
  CHECK(v1.M == 1);
  CHECK(v1.N == 1);

  auto alt = quasipolynomial_to_ratfunc(*quasipolynomial_detect(*altperiodic_series(), 400));
  REQUIRE(alt.has_value());
  CHECK(*alt == RatFunc(P({1}), P({1, 0, 1})));
  auto v2 = root_of_unity_poles(*alt);
  CHECK(v2.kind == PoleVerdictKind::AllRootsOfUnity);
  CHECK(v2.M == 4);
  CHECK(v2.N == 1);

  // rational sections have no polynomial generating form
  CHECK_FALSE(quasipolynomial_to_ratfunc(*quasipolynomial_detect(*log1p_series(), 400))
                  .has_value());

  // 1/(1-z^2) directly
  auto v3 = root_of_unity_poles(RatFunc(P({1}), P({1, 0, -1})));
  CHECK(v3.kind == PoleVerdictKind::AllRootsOfUnity);
  CHECK(v3.M == 2);
  CHECK(v3.N == 1);

  // pole off the unit circle: leading-coefficient obstruction
  CHECK(root_of_unity_poles(RatFunc(P({1}), P({1, -2}))).kind ==
        PoleVerdictKind::HasOtherPole);
  // coefficient above the cyclotomic-product bound
  CHECK(root_of_unity_poles(RatFunc(P({1}), P({1, -5, 1}))).kind ==
        PoleVerdictKind::HasOtherPole);
  // reciprocal pole pair keeps |leading| = 1 and small coefficients
  CHECK(root_of_unity_poles(
            RatFunc(P({1}), Poly(std::vector<FieldElement>{
                                FieldElement(1L), FieldElement(rat(-5, 2)), FieldElement(1L)})))
            .kind == PoleVerdictKind::Undetermined);
  // M_max gates the search
  CHECK(root_of_unity_poles(RatFunc(P({1}), P({1, 0, 0, 0, 0, -1})), 3).kind ==
        PoleVerdictKind::Undetermined);
  auto v5 = root_of_unity_poles(RatFunc(P({1}), P({1, 0, 0, 0, 0, -1})), 5);
  CHECK(v5.kind == PoleVerdictKind::AllRootsOfUnity);
  CHECK(v5.M == 5);
  CHECK(v5.N == 1);
  // polynomials have no poles at all
  auto v6 = root_of_unity_poles(RatFunc(P({3, 1})));
  CHECK(v6.kind == PoleVerdictKind::AllRootsOfUnity);
  CHECK(v6.M == 1);
  CHECK(v6.N == 0);
}

TEST_CASE("gevrey order search") {
  auto e1 = gevrey_estimate(*exp_series(), 300, 2);
  REQUIRE(e1.has_value());
  CHECK(*e1 == 1);
  auto e2 = gevrey_estimate(*exp_series(), 100, 1);
  REQUIRE(e2.has_value());
  CHECK(*e2 == 1);

  auto f1 = gevrey_estimate(*factish_series(), 300, 1);
  REQUIRE(f1.has_value());
  CHECK(*f1 == -1);

  auto g1 = gevrey_estimate(*geom2_series(), 100, 1);
  REQUIRE(g1.has_value());
  CHECK(*g1 == 0);
  // at b_max = 2 the window is too short to reject s = -1/2: ambiguous
  CHECK_FALSE(gevrey_estimate(*geom2_series(), 200, 2).has_value());

  // zero coefficients are skipped, not treated as decay
  auto a1 = gevrey_estimate(*altperiodic_series(), 200, 1);
  REQUIRE(a1.has_value());
  CHECK(*a1 == 0);

  CHECK_THROWS_AS(gevrey_estimate(*exp_series(), 99, 1), PreconditionFailed);
  CHECK_THROWS_AS(gevrey_estimate(*exp_series(), 300, 0), PreconditionFailed);
}

TEST_CASE("trichotomy report") {
  auto lg = trichotomy_report(log1p_series(), 200, 3);
  CHECK_FALSE(lg.boundary.fires);
  CHECK(lg.boundary.gap_score == doctest::Approx(0.125).epsilon(1e-9));
  CHECK_FALSE(lg.boundary.decay_fit_failed);
  CHECK(lg.lcm.rate_full == doctest::Approx(1.0307).epsilon(1e-2));
  CHECK(lg.lcm.rate_excluded == doctest::Approx(0.2180).epsilon(1e-2));
  CHECK(lg.lcm.strong);
  CHECK_FALSE(lg.approx.run_found);
  // the twist kept the series itself: P(0) != 0, P vanishes on {1, 2, 3}
  CHECK(eval_binomial_poly(lg.approx.P, 0) == 1);
  for (long m = 1; m <= 3; ++m) CHECK(eval_binomial_poly(lg.approx.P, m) == 0);

  auto ge = trichotomy_report(geom2_series(), 128, 2);
  CHECK_FALSE(ge.boundary.fires);
  CHECK_FALSE(ge.lcm.strong);
  CHECK(ge.lcm.rate_full == 0.0);
  CHECK(ge.approx.run_found);
  CHECK(ge.approx.met_threshold);
  CHECK(ge.approx.ladder_n == 32);
  CHECK(ge.approx.threshold == 64);
  CHECK(ge.approx.achieved_order == 65);
  // u/v equals the twisted series (1-2z)^{-4} * numerator exactly
  CHECK(ge.approx.uv == RatFunc(P({1, -8, 24, -32}), P({1, -8, 24, -32, 16})));

  auto la = trichotomy_report(lacunary_series(128), 200, 3);
  CHECK(la.boundary.fires);
  CHECK(la.boundary.gap_score == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(la.lcm.strong);
  CHECK_FALSE(la.approx.run_found);

  CHECK_THROWS_AS(trichotomy_report(nullptr, 200, 3), PreconditionFailed);
  CHECK_THROWS_AS(trichotomy_report(log1p_series(), 8, 3), PreconditionFailed);
}

TEST_CASE("dichotomy branch evidence at horizon 2000") {
  struct Row {
    const char* name;
    SeriesPtr sp;
    bool h, den, quasi;
  };
  std::vector<Row> rows;
  rows.push_back({"log1p", log1p_series(), false, true, false});
  rows.push_back({"exp", exp_series(), true, false, false});
  rows.push_back({"nzn", nzn_series(), false, false, true});
  rows.push_back({"geom2", geom2_series(), true, false, false});
  rows.push_back({"catalanish", catalanish_series(), true, false, false});
  rows.push_back({"gauss_i", gauss_i_series(), false, true, false});
  for (auto& row : rows) {
    CAPTURE(row.name);
    auto b = branch_evidence(*row.sp, 2000);
    CHECK(b.h_linear == row.h);
    CHECK(b.den_linear == row.den);
    CHECK(b.quasipolynomial == row.quasi);
    CHECK((int)b.h_linear + (int)b.den_linear + (int)b.quasipolynomial == 1);
  }
  auto lb = branch_evidence(*log1p_series(), 2000);
  CHECK(lb.den_density == rat(1001, 2000));
  CHECK(lb.h_density == 0);
  CHECK_THROWS_AS(branch_evidence(*log1p_series(), 32), PreconditionFailed);
}

TEST_CASE("profile without lcm accumulation") {
  auto sp = factish_series();
  auto prof = growth_profile(*sp, 40, std::nullopt, false);
  CHECK(prof.h.size() == 41);
  CHECK(prof.den.size() == 41);
  CHECK(prof.log_lcm.empty());
  CHECK(prof.lcm_factors.empty());
  CHECK(prof.den[5] == 1);
  CHECK(prof.h[3].base == 6);
}
