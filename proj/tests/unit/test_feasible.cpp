#include <doctest.h>

#include <cmath>
#include <random>

#include "gnsbound/errors.hpp"
#include "gnsbound/feasible.hpp"
#include "support.hpp"

using namespace gnsbound;
using testing::agmon;
using testing::fractional;

namespace {

LebesgueExponent ex(const char* s) { return LebesgueExponent::parse(s); }

bool has_failure(const FeasibilityReport& rep, const std::string& name) {
    for (const auto& f : rep.failures()) {
        if (f == name) return true;
    }
    return false;
}

// Exponent of t in the small-time (j = 2) and large-time (j = 1) integrands
// after Hölder, written out term by term.
double small_time_exponent(const OrientedProblem& op, const SigmaPoint& pt) {
    const auto& pr = op.problem;
    const double hd = 0.5 * pr.d;
    return pt.sigma - 1.0 -
           pt.beta2 * (0.5 * (pr.s + 2 * pt.sigma - pr.s1) + hd * (pr.p1.recip() - pt.q2.recip())) -
           (1.0 - pt.beta2) * (0.5 * (pr.s + 2 * pt.sigma - pr.s2) + hd * (pr.p2.recip() - pt.r2.recip()));
}

double large_time_exponent(const OrientedProblem& op, const SigmaPoint& pt) {
    const auto& pr = op.problem;
    const double hd = 0.5 * pr.d;
    return pt.sigma - 1.0 -
           pt.beta1 * (0.5 * (pr.s + 2 * pt.sigma - pr.s1) + hd * (pr.p1.recip() - pt.r1.recip())) -
           (1.0 - pt.beta1) * (0.5 * (pr.s + 2 * pt.sigma - pr.s2) + hd * (pr.p2.recip() - pt.q1.recip()));
}

}  // namespace

TEST_CASE("sigma lower bound") {
    CHECK(sigma_lower_bound(1, 0.0, 0.0, ex("2")) == 0.0);
    CHECK(sigma_lower_bound(1, 0.0, 3.0, ex("inf")) == doctest::Approx(1.5));
    CHECK(sigma_lower_bound(2, 1.0, 2.0, ex("2")) == 0.0);
    // On the oriented problem the (s1, p1) = (1, 2) endpoint plays the role of (s2, p2).
    CHECK(sigma_lower_bound(agmon()) == doctest::Approx(0.25));
    CHECK(sigma_lower_bound(fractional()) == 0.0);
}

TEST_CASE("weight intervals") {
    const auto i1 = r1_interval(agmon(), 1.0, 0.75);
    CHECK(i1.raw_lo == doctest::Approx(-0.625));
    CHECK(i1.raw_hi == doctest::Approx(1.125));
    CHECK(i1.lo == 0.0);
    CHECK(i1.hi == 0.75);

    const auto i2 = r2_interval(agmon(), 1.0, 0.25);
    CHECK(i2.raw_lo == doctest::Approx(-0.375));
    CHECK(i2.raw_hi == doctest::Approx(1.875));
    CHECK(i2.lo == 0.0);
    CHECK(i2.hi == 0.75);
}

TEST_CASE("interval widths over random problems") {
    // hi − lo = (β1 − θ)K + 2σ/d and (β2 − θ)K + 2σ/d in the labels given.
    std::mt19937_64 rng(21);
    for (int i = 0; i < 1000; ++i) {
        const auto pr = testing::random_admissible(rng);
        const double th = theta(pr).value;
        const double k = pr.index1() - pr.index2();
        const double sigma = testing::uniform(rng, 0.0, 3.0);
        const double b1 = testing::uniform(rng, 0.0, 1.0);
        const double b2 = testing::uniform(rng, 0.0, 1.0);
        const auto i1 = r1_interval(pr, sigma, b1);
        const auto i2 = r2_interval(pr, sigma, b2);
        const double w1 = (b1 - th) * k + 2 * sigma / pr.d;
        const double w2 = (b2 - th) * k + 2 * sigma / pr.d;
        CHECK(std::abs(i1.raw_hi - i1.raw_lo - w1) <= 1e-12);
        CHECK(std::abs(i2.raw_hi - i2.raw_lo - w2) <= 1e-12);
        // Oriented labels: the r1 range is never empty; the r2 range is
        // nonempty exactly when σ > (d/2)(θ − β2)K.
        const auto op = orient(pr);
        const double ob1 = op.theta + (1.0 - op.theta) * b1;
        const double ob2 = op.theta * b2;
        const auto o1 = r1_interval(op.problem, sigma, ob1);
        const auto o2 = r2_interval(op.problem, sigma, ob2);
        CHECK(o1.raw_hi > o1.raw_lo);
        const double need = 0.5 * pr.d * (op.theta - ob2) * op.gap;
        if (std::abs(sigma - need) > 1e-12) CHECK((o2.raw_hi > o2.raw_lo) == (sigma > need));
    }
}

TEST_CASE("derive_q") {
    const auto pr = agmon();
    const auto [q1, q2] = derive_q(pr, 0.75, 0.25, ex("inf"), ex("inf"));
    CHECK(q1.is_infinite());
    CHECK(q2.is_infinite());
    // (1 − β2)/r2 = 0.3 with 1/p = 0 pushes 1/q2 negative.
    const auto r2 = LebesgueExponent::from_reciprocal(0.3 / 0.75);
    CHECK_THROWS_AS(derive_q(pr, 0.75, 0.25, ex("inf"), r2), OutOfRange);

    auto frac = fractional();
    const auto [a, b] = derive_q(frac, 0.6, 0.2, frac.p, frac.p);
    CHECK(a.recip() == doctest::Approx(frac.p.recip()));
    CHECK(b.recip() == doctest::Approx(frac.p.recip()));
}

TEST_CASE("sampler output is feasible and deterministic") {
    for (const auto& pr : {agmon(), fractional()}) {
        const auto pts = sample_sigma(pr, 16, 7);
        CHECK(pts.size() == 16);
        for (const auto& pt : pts) {
            const auto rep = in_sigma(pr, pt, 1e-9);
            CHECK(rep.ok);
            CHECK(rep.min_strict() > 1e-9);
        }
        const auto again = sample_sigma(pr, 16, 7);
        REQUIRE(again.size() == pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(pts[i].beta1 == again[i].beta1);
            CHECK(pts[i].beta2 == again[i].beta2);
            CHECK(pts[i].sigma == again[i].sigma);
            CHECK(pts[i].r1 == again[i].r1);
            CHECK(pts[i].r2 == again[i].r2);
        }
    }
}

TEST_CASE("in_sigma rejects boundary and out-of-range points") {
    const auto pr = agmon();
    const auto pts = sample_sigma(pr, 4, 3);
    REQUIRE(!pts.empty());

    auto low_beta = pts[0];
    low_beta.beta1 = 0.4;
    const auto rep = in_sigma(pr, low_beta);
    CHECK_FALSE(rep.ok);
    CHECK(has_failure(rep, "beta1_lower"));

    auto at_bound = pts[0];
    at_bound.sigma = 0.25;
    CHECK_FALSE(in_sigma(pr, at_bound).ok);
    CHECK(has_failure(in_sigma(pr, at_bound), "sigma_lower"));

    auto no_sigma = pts[0];
    no_sigma.sigma = 0.0;
    CHECK_FALSE(in_sigma(pr, no_sigma).ok);
}

TEST_CASE("time exponents and derived-q constraints at sampled points") {
    std::mt19937_64 rng(8);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const auto pr = testing::random_admissible(rng);
        const auto op = orient(pr);
        std::vector<SigmaPoint> pts;
        try {
            pts = sample_sigma(pr, 4, rng());
        } catch (const EmptyFeasible&) {
            continue;
        }
        for (const auto& pt : pts) {
            const double hd = 0.5 * pr.d;
            CHECK(small_time_exponent(op, pt) ==
                  doctest::Approx(-1.0 + (op.theta - pt.beta2) * hd * op.gap).epsilon(1e-10));
            CHECK(large_time_exponent(op, pt) ==
                  doctest::Approx(-1.0 - (pt.beta1 - op.theta) * hd * op.gap).epsilon(1e-10));
            const auto rep = in_sigma(pr, pt);
            CHECK(rep.ok);
            for (const auto& m : rep.margins) {
                if (m.name.rfind("q", 0) == 0) CHECK(m.value > 0.0);
            }
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("sampler errors") {
    auto bad = agmon();
    bad.s = bad.s1;
    bad.p = bad.p1;
    CHECK_THROWS_AS(sample_sigma(bad, 4, 1), Inadmissible);
}
