#include "gnsbound/feasible.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gnsbound/errors.hpp"

namespace gnsbound {

namespace {

// Derived reciprocals within this distance of [0, 1] are clipped onto it.
constexpr double kClip = 1e-13;
// Residual allowed in the two Hölder identities.
constexpr double kHolderTol = 1e-12;

double clip_unit(double x) {
    if (x < 0.0 && x > -kClip) return 0.0;
    if (x > 1.0 && x < 1.0 + kClip) return 1.0;
    return x;
}

LebesgueExponent reciprocal_or_throw(double x, const char* what) {
    x = clip_unit(x);
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << "derived 1/" << what << " = " << x << " is outside [0, 1]";
        throw OutOfRange(msg.str());
    }
    return LebesgueExponent::from_reciprocal(x);
}

struct Bound {
    double value;
    bool open;
};

// Tighter lower bound wins; on a tie the open one.
Bound tighter_lo(Bound a, Bound b) {
    if (a.value != b.value) return a.value > b.value ? a : b;
    return {a.value, a.open || b.open};
}

Bound tighter_hi(Bound a, Bound b) {
    if (a.value != b.value) return a.value < b.value ? a : b;
    return {a.value, a.open || b.open};
}

EffectiveRange make_range(Bound lo, Bound hi) { return {lo.value, hi.value, lo.open, hi.open}; }

double order_of(const OrientedProblem& op, int j, double sigma) {
    const auto& pr = op.problem;
    return pr.s + 2.0 * sigma - (j == 1 ? pr.s1 : pr.s2);
}

}  // namespace

double FeasibilityReport::min_strict() const {
    double out = std::numeric_limits<double>::infinity();
    for (const auto& m : margins) {
        if (m.kind == MarginKind::kStrict) out = std::min(out, m.value);
    }
    return out;
}

std::vector<std::string> FeasibilityReport::failures(double margin) const {
    std::vector<std::string> out;
    for (const auto& m : margins) {
        const bool good = m.kind == MarginKind::kStrict ? m.value > margin : m.value >= 0.0;
        if (!good) out.push_back(m.name);
    }
    return out;
}

bool EffectiveRange::empty() const {
    if (lo < hi) return false;
    return !(lo == hi && !lo_open && !hi_open);
}

double sigma_lower_bound(int d, double s, double s2, const LebesgueExponent& p2) {
    return std::max(0.0, 0.5 * (s2 - s) - 0.5 * d * p2.recip());
}

double sigma_lower_bound(const GnsProblem& problem) {
    const auto op = orient(problem);
    const auto& pr = op.problem;
    return sigma_lower_bound(pr.d, pr.s, pr.s2, pr.p2);
}

double order_index(const OrientedProblem& op, int j, double sigma) {
    const auto& pr = op.problem;
    const double recip = j == 1 ? pr.p1.recip() : pr.p2.recip();
    const double sj = j == 1 ? pr.s1 : pr.s2;
    return recip - (sj - pr.s - 2.0 * sigma) / pr.d;
}

WeightInterval r1_interval(const GnsProblem& problem, double sigma, double beta1) {
    const OrientedProblem op{problem, false, 0.0, 0.0};
    const double inv_p = problem.p.recip();
    WeightInterval out;
    out.raw_lo = inv_p - (1.0 - beta1) * order_index(op, 2, sigma);
    out.raw_hi = beta1 * order_index(op, 1, sigma);
    out.lo = std::max(out.raw_lo, 0.0);
    out.hi = std::min(out.raw_hi, beta1);
    return out;
}

WeightInterval r2_interval(const GnsProblem& problem, double sigma, double beta2) {
    const OrientedProblem op{problem, false, 0.0, 0.0};
    const double inv_p = problem.p.recip();
    WeightInterval out;
    out.raw_lo = inv_p - beta2 * order_index(op, 1, sigma);
    out.raw_hi = (1.0 - beta2) * order_index(op, 2, sigma);
    out.lo = std::max(out.raw_lo, 0.0);
    out.hi = std::min(out.raw_hi, 1.0 - beta2);
    return out;
}


EffectiveRange effective_r1_range(const OrientedProblem& op, double sigma, double beta1) {
    const auto& pr = op.problem;
    const double inv_p = pr.p.recip();
    const auto raw = r1_interval(op.problem, sigma, beta1);
    Bound lo{raw.raw_lo, true};
    Bound hi{raw.raw_hi, true};
    lo = tighter_lo(lo, {0.0, false});
    hi = tighter_hi(hi, {beta1, false});
    lo = tighter_lo(lo, {inv_p - (1.0 - beta1), false});
    hi = tighter_hi(hi, {inv_p, false});
    // r1 <- p1 needs 1/r1 <= 1/p1 at nonnegative order; q1 <- p2 likewise.
    if (order_of(op, 1, sigma) >= 0.0) hi = tighter_hi(hi, {beta1 * pr.p1.recip(), false});
    if (order_of(op, 2, sigma) >= 0.0) {
        lo = tighter_lo(lo, {inv_p - (1.0 - beta1) * pr.p2.recip(), false});
    }
    return make_range(lo, hi);
}

EffectiveRange effective_r2_range(const OrientedProblem& op, double sigma, double beta2) {
    const auto& pr = op.problem;
    const double inv_p = pr.p.recip();
    const auto raw = r2_interval(op.problem, sigma, beta2);
    Bound lo{raw.raw_lo, true};
    Bound hi{raw.raw_hi, true};
    lo = tighter_lo(lo, {0.0, false});
    hi = tighter_hi(hi, {1.0 - beta2, false});
    lo = tighter_lo(lo, {inv_p - beta2, false});
    hi = tighter_hi(hi, {inv_p, false});
    if (order_of(op, 2, sigma) >= 0.0) {
        hi = tighter_hi(hi, {(1.0 - beta2) * pr.p2.recip(), false});
    }
    if (order_of(op, 1, sigma) >= 0.0) lo = tighter_lo(lo, {inv_p - beta2 * pr.p1.recip(), false});
    return make_range(lo, hi);
}

std::pair<LebesgueExponent, LebesgueExponent> derive_q(const GnsProblem& problem, double beta1,
                                                       double beta2,
                                                       const LebesgueExponent& r1,
                                                       const LebesgueExponent& r2) {
    if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0)) {
        throw OutOfRange("Hölder weights must lie in (0, 1)");
    }
    const double inv_p = problem.p.recip();
    const double q1 = (inv_p - beta1 * r1.recip()) / (1.0 - beta1);
    const double q2 = (inv_p - (1.0 - beta2) * r2.recip()) / beta2;
    return {reciprocal_or_throw(q1, "q1"), reciprocal_or_throw(q2, "q2")};
}

std::vector<ParabolicParams> pairings(const OrientedProblem& op, const SigmaPoint& pt) {
    const auto& pr = op.problem;
    const double m1 = order_of(op, 1, pt.sigma);
    const double m2 = order_of(op, 2, pt.sigma);
    return {
        {pt.q2, pr.p1, m1, pr.d},
        {pt.r2, pr.p2, m2, pr.d},
        {pt.r1, pr.p1, m1, pr.d},
        {pt.q1, pr.p2, m2, pr.d},
    };
}

FeasibilityReport in_sigma(const GnsProblem& problem, const SigmaPoint& pt, double margin) {
    const auto op = orient(problem);
    const auto& pr = op.problem;
    const double th = op.theta;
    const double inv_p = pr.p.recip();
    FeasibilityReport rep;
    auto strict = [&](std::string name, double v) {
        rep.margins.push_back({std::move(name), v, MarginKind::kStrict});
    };
    auto closed = [&](std::string name, double v) {
        rep.margins.push_back({std::move(name), v, MarginKind::kClosed});
    };

    strict("beta1_lower", pt.beta1 - th);
    strict("beta1_upper", 1.0 - pt.beta1);
    strict("beta2_lower", pt.beta2);
    strict("beta2_upper", th - pt.beta2);
    strict("sigma_positive", pt.sigma);
    strict("sigma_lower", pt.sigma - (0.5 * (pr.s2 - pr.s) - 0.5 * pr.d * pr.p2.recip()));

    const double b1 = order_index(op, 1, pt.sigma);
    const double b2 = order_index(op, 2, pt.sigma);
    const double x1 = pt.beta1 * pt.r1.recip();
    const double x2 = (1.0 - pt.beta2) * pt.r2.recip();
    const double y1 = (1.0 - pt.beta1) * pt.q1.recip();
    const double y2 = pt.beta2 * pt.q2.recip();

    strict("r1_lower", x1 - (inv_p - (1.0 - pt.beta1) * b2));
    strict("r1_upper", pt.beta1 * b1 - x1);
    strict("r2_lower", x2 - (inv_p - pt.beta2 * b1));
    strict("r2_upper", (1.0 - pt.beta2) * b2 - x2);
    strict("q1_lower", y1 - (inv_p - pt.beta1 * b1));
    strict("q1_upper", (1.0 - pt.beta1) * b2 - y1);
    strict("q2_lower", y2 - (inv_p - (1.0 - pt.beta2) * b2));
    strict("q2_upper", pt.beta2 * b1 - y2);
    closed("holder_1", kHolderTol - std::abs(x1 + y1 - inv_p));
    closed("holder_2", kHolderTol - std::abs(x2 + y2 - inv_p));

    static constexpr const char* kNames[] = {"q2_p1", "r2_p2", "r1_p1", "q1_p2"};
    const auto pairs = pairings(op, pt);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& pp = pairs[i];
        const double room = pp.in_exp.recip() - pp.out_exp.recip();
        if (pp.order >= 0.0) {
            closed(std::string("pair_") + kNames[i], room);
        } else {
            strict(std::string("pair_") + kNames[i], pp.d * room + pp.order);
        }
    }

    rep.ok = rep.failures(margin).empty();
    return rep;
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::vector<SigmaPoint> sample_sigma(const GnsProblem& problem, int n, std::uint64_t seed,
                                     const SamplerOptions& opt) {
    const auto op = orient(problem);
    if (n <= 0) return {};
    const double th = op.theta;
    const double lb = sigma_lower_bound(problem);
    const double delta = opt.beta_buffer;
    std::mt19937_64 rng(seed);
    auto uniform = [&](double a, double b) { return a + (b - a) * unit_uniform(rng()); };
    auto in_range = [&](const EffectiveRange& r) {
        if (r.degenerate()) return r.lo;
        return uniform(r.lo, r.hi);
    };

    const double s_lo = lb + 1e-6;
    const double s_hi = lb + opt.sigma_window;
    const double b1_lo = std::min(th + delta, 0.5 * (th + 1.0));
    const double b1_hi = std::max(1.0 - delta, 0.5 * (th + 1.0));
    const double b2_lo = std::min(delta, 0.5 * th);
    const double b2_hi = std::max(th - delta, 0.5 * th);

    std::vector<SigmaPoint> out;
    const long max_attempts = 100L * n;
    for (long attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < n; ++attempt) {
        SigmaPoint pt;
        pt.beta1 = uniform(b1_lo, b1_hi);
        pt.beta2 = uniform(b2_lo, b2_hi);
        pt.sigma = std::exp(uniform(std::log(s_lo), std::log(s_hi)));
        const auto e1 = effective_r1_range(op, pt.sigma, pt.beta1);
        const auto e2 = effective_r2_range(op, pt.sigma, pt.beta2);
        if (e1.empty() || e2.empty()) continue;
        const double x1 = in_range(e1);
        const double x2 = in_range(e2);
        try {
            pt.r1 = LebesgueExponent::from_reciprocal(clip_unit(x1 / pt.beta1));
            pt.r2 = LebesgueExponent::from_reciprocal(clip_unit(x2 / (1.0 - pt.beta2)));
            auto [q1, q2] = derive_q(problem, pt.beta1, pt.beta2, pt.r1, pt.r2);
            pt.q1 = q1;
            pt.q2 = q2;
        } catch (const OutOfRange&) {
            continue;
        }
        if (in_sigma(problem, pt, opt.accept_margin).ok) out.push_back(pt);
    }
    if (out.empty()) {
        std::ostringstream msg;
        msg << "no feasible parameter point found in " << max_attempts << " attempts";
        throw EmptyFeasible(msg.str());
    }
    return out;
}

}  // namespace gnsbound
