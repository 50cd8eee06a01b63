#include "gnsbound/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "gnsbound/errors.hpp"
#include "gnsbound/parabolic.hpp"
#include "gnsbound/specialfn.hpp"
#include "parallel.hpp"

namespace gnsbound {

namespace {

constexpr int kDim = 5;
constexpr double kPenalty = 1e10;  // in log space
constexpr double kSigmaFloor = 1e-6;
constexpr double kEdge = 1e-12;
// Same buffer as the sampler: keeps θ − β₂ and β₁ − θ (and the Hölder
// weights) away from 0 so that the derived q's stay well conditioned.
constexpr double kBetaBuffer = 1e-4;

using Vec = std::array<double, kDim>;

double logistic(double y) { return 1.0 / (1.0 + std::exp(-y)); }

double logit(double u) {
    u = std::clamp(u, kEdge, 1.0 - kEdge);
    return std::log(u / (1.0 - u));
}

double log_add(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

struct LogTerms {
    double log_x;
    double log_y;
};

LogTerms log_terms(const OrientedProblem& op, const SigmaPoint& pt, const ObjectiveTerms& t,
                   double norm1, double norm2) {
    if (op.swapped) std::swap(norm1, norm2);
    if (!(norm1 > 0.0) || !(norm2 > 0.0)) throw DomainError("norms must be positive");
    const double l1 = std::log(norm1);
    const double l2 = std::log(norm2);
    return {t.log_c_small + pt.beta2 * l1 + (1.0 - pt.beta2) * l2 - std::log(t.e_small),
            t.log_c_large + pt.beta1 * l1 + (1.0 - pt.beta1) * l2 - std::log(t.e_large)};
}

double log_equalizing_t0(const ObjectiveTerms& t, const LogTerms& lt) {
    return (lt.log_y - lt.log_x) / (t.e_small + t.e_large);
}

double log_two_term(const ObjectiveTerms& t, const LogTerms& lt, double log_t0) {
    return log_add(lt.log_x + t.e_small * log_t0, lt.log_y - t.e_large * log_t0) - t.log_gamma_sigma;
}

// Maps R^5 onto Σ: β's and σ through logistic maps onto their ranges, the two
// weighted reciprocals onto their effective ranges at the current (β, σ).
class Chart {
public:
    Chart(const GnsProblem& problem, double window)
        : problem_(problem), op_(orient(problem)), lb_(sigma_lower_bound(problem)), window_(window) {
        const double th = op_.theta;
        const double delta = std::min(kBetaBuffer, 0.25 * std::min(th, 1.0 - th));
        b1_lo_ = th + delta;
        b1_hi_ = 1.0 - delta;
        b2_lo_ = delta;
        b2_hi_ = th - delta;
    }

    [[nodiscard]] std::optional<SigmaPoint> decode(const Vec& y) const {
        SigmaPoint pt;
        const double th = op_.theta;
        pt.beta1 = b1_lo_ + (b1_hi_ - b1_lo_) * logistic(y[0]);
        pt.beta2 = b2_lo_ + (b2_hi_ - b2_lo_) * logistic(y[1]);
        pt.sigma = lb_ + kSigmaFloor + (window_ - kSigmaFloor) * logistic(y[4]);
        if (!(pt.beta1 > th && pt.beta1 < 1.0 && pt.beta2 > 0.0 && pt.beta2 < th)) return std::nullopt;
        const auto e1 = effective_r1_range(op_, pt.sigma, pt.beta1);
        const auto e2 = effective_r2_range(op_, pt.sigma, pt.beta2);
        if (e1.empty() || e2.empty()) return std::nullopt;
        const double x1 = e1.degenerate() ? e1.lo : e1.lo + (e1.hi - e1.lo) * logistic(y[2]);
        const double x2 = e2.degenerate() ? e2.lo : e2.lo + (e2.hi - e2.lo) * logistic(y[3]);
        try {
            pt.r1 = LebesgueExponent::from_reciprocal(std::clamp(x1 / pt.beta1, 0.0, 1.0));
            pt.r2 = LebesgueExponent::from_reciprocal(std::clamp(x2 / (1.0 - pt.beta2), 0.0, 1.0));
            auto [q1, q2] = derive_q(problem_, pt.beta1, pt.beta2, pt.r1, pt.r2);
            pt.q1 = q1;
            pt.q2 = q2;
        } catch (const OutOfRange&) {
            return std::nullopt;
        }
        return pt;
    }

    [[nodiscard]] Vec encode(const SigmaPoint& pt) const {
        Vec y{};
        y[0] = logit((pt.beta1 - b1_lo_) / (b1_hi_ - b1_lo_));
        y[1] = logit((pt.beta2 - b2_lo_) / (b2_hi_ - b2_lo_));
        y[4] = logit((pt.sigma - lb_ - kSigmaFloor) / (window_ - kSigmaFloor));
        const auto e1 = effective_r1_range(op_, pt.sigma, pt.beta1);
        const auto e2 = effective_r2_range(op_, pt.sigma, pt.beta2);
        const double x1 = pt.beta1 * pt.r1.recip();
        const double x2 = (1.0 - pt.beta2) * pt.r2.recip();
        y[2] = e1.hi > e1.lo ? logit((x1 - e1.lo) / (e1.hi - e1.lo)) : 0.0;
        y[3] = e2.hi > e2.lo ? logit((x2 - e2.lo) / (e2.hi - e2.lo)) : 0.0;
        return y;
    }

    [[nodiscard]] double value(const Vec& y) const {
        const auto pt = decode(y);
        if (!pt) return kPenalty;
        try {
            const double v = log_objective(problem_, *pt);
            return std::isfinite(v) ? v : kPenalty;
        } catch (const Error&) {
            return kPenalty;
        }
    }

    [[nodiscard]] double lower() const { return lb_; }
    [[nodiscard]] double window() const { return window_; }

private:
    GnsProblem problem_;
    OrientedProblem op_;
    double lb_;
    double window_;
    double b1_lo_ = 0.0, b1_hi_ = 1.0, b2_lo_ = 0.0, b2_hi_ = 1.0;
};

struct Simplex {
    Vec y;
    double f;
};

Simplex nelder_mead(const Chart& chart, const Vec& start, int max_iters, double rel_tol) {
    std::array<Vec, kDim + 1> pts;
    std::array<double, kDim + 1> fs;
    pts[0] = start;
    for (int i = 0; i < kDim; ++i) {
        pts[i + 1] = start;
        pts[i + 1][i] += 1.0;
    }
    for (int i = 0; i <= kDim; ++i) fs[i] = chart.value(pts[i]);

    std::array<int, kDim + 1> order;
    for (int it = 0; it < max_iters; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0];
        const int worst = order[kDim];
        const int second = order[kDim - 1];
        // f is a log, so the spread is the relative spread of the objective.
        if (fs[worst] - fs[best] < rel_tol) break;

        Vec centroid{};
        for (int k = 0; k < kDim; ++k) {
            for (int i = 0; i < kDim; ++i) centroid[i] += pts[order[k]][i] / kDim;
        }
        auto along = [&](double c) {
            Vec out;
            for (int i = 0; i < kDim; ++i) out[i] = centroid[i] + c * (pts[worst][i] - centroid[i]);
            return out;
        };

        const Vec xr = along(-1.0);
        const double fr = chart.value(xr);
        if (fr < fs[best]) {
            const Vec xe = along(-2.0);
            const double fe = chart.value(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fs[worst] = fe;
            } else {
                pts[worst] = xr;
                fs[worst] = fr;
            }
            continue;
        }
        if (fr < fs[second]) {
            pts[worst] = xr;
            fs[worst] = fr;
            continue;
        }
        const bool outside = fr < fs[worst];
        const Vec xc = along(outside ? -0.5 : 0.5);
        const double fc = chart.value(xc);
        if (fc < (outside ? fr : fs[worst])) {
            pts[worst] = xc;
            fs[worst] = fc;
            continue;
        }
        for (int k = 1; k <= kDim; ++k) {
            auto& p = pts[order[k]];
            for (int i = 0; i < kDim; ++i) p[i] = pts[best][i] + 0.5 * (p[i] - pts[best][i]);
            fs[order[k]] = chart.value(p);
        }
    }
    const auto it = std::min_element(fs.begin(), fs.end());
    return {pts[static_cast<std::size_t>(it - fs.begin())], *it};
}

struct StartResult {
    SigmaPoint point;
    double log_value = std::numeric_limits<double>::infinity();
    std::vector<double> sample_values;
};

StartResult run_start(const GnsProblem& problem, const OptimizerConfig& cfg, int index) {
    SamplerOptions opts;
    opts.sigma_window = cfg.sigma_window;
    const auto samples =
        sample_sigma(problem, cfg.sample_per_start, cfg.seed + static_cast<std::uint64_t>(index), opts);

    StartResult out;
    for (const auto& pt : samples) {
        double lv = std::numeric_limits<double>::infinity();
        try {
            lv = log_objective(problem, pt);
        } catch (const Error&) {
        }
        out.sample_values.push_back(std::exp(lv));
        if (lv < out.log_value) {
            out.log_value = lv;
            out.point = pt;
        }
    }
    if (!std::isfinite(out.log_value)) return out;

    auto descend = [&](double window) {
        const Chart chart(problem, window);
        const auto res = nelder_mead(chart, chart.encode(out.point), cfg.max_iters, cfg.rel_tol);
        if (res.f < out.log_value) {
            if (const auto pt = chart.decode(res.y)) {
                out.point = *pt;
                out.log_value = res.f;
            }
        }
        return chart;
    };
    const Chart first = descend(cfg.sigma_window);
    if (out.point.sigma > first.lower() + 0.99 * first.window()) descend(4.0 * cfg.sigma_window);
    return out;
}

}  // namespace

ObjectiveTerms objective_terms(const GnsProblem& problem, const SigmaPoint& pt) {
    const auto rep = in_sigma(problem, pt);
    if (!rep.ok) {
        std::ostringstream msg;
        msg << "point is outside the parameter set:";
        for (const auto& name : rep.failures()) msg << ' ' << name;
        throw Infeasible(msg.str());
    }
    const auto op = orient(problem);
    const auto pairs = pairings(op, pt);
    std::array<double, 4> la{};
    for (std::size_t i = 0; i < pairs.size(); ++i) la[i] = log_a_par(pairs[i]);
    const double hd = 0.5 * op.problem.d;
    ObjectiveTerms t;
    t.log_c_small = pt.beta2 * la[0] + (1.0 - pt.beta2) * la[1];
    t.log_c_large = pt.beta1 * la[2] + (1.0 - pt.beta1) * la[3];
    t.e_small = (op.theta - pt.beta2) * hd * op.gap;
    t.e_large = (pt.beta1 - op.theta) * hd * op.gap;
    t.log_gamma_sigma = specialfn::log_gamma(pt.sigma);
    return t;
}

double two_term_bound(const GnsProblem& problem, const SigmaPoint& pt, double t0, double norm1,
                      double norm2) {
    if (!(t0 > 0.0)) throw DomainError("t0 must be positive");
    const auto t = objective_terms(problem, pt);
    const auto lt = log_terms(orient(problem), pt, t, norm1, norm2);
    return std::exp(log_two_term(t, lt, std::log(t0)));
}

double equalizing_t0(const GnsProblem& problem, const SigmaPoint& pt, double norm1, double norm2) {
    const auto t = objective_terms(problem, pt);
    const auto lt = log_terms(orient(problem), pt, t, norm1, norm2);
    return std::exp(log_equalizing_t0(t, lt));
}

double log_objective(const GnsProblem& problem, const SigmaPoint& pt) {
    const auto t = objective_terms(problem, pt);
    const auto lt = log_terms(orient(problem), pt, t, 1.0, 1.0);
    return log_two_term(t, lt, log_equalizing_t0(t, lt));
}

double objective(const GnsProblem& problem, const SigmaPoint& pt) {
    return std::exp(log_objective(problem, pt));
}

double closed_form_objective(const GnsProblem& problem, const SigmaPoint& pt) {
    const auto t = objective_terms(problem, pt);
    const auto op = orient(problem);
    const double th = op.theta;
    const double span = pt.beta1 - pt.beta2;
    const double w_small = (th - pt.beta2) / span;
    const double w_large = (pt.beta1 - th) / span;
    return std::exp(std::log(4.0) - std::log(static_cast<double>(op.problem.d)) - t.log_gamma_sigma -
                    std::log(op.gap) + w_small * (t.log_c_small - std::log(th - pt.beta2)) +
                    w_large * (t.log_c_large - std::log(pt.beta1 - th)));
}

void check_config(const OptimizerConfig& cfg) {
    if (cfg.starts < 1 || cfg.sample_per_start < 1 || cfg.max_iters < 1) {
        throw OutOfRange("optimizer counts must be at least 1");
    }
    if (!(cfg.rel_tol > 0.0)) throw OutOfRange("rel_tol must be positive");
    if (!(cfg.sigma_window > kSigmaFloor)) throw OutOfRange("sigma_window must be positive");
}

BoundCertificate minimize(const GnsProblem& problem, const OptimizerConfig& cfg) {
    check_config(cfg);
    const auto op = orient(problem);

    const int n = cfg.starts;
    std::vector<StartResult> results(static_cast<std::size_t>(n));
    detail::parallel_for(n, cfg.threads, [&](int i) { results[static_cast<std::size_t>(i)] = run_start(problem, cfg, i); });

    int best = -1;
    for (int i = 0; i < n; ++i) {
        if (best < 0 || results[i].log_value < results[best].log_value) best = i;
    }
    if (best < 0 || !std::isfinite(results[best].log_value)) {
        throw EmptyFeasible("no start produced a finite objective");
    }

    BoundCertificate cert;
    cert.problem = problem;
    cert.point = results[best].point;
    cert.value = objective(problem, cert.point);
    cert.theta = theta(problem);
    cert.margins = in_sigma(problem, cert.point);
    cert.starts = n;
    cert.seed = cfg.seed;
    cert.swapped = op.swapped;
    cert.closed_form_value = closed_form_objective(problem, cert.point);
    cert.config = cfg;
    for (const auto& r : results) {
        cert.sample_values.insert(cert.sample_values.end(), r.sample_values.begin(), r.sample_values.end());
    }
    cert.sample_count = static_cast<int>(cert.sample_values.size());
    return cert;
}

}  // namespace gnsbound
