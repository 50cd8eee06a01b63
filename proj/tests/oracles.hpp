#pragma once

// Independent numerical oracles shared by the unit and acceptance tests.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "gnsbound/optimizer.hpp"

namespace testing {

// Grid minimum of λ^{−α}(1−λ)^{−β} on (0,1), refined once around the best node.
inline double grid_min(double alpha, double beta) {
    auto f = [&](double l) { return -alpha * std::log(l) - beta * std::log1p(-l); };
    const int n = 100000;
    double best = INFINITY;
    int best_i = 1;
    for (int i = 1; i < n; ++i) {
        const double v = f(static_cast<double>(i) / n);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    const double lo = static_cast<double>(best_i - 1) / n;
    for (int i = 1; i < 2000; ++i) {
        const double l = lo + 2.0 * i / (2000.0 * n);
        best = std::min(best, f(l));
    }
    return std::exp(best);
}

// ∫₀^∞ x^{−α}(1+x)^{−β} dx. x = u/(1−u) maps (0,∞) onto (0,1); tanh-sinh
// absorbs the endpoint singularities of u^{−α}(1−u)^{α+β−2}.
inline double beta_quadrature(double alpha, double beta) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    // xc is a − u on the left half and b − u on the right half.
    auto g = [&](double u, double xc) {
        const double left = xc < 0.0 ? -xc : u;
        const double right = xc < 0.0 ? 1.0 - u : xc;
        return std::pow(left, -alpha) * std::pow(right, alpha + beta - 2.0);
    };
    return integrator.integrate(g, 0.0, 1.0);
}

// Unit-norm terms of the two-term bound, rebuilt from the public pieces.
struct Terms {
    double x, y, es, el, gamma;
};

inline Terms unit_terms(const gnsbound::GnsProblem& pr, const gnsbound::SigmaPoint& pt) {
    const auto t = gnsbound::objective_terms(pr, pt);
    return {std::exp(t.log_c_small) / t.e_small, std::exp(t.log_c_large) / t.e_large, t.e_small, t.e_large,
            std::exp(t.log_gamma_sigma)};
}

// t with X t^{es} = Y t^{−el}, by bisection in ln t.
inline double bisect_t0(const Terms& t) {
    auto g = [&](double lt) { return std::log(t.x) + t.es * lt - std::log(t.y) + t.el * lt; };
    double lo = -200, hi = 200;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0 ? hi : lo) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

inline double two_term_at(const Terms& t, double t0) {
    return (t.x * std::pow(t0, t.es) + t.y * std::pow(t0, -t.el)) / t.gamma;
}

}  // namespace testing
