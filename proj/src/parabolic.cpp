#include "gnsbound/parabolic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gnsbound/errors.hpp"
#include "gnsbound/specialfn.hpp"

namespace gnsbound {

namespace {

using specialfn::log_gamma;

constexpr double kYoungTol = 1e-12;

// x ln x with 0 ln 0 = 0; in reciprocal form m^{1/m} = exp(−x ln x), x = 1/m.
double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

double log_four_pi() { return std::log(4.0 * std::numbers::pi); }

// ln of (4π)^{−D} q^{−d/(2q)}: the heat-kernel factor of the Lp–Lr estimate
// without the t-power.
double log_heat_factor(const LebesgueExponent& q, double gap, int d) {
    return -gap * log_four_pi() + 0.5 * d * xlogx(q.recip());
}

double log_integer_order(const ParabolicParams& pr, double gap, ParabolicForm form) {
    const double s = pr.order;
    const double half_d = 0.5 * pr.d;
    const double log_deriv = log_gamma(half_d + 0.5 * s) + 0.5 * s * std::log(2.0) - log_gamma(half_d);
    if (gap == 0.0) {
        // A_Y(p, 1, p, d) = 1.
        return log_deriv;
    }
    const LebesgueExponent q = young_partner(pr.out_exp, pr.in_exp);
    const double log_young = log_young_constant(pr.out_exp, q, pr.in_exp, pr.d);
    if (form == ParabolicForm::kCompact) {
        const double xq = q.recip();
        return log_young + s * std::log(2.0) - gap * log_four_pi() + half_d * xlogx(xq) +
               half_d * xlogx(1.0 - xq) + log_gamma(half_d + 0.5 * s) - log_gamma(half_d) -
               0.5 * xlogx(s) + xlogx(0.5 * s + gap);
    }
    return log_young + log_heat_factor(q, gap, pr.d) + log_deriv +
           specialfn::log_min_product_power(0.5 * s, gap);
}

}  // namespace

double log_young_constant(const LebesgueExponent& p, const LebesgueExponent& q,
                          const LebesgueExponent& r, int d) {
    const double mismatch = q.recip() + r.recip() - 1.0 - p.recip();
    if (std::abs(mismatch) > kYoungTol) {
        std::ostringstream msg;
        msg << "exponents (p=" << p.to_string() << ", q=" << q.to_string()
            << ", r=" << r.to_string() << ") violate 1/q + 1/r = 1 + 1/p";
        throw TripleMismatch(msg.str());
    }
    if (!(p.is_interior() && q.is_interior() && r.is_interior())) return 0.0;
    // (m)^{1/m} = exp(−x ln x) with x = 1/m; the conjugate has 1 − x.
    auto phi = [](double x) { return -xlogx(x); };
    const double xp = p.recip();
    const double xq = q.recip();
    const double xr = r.recip();
    return 0.5 * d *
           (phi(1.0 - xp) + phi(xq) + phi(xr) - phi(xp) - phi(1.0 - xq) - phi(1.0 - xr));
}

double young_constant(const LebesgueExponent& p, const LebesgueExponent& q,
                      const LebesgueExponent& r, int d) {
    return std::exp(log_young_constant(p, q, r, d));
}

double heat_kernel_norm(double t, const LebesgueExponent& q, int d) {
    if (!(t > 0.0)) throw DomainError("heat kernel norm requires t > 0");
    const double x = q.recip();
    return std::exp(-0.5 * d * (1.0 - x) * std::log(4.0 * std::numbers::pi * t) + 0.5 * d * xlogx(x));
}

SmoothingGap smoothing_gap(const ParabolicParams& params) {
    return {0.5 * params.d * (params.in_exp.recip() - params.out_exp.recip())};
}

void check_regime(const ParabolicParams& params) {
    if (params.d < 1) throw InvalidRegime("dimension must be positive");
    if (params.in_exp.recip() < params.out_exp.recip()) {
        std::ostringstream msg;
        msg << "smoothing estimate needs r <= p, got r=" << params.in_exp.to_string()
            << ", p=" << params.out_exp.to_string();
        throw InvalidRegime(msg.str());
    }
    if (!std::isfinite(params.order)) throw InvalidRegime("order must be finite");
    if (params.order < 0.0) {
        const double room = params.d * (params.in_exp.recip() - params.out_exp.recip());
        if (!(-params.order < room)) {
            std::ostringstream msg;
            msg << "negative order " << params.order << " reaches the Sobolev endpoint: need -s < d(1/r - 1/p) = "
                << room;
            throw InvalidRegime(msg.str());
        }
    }
}

double log_a_par(const ParabolicParams& params, ParabolicForm form) {
    check_regime(params);
    const double s = params.order;
    const double gap = smoothing_gap(params).value;
    const double half_s = 0.5 * s;

    if (s >= 0.0 && std::floor(half_s) == half_s) {
        return log_integer_order(params, gap, form);
    }
    if (s > 0.0) {
        // Fractional order: reduce to the next even order through the
        // heat-semigroup representation of (−Δ)^{{s/2}}.
        const double floor_half = std::floor(half_s);
        ParabolicParams even = params;
        even.order = 2.0 * floor_half + 2.0;
        const double numerator =
            form == ParabolicForm::kCompact ? half_s + 1.0 + gap : half_s + gap;
        return log_a_par(even, form) + log_gamma(numerator) - log_gamma(floor_half + 1.0 + gap);
    }
    // Negative order: Riesz potential of the heat flow.
    const LebesgueExponent q = young_partner(params.out_exp, params.in_exp);
    return log_young_constant(params.out_exp, q, params.in_exp, params.d) +
           log_heat_factor(q, gap, params.d) + log_gamma(gap + half_s) - log_gamma(gap);
}

double a_par(const ParabolicParams& params, ParabolicForm form) {
    return std::exp(log_a_par(params, form));
}

double bound_at_time(const ParabolicParams& params, double t) {
    if (!(t > 0.0)) throw DomainError("bound_at_time requires t > 0");
    const double gap = smoothing_gap(params).value;
    return std::exp(log_a_par(params) - (0.5 * params.order + gap) * std::log(t));
}

}  // namespace gnsbound
