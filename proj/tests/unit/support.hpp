#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gnsbound/exponents.hpp"

namespace testing {

inline double rel_err(double got, double want) {
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

// Random admissible problem: endpoint data first, then (s, p) placed at a
// random convex combination of the two endpoint indices.
inline gnsbound::GnsProblem random_admissible(std::mt19937_64& rng) {
    using gnsbound::LebesgueExponent;
    for (;;) {
        gnsbound::GnsProblem pr;
        pr.d = static_cast<int>(rng() % 3) + 1;
        pr.p1 = LebesgueExponent::from_reciprocal(uniform(rng, 0.0, 1.0));
        pr.p2 = LebesgueExponent::from_reciprocal(uniform(rng, 0.0, 1.0));
        pr.s1 = uniform(rng, 0.0, 3.0);
        pr.s2 = uniform(rng, 0.0, 3.0);
        const double th = uniform(rng, 0.05, 0.95);
        const double target = th * pr.index1() + (1.0 - th) * pr.index2();
        const double inv_p = uniform(rng, 0.0, 1.0);
        pr.p = LebesgueExponent::from_reciprocal(inv_p);
        pr.s = pr.d * (inv_p - target);
        if (std::abs(pr.index1() - pr.index2()) < 1e-3) continue;
        if (!gnsbound::validate(pr, 1e-9).admissible) continue;
        return pr;
    }
}

inline gnsbound::GnsProblem agmon() {
    using gnsbound::LebesgueExponent;
    gnsbound::GnsProblem pr;
    pr.d = 1;
    pr.s = 0.0;
    pr.p = LebesgueExponent::infinity();
    pr.s1 = 1.0;
    pr.p1 = LebesgueExponent::from_value(2.0);
    pr.s2 = 0.0;
    pr.p2 = LebesgueExponent::from_value(2.0);
    return pr;
}

inline gnsbound::GnsProblem fractional() {
    using gnsbound::LebesgueExponent;
    gnsbound::GnsProblem pr;
    pr.d = 1;
    pr.s = 0.5;
    pr.p = LebesgueExponent::from_value(4.0);
    pr.s1 = 1.0;
    pr.p1 = LebesgueExponent::from_value(2.0);
    pr.s2 = 0.0;
    pr.p2 = LebesgueExponent::from_value(2.0);
    return pr;
}

}  // namespace testing
