#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gnsbound/exponents.hpp"
#include "gnsbound/parabolic.hpp"

namespace gnsbound {

/// A candidate (β₁, β₂, r₁, r₂, q₁, q₂, σ) of the interpolation parameter set.
///
/// Labels refer to the oriented problem (see `orient`): β₁ ∈ (θ,1) weights the
/// large-time Hölder split ‖·‖_{r₁}^{β₁}‖·‖_{q₁}^{1−β₁}, β₂ ∈ (0,θ) the
/// small-time split ‖·‖_{q₂}^{β₂}‖·‖_{r₂}^{1−β₂}, and both splits reproduce
/// 1/p.
struct SigmaPoint {
    double beta1 = 0.0;
    double beta2 = 0.0;
    LebesgueExponent r1;
    LebesgueExponent r2;
    LebesgueExponent q1;
    LebesgueExponent q2;
    double sigma = 0.0;
};

enum class MarginKind {
    kStrict,  // must exceed the requested margin
    kClosed,  // must be >= 0
};

struct Margin {
    std::string name;
    double value = 0.0;
    MarginKind kind = MarginKind::kStrict;
};

struct FeasibilityReport {
    bool ok = false;
    std::vector<Margin> margins;

    /// Smallest strict margin; +inf when there are none.
    [[nodiscard]] double min_strict() const;
    /// Names of the margins that failed.
    [[nodiscard]] std::vector<std::string> failures(double margin = 0.0) const;
};

/// An interval for β₁/r₁ or (1−β₂)/r₂. `raw_lo`/`raw_hi` are the strict
/// bounds of the defining inequalities; `lo`/`hi` the same interval clipped to
/// the range where the reciprocal stays in [0, 1].
struct WeightInterval {
    double raw_lo = 0.0;
    double raw_hi = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool empty() const { return !(lo < hi); }
};

/// A range for the same weighted reciprocal that also respects the Hölder
/// constraint on the derived q and the pairing directions. Endpoints are
/// open or closed independently.
struct EffectiveRange {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = false;
    bool hi_open = false;

    [[nodiscard]] bool empty() const;
    [[nodiscard]] bool degenerate() const { return lo == hi && !empty(); }
};

/// max(0, (s2 − s)/2 − d/(2 p2)) read off the given labels.
double sigma_lower_bound(int d, double s, double s2, const LebesgueExponent& p2);

/// The same bound for the oriented problem; Σ requires σ strictly above it.
double sigma_lower_bound(const GnsProblem& problem);

/// 1/p_j − (s_j − s − 2σ)/d for the oriented problem, j ∈ {1, 2}.
double order_index(const OrientedProblem& op, int j, double sigma);

/// The intervals read the labels of `problem` as given; callers working on Σ
/// pass the oriented problem.
WeightInterval r1_interval(const GnsProblem& problem, double sigma, double beta1);
WeightInterval r2_interval(const GnsProblem& problem, double sigma, double beta2);

EffectiveRange effective_r1_range(const OrientedProblem& op, double sigma, double beta1);
EffectiveRange effective_r2_range(const OrientedProblem& op, double sigma, double beta2);

/// (q₁, q₂) from 1/p = β₁/r₁ + (1−β₁)/q₁ = (1−β₂)/r₂ + β₂/q₂.
/// Throws OutOfRange when a derived reciprocal leaves [0, 1].
std::pair<LebesgueExponent, LebesgueExponent> derive_q(const GnsProblem& problem, double beta1,
                                                       double beta2,
                                                       const LebesgueExponent& r1,
                                                       const LebesgueExponent& r2);

/// The four smoothing estimates the point relies on, in the order
/// (q₂←p₁, r₂←p₂, r₁←p₁, q₁←p₂) as (output, input, order).
std::vector<ParabolicParams> pairings(const OrientedProblem& op, const SigmaPoint& point);

FeasibilityReport in_sigma(const GnsProblem& problem, const SigmaPoint& point, double margin = 0.0);

struct SamplerOptions {
    double beta_buffer = 1e-4;
    double sigma_window = 10.0;
    double accept_margin = 1e-9;
};

/// Up to n feasible points, deterministic in (problem, n, seed). Throws
/// Inadmissible for inadmissible problems and EmptyFeasible when no point
/// survives 100·n attempts.
std::vector<SigmaPoint> sample_sigma(const GnsProblem& problem, int n, std::uint64_t seed,
                                     const SamplerOptions& options = {});

/// Uniform double in [0, 1) from the top 53 bits; fixed across standard
/// libraries, unlike std::uniform_real_distribution.
double unit_uniform(std::uint64_t bits);

}  // namespace gnsbound
