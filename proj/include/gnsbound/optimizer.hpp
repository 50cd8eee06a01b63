#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnsbound/exponents.hpp"
#include "gnsbound/feasible.hpp"

namespace gnsbound {

/// The pieces of the two-term bound at one point of Σ, in log form.
///
///   ‖|∇|^s f‖_p ≤ Γ(σ)^{−1} [ X t₀^{e_s} + Y t₀^{−e_l} ],
///   X = C_s N₁^{β₂} N₂^{1−β₂} / e_s,   Y = C_l N₁^{β₁} N₂^{1−β₁} / e_l,
///
/// with N_j = ‖|∇|^{s_j} f‖_{p_j} in oriented labels.
struct ObjectiveTerms {
    double log_c_small = 0.0;  // ln C_s
    double log_c_large = 0.0;  // ln C_l
    double e_small = 0.0;      // (θ − β₂)(d/2)K
    double e_large = 0.0;      // (β₁ − θ)(d/2)K
    double log_gamma_sigma = 0.0;
};

/// Throws Infeasible unless in_sigma(problem, point) is ok; InvalidRegime
/// propagates from a_par.
ObjectiveTerms objective_terms(const GnsProblem& problem, const SigmaPoint& point);

/// Γ(σ)^{−1}(X t₀^{e_s} + Y t₀^{−e_l}). The norms follow the problem's own
/// labels; the point follows the oriented labels.
double two_term_bound(const GnsProblem& problem, const SigmaPoint& point, double t0,
                      double norm1 = 1.0, double norm2 = 1.0);

/// The t₀ at which the two terms are equal:
///   t₀^{e_s+e_l} = Y/X = (C_l/C_s) (N₁/N₂)^{β₁−β₂} (θ−β₂)/(β₁−θ).
double equalizing_t0(const GnsProblem& problem, const SigmaPoint& point, double norm1 = 1.0,
                     double norm2 = 1.0);

/// The bound constant at this point: the two-term value at the equalizing t₀
/// with unit norms. Equal to
///   4/(dΓ(σ)K) (C_s/(θ−β₂))^{(β₁−θ)/(β₁−β₂)} (C_l/(β₁−θ))^{(θ−β₂)/(β₁−β₂)}.
double objective(const GnsProblem& problem, const SigmaPoint& point);
double log_objective(const GnsProblem& problem, const SigmaPoint& point);

/// The closed form as printed in the source, with the two outer exponents
/// attached the other way round. Kept for comparison; not a bound in general.
double closed_form_objective(const GnsProblem& problem, const SigmaPoint& point);

inline constexpr const char* kObjectiveForm = "t0_substituted";

struct OptimizerConfig {
    int starts = 64;
    int sample_per_start = 8;
    int max_iters = 2000;
    double rel_tol = 1e-9;
    std::uint64_t seed = 42;
    double sigma_window = 10.0;
    /// 0 means std::thread::hardware_concurrency().
    int threads = 0;
};

/// Throws OutOfRange when a count is < 1 or rel_tol/sigma_window is not positive.
void check_config(const OptimizerConfig& config);

struct BoundCertificate {
    GnsProblem problem;
    SigmaPoint point;
    double value = 0.0;
    Theta theta;
    FeasibilityReport margins;
    int sample_count = 0;
    int starts = 0;
    std::uint64_t seed = 0;
    bool swapped = false;
    std::string objective_form = kObjectiveForm;
    double closed_form_value = 0.0;
    OptimizerConfig config;
    /// Objective at every sampled start point, in start order. Not serialized.
    std::vector<double> sample_values;
};

/// Multi-start Nelder–Mead over Σ. Deterministic in (problem, config).
BoundCertificate minimize(const GnsProblem& problem, const OptimizerConfig& config = {});

}  // namespace gnsbound
