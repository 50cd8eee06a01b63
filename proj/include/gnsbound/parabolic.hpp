#pragma once

#include "gnsbound/exponents.hpp"

namespace gnsbound {

/// Sharp Young constant for ‖f*g‖_p ≤ A_Y ‖f‖_q ‖g‖_r on R^d; 1 when any of
/// p, q, r is an endpoint. Throws TripleMismatch unless 1/q + 1/r = 1 + 1/p
/// to within 1e−12.
double young_constant(const LebesgueExponent& p, const LebesgueExponent& q,
                      const LebesgueExponent& r, int d);
double log_young_constant(const LebesgueExponent& p, const LebesgueExponent& q,
                          const LebesgueExponent& r, int d);

/// ‖G_t‖_q for the heat kernel G_t(x) = (4πt)^{−d/2} e^{−|x|²/4t}.
double heat_kernel_norm(double t, const LebesgueExponent& q, int d);

/// Parameters of ‖|∇|^s e^{tΔ} f‖_p ≤ C t^{−s/2−D} ‖f‖_r.
struct ParabolicParams {
    LebesgueExponent out_exp;  // p
    LebesgueExponent in_exp;   // r
    double order = 0.0;        // s
    int d = 1;
};

/// D = (d/2)(1/r − 1/p).
struct SmoothingGap {
    double value = 0.0;
};

SmoothingGap smoothing_gap(const ParabolicParams& params);

/// kProof is the constant the proofs actually deliver. kCompact evaluates the
/// rewritten closed forms instead (integer order with r < p, and the
/// fractional branch with Γ(s/2+1+D) on top); it exists for comparison only
/// and is not a valid bound in general.
enum class ParabolicForm { kProof, kCompact };

/// Throws InvalidRegime when r > p, or when s < 0 and −s ≥ d(1/r − 1/p).
void check_regime(const ParabolicParams& params);

/// The t-free smoothing constant C.
double a_par(const ParabolicParams& params, ParabolicForm form = ParabolicForm::kProof);
double log_a_par(const ParabolicParams& params, ParabolicForm form = ParabolicForm::kProof);

/// a_par(params)·t^{−s/2−D}.
double bound_at_time(const ParabolicParams& params, double t);

}  // namespace gnsbound
