#pragma once

#include <string>
#include <vector>

#include "gnsbound/exponents.hpp"
#include "gnsbound/optimizer.hpp"

namespace gnsbound {

/// f(x) = e^{−a|x|²} on R^d, d ∈ {1,2,3}. Fourier transform (π/a)^{d/2} e^{−|ξ|²/4a}
/// with f̂(ξ) = ∫ f(x) e^{−ix·ξ} dx.
struct RadialTestFunction {
    double a = 1.0;
    int d = 1;
};

/// G_t(x) = (4πt)^{−d/2} e^{−|x|²/4t}.
struct HeatKernel {
    double t = 1.0;
    int d = 1;
    [[nodiscard]] double operator()(double r) const;
};

/// ‖f‖_q in closed form.
double gaussian_norm(const RadialTestFunction& f, const LebesgueExponent& q);

/// (|∇|^s e^{tΔ} f)(x) at |x| = r, from the closed-form radial inversion
///   (π/a)^{d/2} (4π)^{−d/2} Γ((s+d)/2)/Γ(d/2) c^{−(s+d)/2} ₁F₁((s+d)/2; d/2; −r²/4c),
/// c = t + 1/(4a).
double radial_profile(const RadialTestFunction& f, double s, double t, double r);

/// The same value by direct quadrature of the inversion integral (cosine
/// transform, J₀ transform or sin(kr)/r kernel for d = 1, 2, 3). Cross-check.
double radial_profile_quadrature(const RadialTestFunction& f, double s, double t, double r);

/// ‖|∇|^s e^{tΔ} f‖_p. Throws DomainError when s ≤ −d, t < 0, or the profile
/// is not p-integrable; AccuracyError when the quadrature error estimate
/// exceeds 1e−6 relative.
double fractional_heat_norm(const RadialTestFunction& f, double s, double t,
                            const LebesgueExponent& p);

/// ‖|∇|^s e^{tΔ} f‖₂ by quadrature on the frequency side.
double plancherel_l2_norm(const RadialTestFunction& f, double s, double t);

struct SweepRow {
    std::vector<std::string> params;
    double measured = 0.0;
    double bound = 0.0;
    double slack = 0.0;  // 1 − measured/bound
    bool ok = true;
};

struct SweepReport {
    std::vector<std::string> param_names;
    std::vector<SweepRow> rows;
    double worst_slack = 1.0;
    int violations = 0;
    /// check_gns only: largest max/min − 1 of the ratio over the dilations of
    /// one width.
    double dilation_spread = 0.0;
    bool dilation_ok = true;
    [[nodiscard]] bool ok() const { return violations == 0 && dilation_ok; }
};

inline constexpr double kDominanceTol = 1e-6;
inline constexpr double kDilationTol = 1e-6;

struct ParabolicGridPoint {
    int d = 1;
    double s = 0.0;
    LebesgueExponent r;
    LebesgueExponent p;
    double t = 1.0;
};

/// d × s ∈ {0, 0.5, 1, 2, 3.5, −0.25} × (r,p) ∈ {(1,2),(2,2),(1,∞),(2,∞),(2,4)}
/// × t ∈ {0.1, 1, 10}, minus the points outside the smoothing regime.
/// d = 0 means all of {1,2,3}.
std::vector<ParabolicGridPoint> default_parabolic_grid(int d = 0);

/// Rows are (d, s, r, p, t, a); measured = ‖|∇|^s e^{tΔ}f‖_p/‖f‖_r,
/// bound = bound_at_time. Points are evaluated concurrently and reported in
/// grid order. threads = 0 uses the hardware concurrency.
SweepReport check_parabolic(const std::vector<ParabolicGridPoint>& grid,
                            const std::vector<double>& widths, int threads = 0);

/// {2^{−k}, …, 2^{k}}.
std::vector<double> dilation_grid(int k);

/// Rows are (a, lambda); measured is the GNS ratio of e^{−aλ²|x|²},
/// bound is the certificate value.
SweepReport check_gns(const BoundCertificate& cert, const std::vector<double>& widths,
                      const std::vector<double>& dilations, int threads = 0);

std::string sweep_to_csv(const SweepReport& report);

struct HeatL1Check {
    double measured = 0.0;
    double bound = 0.0;
    bool ok = false;
};

/// ‖(−Δ)ⁿ G_t‖₁ by quadrature against heat_deriv_l1_bound(n, d)·t^{−n}.
/// n ∈ [0, 4].
HeatL1Check heat_l1_deriv_check(int n, int d, double t);

struct YoungCheck {
    double best_ratio = 0.0;
    double constant = 0.0;
    double alpha = 0.0;  // widths of the best pair
    double beta = 0.0;
    bool ok = false;
};

/// 33 widths, geometric from 1/16 to 16.
std::vector<double> default_young_widths();

/// Max over Gaussian pairs e^{−α|x|²}, e^{−β|x|²} (α, β from `widths`, then
/// polished in α) of ‖f*g‖_p/(‖f‖_q‖g‖_r).
/// ok ⟺ A_Y(1 − 1e−3) ≤ best ≤ A_Y(1 + 1e−6).
YoungCheck young_extremizer_check(const LebesgueExponent& p, const LebesgueExponent& q,
                                  const LebesgueExponent& r, int d,
                                  const std::vector<double>& widths);

}  // namespace gnsbound
