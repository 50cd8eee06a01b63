#pragma once

#include <vector>

namespace gnsbound::specialfn {

/// ln Γ(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// min over λ ∈ [0,1] of λ^{−α}(1−λ)^{−β}, i.e. (α+β)^{α+β}/(α^α β^β),
/// evaluated in log space. A zero argument gives 1 (minimum at an endpoint).
double min_product_power(double alpha, double beta);
double log_min_product_power(double alpha, double beta);

/// ∫₀^∞ x^{−α}(1+x)^{−β} dx = Γ(α+β−1)Γ(1−α)/Γ(β), for α < 1 and β > 1 − α.
double beta_integral(double alpha, double beta);

inline constexpr int kMaxBellOrder = 20;

struct BellInput {
    int ell = 0;
    std::vector<double> x;  // x_1 … x_ell
};

/// Multiplicity vectors (r_1, …, r_ell) with Σ j·r_j = ell, in generation order.
std::vector<std::vector<int>> partitions(int ell);

/// Complete exponential Bell polynomial by direct summation over partitions.
/// Throws SizeError for ell > 20 and DomainError if x.size() != ell.
double bell_complete(const BellInput& input);

/// ℓ-th derivative at 0 of exp(λσ/(1−λ)), via the power-series exponential
/// recurrence n·E_n = Σ_k k·g_k·E_{n−k} with g_k = σ.
double bell_via_generating_function(int ell, double sigma);

/// Γ(d/2+n)·2ⁿ/Γ(d/2): the t-free factor of ‖(−Δ)ⁿ G_t‖₁ ≤ … · t^{−n}.
double heat_deriv_l1_bound(int n, int d);

/// Σ over R(ell) of Γ(d/2 + |r|₁) / Π r_j!.
double partition_gamma_sum(int ell, int d);

/// The partition form of the same t-free factor, before the generating
/// function collapses it:
///   n! Σ_k Γ(d/2+k)/(k! Γ(d/2)²) · partition_gamma_sum(n−k, d).
double heat_deriv_l1_partition_chain(int n, int d);

}  // namespace gnsbound::specialfn
