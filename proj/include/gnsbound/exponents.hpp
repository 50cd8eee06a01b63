#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gnsbound {

/// A Lebesgue exponent in [1, ∞], held as its reciprocal in [0, 1] so that
/// ∞ is the ordinary value 0 and every formula stays affine in 1/p.
///
/// The Hölder conjugate is cached at construction, which makes conjugation
/// an exact involution (1 − (1 − x) is not exact in floating point).
class LebesgueExponent {
public:
    /// Exponent 1 (reciprocal 1).
    LebesgueExponent() = default;

    /// Throws OutOfRange unless 0 <= recip <= 1.
    static LebesgueExponent from_reciprocal(double recip);
    /// Throws OutOfRange unless p >= 1; p = +inf is accepted.
    static LebesgueExponent from_value(double p);
    static LebesgueExponent infinity() { return from_reciprocal(0.0); }
    static LebesgueExponent one() { return from_reciprocal(1.0); }
    /// Accepts "inf", a decimal ("2.5") or a fraction ("4/3").
    static LebesgueExponent parse(std::string_view text);

    [[nodiscard]] double recip() const noexcept { return recip_; }
    /// The exponent itself; +inf when recip() == 0.
    [[nodiscard]] double value() const noexcept;
    [[nodiscard]] bool is_infinite() const noexcept { return recip_ == 0.0; }
    [[nodiscard]] bool is_one() const noexcept { return recip_ == 1.0; }
    /// Strictly inside (1, ∞).
    [[nodiscard]] bool is_interior() const noexcept { return recip_ > 0.0 && recip_ < 1.0; }

    [[nodiscard]] LebesgueExponent conjugate() const noexcept { return {dual_, recip_}; }

    /// "inf" or the shortest decimal that round-trips the exponent value.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const LebesgueExponent& a, const LebesgueExponent& b) noexcept {
        return a.recip_ == b.recip_;
    }

private:
    LebesgueExponent(double recip, double dual) noexcept : recip_(recip), dual_(dual) {}

    double recip_ = 1.0;
    double dual_ = 0.0;
};

inline LebesgueExponent conjugate(const LebesgueExponent& u) noexcept { return u.conjugate(); }

/// The q with 1/q + 1/r = 1 + 1/p. Throws OutOfRange when q would leave [1, ∞].
LebesgueExponent young_partner(const LebesgueExponent& p, const LebesgueExponent& r);

/// The data of a homogeneous GNS inequality
///   ‖|∇|^s f‖_p ≤ C ‖|∇|^{s1} f‖_{p1}^θ ‖|∇|^{s2} f‖_{p2}^{1−θ}   on R^d.
struct GnsProblem {
    int d = 1;
    double s = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    LebesgueExponent p;
    LebesgueExponent p1;
    LebesgueExponent p2;

    /// 1/p − s/d, the scaling index of the left-hand side.
    [[nodiscard]] double index() const noexcept { return p.recip() - s / d; }
    [[nodiscard]] double index1() const noexcept { return p1.recip() - s1 / d; }
    [[nodiscard]] double index2() const noexcept { return p2.recip() - s2 / d; }
};

/// Interpolation weight in (0, 1).
struct Theta {
    double value = 0.5;
};

struct ValidationReport {
    bool admissible = false;
    /// Distance of 1/p − s/d from the (s2, p2) endpoint, signed so that it is
    /// positive on the admissible side.
    double left_margin = 0.0;
    /// Distance of 1/p − s/d from the (s1, p1) endpoint, same sign convention.
    double right_margin = 0.0;
    /// True when the problem is listed in the order 1/p2 − s2/d < 1/p − s/d <
    /// 1/p1 − s1/d; false when the two endpoints appear the other way round.
    bool canonical_order = true;
    std::string message;
};

/// Checks that 1/p − s/d lies strictly between the two endpoint indices.
/// Both margins must exceed `margin` (default: strictly positive). The
/// inequality is symmetric in (s1, p1, θ) ↔ (s2, p2, 1 − θ), so either order
/// of the endpoints is accepted and reported through `canonical_order`.
ValidationReport validate(const GnsProblem& problem, double margin = 0.0);

/// θ solving 1/p − s/d = θ(1/p1 − s1/d) + (1 − θ)(1/p2 − s2/d).
/// Throws Inadmissible unless θ ∈ (0, 1).
Theta theta(const GnsProblem& problem);

/// The problem with endpoints ordered so that 1/p2 − s2/d < 1/p − s/d <
/// 1/p1 − s1/d. `swapped` tells whether (s1, p1) and (s2, p2) were exchanged.
struct OrientedProblem {
    GnsProblem problem;
    bool swapped = false;
    double theta = 0.5;  // θ of the oriented problem
    double gap = 0.0;    // K = (1/p1 − s1/d) − (1/p2 − s2/d) > 0
};

/// Throws Inadmissible for inadmissible input.
OrientedProblem orient(const GnsProblem& problem);

/// Brezis–Mironescu obstruction for the inhomogeneous inequality:
/// s2 ∈ N, p2 = 1 and 0 < s2 − s1 <= 1 − 1/p1. Advisory only.
bool brezis_mironescu_exception(double s1, const LebesgueExponent& p1, double s2,
                                const LebesgueExponent& p2);

enum class FailureTag { kCase1, kCase2, kCase3a, kCase3b };

std::string_view to_string(FailureTag tag);

/// Matches the problem against the known list of parameter families for which
/// the (nonnegative-order) GNS inequality fails. Conditions involving θ use
/// `theta_hint` when given; otherwise they are read as "for some θ ∈ (0, 1)".
/// Every admissible problem returns nullopt.
std::optional<FailureTag> known_failure_case(const GnsProblem& problem,
                                             std::optional<double> theta_hint = std::nullopt);

}  // namespace gnsbound
