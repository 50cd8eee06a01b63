#include "gnsbound/exponents.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "gnsbound/errors.hpp"

namespace gnsbound {

namespace {

// Reciprocals this close to 0 or 1 are snapped so that endpoint branches
// (A_Y = 1, q = ∞, ...) are selected exactly.
constexpr double kSnap = 1e-14;

// s2 counts as an integer when within this distance of one.
constexpr double kIntegerTol = 1e-9;
constexpr double kEqualTol = 1e-9;

bool near_integer(double x) { return std::abs(x - std::round(x)) < kIntegerTol; }
bool is_natural0(double x) { return near_integer(x) && std::round(x) >= 0.0; }
bool is_natural(double x) { return near_integer(x) && std::round(x) >= 1.0; }
bool near(double a, double b) { return std::abs(a - b) < kEqualTol; }

double parse_double(std::string_view text) {
    double out = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw OutOfRange("cannot parse exponent '" + std::string(text) + "'");
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

LebesgueExponent LebesgueExponent::from_reciprocal(double recip) {
    if (!(recip >= 0.0 && recip <= 1.0)) {
        std::ostringstream msg;
        msg << "exponent reciprocal " << recip << " is outside [0, 1]";
        throw OutOfRange(msg.str());
    }
    return {recip, 1.0 - recip};
}

LebesgueExponent LebesgueExponent::from_value(double p) {
    if (std::isinf(p) && p > 0) return infinity();
    if (!(p >= 1.0)) {
        std::ostringstream msg;
        msg << "exponent " << p << " is outside [1, inf]";
        throw OutOfRange(msg.str());
    }
    return from_reciprocal(1.0 / p);
}

LebesgueExponent LebesgueExponent::parse(std::string_view text) {
    text = trim(text);
    if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") return infinity();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const double num = parse_double(trim(text.substr(0, slash)));
        const double den = parse_double(trim(text.substr(slash + 1)));
        if (!(num > 0.0) || !(den > 0.0)) {
            throw OutOfRange("exponent '" + std::string(text) + "' is not a positive fraction");
        }
        // a/b stored as b/a so that 4/3 has the exact reciprocal 0.75.
        return from_reciprocal(den / num);
    }
    return from_value(parse_double(text));
}

double LebesgueExponent::value() const noexcept {
    if (recip_ == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / recip_;
}

std::string LebesgueExponent::to_string() const {
    if (is_infinite()) return "inf";
    std::ostringstream out;
    out.precision(17);
    out << value();
    return out.str();
}

LebesgueExponent young_partner(const LebesgueExponent& p, const LebesgueExponent& r) {
    double q = 1.0 + p.recip() - r.recip();
    if (std::abs(q) < kSnap) q = 0.0;
    if (std::abs(q - 1.0) < kSnap) q = 1.0;
    if (q < 0.0 || q > 1.0) {
        std::ostringstream msg;
        msg << "Young partner of (p=" << p.to_string() << ", r=" << r.to_string()
            << ") would have reciprocal " << q;
        throw OutOfRange(msg.str());
    }
    return LebesgueExponent::from_reciprocal(q);
}

ValidationReport validate(const GnsProblem& problem, double margin) {
    ValidationReport report;
    if (problem.d < 1) {
        report.message = "dimension must be a positive integer";
        return report;
    }
    const double a = problem.index();
    const double a1 = problem.index1();
    const double a2 = problem.index2();
    const double orientation = (a1 > a2) ? 1.0 : (a1 < a2 ? -1.0 : 0.0);
    report.canonical_order = orientation >= 0.0;
    report.left_margin = orientation * (a - a2);
    report.right_margin = orientation * (a1 - a);
    report.admissible = orientation != 0.0 && report.left_margin > margin &&
                        report.right_margin > margin;
    if (!report.admissible) {
        std::ostringstream msg;
        msg << "1/p - s/d = " << a << " must lie strictly between 1/p1 - s1/d = " << a1
            << " and 1/p2 - s2/d = " << a2;
        report.message = msg.str();
    }
    return report;
}

Theta theta(const GnsProblem& problem) {
    const auto report = validate(problem);
    if (!report.admissible) throw Inadmissible(report.message);
    const double a = problem.index();
    const double a1 = problem.index1();
    const double a2 = problem.index2();
    const double value = (a - a2) / (a1 - a2);
    if (!(value > 0.0 && value < 1.0)) {
        throw Inadmissible("interpolation weight is not in (0, 1)");
    }
    return Theta{value};
}

OrientedProblem orient(const GnsProblem& problem) {
    const double th = theta(problem).value;
    OrientedProblem out;
    out.problem = problem;
    out.theta = th;
    if (problem.index1() < problem.index2()) {
        std::swap(out.problem.s1, out.problem.s2);
        std::swap(out.problem.p1, out.problem.p2);
        out.swapped = true;
        out.theta = 1.0 - th;
    }
    out.gap = out.problem.index1() - out.problem.index2();
    return out;
}

bool brezis_mironescu_exception(double s1, const LebesgueExponent& p1, double s2,
                                const LebesgueExponent& p2) {
    if (!is_natural(s2) || !p2.is_one()) return false;
    const double diff = s2 - s1;
    return diff > 0.0 && diff <= 1.0 - p1.recip();
}

std::string_view to_string(FailureTag tag) {
    switch (tag) {
        case FailureTag::kCase1: return "case1";
        case FailureTag::kCase2: return "case2";
        case FailureTag::kCase3a: return "case3a";
        case FailureTag::kCase3b: return "case3b";
    }
    return "unknown";
}

std::optional<FailureTag> known_failure_case(const GnsProblem& pr,
                                             std::optional<double> theta_hint) {
    const double inv_p1 = pr.p1.recip();
    const bool p1_open = pr.p1.is_interior();

    // s2 + θ/p1 − 1 < s < s2 + θ/p1 − θ, for the hinted θ or for some θ ∈ (0,1).
    // Both sides are upper bounds on θ, so a θ exists iff both hold as θ → 0+.
    auto window_holds = [&]() {
        if (theta_hint) {
            const double t = *theta_hint;
            return pr.s2 + t * inv_p1 - 1.0 < pr.s && pr.s < pr.s2 + t * inv_p1 - t;
        }
        return pr.s - pr.s2 + 1.0 > 0.0 && pr.s2 - pr.s > 0.0;
    };

    const bool d1_family = pr.d == 1 && pr.p2.is_one() && near(pr.s1, pr.s2 - 1.0 + inv_p1);

    if (d1_family && is_natural0(pr.s2) && !pr.p1.is_one()) {
        const bool bracket_a = p1_open && near(pr.s, pr.s2 - 1.0);
        if (bracket_a || window_holds()) return FailureTag::kCase1;
    }

    if (pr.s1 < pr.s2 && pr.p.is_infinite() && is_natural0(pr.s) &&
        near(pr.s1 - pr.d * inv_p1, pr.s) && near(pr.s2 - pr.d * pr.p2.recip(), pr.s) &&
        !(pr.p1.is_infinite() && pr.p2.is_one())) {
        return FailureTag::kCase2;
    }

    const bool between = pr.s1 <= pr.s && pr.s <= pr.s2;
    if (between) {
        if (d1_family && is_natural(pr.s2) && p1_open && window_holds() && pr.s >= pr.s1) {
            return FailureTag::kCase3a;
        }
        if (pr.p1.is_infinite() && pr.p2.is_interior() && pr.p.is_infinite() &&
            near(pr.s1, pr.s) && is_natural0(pr.s) &&
            near(pr.s2, pr.s + pr.d * pr.p2.recip())) {
            return FailureTag::kCase3b;
        }
    }
    return std::nullopt;
}

}  // namespace gnsbound
