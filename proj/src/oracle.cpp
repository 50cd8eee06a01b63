#include "gnsbound/oracle.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "gnsbound/errors.hpp"
#include "gnsbound/parabolic.hpp"
#include "gnsbound/specialfn.hpp"
#include "parallel.hpp"

namespace gnsbound {

namespace {

namespace bq = boost::math::quadrature;

constexpr double kPi = std::numbers::pi;
// In ρ = r/√c the profile is ₁F₁(α; b; −ρ²/4). At ρ = 40 the exponentially
// small part is e^{−400}, so past it only the algebraic expansion remains.
constexpr double kRhoMax = 40.0;
constexpr int kSignGrid = 4000;
constexpr int kSupGrid = 4096;
constexpr double kQuadTol = 1e-12;
constexpr double kTarget = 1e-6;

void check_function(const RadialTestFunction& f) {
    if (f.d < 1 || f.d > 3) throw DomainError("dimension must be 1, 2 or 3");
    if (!(f.a > 0.0) || !std::isfinite(f.a)) throw DomainError("width must be positive");
}

double sphere_area(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

bool even_order(double s) { return s >= 0.0 && std::abs(s - 2.0 * std::round(0.5 * s)) < 1e-12; }

std::string repr(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), res.ptr};
}

class Profile {
public:
    Profile(const RadialTestFunction& f, double s, double t)
        : alpha_(0.5 * (s + f.d)), b_(0.5 * f.d), gaussian_tail_(even_order(s)) {
        const double c = t + 0.25 / f.a;
        sqrt_c_ = std::sqrt(c);
        log_scale_ = 0.5 * f.d * std::log(kPi / f.a) - 0.5 * f.d * std::log(4.0 * kPi) +
                     std::lgamma(alpha_) - std::lgamma(b_) - alpha_ * std::log(c);
        if (!gaussian_tail_) {
            const double g = boost::math::tgamma(b_ - alpha_);
            tail_coef_ = std::tgamma(b_) / g;
        }
    }

    [[nodiscard]] double u(double rho) const {
        if (rho >= kRhoMax && !gaussian_tail_) return std::exp(log_abs_tail(rho)) * tail_sign();
        return boost::math::hypergeometric_1F1(alpha_, b_, -0.25 * rho * rho);
    }
    [[nodiscard]] double value(double r) const { return std::exp(log_scale_) * u(r / sqrt_c_); }

    // ln|u(ρ)| from Γ(b)/Γ(b−α) x^{−α} Σ (α)_k (α−b+1)_k / k! x^{−k}, x = ρ²/4.
    [[nodiscard]] double log_abs_tail(double rho) const {
        const double lx = 2.0 * std::log(rho) - std::log(4.0);
        const double x = std::exp(lx);
        double term = 1.0, sum = 1.0;
        for (int k = 0; k < 40; ++k) {
            term *= (alpha_ + k) * (alpha_ - b_ + 1.0 + k) / ((k + 1.0) * x);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return std::log(std::abs(tail_coef_)) - alpha_ * lx + std::log(std::abs(sum));
    }
    [[nodiscard]] double tail_sign() const { return tail_coef_ < 0 ? -1.0 : 1.0; }

    [[nodiscard]] bool gaussian_tail() const { return gaussian_tail_; }
    [[nodiscard]] double sqrt_c() const { return sqrt_c_; }
    [[nodiscard]] double log_scale() const { return log_scale_; }

    // Sign changes of u on (0, kRhoMax), refined.
    [[nodiscard]] std::vector<double> roots() const {
        std::vector<double> out;
        double prev_rho = 0.0;
        double prev = u(0.0);
        for (int i = 1; i <= kSignGrid; ++i) {
            const double rho = kRhoMax * i / kSignGrid;
            const double cur = u(rho);
            if (prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0)) {
                std::uintmax_t iters = 200;
                const auto br = boost::math::tools::toms748_solve(
                    [this](double x) { return u(x); }, prev_rho, rho, prev, cur,
                    boost::math::tools::eps_tolerance<double>(50), iters);
                out.push_back(0.5 * (br.first + br.second));
            }
            prev_rho = rho;
            prev = cur;
        }
        return out;
    }

private:
    double alpha_;
    double b_;
    bool gaussian_tail_;
    double tail_coef_ = 0.0;
    double sqrt_c_ = 1.0;
    double log_scale_ = 0.0;
};

struct Sum {
    double value = 0.0;
    double error = 0.0;
};

template <class F>
void add_gk(Sum& acc, F&& g, double lo, double hi) {
    double err = 0.0;
    acc.value += bq::gauss_kronrod<double, 31>::integrate(g, lo, hi, 20, kQuadTol, &err);
    acc.error += err;
}

void check_accuracy(const Sum& acc, const char* what) {
    if (!std::isfinite(acc.value) || acc.error > kTarget * std::abs(acc.value)) {
        std::ostringstream msg;
        msg << what << ": quadrature error estimate " << acc.error << " for value " << acc.value;
        throw AccuracyError(msg.str());
    }
}

double sup_norm(const Profile& prof) {
    const double rmax = kRhoMax * prof.sqrt_c();
    const double h = rmax / kSupGrid;
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i <= kSupGrid; ++i) {
        const double v = std::abs(prof.value(i * h));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double lo = std::max(0.0, (best_i - 1) * h);
    const double hi = (best_i + 1) * h;
    const auto res = boost::math::tools::brent_find_minima(
        [&](double r) { return -std::abs(prof.value(r)); }, lo, hi, 52);
    return std::max(best, -res.second);
}

// Frequency cutoff where the multiplier k^s e^{−ck²} is negligible.
double frequency_cutoff(double s, double c) { return std::sqrt((60.0 + 5.0 * std::max(s, 0.0)) / c); }

void check_order(double s, double t, int d) {
    if (!(s > -d)) throw DomainError("order must exceed −d");
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be nonnegative");
}

// Polynomial in w = r²/4t, coefficients in increasing degree.
using Poly = std::vector<double>;

Poly derivative(const Poly& q) {
    Poly out(q.size() > 1 ? q.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < q.size(); ++k) out[k - 1] = k * q[k];
    return out;
}

double eval(const Poly& q, double w) {
    double v = 0.0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) v = v * w + *it;
    return v;
}

// (−Δ)(Q(w) e^{−w}) = Q̃(w) e^{−w} with
//   Q̃ = −[w Q″ − 2w Q′ + w Q + (d/2) Q′ − (d/2) Q] / t.
Poly minus_laplacian(const Poly& q, int d, double t) {
    const Poly q1 = derivative(q);
    const Poly q2 = derivative(q1);
    Poly out(q.size() + 1, 0.0);
    auto add = [&](const Poly& p, double coef, int shift) {
        for (std::size_t k = 0; k < p.size(); ++k) out[k + shift] += coef * p[k];
    };
    const double hd = 0.5 * d;
    add(q2, -1.0 / t, 1);
    add(q1, 2.0 / t, 1);
    add(q, -1.0 / t, 1);
    add(q1, -hd / t, 0);
    add(q, hd / t, 0);
    return out;
}

double log_gaussian_norm(double gamma, double q_recip, int d) {
    if (q_recip == 0.0) return 0.0;
    return 0.5 * d * q_recip * std::log(kPi * q_recip / gamma);
}

}  // namespace

double HeatKernel::operator()(double r) const {
    return std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
}

double gaussian_norm(const RadialTestFunction& f, const LebesgueExponent& q) {
    check_function(f);
    return std::exp(log_gaussian_norm(f.a, q.recip(), f.d));
}

double radial_profile(const RadialTestFunction& f, double s, double t, double r) {
    check_function(f);
    check_order(s, t, f.d);
    return Profile(f, s, t).value(std::abs(r));
}

double radial_profile_quadrature(const RadialTestFunction& f, double s, double t, double r) {
    check_function(f);
    check_order(s, t, f.d);
    r = std::abs(r);
    const double c = t + 0.25 / f.a;
    const double amp = std::pow(kPi / f.a, 0.5 * f.d);
    auto mult = [&](double k) { return amp * std::pow(k, s) * std::exp(-c * k * k); };
    std::function<double(double)> g;
    double pre = 1.0;
    switch (f.d) {
        case 1:
            g = [&](double k) { return mult(k) * std::cos(k * r); };
            pre = 1.0 / kPi;
            break;
        case 2:
            g = [&](double k) { return mult(k) * boost::math::cyl_bessel_j(0, k * r) * k; };
            pre = 1.0 / (2.0 * kPi);
            break;
        default:
            if (r == 0.0) {
                g = [&](double k) { return mult(k) * k * k; };
                pre = 1.0 / (2.0 * kPi * kPi);
            } else {
                g = [&](double k) { return mult(k) * std::sin(k * r) * k; };
                pre = 1.0 / (2.0 * kPi * kPi * r);
            }
    }
    const double kmax = frequency_cutoff(s, c);
    const int pieces = std::max(8, static_cast<int>(std::ceil(kmax * r / kPi)));
    const double w = kmax / pieces;
    Sum acc;
    // k^s is not smooth at 0; tanh-sinh copes with the endpoint.
    {
        double err = 0.0;
        bq::tanh_sinh<double> ts;
        acc.value += ts.integrate(g, 0.0, w, kQuadTol, &err);
        acc.error += err;
    }
    for (int i = 1; i < pieces; ++i) add_gk(acc, g, i * w, (i + 1) * w);
    check_accuracy(acc, "radial inversion");
    return pre * acc.value;
}

double fractional_heat_norm(const RadialTestFunction& f, double s, double t, const LebesgueExponent& p) {
    check_function(f);
    check_order(s, t, f.d);
    const Profile prof(f, s, t);
    if (p.is_infinite()) return sup_norm(prof);

    const double pw = p.value();
    const int d = f.d;
    if (!prof.gaussian_tail() && (s + d) * pw <= d) {
        throw DomainError("profile decays like r^{-(s+d)} and is not p-integrable");
    }
    const double sc = prof.sqrt_c();
    auto g = [&](double r) { return std::pow(std::abs(prof.value(r)), pw) * std::pow(r, d - 1); };

    std::vector<double> cuts{0.0};
    for (double rho : prof.roots()) cuts.push_back(rho);
    for (double rho : {5.0, 10.0, 20.0}) cuts.push_back(rho);
    cuts.push_back(kRhoMax);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Sum acc;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) add_gk(acc, g, sc * cuts[i], sc * cuts[i + 1]);

    if (!prof.gaussian_tail()) {
        // r = R/v on (0, 1], in logs so that v → 0 stays finite.
        const double big_r = kRhoMax * sc;
        const double lr = std::log(big_r);
        auto tail = [&](double v) {
            if (!(v > 0.0)) return 0.0;
            const double lv = std::log(v);
            const double log_u = prof.log_abs_tail(kRhoMax / v);
            return std::exp(pw * (prof.log_scale() + log_u) + (d - 1) * (lr - lv) + lr - 2.0 * lv);
        };
        double err = 0.0;
        bq::tanh_sinh<double> ts;
        acc.value += ts.integrate(tail, 0.0, 1.0, kQuadTol, &err);
        acc.error += err;
    }
    check_accuracy(acc, "Lp norm");
    return std::pow(sphere_area(d) * acc.value, 1.0 / pw);
}

double plancherel_l2_norm(const RadialTestFunction& f, double s, double t) {
    check_function(f);
    check_order(s, t, f.d);
    if (!(2.0 * s + f.d > 0.0)) throw DomainError("not square integrable at the origin");
    const double c = t + 0.25 / f.a;
    const int d = f.d;
    const double amp = std::pow(kPi / f.a, static_cast<double>(d));
    auto g = [&](double k) { return amp * std::pow(k, 2.0 * s + d - 1) * std::exp(-2.0 * c * k * k); };
    Sum acc;
    const double kmax = frequency_cutoff(2.0 * s, 2.0 * c);
    bq::tanh_sinh<double> ts;
    double err = 0.0;
    acc.value = ts.integrate(g, 0.0, kmax, kQuadTol, &err);
    acc.error = err;
    check_accuracy(acc, "Plancherel");
    return std::sqrt(std::pow(2.0 * kPi, -d) * sphere_area(d) * acc.value);
}

std::vector<ParabolicGridPoint> default_parabolic_grid(int d) {
    if (d < 0 || d > 3) throw DomainError("dimension must be 0 (all), 1, 2 or 3");
    const std::vector<int> dims = d == 0 ? std::vector<int>{1, 2, 3} : std::vector<int>{d};
    const auto one = LebesgueExponent::one();
    const auto two = LebesgueExponent::from_value(2.0);
    const auto inf = LebesgueExponent::infinity();
    const auto four = LebesgueExponent::from_value(4.0);
    const std::array<std::pair<LebesgueExponent, LebesgueExponent>, 5> rp{
        {{one, two}, {two, two}, {one, inf}, {two, inf}, {two, four}}};
    std::vector<ParabolicGridPoint> out;
    for (int dim : dims) {
        for (double s : {0.0, 0.5, 1.0, 2.0, 3.5, -0.25}) {
            for (const auto& [r, p] : rp) {
                try {
                    check_regime({p, r, s, dim});
                } catch (const InvalidRegime&) {
                    continue;
                }
                if (!p.is_infinite() && !even_order(s) && (s + dim) * p.value() <= dim) continue;
                for (double t : {0.1, 1.0, 10.0}) out.push_back({dim, s, r, p, t});
            }
        }
    }
    return out;
}

SweepReport check_parabolic(const std::vector<ParabolicGridPoint>& grid, const std::vector<double>& widths,
                            int threads) {
    SweepReport rep;
    rep.param_names = {"d", "s", "r", "p", "t", "a"};
    const int nw = static_cast<int>(widths.size());
    const int n = static_cast<int>(grid.size()) * nw;
    rep.rows.resize(static_cast<std::size_t>(n));
    detail::parallel_for(n, threads, [&](int i) {
        const auto& g = grid[static_cast<std::size_t>(i / nw)];
        const double a = widths[static_cast<std::size_t>(i % nw)];
        const RadialTestFunction f{a, g.d};
        SweepRow row;
        row.params = {std::to_string(g.d), repr(g.s), g.r.to_string(), g.p.to_string(), repr(g.t), repr(a)};
        row.measured = fractional_heat_norm(f, g.s, g.t, g.p) / gaussian_norm(f, g.r);
        row.bound = bound_at_time({g.p, g.r, g.s, g.d}, g.t);
        rep.rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    for (auto& row : rep.rows) {
        row.slack = 1.0 - row.measured / row.bound;
        row.ok = row.measured <= row.bound * (1.0 + kDominanceTol);
        rep.worst_slack = std::min(rep.worst_slack, row.slack);
        if (!row.ok) ++rep.violations;
    }
    return rep;
}

std::vector<double> dilation_grid(int k) {
    if (k < 0) throw DomainError("dilation exponent must be nonnegative");
    std::vector<double> out;
    for (int j = -k; j <= k; ++j) out.push_back(std::ldexp(1.0, j));
    return out;
}

SweepReport check_gns(const BoundCertificate& cert, const std::vector<double>& widths,
                      const std::vector<double>& dilations, int threads) {
    const auto& pr = cert.problem;
    const double th = cert.theta.value;
    SweepReport rep;
    rep.param_names = {"a", "lambda"};
    const int nl = static_cast<int>(dilations.size());
    const int n = static_cast<int>(widths.size()) * nl;
    rep.rows.resize(static_cast<std::size_t>(n));
    detail::parallel_for(n, threads, [&](int i) {
        const double a = widths[static_cast<std::size_t>(i / nl)];
        const double lam = dilations[static_cast<std::size_t>(i % nl)];
        const RadialTestFunction f{a * lam * lam, pr.d};
        const double n0 = fractional_heat_norm(f, pr.s, 0.0, pr.p);
        const double n1 = fractional_heat_norm(f, pr.s1, 0.0, pr.p1);
        const double n2 = fractional_heat_norm(f, pr.s2, 0.0, pr.p2);
        SweepRow row;
        row.params = {repr(a), repr(lam)};
        row.measured = std::exp(std::log(n0) - th * std::log(n1) - (1.0 - th) * std::log(n2));
        row.bound = cert.value;
        rep.rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    for (auto& row : rep.rows) {
        row.slack = 1.0 - row.measured / row.bound;
        row.ok = row.measured <= row.bound * (1.0 + kDominanceTol);
        rep.worst_slack = std::min(rep.worst_slack, row.slack);
        if (!row.ok) ++rep.violations;
    }
    for (std::size_t w = 0; w < widths.size(); ++w) {
        double lo = INFINITY, hi = 0.0;
        for (int j = 0; j < nl; ++j) {
            const double m = rep.rows[w * nl + j].measured;
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        if (nl > 0) rep.dilation_spread = std::max(rep.dilation_spread, hi / lo - 1.0);
    }
    rep.dilation_ok = rep.dilation_spread <= kDilationTol;
    return rep;
}

std::string sweep_to_csv(const SweepReport& report) {
    std::ostringstream out;
    for (const auto& name : report.param_names) out << name << ',';
    out << "measured,bound,slack,ok\n";
    for (const auto& row : report.rows) {
        for (const auto& v : row.params) out << v << ',';
        out << repr(row.measured) << ',' << repr(row.bound) << ',' << repr(row.slack) << ','
            << (row.ok ? "true" : "false") << '\n';
    }
    return out.str();
}

HeatL1Check heat_l1_deriv_check(int n, int d, double t) {
    if (n < 0 || n > 4) throw DomainError("derivative order must be in [0, 4]");
    if (d < 1 || d > 3) throw DomainError("dimension must be 1, 2 or 3");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive");
    Poly q{1.0};
    for (int k = 0; k < n; ++k) q = minus_laplacian(q, d, t);

    const double pre = std::pow(4.0 * kPi * t, -0.5 * d) * sphere_area(d);
    auto g = [&](double r) {
        const double w = r * r / (4.0 * t);
        return pre * std::abs(eval(q, w)) * std::exp(-w) * std::pow(r, d - 1);
    };
    const double wmax = 120.0;
    auto r_of = [&](double w) { return std::sqrt(4.0 * t * w); };
    std::vector<double> cuts{0.0};
    double prev_w = 0.0, prev = eval(q, 0.0);
    for (int i = 1; i <= kSignGrid; ++i) {
        const double w = wmax * i / kSignGrid;
        const double cur = eval(q, w);
        if (prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0)) {
            std::uintmax_t iters = 200;
            const auto br = boost::math::tools::toms748_solve([&](double x) { return eval(q, x); }, prev_w, w, prev,
                                                              cur, boost::math::tools::eps_tolerance<double>(50), iters);
            cuts.push_back(r_of(0.5 * (br.first + br.second)));
        }
        prev_w = w;
        prev = cur;
    }
    cuts.push_back(r_of(wmax));
    Sum acc;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) add_gk(acc, g, cuts[i], cuts[i + 1]);
    check_accuracy(acc, "heat derivative");

    HeatL1Check out;
    out.measured = acc.value;
    out.bound = specialfn::heat_deriv_l1_bound(n, d) * std::pow(t, -n);
    out.ok = out.measured <= out.bound * (1.0 + 1e-8);
    return out;
}

std::vector<double> default_young_widths() {
    std::vector<double> out;
    for (int i = 0; i <= 32; ++i) out.push_back(std::exp2(-4.0 + 0.25 * i));
    return out;
}

YoungCheck young_extremizer_check(const LebesgueExponent& p, const LebesgueExponent& q,
                                  const LebesgueExponent& r, int d, const std::vector<double>& widths) {
    if (d < 1 || d > 3) throw DomainError("dimension must be 1, 2 or 3");
    if (widths.empty()) throw DomainError("width grid is empty");
    for (double w : widths) {
        if (!(w > 0.0)) throw DomainError("widths must be positive");
    }
    YoungCheck out;
    out.constant = young_constant(p, q, r, d);
    // ‖e^{−α}*e^{−β}‖_p / (‖e^{−α}‖_q ‖e^{−β}‖_r); the convolution is
    // (π/(α+β))^{d/2} e^{−αβ/(α+β)|x|²}.
    auto log_ratio = [&](double al, double be) {
        const double sum = al + be;
        return 0.5 * d * std::log(kPi / sum) + log_gaussian_norm(al * be / sum, p.recip(), d) -
               log_gaussian_norm(al, q.recip(), d) - log_gaussian_norm(be, r.recip(), d);
    };
    double best = -INFINITY;
    for (double al : widths) {
        for (double be : widths) {
            const double v = log_ratio(al, be);
            if (v > best) {
                best = v;
                out.alpha = al;
                out.beta = be;
            }
        }
    }
    double step = 0.0;
    auto sorted = widths;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) step = std::max(step, std::log(sorted[i] / sorted[i - 1]));
    if (step > 0.0) {
        const double la = std::log(out.alpha);
        const auto res = boost::math::tools::brent_find_minima(
            [&](double x) { return -log_ratio(std::exp(x), out.beta); }, la - 2.0 * step, la + 2.0 * step, 52);
        if (-res.second > best) {
            best = -res.second;
            out.alpha = std::exp(res.first);
        }
    }
    out.best_ratio = std::exp(best);
    out.ok = out.best_ratio <= out.constant * (1.0 + kDominanceTol) &&
             out.best_ratio >= out.constant * (1.0 - 1e-3);
    return out;
}

}  // namespace gnsbound
