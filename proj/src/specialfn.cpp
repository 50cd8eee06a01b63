#include "gnsbound/specialfn.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>

#include "gnsbound/errors.hpp"

namespace gnsbound::specialfn {

namespace {

// x ln x with the 0 ln 0 = 0 convention.
double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

void check_order(int ell) {
    if (ell < 0 || ell > kMaxBellOrder) {
        std::ostringstream msg;
        msg << "Bell order " << ell << " outside [0, " << kMaxBellOrder << "]";
        throw SizeError(msg.str());
    }
}

void generate(int remaining, int part, std::vector<int>& r, std::vector<std::vector<int>>& out) {
    if (part == 0) {
        if (remaining == 0) out.push_back(r);
        return;
    }
    for (int count = remaining / part; count >= 0; --count) {
        r[part - 1] = count;
        generate(remaining - count * part, part - 1, r, out);
    }
    r[part - 1] = 0;
}

double log_factorial(int n) { return log_gamma(n + 1.0); }

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || std::isinf(x)) {
        std::ostringstream msg;
        msg << "log_gamma requires a finite positive argument, got " << x;
        throw DomainError(msg.str());
    }
    return boost::math::lgamma(x);
}

double log_min_product_power(double alpha, double beta) {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
        throw DomainError("min_product_power requires nonnegative exponents");
    }
    return xlogx(alpha + beta) - xlogx(alpha) - xlogx(beta);
}

double min_product_power(double alpha, double beta) {
    return std::exp(log_min_product_power(alpha, beta));
}

double beta_integral(double alpha, double beta) {
    if (!(alpha < 1.0) || !(beta > 1.0 - alpha)) {
        std::ostringstream msg;
        msg << "beta_integral requires alpha < 1 and beta > 1 - alpha, got (" << alpha << ", "
            << beta << ")";
        throw DomainError(msg.str());
    }
    return std::exp(log_gamma(alpha + beta - 1.0) + log_gamma(1.0 - alpha) - log_gamma(beta));
}

std::vector<std::vector<int>> partitions(int ell) {
    check_order(ell);
    std::vector<std::vector<int>> out;
    std::vector<int> r(static_cast<std::size_t>(ell), 0);
    generate(ell, ell, r, out);
    return out;
}

double bell_complete(const BellInput& input) {
    check_order(input.ell);
    if (static_cast<int>(input.x.size()) != input.ell) {
        throw DomainError("Bell input length does not match its order");
    }
    double total = 0.0;
    for (const auto& r : partitions(input.ell)) {
        double term = 1.0;
        for (int j = 1; j <= input.ell; ++j) {
            const int rj = r[j - 1];
            if (rj == 0) continue;
            const double base = input.x[j - 1] / std::exp(log_factorial(j));
            term *= std::pow(base, rj) / std::exp(log_factorial(rj));
        }
        total += term;
    }
    return std::exp(log_factorial(input.ell)) * total;
}

double bell_via_generating_function(int ell, double sigma) {
    check_order(ell);
    std::vector<double> e(static_cast<std::size_t>(ell) + 1, 0.0);
    e[0] = 1.0;
    for (int n = 1; n <= ell; ++n) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k) acc += k * sigma * e[n - k];
        e[n] = acc / n;
    }
    return std::exp(log_factorial(ell)) * e[ell];
}

double heat_deriv_l1_bound(int n, int d) {
    const double half_d = 0.5 * d;
    return std::exp(log_gamma(half_d + n) + n * std::log(2.0) - log_gamma(half_d));
}

double partition_gamma_sum(int ell, int d) {
    const double half_d = 0.5 * d;
    double total = 0.0;
    for (const auto& r : partitions(ell)) {
        int weight = 0;
        double log_denominator = 0.0;
        for (int rj : r) {
            weight += rj;
            log_denominator += log_factorial(rj);
        }
        total += std::exp(log_gamma(half_d + weight) - log_denominator);
    }
    return total;
}

double heat_deriv_l1_partition_chain(int n, int d) {
    const double half_d = 0.5 * d;
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double coeff =
            std::exp(log_gamma(half_d + k) - log_factorial(k) - 2.0 * log_gamma(half_d));
        total += coeff * partition_gamma_sum(n - k, d);
    }
    return std::exp(log_factorial(n)) * total;
}

}  // namespace gnsbound::specialfn
