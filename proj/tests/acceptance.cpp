// Acceptance criteria, one PASS/FAIL line each. argv[1] is the gnsbound tool.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "gnsbound/certificate.hpp"
#include "gnsbound/oracle.hpp"
#include "gnsbound/parabolic.hpp"
#include "gnsbound/specialfn.hpp"
#include "oracles.hpp"
#include "unit/support.hpp"

using namespace gnsbound;
using testing::rel_err;

namespace {

// Pinned tolerances.
constexpr double kExactTol = 1e-12;        // 1
constexpr double kGridMinTol = 1e-8;       // 2
constexpr double kBetaTol = 1e-9;          // 2
constexpr double kBellTol = 1e-10;         // 3
constexpr double kChainTol = 1e-9;         // 3
constexpr double kHeatL1Tol = 1e-8;        // 3
constexpr double kYoungLow = 1e-3;         // 4
constexpr double kYoungHigh = 1e-6;        // 4
constexpr double kDominance = 1e-6;        // 5, 6
constexpr double kDilation = 1e-6;         // 6
constexpr double kObjectiveTol = 1e-9;     // 7

struct Outcome {
    bool pass = true;
    std::string detail;
};

LebesgueExponent ex(const char* s) { return LebesgueExponent::parse(s); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Outcome closed_forms() {
    Outcome o;
    double worst = 0.0;
    for (const char* p : {"1", "2", "inf"}) {
        for (int d = 1; d <= 3; ++d) {
            worst = std::max(worst, std::abs(a_par({ex(p), ex(p), 0.0, d}) - 1.0));
            worst = std::max(worst, std::abs(a_par({ex(p), ex(p), 2.0, d}) - d) / d);
            for (double t : {0.1, 1.0, 10.0}) worst = std::max(worst, std::abs(heat_kernel_norm(t, ex("1"), d) - 1.0));
        }
    }
    o.pass = worst <= kExactTol;
    o.detail = "max deviation " + fmt(worst);
    return o;
}

Outcome appendix_lemmas() {
    Outcome o;
    std::mt19937_64 rng(20241);
    double worst_min = 0.0, worst_beta = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a = 5.0 * (1.0 - testing::uniform(rng, 0.0, 1.0));  // (0, 5]
        const double b = 5.0 * (1.0 - testing::uniform(rng, 0.0, 1.0));
        worst_min = std::max(worst_min, rel_err(specialfn::min_product_power(a, b), testing::grid_min(a, b)));
    }
    for (int i = 0; i < 20; ++i) {
        const double a = testing::uniform(rng, -1.0, 0.9);
        const double b = testing::uniform(rng, 1.0 - a + 0.05, 5.0);
        worst_beta = std::max(worst_beta, rel_err(specialfn::beta_integral(a, b), testing::beta_quadrature(a, b)));
    }
    o.pass = worst_min <= kGridMinTol && worst_beta <= kBetaTol;
    o.detail = "power-product " + fmt(worst_min) + ", beta " + fmt(worst_beta);
    return o;
}

Outcome heat_chain() {
    Outcome o;
    double worst_bell = 0.0, worst_chain = 0.0, worst_ratio = 0.0;
    for (double sigma : {0.3, 1.0, 4.0}) {
        for (int ell = 0; ell <= 12; ++ell) {
            std::vector<double> x;
            for (int j = 1; j <= ell; ++j) x.push_back(sigma * std::tgamma(j + 1.0));
            worst_bell = std::max(worst_bell, rel_err(specialfn::bell_complete({ell, x}),
                                                      specialfn::bell_via_generating_function(ell, sigma)));
        }
    }
    for (int d = 1; d <= 3; ++d) {
        for (int n = 0; n <= 6; ++n) {
            const double closed = std::tgamma(0.5 * d + n) * std::pow(2.0, n) / std::tgamma(0.5 * d);
            worst_chain = std::max(worst_chain, rel_err(specialfn::heat_deriv_l1_partition_chain(n, d), closed));
        }
    }
    bool dominated = true;
    for (int d = 1; d <= 3; ++d) {
        for (int n = 0; n <= 4; ++n) {
            for (double t : {0.5, 1.0, 2.0}) {
                const auto c = heat_l1_deriv_check(n, d, t);
                dominated = dominated && c.measured <= c.bound * (1.0 + kHeatL1Tol);
                worst_ratio = std::max(worst_ratio, c.measured / c.bound);
            }
        }
    }
    o.pass = worst_bell <= kBellTol && worst_chain <= kChainTol && dominated;
    o.detail = "Bell " + fmt(worst_bell) + ", chain " + fmt(worst_chain) + ", max measured/bound " + fmt(worst_ratio);
    return o;
}

Outcome young() {
    Outcome o;
    const auto w = default_young_widths();
    for (const auto& [p, q, r, d] : std::vector<std::tuple<const char*, const char*, const char*, int>>{
             {"2", "4/3", "4/3", 1}, {"3", "3/2", "3/2", 2}}) {
        const auto c = young_extremizer_check(ex(p), ex(q), ex(r), d, w);
        const bool in = c.best_ratio >= c.constant * (1.0 - kYoungLow) && c.best_ratio <= c.constant * (1.0 + kYoungHigh);
        o.pass = o.pass && in;
        o.detail += std::string(o.detail.empty() ? "" : ", ") + "ratio/A_Y - 1 = " + fmt(c.best_ratio / c.constant - 1.0);
    }
    return o;
}

Outcome parabolic_sweep() {
    Outcome o;
    const auto grid = default_parabolic_grid(0);
    const auto rep = check_parabolic(grid, {0.5, 1.0, 2.0});
    int negative = 0;
    for (const auto& g : grid) negative += g.s < 0 ? 1 : 0;
    o.pass = rep.violations == 0 && rep.worst_slack >= -kDominance;
    o.detail = std::to_string(rep.rows.size()) + " rows (" + std::to_string(negative * 3) +
               " at s=-0.25), violations " + std::to_string(rep.violations) + ", worst slack " + fmt(rep.worst_slack);
    return o;
}

Outcome gns_end_to_end() {
    Outcome o;
    const auto agmon = minimize(testing::agmon(), {});
    const auto frac = minimize(testing::fractional(), {});
    const auto dil = dilation_grid(5);
    const auto ra = check_gns(agmon, {0.5, 1.0, 2.0}, dil);
    const auto rf = check_gns(frac, {0.5, 1.0, 2.0}, dil);
    const bool feasible = agmon.margins.ok && frac.margins.ok;
    const bool sharp = agmon.value >= 1.0;
    const bool dominated = ra.violations == 0 && rf.violations == 0;
    const double spread = std::max(ra.dilation_spread, rf.dilation_spread);
    o.pass = feasible && sharp && dominated && spread <= kDilation;
    o.detail = "Agmon value " + fmt(agmon.value) + ", fractional value " + fmt(frac.value) + ", worst slack " +
               fmt(std::min(ra.worst_slack, rf.worst_slack)) + ", dilation spread " + fmt(spread) +
               (feasible ? "" : ", INFEASIBLE");
    return o;
}

Outcome objective_cross_check() {
    Outcome o;
    int printed = 0, substituted = 0, total = 0;
    bool certified = true;
    for (const auto& pr : {testing::agmon(), testing::fractional()}) {
        for (const auto& pt : sample_sigma(pr, 100, 777)) {
            const auto t = testing::unit_terms(pr, pt);
            const double direct = testing::two_term_at(t, testing::bisect_t0(t));
            ++total;
            if (rel_err(closed_form_objective(pr, pt), direct) <= kObjectiveTol) ++printed;
            if (rel_err(objective(pr, pt), direct) <= kObjectiveTol) ++substituted;
        }
        OptimizerConfig cfg;
        cfg.starts = 8;
        const auto cert = minimize(pr, cfg);
        certified = certified && cert.objective_form == std::string("t0_substituted") && certificate_consistent(cert);
    }
    const bool closed_route = printed == total;
    const bool fallback_route = substituted == total && certified;
    o.pass = closed_route || fallback_route;
    o.detail = "printed closed form matches " + std::to_string(printed) + "/" + std::to_string(total) +
               "; t0-substituted matches " + std::to_string(substituted) + "/" + std::to_string(total) +
               (closed_route ? "" : ", fallback active") + (certified ? ", certificates consistent" : "");
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome determinism(const std::string& tool) {
    Outcome o;
    if (tool.empty()) {
        o.pass = false;
        o.detail = "tool path not given";
        return o;
    }
    const auto dir = std::filesystem::temp_directory_path() / ("gnsbound_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string flags = " bound --d 1 --s 0 --p inf --s1 1 --p1 2 --s2 0 --p2 2 --starts 64 --seed 42";
    std::vector<std::string> docs;
    for (int i = 0; i < 2; ++i) {
        const auto out = dir / ("cert" + std::to_string(i) + ".json");
        const auto log = dir / "log.txt";
        const std::string cmd = "\"" + tool + "\"" + flags + " --json-out \"" + out.string() + "\" --manifest \"" +
                                (dir / ("m" + std::to_string(i) + ".json")).string() + "\" > \"" + log.string() +
                                "\" 2>&1";
        if (std::system(cmd.c_str()) != 0) {
            o.pass = false;
            o.detail = "run " + std::to_string(i) + " failed";
        }
        docs.push_back(slurp(out));
    }
    std::filesystem::remove_all(dir);
    if (!o.pass) return o;
    o.pass = !docs[0].empty() && docs[0] == docs[1];
    o.detail = std::to_string(docs[0].size()) + " bytes, " + (o.pass ? "identical" : "DIFFERENT");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string tool = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"closed-form sanity", closed_forms},
        {"appendix lemmas", appendix_lemmas},
        {"heat-derivative proof chain", heat_chain},
        {"Young optimality", young},
        {"parabolic sweep", parabolic_sweep},
        {"GNS end-to-end", gns_end_to_end},
        {"objective cross-check", objective_cross_check},
        {"determinism", [&] { return determinism(tool); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
