#include "gnsbound/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <ostream>
#include <sstream>

#include "gnsbound/certificate.hpp"
#include "gnsbound/errors.hpp"
#include "gnsbound/oracle.hpp"
#include "gnsbound/parabolic.hpp"

namespace gnsbound::cli {

namespace {

// Human-readable; files carry the full 17 digits.
std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(15) << x;
    return s.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw OutOfRange("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw OutOfRange("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot read '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// Every option of a subcommand with its effective value.
std::map<std::string, std::string> echo(const CLI::App& cmd) {
    std::map<std::string, std::string> out;
    for (const CLI::Option* opt : cmd.get_options()) {
        if (opt->get_name() == "--help") continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
        } else {
            value = opt->get_default_str();
        }
        out[opt->get_name()] = value;
    }
    return out;
}

struct Manifest {
    std::string path;
    std::string command;
    std::map<std::string, std::string> params;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> outputs;

    void write() const {
        if (path.empty()) return;
        nlohmann::ordered_json j;
        j["command"] = command;
        j["params"] = params;
        if (seed) j["seed"] = *seed;
        j["artifact_version"] = kArtifactVersion;
        j["timestamp"] = utc_timestamp();
        j["outputs"] = outputs;
        write_file(path, j.dump(2) + "\n");
    }
};

struct ProblemFlags {
    int d = 1;
    double s = 0.0, s1 = 0.0, s2 = 0.0;
    std::string p, p1, p2;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--d", d, "dimension")->required();
        cmd->add_option("--s", s, "order of the left side")->required();
        cmd->add_option("--s1", s1, "order of the first endpoint")->required();
        cmd->add_option("--s2", s2, "order of the second endpoint")->required();
        cmd->add_option("--p", p, "exponent of the left side (decimal, a/b or inf)")->required();
        cmd->add_option("--p1", p1, "exponent of the first endpoint")->required();
        cmd->add_option("--p2", p2, "exponent of the second endpoint")->required();
    }

    [[nodiscard]] GnsProblem problem() const {
        if (d < 1) throw OutOfRange("dimension must be positive");
        GnsProblem pr;
        pr.d = d;
        pr.s = s;
        pr.s1 = s1;
        pr.s2 = s2;
        pr.p = LebesgueExponent::parse(p);
        pr.p1 = LebesgueExponent::parse(p1);
        pr.p2 = LebesgueExponent::parse(p2);
        return pr;
    }
};

void print_rows(const SweepReport& rep, std::ostream& err) {
    for (const auto& row : rep.rows) {
        if (row.ok) continue;
        err << "violation:";
        for (std::size_t i = 0; i < row.params.size(); ++i) err << ' ' << rep.param_names[i] << '=' << row.params[i];
        err << " measured=" << num(row.measured) << " bound=" << num(row.bound) << '\n';
    }
}

int finish_sweep(const SweepReport& rep, const std::string& csv_out, Manifest& manifest, std::ostream& out,
                 std::ostream& err) {
    out << "rows " << rep.rows.size() << ", violations " << rep.violations << ", worst slack "
        << num(rep.worst_slack) << '\n';
    if (!rep.param_names.empty() && rep.param_names[0] == "a") {
        out << "dilation spread " << num(rep.dilation_spread) << '\n';
    }
    if (!csv_out.empty()) {
        write_file(csv_out, sweep_to_csv(rep));
        manifest.outputs.push_back(csv_out);
    }
    manifest.write();
    print_rows(rep, err);
    if (!rep.dilation_ok) err << "dilation invariance broken: spread " << num(rep.dilation_spread) << '\n';
    return rep.ok() ? kOk : kViolation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified upper bounds for fractional Gagliardo-Nirenberg-Sobolev constants", "gnsbound"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "write a run manifest (JSON) here");

    // bound
    auto* bound = app.add_subcommand("bound", "minimize the constant and write a certificate");
    ProblemFlags bound_flags;
    bound_flags.add_to(bound);
    OptimizerConfig cfg;
    std::string json_out;
    bound->add_option("--starts", cfg.starts, "number of starts");
    bound->add_option("--sample-per-start", cfg.sample_per_start, "sampled points per start");
    bound->add_option("--max-iters", cfg.max_iters, "Nelder-Mead iterations per start");
    bound->add_option("--rel-tol", cfg.rel_tol, "Nelder-Mead relative tolerance");
    bound->add_option("--seed", cfg.seed, "base seed")->envname("GNS_SEED");
    bound->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
    bound->add_option("--json-out", json_out, "certificate path (stdout when omitted)");

    // parabolic
    auto* para = app.add_subcommand("parabolic", "evaluate the smoothing constant");
    int pd = 1;
    double ps = 0.0;
    std::string pr_in, pp_out, form = "proof";
    std::optional<double> pt;
    para->add_option("--d", pd, "dimension")->required();
    para->add_option("--s", ps, "order")->required();
    para->add_option("--r", pr_in, "input exponent")->required();
    para->add_option("--p", pp_out, "output exponent")->required();
    para->add_option("--t", pt, "time for bound_at_time");
    para->add_option("--form", form, "proof or compact")->check(CLI::IsMember({"proof", "compact"}));

    // sample
    auto* sample = app.add_subcommand("sample", "draw points of the parameter set");
    ProblemFlags sample_flags;
    sample_flags.add_to(sample);
    int sample_n = 10;
    std::uint64_t sample_seed = 42;
    std::string sample_csv;
    sample->add_option("--n", sample_n, "number of points");
    sample->add_option("--seed", sample_seed, "seed")->envname("GNS_SEED");
    sample->add_option("--csv-out", sample_csv, "CSV path (stdout when omitted)");

    // verify
    auto* verify = app.add_subcommand("verify", "numerical verification sweeps");
    verify->require_subcommand(1);
    verify->fallthrough();
    auto* vpara = verify->add_subcommand("parabolic", "smoothing estimate sweep");
    int vd = 0;
    std::string grid = "default";
    std::vector<double> vp_widths{0.5, 1.0, 2.0};
    std::string vp_csv;
    int vp_threads = 0;
    vpara->add_option("--d", vd, "dimension (0: all)");
    vpara->add_option("--grid", grid, "grid name")->check(CLI::IsMember({"default"}));
    vpara->add_option("--widths", vp_widths, "Gaussian widths")->delimiter(',');
    vpara->add_option("--csv-out", vp_csv, "CSV path");
    vpara->add_option("--threads", vp_threads, "worker threads (0: all cores)");

    auto* vgns = verify->add_subcommand("gns", "end-to-end check of a certificate");
    std::string cert_path;
    std::vector<double> vg_widths{0.5, 1.0, 2.0};
    int dil = 5;
    std::string vg_csv;
    int vg_threads = 0;
    vgns->add_option("--cert", cert_path, "certificate JSON")->required();
    vgns->add_option("--widths", vg_widths, "Gaussian widths")->delimiter(',');
    vgns->add_option("--dilations", dil, "use dilations 2^-k .. 2^k");
    vgns->add_option("--csv-out", vg_csv, "CSV path");
    vgns->add_option("--threads", vg_threads, "worker threads (0: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadInput;
    }

    Manifest manifest;
    manifest.path = manifest_path;
    try {
        if (bound->parsed()) {
            manifest.command = "bound";
            manifest.params = echo(*bound);
            manifest.seed = cfg.seed;
            const auto problem = bound_flags.problem();
            const auto rep = validate(problem);
            if (!rep.admissible) {
                err << "inadmissible: " << rep.message << " (left margin " << num(rep.left_margin)
                    << ", right margin " << num(rep.right_margin) << ")\n";
                return kBadInput;
            }
            if (brezis_mironescu_exception(problem.s1, problem.p1, problem.s2, problem.p2)) {
                err << "note: the inhomogeneous form of this inequality is known to fail\n";
            }
            const auto cert = minimize(problem, cfg);
            const auto json = certificate_to_json(cert);
            out << "value = " << num(cert.value) << '\n';
            out << "theta = " << num(cert.theta.value) << '\n';
            if (json_out.empty()) {
                out << json;
            } else {
                write_file(json_out, json);
                manifest.outputs.push_back(json_out);
            }
            manifest.write();
            return kOk;
        }
        if (para->parsed()) {
            manifest.command = "parabolic";
            manifest.params = echo(*para);
            const ParabolicParams params{LebesgueExponent::parse(pp_out), LebesgueExponent::parse(pr_in), ps, pd};
            const auto f = form == "compact" ? ParabolicForm::kCompact : ParabolicForm::kProof;
            const double c = a_par(params, f);
            if (pt && !(*pt > 0.0)) throw DomainError("--t must be positive");
            out << "a_par = " << num(c) << '\n';
            if (pt) out << "bound_at_time = " << num(bound_at_time(params, *pt)) << '\n';
            manifest.write();
            return kOk;
        }
        if (sample->parsed()) {
            manifest.command = "sample";
            manifest.params = echo(*sample);
            manifest.seed = sample_seed;
            const auto problem = sample_flags.problem();
            if (sample_n < 1) throw OutOfRange("--n must be at least 1");
            const auto pts = sample_sigma(problem, sample_n, sample_seed);
            std::ostringstream csv;
            csv << "beta1,beta2,r1_recip,r2_recip,q1_recip,q2_recip,sigma,objective\n";
            for (const auto& q : pts) {
                csv << num(q.beta1) << ',' << num(q.beta2) << ',' << num(q.r1.recip()) << ',' << num(q.r2.recip())
                    << ',' << num(q.q1.recip()) << ',' << num(q.q2.recip()) << ',' << num(q.sigma) << ','
                    << num(objective(problem, q)) << '\n';
            }
            if (sample_csv.empty()) {
                out << csv.str();
            } else {
                write_file(sample_csv, csv.str());
                manifest.outputs.push_back(sample_csv);
            }
            manifest.write();
            return kOk;
        }
        if (vpara->parsed()) {
            manifest.command = "verify parabolic";
            manifest.params = echo(*vpara);
            const auto rep = check_parabolic(default_parabolic_grid(vd), vp_widths, vp_threads);
            return finish_sweep(rep, vp_csv, manifest, out, err);
        }
        if (vgns->parsed()) {
            manifest.command = "verify gns";
            manifest.params = echo(*vgns);
            const auto cert = certificate_from_json(read_file(cert_path));
            if (!certificate_consistent(cert, 1e-9)) {
                err << "certificate does not reproduce: point infeasible or value mismatch\n";
                return kBadInput;
            }
            if (dil < 0) throw OutOfRange("--dilations must be nonnegative");
            for (double w : vg_widths) {
                if (!(w > 0.0)) throw OutOfRange("widths must be positive");
            }
            const auto rep = check_gns(cert, vg_widths, dilation_grid(dil), vg_threads);
            return finish_sweep(rep, vg_csv, manifest, out, err);
        }
    } catch (const AccuracyError& e) {
        err << "accuracy: " << e.what() << '\n';
        return kAccuracy;
    } catch (const EmptyFeasible& e) {
        err << "sampling: " << e.what() << '\n';
        return kAccuracy;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}

}  // namespace gnsbound::cli
