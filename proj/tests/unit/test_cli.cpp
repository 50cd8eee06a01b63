#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "gnsbound/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "gnsbound");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = gnsbound::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch() {
    const auto dir = fs::temp_directory_path() / ("gnsbound_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

const std::vector<std::string> kAgmon{"--d", "1", "--s", "0", "--p", "inf", "--s1", "1",
                                      "--p1", "2", "--s2", "0", "--p2", "2"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

}  // namespace

TEST_CASE("cli bound") {
    const auto dir = scratch();
    auto args = with({"bound"}, kAgmon);
    args = with(args, {"--starts", "16", "--seed", "42"});

    const auto a = run(with(args, {"--json-out", (dir / "a.json").string(), "--manifest", (dir / "m.json").string()}));
    CHECK(a.code == 0);
    CHECK(a.out.find("theta = 0.5\n") != std::string::npos);
    const auto b = run(with(args, {"--json-out", (dir / "b.json").string()}));
    CHECK(b.code == 0);
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    const auto manifest = slurp(dir / "m.json");
    CHECK(manifest.find("\"timestamp\"") != std::string::npos);
    CHECK(manifest.find("\"artifact_version\": \"0.1.0\"") != std::string::npos);
    CHECK(manifest.find("\"--starts\": \"16\"") != std::string::npos);

    // Without --json-out the certificate goes to stdout.
    const auto c = run(args);
    CHECK(c.code == 0);
    CHECK(c.out.find("\"objective_form\": \"t0_substituted\"") != std::string::npos);

    auto bad = kAgmon;
    bad[3] = "2";  // s = 2 leaves the interpolation range
    const auto inad = run(with({"bound"}, bad));
    CHECK(inad.code == 2);
    CHECK(inad.err.find("inadmissible") != std::string::npos);
    bad = kAgmon;
    bad[5] = "0.5";
    CHECK(run(with({"bound"}, bad)).code == 2);
    CHECK(run({"bound", "--d", "1"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);
    fs::remove_all(dir);
}

TEST_CASE("cli seed from the environment") {
    const auto dir = scratch();
    ::setenv("GNS_SEED", "7", 1);
    const auto r = run(with(with({"sample"}, kAgmon), {"--n", "3", "--manifest", (dir / "m.json").string()}));
    ::unsetenv("GNS_SEED");
    CHECK(r.code == 0);
    CHECK(slurp(dir / "m.json").find("\"seed\": 7") != std::string::npos);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
    const auto explicit_seed = run(with(with({"sample"}, kAgmon), {"--n", "3", "--seed", "7"}));
    CHECK(explicit_seed.out == r.out);
    fs::remove_all(dir);
}

TEST_CASE("cli parabolic") {
    auto r = run({"parabolic", "--d", "1", "--s", "0", "--r", "2", "--p", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "a_par = 1\n");
    r = run({"parabolic", "--d", "3", "--s", "2", "--r", "2", "--p", "2", "--t", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "a_par = 3\nbound_at_time = 1.5\n");
    r = run({"parabolic", "--d", "2", "--s", "-1", "--r", "1", "--p", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Sobolev endpoint") != std::string::npos);
    CHECK(r.out.empty());
    CHECK(run({"parabolic", "--d", "1", "--s", "0", "--r", "2", "--p", "2", "--form", "other"}).code == 2);
}

TEST_CASE("cli verify") {
    const auto dir = scratch();
    const auto cert = (dir / "c.json").string();
    REQUIRE(run(with(with({"bound"}, kAgmon), {"--starts", "8", "--json-out", cert})).code == 0);

    const auto csv = (dir / "g.csv").string();
    auto r = run({"verify", "gns", "--cert", cert, "--widths", "0.5,1,2", "--dilations", "5", "--csv-out", csv});
    CHECK(r.code == 0);
    const auto text = slurp(csv);
    CHECK(std::count(text.begin(), text.end(), '\n') == 34);
    CHECK(text.find("false") == std::string::npos);

    {
        std::ofstream f(dir / "bad.json");
        f << "{\"d\": ";
    }
    CHECK(run({"verify", "gns", "--cert", (dir / "bad.json").string()}).code == 2);
    CHECK(run({"verify", "gns", "--cert", (dir / "missing.json").string()}).code == 2);

    auto tampered = slurp(cert);
    const auto at = tampered.find("\"value\": ");
    REQUIRE(at != std::string::npos);
    tampered.replace(at, 10, "\"value\": 0.0");
    {
        std::ofstream f(dir / "t.json");
        f << tampered;
    }
    CHECK(run({"verify", "gns", "--cert", (dir / "t.json").string()}).code == 2);

    r = run({"verify", "parabolic", "--d", "1", "--grid", "default", "--csv-out", (dir / "p.csv").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("violations 0") != std::string::npos);
    CHECK(run({"verify", "parabolic", "--grid", "other"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    fs::remove_all(dir);
}
