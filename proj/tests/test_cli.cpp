#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

#ifndef TIMESEED_CLI_PATH
#error "TIMESEED_CLI_PATH must point at the CLI binary"
#endif

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code = -1;
    std::string out;
};

/// Runs the CLI through the shell, capturing stdout (stderr by request).
CliResult run_cli(const std::string& args, bool capture_stderr = false,
                  const std::string& env_prefix = "") {
    std::string cmd = env_prefix + "\"" + TIMESEED_CLI_PATH + "\" " + args;
    cmd += capture_stderr ? " 2>&1 1>/dev/null" : " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path scratch_file(const std::string& name) {
    return fs::temp_directory_path() / ("timeseed_cli_" + name);
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path path = scratch_file(name);
    std::ofstream out(path);
    out << text;
    REQUIRE(out.good());
    return path;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("version and help") {
    CHECK(run_cli("--version").code == 0);
    CHECK(run_cli("--version").out.find("0.1.0") != std::string::npos);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("simulate --help").code == 0);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").code == 2);                       // missing subcommand
    CHECK(run_cli("simulate").code == 2);               // neither config nor preset
    CHECK(run_cli("simulate --preset fig1 --config x.json").code == 2);
    CHECK(run_cli("simulate --preset nope").code == 2);
    CHECK(run_cli("simulate --frobnicate").code == 2);  // unknown flag
    CHECK(run_cli("simulate --config /does/not/exist.json").code == 2);
}

TEST_CASE("malformed config reports the byte offset on stderr") {
    const fs::path path = write_config("broken.json", "{\"command\": }");
    const CliResult res =
        run_cli("simulate --config \"" + path.string() + "\"", true);
    CHECK(res.code == 2);
    CHECK(res.out.find("parse error at byte") != std::string::npos);
}

TEST_CASE("simulate emits the trajectory table deterministically") {
    const CliResult res = run_cli("simulate --preset fig1");
    CHECK(res.code == 0);
    CHECK(first_line(res.out) == "t,mx_0,my_0,mz_0,mx_1,my_1,mz_1");
    // Second data line is t = dt_out = 0.05.
    CHECK(res.out.find("\n0.05,") != std::string::npos);

    const CliResult again = run_cli("simulate --preset fig1");
    CHECK(again.out == res.out);
}

TEST_CASE("simulate handles a single-ensemble config") {
    const fs::path path = write_config("single.json", R"({
        "command": "simulate",
        "params": {"ensembles": [{"omega": 0.9}]},
        "integration": {"t_end": 10.0, "dt_out": 0.5}
    })");
    const CliResult res = run_cli("simulate --config \"" + path.string() + "\"");
    CHECK(res.code == 0);
    CHECK(first_line(res.out) == "t,mx_0,my_0,mz_0");
}

TEST_CASE("seed override replaces the initial state") {
    const fs::path path = write_config("seed.json", R"({
        "command": "simulate",
        "params": {"ensembles": [{"omega": 1.5}, {"omega": 0.9}],
                   "coupling": {"kind": "dissipative", "strength": 0.1}},
        "integration": {"t_end": 1.0, "dt_out": 0.5}
    })");
    const std::string base = "simulate --config \"" + path.string() + "\"";
    const CliResult res =
        run_cli(base + " --seed-override \"0.1,0.2,0.3;0,0,-1\"");
    CHECK(res.code == 0);
    CHECK(res.out.find("\n0,0.1,0.2,0.3,0,0,-1\n") != std::string::npos);

    CHECK(run_cli(base + " --seed-override \"0.1,0.2\"").code == 2);
    CHECK(run_cli(base + " --seed-override \"0.1,0.2,zz;0,0,0\"").code == 2);
    CHECK(run_cli(base + " --seed-override \"1,1,1;0,0,0\"").code == 2);  // off ball
}

TEST_CASE("spectrum table and fit guard rails") {
    // The preset keeps the fit on, so two sizes cannot support mu_re = 5.
    CHECK(run_cli("spectrum --preset fig1f --sizes 6,10").code == 2);

    const CliResult res = run_cli("spectrum --preset fig1f --sizes 6 --no-fit");
    CHECK(res.code == 0);
    CHECK(first_line(res.out) == "N,re_lambda1,im_lambda1,re_lambda2,im_lambda2");
    CHECK(res.out.find("\n6,-0.752951") != std::string::npos);
    CHECK(res.out.find("1.141113") != std::string::npos);
}

TEST_CASE("spectrum cross-check compares both eigensolver paths") {
    const CliResult res =
        run_cli("spectrum --preset fig1f --sizes 6 --no-fit --cross-check");
    CHECK(res.code == 0);
    const auto pos = res.out.find("\"max_abs_delta\":");
    REQUIRE(pos != std::string::npos);
    double delta = 1.0;
    REQUIRE(std::sscanf(res.out.c_str() + pos + 16, "%lf", &delta) == 1);
    CHECK(delta < 1e-7);
}

TEST_CASE("dense cap environment variable is validated") {
    const std::string cmd = "spectrum --preset fig1f --sizes 6 --no-fit";
    CHECK(run_cli(cmd, false, "TIMESEED_DENSE_CAP=abc ").code == 2);
    // A tiny cap forces the shift-invert path; the table must not change.
    const CliResult dense = run_cli(cmd);
    const CliResult iterative = run_cli(cmd, false, "TIMESEED_DENSE_CAP=100 ");
    CHECK(iterative.code == 0);
    CHECK(first_line(iterative.out) == first_line(dense.out));
    CHECK(iterative.out.find("\n6,-0.752951") != std::string::npos);
}

TEST_CASE("crit reports bisection against the closed form") {
    const CliResult coherent = run_cli("crit --preset appD");
    CHECK(coherent.code == 0);
    CHECK(coherent.out.find("\"kind\":\"coherent\"") != std::string::npos);
    CHECK(coherent.out.find("\"analytic\":null") != std::string::npos);
    CHECK(coherent.out.find("\"bisection\":1.088") != std::string::npos);

    const fs::path path = write_config("crit.json", R"({
        "command": "crit",
        "params": {"ensembles": [{"omega": 1.5}, {"omega": 0.9}],
                   "coupling": {"kind": "dissipative", "strength": 0.0}},
        "crit": {"lo": 0.5, "hi": 0.9, "tol": 1e-4}
    })");
    const CliResult diss = run_cli("crit --config \"" + path.string() + "\"");
    CHECK(diss.code == 0);
    CHECK(diss.out.find("\"analytic\":0.714285714286") != std::string::npos);
    CHECK(diss.out.find("\"difference\":") != std::string::npos);
}

TEST_CASE("sweep writes a resumable grid artifact") {
    const fs::path grid_path = scratch_file("grid.csv");
    std::error_code ignored;
    fs::remove(grid_path, ignored);

    const fs::path cfg = write_config("sweep.json", R"({
        "command": "sweep",
        "params": {"ensembles": [{"omega": 1.5}, {"omega": 0.9}],
                   "coupling": {"kind": "dissipative", "strength": 0.0}},
        "grid": {"axis1": {"name": "coupling", "start": 0.7,
                           "stop": 0.8, "count": 3},
                 "metric": "omega_obs"},
        "integration": {"t_end": 300.0, "dt_out": 0.2}
    })");
    const std::string cmd = "sweep --config \"" + cfg.string() + "\" --out \"" +
                            grid_path.string() + "\"";
    const CliResult first = run_cli(cmd);
    CHECK(first.code == 0);
    CHECK(first.out.find("(3/3 cells)") != std::string::npos);
    REQUIRE(fs::exists(grid_path));

    std::ifstream in(grid_path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    CHECK(first_line(bytes).find("\"version\":1") != std::string::npos);

    // Resume over a complete grid is a no-op.
    const CliResult second = run_cli(cmd);
    CHECK(second.code == 0);
    std::ifstream in2(grid_path);
    std::string bytes2((std::istreambuf_iterator<char>(in2)),
                       std::istreambuf_iterator<char>());
    CHECK(bytes2 == bytes);

    // Same spec without --out streams the same grid to stdout.
    const CliResult streamed = run_cli("sweep --config \"" + cfg.string() + "\"");
    CHECK(streamed.code == 0);
    CHECK(streamed.out == bytes);

    // A conflicting spec must not clobber the existing artifact.
    const fs::path other = write_config("sweep_other.json", R"({
        "command": "sweep",
        "params": {"ensembles": [{"omega": 1.5}, {"omega": 0.9}],
                   "coupling": {"kind": "dissipative", "strength": 0.0}},
        "grid": {"axis1": {"name": "coupling", "start": 0.7,
                           "stop": 0.8, "count": 4},
                 "metric": "omega_obs"},
        "integration": {"t_end": 300.0, "dt_out": 0.2}
    })");
    const CliResult clash = run_cli("sweep --config \"" + other.string() +
                                    "\" --out \"" + grid_path.string() + "\"");
    CHECK(clash.code == 2);
    std::ifstream in3(grid_path);
    std::string bytes3((std::istreambuf_iterator<char>(in3)),
                       std::istreambuf_iterator<char>());
    CHECK(bytes3 == bytes);
}

TEST_CASE("validation failures exit with code 2") {
    const fs::path path = write_config("badthreads.json", R"({
        "command": "simulate",
        "params": {"ensembles": [{"omega": 0.9}]},
        "integration": {"t_end": 10.0, "dt_out": 0.5}
    })");
    CHECK(run_cli("simulate --config \"" + path.string() + "\" --threads 0").code == 2);
    CHECK(run_cli("simulate --config \"" + path.string() + "\" --threads 2").code == 0);
}

}  // TEST_SUITE("cli")
