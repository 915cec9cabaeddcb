// timeseed: simulate, diagonalize, and sweep networks of coupled
// dissipative collective spins.
//
// Exit codes: 0 success, 2 configuration problem, 3 numerical failure,
// 4 resource limit.

#include <CLI11.hpp>

#include "timeseed/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using timeseed::ConfigError;

struct CommonFlags {
    std::string config_path;
    std::string preset_name;
    std::string out_path;
    std::string seed_override;
    int threads = 0;
    CLI::Option* threads_opt = nullptr;
};

struct SpectrumFlags {
    std::string sizes;
    bool fit = false;
    bool cross_check = false;
    CLI::Option* fit_opt = nullptr;
    CLI::Option* cross_check_opt = nullptr;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string::size_type begin = 0;
    while (true) {
        const auto end = s.find(sep, begin);
        parts.push_back(s.substr(begin, end - begin));
        if (end == std::string::npos) break;
        begin = end + 1;
    }
    return parts;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string(what) + ": '" + s + "' is not a number");
    }
}

timeseed::BlochState parse_seed_override(const std::string& s) {
    timeseed::BlochState state;
    for (const std::string& triple : split(s, ';')) {
        if (triple.empty()) continue;
        const auto comps = split(triple, ',');
        if (comps.size() != 3)
            throw ConfigError(
                "--seed-override: expected mx,my,mz triples separated by ';', "
                "got '" + triple + "'");
        state.m.push_back({parse_double(comps[0], "--seed-override"),
                           parse_double(comps[1], "--seed-override"),
                           parse_double(comps[2], "--seed-override")});
    }
    if (state.m.empty())
        throw ConfigError("--seed-override: no Bloch vectors given");
    return state;
}

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> sizes;
    for (const std::string& part : split(s, ',')) {
        try {
            std::size_t pos = 0;
            const int n = std::stoi(part, &pos);
            if (pos != part.size()) throw std::invalid_argument(part);
            sizes.push_back(n);
        } catch (const std::exception&) {
            throw ConfigError("--sizes: '" + part + "' is not an integer");
        }
    }
    if (sizes.empty()) throw ConfigError("--sizes: empty list");
    return sizes;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

timeseed::RunConfig assemble(timeseed::Command command, const CommonFlags& flags,
                             const SpectrumFlags* spec_flags) {
    if (!flags.config_path.empty() && !flags.preset_name.empty())
        throw ConfigError("--config and --preset are mutually exclusive");
    timeseed::RunConfig cfg;
    if (!flags.preset_name.empty())
        cfg = timeseed::preset(flags.preset_name);
    else if (!flags.config_path.empty())
        cfg = timeseed::config_from_json(read_file(flags.config_path));
    else
        throw ConfigError("give --preset <name> or --config <path>");

    cfg.command = command;
    if (!flags.seed_override.empty())
        cfg.initial = parse_seed_override(flags.seed_override);
    if (flags.threads_opt != nullptr && flags.threads_opt->count() > 0)
        cfg.threads = flags.threads;
    if (spec_flags != nullptr) {
        if (!spec_flags->sizes.empty())
            cfg.spectrum.sizes = parse_sizes(spec_flags->sizes);
        if (spec_flags->fit_opt != nullptr && spec_flags->fit_opt->count() > 0)
            cfg.spectrum.fit = spec_flags->fit;
        if (spec_flags->cross_check_opt != nullptr &&
            spec_flags->cross_check_opt->count() > 0)
            cfg.spectrum.cross_check = spec_flags->cross_check;
    }
    return cfg;
}

void add_common(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--config", flags.config_path,
                    "JSON run configuration (see README for the schema)");
    sub->add_option("--preset", flags.preset_name,
                    "named recipe: fig1, fig1f, fig2, fig3a, fig3e, appD");
    sub->add_option("--out", flags.out_path, "output path (default: stdout)");
    sub->add_option("--seed-override", flags.seed_override,
                    "initial Bloch vectors as mx,my,mz;mx,my,mz;...");
    flags.threads_opt =
        sub->add_option("--threads", flags.threads, "worker threads for sweeps");
}

/// Runs `body(out)` against --out or stdout.
template <typename Body>
void with_sink(const std::string& out_path, Body&& body) {
    if (out_path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw timeseed::ResourceError("cannot open output file '" + out_path +
                                      "'");
    body(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled continuous time crystal networks: mean-field "
                 "dynamics, Liouvillian spectra, parameter sweeps"};
    app.set_version_flag("--version", "timeseed 0.1.0");
    app.require_subcommand(1);

    CommonFlags sim_flags, spec_flags_common, sweep_flags, crit_flags;
    SpectrumFlags spec_flags;

    CLI::App* sim = app.add_subcommand(
        "simulate", "integrate the mean-field equations, write a trajectory CSV");
    add_common(sim, sim_flags);

    CLI::App* spec = app.add_subcommand(
        "spectrum", "finite-size Liouvillian eigenvalue table and 1/N fits");
    add_common(spec, spec_flags_common);
    spec->add_option("--sizes", spec_flags.sizes,
                     "comma-separated total atom numbers, e.g. 6,10,14,18");
    spec_flags.fit_opt = spec->add_flag("--fit,!--no-fit", spec_flags.fit,
                                        "append 1/N scaling fits as JSON lines");
    spec_flags.cross_check_opt = spec->add_flag(
        "--cross-check", spec_flags.cross_check,
        "diagonalize the crossover size with both solvers, report max delta");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "evaluate a metric over a parameter grid (resumable via --out)");
    add_common(sweep, sweep_flags);

    CLI::App* crit = app.add_subcommand(
        "crit", "bisect the critical coupling strength, report JSON");
    add_common(crit, crit_flags);

    try {
        app.parse(argc, argv);

        if (sim->parsed()) {
            const auto cfg = assemble(timeseed::Command::Simulate, sim_flags,
                                      nullptr);
            with_sink(sim_flags.out_path,
                      [&](std::ostream& out) { timeseed::cmd_simulate(cfg, out); });
        } else if (spec->parsed()) {
            const auto cfg = assemble(timeseed::Command::Spectrum,
                                      spec_flags_common, &spec_flags);
            with_sink(spec_flags_common.out_path,
                      [&](std::ostream& out) { timeseed::cmd_spectrum(cfg, out); });
        } else if (sweep->parsed()) {
            const auto cfg =
                assemble(timeseed::Command::Sweep, sweep_flags, nullptr);
            timeseed::cmd_sweep(cfg, sweep_flags.out_path, std::cout);
        } else if (crit->parsed()) {
            const auto cfg =
                assemble(timeseed::Command::Crit, crit_flags, nullptr);
            with_sink(crit_flags.out_path,
                      [&](std::ostream& out) { timeseed::cmd_crit(cfg, out); });
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const timeseed::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const timeseed::ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
