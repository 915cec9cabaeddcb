#include "timeseed/run_config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace timeseed {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

double get_num(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

std::string get_str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

NetworkParams parse_params(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    NetworkParams p;
    if (j.contains("ladder")) {
        if (j.contains("ensembles"))
            fail(path, "give either 'ensembles' or 'ladder', not both");
        const auto& lad = j.at("ladder");
        p = uniform_detuning_ladder(
            get_int(lad.at("n"), path + ".ladder.n"),
            get_num(lad.at("omega_max"), path + ".ladder.omega_max"),
            get_num(lad.at("delta_omega"), path + ".ladder.delta_omega"),
            lad.contains("kappa") ? get_num(lad.at("kappa"), path + ".ladder.kappa")
                                  : 1.0);
    } else {
        if (!j.contains("ensembles")) fail(path, "missing 'ensembles'");
        const auto& ens = j.at("ensembles");
        if (!ens.is_array() || ens.empty())
            fail(path + ".ensembles", "expected a non-empty array");
        for (std::size_t i = 0; i < ens.size(); ++i) {
            const std::string ep =
                path + ".ensembles[" + std::to_string(i) + "]";
            const auto& e = ens[i];
            if (!e.is_object()) fail(ep, "expected an object");
            EnsembleParams out;
            out.omega = get_num(e.at("omega"), ep + ".omega");
            if (e.contains("kappa")) out.kappa = get_num(e.at("kappa"), ep + ".kappa");
            if (e.contains("n_spins"))
                out.n_spins = get_int(e.at("n_spins"), ep + ".n_spins");
            p.ensembles.push_back(out);
        }
    }
    if (j.contains("coupling")) {
        const auto& c = j.at("coupling");
        if (!c.is_object()) fail(path + ".coupling", "expected an object");
        if (c.contains("kind")) {
            const auto kind = get_str(c.at("kind"), path + ".coupling.kind");
            if (kind == "dissipative")
                p.coupling.kind = CouplingKind::Dissipative;
            else if (kind == "coherent")
                p.coupling.kind = CouplingKind::Coherent;
            else
                fail(path + ".coupling.kind",
                     "expected 'dissipative' or 'coherent', got '" + kind + "'");
        }
        if (c.contains("strength"))
            p.coupling.strength =
                get_num(c.at("strength"), path + ".coupling.strength");
    }
    return p;
}

void parse_integration(const json& j, IntegrationConfig& cfg,
                       const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    if (j.contains("t_end")) cfg.t_end = get_num(j.at("t_end"), path + ".t_end");
    if (j.contains("dt_out"))
        cfg.dt_out = get_num(j.at("dt_out"), path + ".dt_out");
    if (j.contains("rel_tol"))
        cfg.rel_tol = get_num(j.at("rel_tol"), path + ".rel_tol");
    if (j.contains("abs_tol"))
        cfg.abs_tol = get_num(j.at("abs_tol"), path + ".abs_tol");
    if (j.contains("max_steps"))
        cfg.max_steps = j.at("max_steps").is_number_integer()
                            ? j.at("max_steps").get<long>()
                            : static_cast<long>(
                                  get_num(j.at("max_steps"), path + ".max_steps"));
}

BlochState parse_initial(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty())
        fail(path, "expected a non-empty array of [mx, my, mz] triples");
    BlochState state(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ep = path + "[" + std::to_string(i) + "]";
        const auto& t = j[i];
        if (!t.is_array() || t.size() != 3) fail(ep, "expected [mx, my, mz]");
        for (int k = 0; k < 3; ++k)
            state.m[i][static_cast<std::size_t>(k)] =
                get_num(t[static_cast<std::size_t>(k)],
                        ep + "[" + std::to_string(k) + "]");
    }
    return state;
}

AxisSpec parse_axis(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    AxisSpec axis;
    axis.name = get_str(j.at("name"), path + ".name");
    axis.start = get_num(j.at("start"), path + ".start");
    axis.stop = get_num(j.at("stop"), path + ".stop");
    axis.count = get_int(j.at("count"), path + ".count");
    return axis;
}

Command parse_command(const std::string& name) {
    if (name == "simulate") return Command::Simulate;
    if (name == "spectrum") return Command::Spectrum;
    if (name == "sweep") return Command::Sweep;
    if (name == "crit") return Command::Crit;
    throw ConfigError("command '" + name +
                      "': unknown (expected simulate, spectrum, sweep, or crit)");
}

}  // namespace

void RunConfig::validate() const {
    params.validate();
    integration.validate();
    if (threads < 1) throw ConfigError("threads: must be at least 1");
    if (initial) {
        if (initial->size() != params.size())
            throw ConfigError("initial: " + std::to_string(initial->size()) +
                              " Bloch vectors for " +
                              std::to_string(params.size()) + " ensembles");
        for (int a = 0; a < initial->size(); ++a)
            if (initial->norm2(a) > 1.0 + bloch_norm_eps)
                throw ConfigError("initial[" + std::to_string(a) +
                                  "]: outside the Bloch ball");
    }
    switch (command) {
        case Command::Simulate:
            break;
        case Command::Sweep:
            if (!grid) throw ConfigError("sweep: missing grid section");
            grid->validate();
            break;
        case Command::Spectrum: {
            if (spectrum.sizes.empty())
                throw ConfigError("spectrum.sizes: must not be empty");
            for (int n : spectrum.sizes)
                if (n < 2 || n % 2 != 0)
                    throw ConfigError("spectrum.sizes: atom numbers must be "
                                      "positive and even, got " +
                                      std::to_string(n));
            if (params.size() != 2)
                throw ConfigError(
                    "spectrum: finite-size runs need exactly two ensembles");
            if (spectrum.fit) {
                const auto need = static_cast<std::size_t>(
                    std::max(spectrum.mu_im, spectrum.mu_re) + 1);
                if (spectrum.sizes.size() < need)
                    throw ConfigError(
                        "spectrum: fit orders (" +
                        std::to_string(spectrum.mu_im) + ", " +
                        std::to_string(spectrum.mu_re) + ") need at least " +
                        std::to_string(need) + " sizes, got " +
                        std::to_string(spectrum.sizes.size()));
            }
            break;
        }
        case Command::Crit:
            if (!(crit.lo >= 0.0) || !(crit.hi > crit.lo))
                throw ConfigError("crit: need 0 <= lo < hi");
            if (!(crit.tol > 0.0)) throw ConfigError("crit.tol: must be positive");
            break;
    }
}

RunConfig preset(const std::string& name) {
    RunConfig cfg;
    const auto two = [](double omega_a, double omega_b, CouplingKind kind,
                        double strength) {
        NetworkParams p;
        p.ensembles = {{omega_a, 1.0, 1}, {omega_b, 1.0, 1}};
        p.coupling = {kind, strength};
        return p;
    };

    if (name == "fig1") {
        // Two detuned ensembles under weak collective decay: the seeded
        // limit cycle trajectory.
        cfg.command = Command::Simulate;
        cfg.params = two(1.5, 0.9, CouplingKind::Dissipative, 0.1);
        cfg.integration.t_end = 200.0;
        cfg.integration.dt_out = 0.05;
    } else if (name == "fig1f") {
        // Finite-size Liouvillian gaps for the fig1 parameters plus the
        // 1/N extrapolation of the slowest oscillating eigenvalue.
        cfg.command = Command::Spectrum;
        cfg.params = two(1.5, 0.9, CouplingKind::Dissipative, 0.1);
        cfg.spectrum.sizes = {6, 8, 10, 12, 14, 18, 22};
        cfg.spectrum.fit = true;
    } else if (name == "fig2") {
        // One seeding ensemble (above threshold) against two undriven
        // partners; scan the collective decay strength.
        cfg.command = Command::Sweep;
        NetworkParams p;
        p.ensembles = {{1.2, 1.0, 1}, {0.9, 1.0, 1}, {0.9, 1.0, 1}};
        p.coupling = {CouplingKind::Dissipative, 0.0};
        cfg.params = p;
        cfg.integration.t_end = 2000.0;
        cfg.integration.dt_out = 0.2;
        GridSpec grid;
        grid.axis1 = {"coupling", 0.0, 0.5, 26};
        grid.base = p;
        grid.metric = Metric::OmegaObs;
        cfg.grid = grid;
    } else if (name == "fig3a") {
        // Synchronization phase diagram over detuning and coupling.
        cfg.command = Command::Sweep;
        cfg.params = two(1.15, 1.15, CouplingKind::Dissipative, 0.0);
        cfg.integration.t_end = 1200.0;
        cfg.integration.dt_out = 0.2;
        GridSpec grid;
        grid.axis1 = {"detuning", 0.0, 0.3, 40};
        grid.axis2 = AxisSpec{"coupling", 0.0, 0.2, 40};
        grid.base = cfg.params;
        grid.metric = Metric::DeltaObs;
        cfg.grid = grid;
    } else if (name == "fig3e") {
        // Five-ensemble ladder: frequency variance against the detuning
        // interval.  Started from a meridian-staggered preparation (polar
        // angles 30..150 degrees); the attractor reached from symmetric
        // preparations depends delicately on the basin structure, while this
        // one lands on the unlocked branch at small intervals and the locked
        // branch at large ones.
        cfg.command = Command::Sweep;
        cfg.params = uniform_detuning_ladder(5, 1.5, 0.05, 1.0);
        cfg.params.coupling = {CouplingKind::Dissipative, 0.5};
        cfg.integration.t_end = 1500.0;
        cfg.integration.dt_out = 0.2;
        GridSpec grid;
        grid.axis1 = {"delta_omega", 0.0, 0.6, 25};
        grid.base = cfg.params;
        grid.metric = Metric::Variance;
        cfg.grid = grid;
        BlochState staggered(5);
        for (int a = 0; a < 5; ++a) {
            const double theta = std::numbers::pi * (a + 1) / 6.0;
            staggered.m[static_cast<std::size_t>(a)] = {std::sin(theta), 0.0,
                                                        std::cos(theta)};
        }
        cfg.initial = staggered;
    } else if (name == "appD") {
        // Critical coherent exchange strength for the two-ensemble seed.
        cfg.command = Command::Crit;
        cfg.params = two(1.2, 0.9, CouplingKind::Coherent, 0.0);
        cfg.crit = {1.0, 1.2, 1e-4};
    } else {
        throw ConfigError("preset '" + name + "': unknown (available: fig1, "
                          "fig1f, fig2, fig3a, fig3e, appD)");
    }
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"fig1", "fig1f", "fig2", "fig3a", "fig3e", "appD"};
}

RunConfig config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: parse error at byte " +
                          std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    RunConfig cfg;
    try {
        if (!doc.contains("command")) fail("command", "missing");
        cfg.command = parse_command(get_str(doc.at("command"), "command"));
        if (!doc.contains("params")) fail("params", "missing");
        cfg.params = parse_params(doc.at("params"), "params");
        if (doc.contains("integration"))
            parse_integration(doc.at("integration"), cfg.integration,
                              "integration");
        if (doc.contains("initial"))
            cfg.initial = parse_initial(doc.at("initial"), "initial");
        if (doc.contains("grid")) {
            const auto& g = doc.at("grid");
            if (!g.is_object()) fail("grid", "expected an object");
            GridSpec grid;
            grid.axis1 = parse_axis(g.at("axis1"), "grid.axis1");
            if (g.contains("axis2") && !g.at("axis2").is_null())
                grid.axis2 = parse_axis(g.at("axis2"), "grid.axis2");
            grid.metric = g.contains("metric")
                              ? metric_from_name(
                                    get_str(g.at("metric"), "grid.metric"))
                              : Metric::DeltaObs;
            grid.base = cfg.params;
            cfg.grid = std::move(grid);
        }
        if (doc.contains("spectrum")) {
            const auto& s = doc.at("spectrum");
            if (!s.is_object()) fail("spectrum", "expected an object");
            if (s.contains("sizes")) {
                if (!s.at("sizes").is_array())
                    fail("spectrum.sizes", "expected an array");
                cfg.spectrum.sizes.clear();
                for (std::size_t i = 0; i < s.at("sizes").size(); ++i)
                    cfg.spectrum.sizes.push_back(
                        get_int(s.at("sizes")[i],
                                "spectrum.sizes[" + std::to_string(i) + "]"));
            }
            if (s.contains("fit"))
                cfg.spectrum.fit = get_bool(s.at("fit"), "spectrum.fit");
            if (s.contains("mu_im"))
                cfg.spectrum.mu_im = get_int(s.at("mu_im"), "spectrum.mu_im");
            if (s.contains("mu_re"))
                cfg.spectrum.mu_re = get_int(s.at("mu_re"), "spectrum.mu_re");
            if (s.contains("cross_check"))
                cfg.spectrum.cross_check =
                    get_bool(s.at("cross_check"), "spectrum.cross_check");
        }
        if (doc.contains("crit")) {
            const auto& c = doc.at("crit");
            if (!c.is_object()) fail("crit", "expected an object");
            if (c.contains("lo")) cfg.crit.lo = get_num(c.at("lo"), "crit.lo");
            if (c.contains("hi")) cfg.crit.hi = get_num(c.at("hi"), "crit.hi");
            if (c.contains("tol")) cfg.crit.tol = get_num(c.at("tol"), "crit.tol");
        }
        if (doc.contains("threads"))
            cfg.threads = get_int(doc.at("threads"), "threads");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

}  // namespace timeseed
