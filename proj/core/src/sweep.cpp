#include "timeseed/sweep.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace timeseed {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

bool known_axis(const std::string& name) {
    return name == "coupling" || name == "detuning" || name == "delta_omega" ||
           name == "omega_a";
}

void apply_axis(NetworkParams& p, const AxisSpec& axis, double v) {
    if (axis.name == "coupling") {
        p.coupling.strength = v;
    } else if (axis.name == "detuning") {
        p.ensembles[1].omega = p.ensembles[0].omega - v;
    } else if (axis.name == "delta_omega") {
        NetworkParams ladder = uniform_detuning_ladder(
            p.size(), p.ensembles[0].omega, v, p.ensembles[0].kappa);
        ladder.coupling = p.coupling;
        for (std::size_t a = 0; a < ladder.ensembles.size(); ++a)
            ladder.ensembles[a].n_spins = p.ensembles[a].n_spins;
        p = std::move(ladder);
    } else {  // omega_a
        p.ensembles[0].omega = v;
    }
}

double evaluate_cell(const NetworkParams& params, const IntegrationConfig& cfg,
                     const std::optional<BlochState>& initial, Metric metric) {
    const BlochState start =
        initial ? *initial : BlochState::polarized(params.size());
    const Trajectory traj = integrate(params, start, cfg);
    switch (metric) {
        case Metric::DeltaObs:
            return sync_metrics(traj).delta_obs;
        case Metric::Variance:
            return sync_metrics(traj).variance;
        case Metric::OmegaObs:
            return observed_frequency(traj, 0).omega_obs;
        case Metric::Amplitude: {
            double amp = 0.0;
            for (int a = 0; a < traj.ensembles(); ++a)
                amp = std::max(amp, observed_frequency(traj, a).amplitude);
            return amp;
        }
    }
    throw ConfigError("evaluate_cell: unknown metric");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json axis_to_json(const AxisSpec& axis) {
    return {{"name", axis.name},
            {"start", axis.start},
            {"stop", axis.stop},
            {"count", axis.count}};
}

AxisSpec axis_from_json(const nlohmann::json& j) {
    AxisSpec axis;
    axis.name = j.at("name").get<std::string>();
    axis.start = j.at("start").get<double>();
    axis.stop = j.at("stop").get<double>();
    axis.count = j.at("count").get<int>();
    return axis;
}

nlohmann::json params_to_json(const NetworkParams& p) {
    nlohmann::json ens = nlohmann::json::array();
    for (const auto& e : p.ensembles)
        ens.push_back({{"omega", e.omega},
                       {"kappa", e.kappa},
                       {"n_spins", e.n_spins}});
    return {{"ensembles", std::move(ens)},
            {"coupling",
             {{"kind", p.coupling.kind == CouplingKind::Dissipative
                           ? "dissipative"
                           : "coherent"},
              {"strength", p.coupling.strength}}}};
}

NetworkParams params_from_json(const nlohmann::json& j) {
    NetworkParams p;
    for (const auto& e : j.at("ensembles")) {
        EnsembleParams ens;
        ens.omega = e.at("omega").get<double>();
        ens.kappa = e.at("kappa").get<double>();
        ens.n_spins = e.at("n_spins").get<int>();
        p.ensembles.push_back(ens);
    }
    const auto& c = j.at("coupling");
    const auto kind = c.at("kind").get<std::string>();
    if (kind == "dissipative")
        p.coupling.kind = CouplingKind::Dissipative;
    else if (kind == "coherent")
        p.coupling.kind = CouplingKind::Coherent;
    else
        throw ConfigError("grid file: unknown coupling kind '" + kind + "'");
    p.coupling.strength = c.at("strength").get<double>();
    return p;
}

}  // namespace

double AxisSpec::value(int i) const {
    if (count == 1) return start;
    return start + static_cast<double>(i) * (stop - start) /
                       static_cast<double>(count - 1);
}

void AxisSpec::validate() const {
    if (!known_axis(name))
        throw ConfigError("axis '" + name +
                          "': unknown (expected coupling, detuning, "
                          "delta_omega, or omega_a)");
    if (count < 1)
        throw ConfigError("axis '" + name + "': count must be at least 1");
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw ConfigError("axis '" + name + "': bounds must be finite");
}

void GridSpec::validate() const {
    base.validate();
    axis1.validate();
    if (axis2) {
        axis2->validate();
        if (axis2->name == axis1.name)
            throw ConfigError("grid: both axes bind '" + axis1.name + "'");
    }
    const auto needs = [this](const AxisSpec& axis) {
        if (axis.name == "detuning" && base.size() != 2)
            throw ConfigError(
                "axis 'detuning': needs exactly two ensembles, network has " +
                std::to_string(base.size()));
        if (axis.name == "delta_omega" && base.size() < 2)
            throw ConfigError("axis 'delta_omega': needs at least two ensembles");
    };
    needs(axis1);
    if (axis2) needs(*axis2);
}

NetworkParams GridSpec::cell_params(int i1, int i2) const {
    if (i1 < 0 || i1 >= rows() || i2 < 0 || i2 >= cols())
        throw ConfigError("cell_params: index out of range");
    NetworkParams p = base;
    apply_axis(p, axis1, axis1.value(i1));
    if (axis2) apply_axis(p, *axis2, axis2->value(i2));
    return p;
}

double GridResult::at(int i1, int i2) const {
    if (i1 < 0 || i1 >= spec.rows() || i2 < 0 || i2 >= spec.cols())
        throw ConfigError("GridResult::at: index out of range");
    return values[static_cast<std::size_t>(i1) *
                      static_cast<std::size_t>(spec.cols()) +
                  static_cast<std::size_t>(i2)];
}

bool GridResult::done() const {
    for (bool c : completed)
        if (!c) return false;
    return !completed.empty();
}

void resume_grid(GridResult& result, const IntegrationConfig& cfg,
                 const std::optional<BlochState>& initial, int threads) {
    result.spec.validate();
    cfg.validate();
    const auto cells = static_cast<std::size_t>(result.spec.rows()) *
                       static_cast<std::size_t>(result.spec.cols());
    if (result.values.size() != cells || result.completed.size() != cells)
        throw ConfigError("resume_grid: result buffers disagree with the spec");

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < cells; ++i)
        if (!result.completed[i]) pending.push_back(i);
    if (pending.empty()) return;

    const int cols = result.spec.cols();
    // `ok` mirrors `completed` because std::vector<bool> is not safe for
    // concurrent element writes.
    std::vector<char> ok(pending.size(), 0);
    std::vector<double> out(pending.size(), nan_v);
    std::atomic<std::size_t> cursor{0};

    auto worker = [&]() {
        while (true) {
            const std::size_t slot = cursor.fetch_add(1);
            if (slot >= pending.size()) return;
            const std::size_t cell = pending[slot];
            const int i1 = static_cast<int>(cell) / cols;
            const int i2 = static_cast<int>(cell) % cols;
            try {
                const NetworkParams p = result.spec.cell_params(i1, i2);
                const double v =
                    evaluate_cell(p, cfg, initial, result.spec.metric);
                if (std::isfinite(v)) {
                    out[slot] = v;
                    ok[slot] = 1;
                }
            } catch (const std::exception&) {
                // failure stays in the mask; the grid carries on
            }
        }
    };

    const int n_workers = std::max(
        1, std::min<int>(threads, static_cast<int>(pending.size())));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t slot = 0; slot < pending.size(); ++slot)
        if (ok[slot]) {
            result.values[pending[slot]] = out[slot];
            result.completed[pending[slot]] = true;
        }
}

GridResult run_grid(const GridSpec& spec, const IntegrationConfig& cfg,
                    const std::optional<BlochState>& initial, int threads) {
    spec.validate();
    GridResult result;
    result.spec = spec;
    const auto cells = static_cast<std::size_t>(spec.rows()) *
                       static_cast<std::size_t>(spec.cols());
    result.values.assign(cells, nan_v);
    result.completed.assign(cells, false);
    resume_grid(result, cfg, initial, threads);
    return result;
}

void save_grid(const GridResult& result, std::ostream& out) {
    nlohmann::json mask = nlohmann::json::array();
    for (bool c : result.completed) mask.push_back(c ? 1 : 0);
    nlohmann::json header = {
        {"version", 1},
        {"spec",
         {{"axis1", axis_to_json(result.spec.axis1)},
          {"axis2", result.spec.axis2 ? axis_to_json(*result.spec.axis2)
                                      : nlohmann::json()},
          {"metric", metric_name(result.spec.metric)},
          {"base", params_to_json(result.spec.base)}}},
        {"mask", std::move(mask)}};
    out << header.dump() << '\n';
    out << "axis1,axis2,value\n";
    const int cols = result.spec.cols();
    for (std::size_t i = 0; i < result.values.size(); ++i) {
        const int i1 = static_cast<int>(i) / cols;
        const int i2 = static_cast<int>(i) % cols;
        out << fmt17(result.spec.axis1.value(i1)) << ',';
        if (result.spec.axis2) out << fmt17(result.spec.axis2->value(i2));
        out << ',' << fmt17(result.values[i]) << '\n';
    }
    if (!out) throw ResourceError("save_grid: write failed");
}

void save_grid(const GridResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ResourceError("save_grid: cannot open '" + path + "'");
    save_grid(result, out);
}

GridResult load_grid(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("grid file: missing JSON header");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("grid file: bad JSON header: ") + e.what());
    }

    GridResult result;
    try {
        if (header.at("version").get<int>() != 1)
            throw ConfigError("grid file: unsupported version");
        const auto& spec = header.at("spec");
        result.spec.axis1 = axis_from_json(spec.at("axis1"));
        if (!spec.at("axis2").is_null())
            result.spec.axis2 = axis_from_json(spec.at("axis2"));
        result.spec.metric = metric_from_name(spec.at("metric").get<std::string>());
        result.spec.base = params_from_json(spec.at("base"));
        for (const auto& m : header.at("mask"))
            result.completed.push_back(m.get<int>() != 0);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("grid file: malformed header: ") + e.what());
    }
    result.spec.validate();

    const auto cells = static_cast<std::size_t>(result.spec.rows()) *
                       static_cast<std::size_t>(result.spec.cols());
    if (result.completed.size() != cells)
        throw ConfigError("grid file: mask length disagrees with the axes");

    if (!std::getline(in, line) || line != "axis1,axis2,value")
        throw ConfigError("grid file: missing CSV column header");
    result.values.reserve(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        if (!std::getline(in, line))
            throw ConfigError("grid file: truncated payload at row " +
                              std::to_string(i));
        const auto c2 = line.rfind(',');
        if (c2 == std::string::npos || line.find(',') == c2)
            throw ConfigError("grid file: malformed row " + std::to_string(i));
        try {
            result.values.push_back(std::stod(line.substr(c2 + 1)));
        } catch (const std::exception&) {
            throw ConfigError("grid file: unreadable value in row " +
                              std::to_string(i));
        }
    }
    return result;
}

GridResult load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("load_grid: cannot open '" + path + "'");
    return load_grid(in);
}

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::DeltaObs: return "delta_obs";
        case Metric::Variance: return "variance";
        case Metric::OmegaObs: return "omega_obs";
        case Metric::Amplitude: return "amplitude";
    }
    throw ConfigError("metric_name: unknown metric");
}

Metric metric_from_name(const std::string& name) {
    if (name == "delta_obs") return Metric::DeltaObs;
    if (name == "variance") return Metric::Variance;
    if (name == "omega_obs") return Metric::OmegaObs;
    if (name == "amplitude") return Metric::Amplitude;
    throw ConfigError("metric '" + name +
                      "': unknown (expected delta_obs, variance, omega_obs, "
                      "or amplitude)");
}

}  // namespace timeseed
