#include "timeseed/model.hpp"

#include <string>

namespace timeseed {

void NetworkParams::validate() const {
    if (ensembles.empty())
        throw ConfigError("params.ensembles: network needs at least one ensemble");
    for (std::size_t a = 0; a < ensembles.size(); ++a) {
        const auto& e = ensembles[a];
        const std::string where = "params.ensembles[" + std::to_string(a) + "]";
        if (!(e.kappa > 0.0))
            throw ConfigError(where + ".kappa: must be positive");
        if (!(e.omega >= 0.0))
            throw ConfigError(where + ".omega: must be non-negative");
        if (e.n_spins < 1)
            throw ConfigError(where + ".n_spins: must be at least 1");
    }
    if (!(coupling.strength >= 0.0))
        throw ConfigError("params.coupling.strength: must be non-negative");
}

BlochState BlochState::polarized(int n) {
    BlochState s(n);
    for (auto& v : s.m) v = {0.0, 0.0, 1.0};
    return s;
}

void vector_field_flat(const NetworkParams& params, const double* y, double* dy) {
    const int n = params.size();
    const double gn = params.coupling.strength / n;

    double sx = 0.0, sy = 0.0;
    for (int a = 0; a < n; ++a) {
        sx += y[3 * a];
        sy += y[3 * a + 1];
    }

    if (params.coupling.kind == CouplingKind::Dissipative) {
        for (int a = 0; a < n; ++a) {
            const auto& e = params.ensembles[static_cast<std::size_t>(a)];
            const double mx = y[3 * a], my = y[3 * a + 1], mz = y[3 * a + 2];
            const double ox = sx - mx, oy = sy - my;   // sums over beta != alpha
            const double loc = e.kappa + gn;           // effective local rate
            dy[3 * a]     = loc * mx * mz + gn * mz * ox;
            dy[3 * a + 1] = -e.omega * mz + loc * my * mz + gn * mz * oy;
            dy[3 * a + 2] = e.omega * my - loc * (mx * mx + my * my)
                            - gn * (mx * ox + my * oy);
        }
    } else {
        for (int a = 0; a < n; ++a) {
            const auto& e = params.ensembles[static_cast<std::size_t>(a)];
            const double mx = y[3 * a], my = y[3 * a + 1], mz = y[3 * a + 2];
            const double ox = sx - mx, oy = sy - my;
            dy[3 * a]     = e.kappa * mx * mz + gn * mz * oy;
            dy[3 * a + 1] = -e.omega * mz + e.kappa * my * mz - gn * mz * ox;
            dy[3 * a + 2] = e.omega * my - e.kappa * (mx * mx + my * my)
                            + gn * (my * ox - mx * oy);
        }
    }
}

BlochState vector_field(const NetworkParams& params, const BlochState& state) {
    const int n = params.size();
    if (n == 0)
        throw ConfigError("vector_field: empty network");
    if (state.size() != n)
        throw ConfigError("vector_field: state has " + std::to_string(state.size()) +
                          " ensembles, params have " + std::to_string(n));
    BlochState d(n);
    vector_field_flat(params, &state.m[0][0], &d.m[0][0]);
    return d;
}

NetworkParams uniform_detuning_ladder(int n, double omega_max, double delta_omega,
                                      double kappa) {
    if (n < 2)
        throw ConfigError("uniform_detuning_ladder: n must be at least 2");
    if (delta_omega < 0.0)
        throw ConfigError("uniform_detuning_ladder: delta_omega must be non-negative");
    NetworkParams p;
    p.ensembles.reserve(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        EnsembleParams e;
        e.omega = omega_max - a * delta_omega / (n - 1);
        e.kappa = kappa;
        p.ensembles.push_back(e);
    }
    return p;
}

}  // namespace timeseed
