#include "timeseed/integrator.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace timeseed {

void IntegrationConfig::validate() const {
    if (!(t_end > 0.0))
        throw ConfigError("integration.t_end: must be positive");
    if (!(dt_out > 0.0) || dt_out > t_end)
        throw ConfigError("integration.dt_out: must be in (0, t_end]");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw ConfigError("integration.rel_tol: must be in (0, 1)");
    if (!(abs_tol > 0.0 && abs_tol < 1.0))
        throw ConfigError("integration.abs_tol: must be in (0, 1)");
    if (max_steps < 1)
        throw ConfigError("integration.max_steps: must be positive");
}

std::vector<double> Trajectory::mz_series(int alpha) const {
    return component_series(alpha, 2);
}

std::vector<double> Trajectory::component_series(int alpha, int k) const {
    if (alpha < 0 || alpha >= ensembles())
        throw ConfigError("trajectory: ensemble index out of range");
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states)
        out.push_back(s.m[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(k)]);
    return out;
}

namespace {

bool finite_state(const std::vector<double>& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

BlochState unpack(const std::vector<double>& y, int n) {
    BlochState s(n);
    for (int a = 0; a < n; ++a)
        s.m[static_cast<std::size_t>(a)] = {y[3 * a], y[3 * a + 1], y[3 * a + 2]};
    return s;
}

}  // namespace

Trajectory integrate(const NetworkParams& params, const BlochState& initial,
                     const IntegrationConfig& cfg) {
    params.validate();
    cfg.validate();
    const int n = params.size();
    if (initial.size() != n)
        throw ConfigError("integrate: initial state has " +
                          std::to_string(initial.size()) + " ensembles, params have " +
                          std::to_string(n));
    for (int a = 0; a < n; ++a)
        if (!(initial.norm2(a) <= 1.0 + bloch_norm_eps))
            throw ConfigError("integrate: initial Bloch vector " + std::to_string(a) +
                              " lies outside the unit ball");

    namespace od = boost::numeric::odeint;
    using state_t = std::vector<double>;

    state_t y(static_cast<std::size_t>(3 * n));
    for (int a = 0; a < n; ++a)
        for (int k = 0; k < 3; ++k)
            y[static_cast<std::size_t>(3 * a + k)] =
                initial.m[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];

    auto rhs = [&params](const state_t& x, state_t& dxdt, double) {
        vector_field_flat(params, x.data(), dxdt.data());
    };

    auto stepper = od::make_dense_output(cfg.abs_tol, cfg.rel_tol,
                                         od::runge_kutta_dopri5<state_t>());
    stepper.initialize(y, 0.0, std::min(cfg.dt_out, 1e-3));

    const auto n_out =
        static_cast<std::size_t>(std::floor(cfg.t_end / cfg.dt_out + 1e-9)) + 1;

    Trajectory traj;
    traj.params = params;
    traj.times.reserve(n_out);
    traj.states.reserve(n_out);
    traj.times.push_back(0.0);
    traj.states.push_back(initial);

    std::size_t next = 1;
    std::int64_t steps = 0;
    state_t sample(y.size());
    while (stepper.current_time() < cfg.t_end && next < n_out) {
        if (++steps > cfg.max_steps)
            throw IntegrationBudgetError(
                "integrate: step budget of " + std::to_string(cfg.max_steps) +
                    " exhausted at t = " + std::to_string(stepper.current_time()),
                std::move(traj));
        stepper.do_step(rhs);
        if (!finite_state(stepper.current_state()))
            throw NumericalError("integrate: non-finite state at t = " +
                                 std::to_string(stepper.current_time()));
        while (next < n_out && next * cfg.dt_out <= stepper.current_time()) {
            const double t = next * cfg.dt_out;
            stepper.calc_state(t, sample);
            traj.times.push_back(t);
            traj.states.push_back(unpack(sample, n));
            ++next;
        }
    }
    return traj;
}

}  // namespace timeseed
