#pragma once

#include <cstdint>
#include <vector>

#include "timeseed/model.hpp"

namespace timeseed {

struct IntegrationConfig {
    double t_end = 100.0;      ///< in units of 1/kappa
    double dt_out = 0.1;       ///< output sampling interval
    double rel_tol = 1e-10;    ///< tight enough to hold norm drift under 1e-8
    double abs_tol = 1e-12;
    std::int64_t max_steps = 20'000'000;

    void validate() const;
};

struct Trajectory {
    std::vector<double> times;        ///< strictly increasing, starts at 0
    std::vector<BlochState> states;   ///< same length as times
    NetworkParams params;

    int ensembles() const { return params.size(); }
    std::size_t samples() const { return times.size(); }

    /// The <m^z_alpha> series, the order parameter plotted throughout.
    std::vector<double> mz_series(int alpha) const;
    std::vector<double> component_series(int alpha, int k) const;
};

/// Thrown when max_steps is exhausted; carries whatever was integrated so far.
class IntegrationBudgetError : public ResourceError {
public:
    IntegrationBudgetError(const std::string& what, Trajectory partial_traj)
        : ResourceError(what), partial(std::move(partial_traj)) {}
    Trajectory partial;
};

/// Adaptive Dormand-Prince integration of the mean-field flow with dense
/// output at dt_out.  Per-subsystem Bloch norms drift by less than 1e-8 over
/// the run at the default tolerances.  Throws NumericalError on NaN/overflow
/// and IntegrationBudgetError when the step budget runs out.
Trajectory integrate(const NetworkParams& params, const BlochState& initial,
                     const IntegrationConfig& cfg);

}  // namespace timeseed
