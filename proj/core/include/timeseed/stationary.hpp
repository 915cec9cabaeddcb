#pragma once

#include <complex>
#include <vector>

#include "timeseed/integrator.hpp"
#include "timeseed/model.hpp"

namespace timeseed {

struct FixedPoint {
    BlochState state;
    bool physical = false;   ///< all |m_alpha| <= 1
};

enum class StabilityClass { Hyperbolic, Marginal, Oscillatory };

struct StabilityReport {
    std::vector<std::complex<double>> jacobian_eigenvalues;  ///< Re descending
    StabilityClass classification = StabilityClass::Hyperbolic;
};

/// Closed-form stationary state of the two-ensemble dissipative network:
/// m*_alpha = (0, my*_alpha, 0) with
///   my*_A = [ (Gamma/2)(Omega_A - Omega_B) + kappa * Omega_A ] / [ kappa (Gamma + kappa) ]
/// and the A<->B swap for B.  Requires n = 2, dissipative coupling, common
/// kappa; otherwise throws ConfigError.
FixedPoint fixed_point_two(const NetworkParams& params);

/// Critical coupling for n = 2 dissipative networks:
///   Gamma_crit = max over both orderings of 2 kappa (Omega - kappa) / (2 kappa -/+ (Omega_A - Omega_B)),
/// negative branches clamped to 0.  Throws ConfigError when a denominator is
/// not positive (formula out of domain; use critical_coupling_search).
double gamma_crit(const NetworkParams& params);

/// Jacobian spectrum of the flow at a fixed point.  Analytic Jacobian for the
/// dissipative equations, central differences (step 1e-6) otherwise.
StabilityReport stability_at(const NetworkParams& params, const FixedPoint& point);

/// Bisection on coupling strength against the oscillation-presence oracle:
/// integrate to t_end = 2000 from the polarized state and ask whether any
/// ensemble's late-time <m^z> amplitude (last quarter) exceeds amp_threshold.
/// Requires oscillations at strength_lo and none at strength_hi; otherwise
/// throws NumericalError (invalid bracket).  Returns the bracket midpoint
/// once its width is below tol.
double critical_coupling_search(const NetworkParams& params_template,
                                double strength_lo, double strength_hi, double tol);

/// The oracle itself, exposed for tests and for cross-validating the
/// closed-form critical coupling against dynamics.
bool persistent_oscillations(const NetworkParams& params,
                             double t_end = 2000.0);

}  // namespace timeseed
