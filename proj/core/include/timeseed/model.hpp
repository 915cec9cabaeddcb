#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "timeseed/errors.hpp"

namespace timeseed {

/// One collective-spin ensemble.  All rates are dimensionless, expressed in
/// units of the reference decay rate kappa of the first ensemble.
struct EnsembleParams {
    double omega = 0.0;   ///< coherent drive strength Omega_alpha
    double kappa = 1.0;   ///< local dissipation rate kappa_alpha
    int n_spins = 1;      ///< atom number N_alpha (finite-size runs only)
};

enum class CouplingKind { Dissipative, Coherent };

/// Network-wide coupling: Gamma for the dissipative collective decay channel,
/// g for the coherent exchange Hamiltonian.
struct CouplingSpec {
    CouplingKind kind = CouplingKind::Dissipative;
    double strength = 0.0;
};

struct NetworkParams {
    std::vector<EnsembleParams> ensembles;
    CouplingSpec coupling;

    int size() const { return static_cast<int>(ensembles.size()); }

    /// Throws ConfigError on empty network, non-positive kappa, negative
    /// omega, negative coupling strength, or n_spins < 1.
    void validate() const;
};

/// Mean-field state: one rescaled Bloch vector (mx, my, mz) per ensemble.
struct BlochState {
    std::vector<std::array<double, 3>> m;

    BlochState() = default;
    explicit BlochState(int n) : m(static_cast<std::size_t>(n), {0.0, 0.0, 0.0}) {}

    int size() const { return static_cast<int>(m.size()); }
    double norm2(int alpha) const {
        const auto& v = m[static_cast<std::size_t>(alpha)];
        return v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    }

    /// Fully polarized preparation m_alpha = (0, 0, 1): the default initial
    /// condition for every reproduction recipe.
    static BlochState polarized(int n);
};

/// Tolerance on the Bloch-ball constraint |m_alpha|^2 <= 1 + eps used when
/// states are validated at API boundaries.
inline constexpr double bloch_norm_eps = 1e-6;

/// Right-hand side of the mean-field equations of motion.  The coupling kind
/// selects the equation set: the dissipative form carries an effective local
/// rate (kappa + Gamma/n) plus (Gamma/n) cross sums, the coherent form keeps
/// the bare local rate kappa with (g/n) exchange sums.  Returns a
/// BlochState-shaped derivative.
BlochState vector_field(const NetworkParams& params, const BlochState& state);

/// Allocation-free kernel behind vector_field; y and dy are flat arrays of
/// 3n doubles laid out mx_0, my_0, mz_0, mx_1, ...
void vector_field_flat(const NetworkParams& params, const double* y, double* dy);

/// n ensembles with Omega_alpha = omega_max - alpha * delta_omega / (n - 1),
/// common kappa, coupling left zero for the caller to fill.
NetworkParams uniform_detuning_ladder(int n, double omega_max, double delta_omega,
                                      double kappa);

}  // namespace timeseed
