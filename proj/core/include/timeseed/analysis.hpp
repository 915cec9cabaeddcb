#pragma once

#include <vector>

#include "timeseed/integrator.hpp"

namespace timeseed {

/// Oscillation amplitudes below this (half peak-to-peak of <m^z>) count as
/// "no oscillation": omega_obs is reported as 0.  Shared with the bisection
/// oracle in stationary.
inline constexpr double amp_threshold = 1e-4;

/// Synchronization predicate for phase diagrams: delta_obs < sync_delta_tol.
inline constexpr double sync_delta_tol = 1e-3;

enum class FreqMethod { PeakSpacing, FourierPeak };

struct FrequencyEstimate {
    double omega_obs = 0.0;    ///< 2*pi / T, 0 when no oscillation detected
    double amplitude = 0.0;    ///< late-time half peak-to-peak of <m^z>
    FreqMethod method = FreqMethod::PeakSpacing;
    double uncertainty = 0.0;
    bool flagged = false;      ///< estimators disagreed beyond 2 bin widths
};

struct SyncMetrics {
    double delta_obs = 0.0;    ///< |omega_A - omega_B|, first two ensembles
    double variance = 0.0;     ///< population variance of all omega_obs
    std::vector<FrequencyEstimate> per_ensemble;
};

struct FourierSpectrum {
    std::vector<double> omega;       ///< angular frequency bins
    std::vector<double> magnitude;   ///< normalized to peak 1
    int peak_bin = 0;
    double bin_width = 0.0;
};

/// Observed frequency from the trailing window_fraction of the trajectory.
/// Peak-spacing is the primary estimator; the Fourier peak is the fallback
/// (and cross-check: disagreement beyond 2 bin widths sets `flagged`).
FrequencyEstimate observed_frequency(const Trajectory& traj, int ensemble_index,
                                     double window_fraction = 0.25);

/// DFT of the mean-subtracted, Hann-windowed trailing window of <m^z_alpha>.
FourierSpectrum fourier_spectrum(const Trajectory& traj, int ensemble_index,
                                 double window_fraction = 0.25);

/// Delta_obs and the frequency variance over all ensembles.
SyncMetrics sync_metrics(const Trajectory& traj, double window_fraction = 0.25);

}  // namespace timeseed
