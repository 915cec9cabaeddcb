#include "timeseed/analysis.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

namespace timeseed {

namespace {

struct Window {
    std::vector<double> samples;
    double t0 = 0.0;
    double dt = 0.0;
};

Window trailing_window(const Trajectory& traj, int ensemble_index,
                       double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 0.5))
        throw ConfigError("analysis.window_fraction: must be in (0, 0.5]");
    if (traj.samples() < 2)
        throw ConfigError("analysis: trajectory too short");
    const auto total = traj.samples();
    const auto k0 = static_cast<std::size_t>(
        std::floor(static_cast<double>(total) * (1.0 - window_fraction)));
    auto series = traj.component_series(ensemble_index, 2);
    Window w;
    w.samples.assign(series.begin() + static_cast<std::ptrdiff_t>(k0), series.end());
    w.t0 = traj.times[k0];
    w.dt = traj.times[1] - traj.times[0];
    return w;
}

/// Local maxima with quadratic sub-sample refinement.
std::vector<double> peak_times(const Window& w) {
    std::vector<double> peaks;
    const auto& s = w.samples;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] >= s[i - 1] && s[i] > s[i + 1]) {
            const double a = s[i - 1], b = s[i], c = s[i + 1];
            const double denom = a - 2.0 * b + c;
            const double off = (denom != 0.0) ? 0.5 * (a - c) / denom : 0.0;
            peaks.push_back(w.t0 + (static_cast<double>(i) + off) * w.dt);
        }
    }
    return peaks;
}

double half_peak_to_peak(const std::vector<double>& s) {
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    return 0.5 * (*hi - *lo);
}

FourierSpectrum spectrum_of_window(const Window& w) {
    const std::size_t m = w.samples.size();
    if (m < 64)
        throw ConfigError("fourier_spectrum: analysis window needs at least 64 samples");

    const double mean =
        std::accumulate(w.samples.begin(), w.samples.end(), 0.0) / static_cast<double>(m);
    std::vector<double> windowed(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double hann =
            0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                                  static_cast<double>(m - 1)));
        windowed[i] = (w.samples[i] - mean) * hann;
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> freq;
    fft.fwd(freq, windowed);

    FourierSpectrum out;
    out.bin_width = 2.0 * M_PI / (static_cast<double>(m) * w.dt);
    const std::size_t half = m / 2 + 1;
    out.omega.resize(half);
    out.magnitude.resize(half);
    double peak = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        out.omega[k] = out.bin_width * static_cast<double>(k);
        out.magnitude[k] = std::abs(freq[k]);
        if (k >= 1 && out.magnitude[k] > peak) {
            peak = out.magnitude[k];
            out.peak_bin = static_cast<int>(k);
        }
    }
    if (peak > 0.0)
        for (auto& v : out.magnitude) v /= peak;
    return out;
}

}  // namespace

FourierSpectrum fourier_spectrum(const Trajectory& traj, int ensemble_index,
                                 double window_fraction) {
    return spectrum_of_window(trailing_window(traj, ensemble_index, window_fraction));
}

FrequencyEstimate observed_frequency(const Trajectory& traj, int ensemble_index,
                                     double window_fraction) {
    const Window w = trailing_window(traj, ensemble_index, window_fraction);

    FrequencyEstimate est;
    est.amplitude = half_peak_to_peak(w.samples);
    if (est.amplitude < amp_threshold) return est;   // omega_obs = 0 by fiat

    const auto peaks = peak_times(w);
    if (peaks.size() >= 3) {
        std::vector<double> periods(peaks.size() - 1);
        for (std::size_t i = 0; i + 1 < peaks.size(); ++i)
            periods[i] = peaks[i + 1] - peaks[i];
        const double mean_t =
            std::accumulate(periods.begin(), periods.end(), 0.0) /
            static_cast<double>(periods.size());
        double var_t = 0.0;
        for (double p : periods) var_t += (p - mean_t) * (p - mean_t);
        var_t /= static_cast<double>(periods.size());
        const double sem_t = std::sqrt(var_t / static_cast<double>(periods.size()));

        est.method = FreqMethod::PeakSpacing;
        est.omega_obs = 2.0 * M_PI / mean_t;
        est.uncertainty = 2.0 * M_PI * sem_t / (mean_t * mean_t);

        if (w.samples.size() >= 64) {
            const auto ft = spectrum_of_window(w);
            const double omega_ft = ft.omega[static_cast<std::size_t>(ft.peak_bin)];
            if (std::abs(est.omega_obs - omega_ft) > 2.0 * ft.bin_width)
                est.flagged = true;
        }
        return est;
    }

    // Too few peaks for spacing statistics: fall back to the Fourier peak.
    const auto ft = spectrum_of_window(w);
    est.method = FreqMethod::FourierPeak;
    est.omega_obs = ft.omega[static_cast<std::size_t>(ft.peak_bin)];
    est.uncertainty = 0.5 * ft.bin_width;
    return est;
}

SyncMetrics sync_metrics(const Trajectory& traj, double window_fraction) {
    const int n = traj.ensembles();
    if (n < 2)
        throw ConfigError("sync_metrics: needs at least two ensembles");

    SyncMetrics out;
    out.per_ensemble.reserve(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        out.per_ensemble.push_back(observed_frequency(traj, a, window_fraction));

    out.delta_obs = std::abs(out.per_ensemble[0].omega_obs -
                             out.per_ensemble[1].omega_obs);

    double mean = 0.0;
    for (const auto& e : out.per_ensemble) mean += e.omega_obs;
    mean /= static_cast<double>(n);
    for (const auto& e : out.per_ensemble)
        out.variance += (e.omega_obs - mean) * (e.omega_obs - mean);
    out.variance /= static_cast<double>(n);
    return out;
}

}  // namespace timeseed
