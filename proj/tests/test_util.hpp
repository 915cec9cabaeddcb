#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "timeseed/model.hpp"

namespace tsutil {

/// Two-ensemble network, common kappa = 1.
inline timeseed::NetworkParams two(double omega_a, double omega_b,
                                   timeseed::CouplingKind kind, double strength) {
    timeseed::NetworkParams p;
    p.ensembles = {{omega_a, 1.0, 1}, {omega_b, 1.0, 1}};
    p.coupling = {kind, strength};
    return p;
}

/// The seeded limit-cycle work-horse: Omega = (1.5, 0.9), Gamma = 0.1.
inline timeseed::NetworkParams seeded_pair(double gamma = 0.1) {
    return two(1.5, 0.9, timeseed::CouplingKind::Dissipative, gamma);
}

/// Uniform point inside the Bloch ball.
inline std::array<double, 3> random_in_ball(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        std::array<double, 3> v = {u(rng), u(rng), u(rng)};
        if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] <= 1.0) return v;
    }
}

inline timeseed::BlochState random_state(int n, std::mt19937& rng) {
    timeseed::BlochState s(n);
    for (auto& m : s.m) m = random_in_ball(rng);
    return s;
}

/// Random valid parameter set (1..4 ensembles, either coupling kind).
inline timeseed::NetworkParams random_params(std::mt19937& rng) {
    std::uniform_int_distribution<int> nd(1, 4);
    std::uniform_real_distribution<double> omega(0.0, 2.0);
    std::uniform_real_distribution<double> kappa(0.2, 2.0);
    std::uniform_real_distribution<double> strength(0.0, 1.5);
    std::bernoulli_distribution coin;
    timeseed::NetworkParams p;
    const int n = nd(rng);
    for (int a = 0; a < n; ++a)
        p.ensembles.push_back({omega(rng), kappa(rng), 1});
    p.coupling.kind = coin(rng) ? timeseed::CouplingKind::Dissipative
                                : timeseed::CouplingKind::Coherent;
    p.coupling.strength = strength(rng);
    return p;
}

inline double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Half peak-to-peak of series[i] over times in [t_lo, t_hi].
inline double window_amplitude(const std::vector<double>& times,
                               const std::vector<double>& series,
                               double t_lo, double t_hi) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        lo = std::min(lo, series[i]);
        hi = std::max(hi, series[i]);
    }
    return 0.5 * (hi - lo);
}

}  // namespace tsutil
