#include "timeseed/stationary.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "timeseed/analysis.hpp"

namespace timeseed {

namespace {

constexpr double residual_tol = 1e-10;
constexpr double spectrum_tol = 1e-8;

void require_two_dissipative(const NetworkParams& p, const char* op) {
    p.validate();
    if (p.size() != 2)
        throw ConfigError(std::string(op) + ": closed form needs exactly two ensembles");
    if (p.coupling.kind != CouplingKind::Dissipative)
        throw ConfigError(std::string(op) + ": closed form needs dissipative coupling");
    if (p.ensembles[0].kappa != p.ensembles[1].kappa)
        throw ConfigError(std::string(op) + ": closed form needs a common kappa");
}

double field_max_norm(const NetworkParams& p, const BlochState& s) {
    const BlochState d = vector_field(p, s);
    double mx = 0.0;
    for (const auto& v : d.m)
        for (double c : v) mx = std::max(mx, std::abs(c));
    return mx;
}

Eigen::MatrixXd dissipative_jacobian(const NetworkParams& p, const BlochState& s) {
    const int n = p.size();
    const double gn = p.coupling.strength / n;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(3 * n, 3 * n);

    double sx = 0.0, sy = 0.0;
    for (int b = 0; b < n; ++b) {
        sx += s.m[static_cast<std::size_t>(b)][0];
        sy += s.m[static_cast<std::size_t>(b)][1];
    }
    for (int a = 0; a < n; ++a) {
        const auto& e = p.ensembles[static_cast<std::size_t>(a)];
        const double mx = s.m[static_cast<std::size_t>(a)][0];
        const double my = s.m[static_cast<std::size_t>(a)][1];
        const double mz = s.m[static_cast<std::size_t>(a)][2];
        const double ox = sx - mx, oy = sy - my;
        const double loc = e.kappa + gn;
        const int r = 3 * a;

        J(r, r) = loc * mz;
        J(r, r + 2) = loc * mx + gn * ox;
        J(r + 1, r + 1) = loc * mz;
        J(r + 1, r + 2) = -e.omega + loc * my + gn * oy;
        J(r + 2, r) = -2.0 * loc * mx - gn * ox;
        J(r + 2, r + 1) = e.omega - 2.0 * loc * my - gn * oy;

        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            const int c = 3 * b;
            J(r, c) = gn * mz;
            J(r + 1, c + 1) = gn * mz;
            J(r + 2, c) = -gn * mx;
            J(r + 2, c + 1) = -gn * my;
        }
    }
    return J;
}

Eigen::MatrixXd numeric_jacobian(const NetworkParams& p, const BlochState& s) {
    const int n = p.size();
    const double h = 1e-6;
    Eigen::MatrixXd J(3 * n, 3 * n);
    BlochState probe = s;
    for (int j = 0; j < 3 * n; ++j) {
        double& comp = probe.m[static_cast<std::size_t>(j / 3)][static_cast<std::size_t>(j % 3)];
        const double keep = comp;
        comp = keep + h;
        const BlochState fp = vector_field(p, probe);
        comp = keep - h;
        const BlochState fm = vector_field(p, probe);
        comp = keep;
        for (int i = 0; i < 3 * n; ++i) {
            const double plus = fp.m[static_cast<std::size_t>(i / 3)][static_cast<std::size_t>(i % 3)];
            const double minus = fm.m[static_cast<std::size_t>(i / 3)][static_cast<std::size_t>(i % 3)];
            J(i, j) = (plus - minus) / (2.0 * h);
        }
    }
    return J;
}

}  // namespace

FixedPoint fixed_point_two(const NetworkParams& params) {
    require_two_dissipative(params, "fixed_point_two");
    const double kappa = params.ensembles[0].kappa;
    const double gamma = params.coupling.strength;
    const double om_a = params.ensembles[0].omega;
    const double om_b = params.ensembles[1].omega;

    const double denom = kappa * (gamma + kappa);
    const double my_a = (0.5 * gamma * (om_a - om_b) + kappa * om_a) / denom;
    const double my_b = (0.5 * gamma * (om_b - om_a) + kappa * om_b) / denom;

    FixedPoint fp;
    fp.state = BlochState(2);
    fp.state.m[0] = {0.0, my_a, 0.0};
    fp.state.m[1] = {0.0, my_b, 0.0};
    fp.physical = std::abs(my_a) <= 1.0 + bloch_norm_eps && std::abs(my_b) <= 1.0 + bloch_norm_eps;
    return fp;
}

double gamma_crit(const NetworkParams& params) {
    require_two_dissipative(params, "gamma_crit");
    const double kappa = params.ensembles[0].kappa;
    const double om_a = params.ensembles[0].omega;
    const double om_b = params.ensembles[1].omega;
    const double detuning = om_a - om_b;

    const double den_a = 2.0 * kappa - detuning;
    const double den_b = 2.0 * kappa + detuning;
    if (!(den_a > 0.0) || !(den_b > 0.0))
        throw ConfigError("gamma_crit: formula out of domain (|detuning| >= 2 kappa); "
                          "use critical_coupling_search");

    const double crit_a = std::max(0.0, 2.0 * kappa * (om_a - kappa) / den_a);
    const double crit_b = std::max(0.0, 2.0 * kappa * (om_b - kappa) / den_b);
    return std::max(crit_a, crit_b);
}

StabilityReport stability_at(const NetworkParams& params, const FixedPoint& point) {
    params.validate();
    if (point.state.size() != params.size())
        throw ConfigError("stability_at: state/params dimension mismatch");
    if (field_max_norm(params, point.state) >= residual_tol)
        throw ConfigError("stability_at: point is not a fixed point (residual above 1e-10)");

    const Eigen::MatrixXd J = params.coupling.kind == CouplingKind::Dissipative
                                  ? dissipative_jacobian(params, point.state)
                                  : numeric_jacobian(params, point.state);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(J, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("stability_at: Jacobian eigensolve failed");

    StabilityReport report;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        report.jacobian_eigenvalues.push_back(solver.eigenvalues()[i]);
    std::sort(report.jacobian_eigenvalues.begin(), report.jacobian_eigenvalues.end(),
              [](const auto& a, const auto& b) { return a.real() > b.real(); });

    bool oscillatory = false, marginal = false;
    for (const auto& ev : report.jacobian_eigenvalues) {
        if (std::abs(ev.imag()) > spectrum_tol && ev.real() > -spectrum_tol)
            oscillatory = true;
        if (std::abs(ev) < spectrum_tol) marginal = true;
    }
    report.classification = oscillatory ? StabilityClass::Oscillatory
                            : marginal  ? StabilityClass::Marginal
                                        : StabilityClass::Hyperbolic;
    return report;
}

bool persistent_oscillations(const NetworkParams& params, double t_end) {
    IntegrationConfig cfg;
    cfg.t_end = t_end;
    cfg.dt_out = 0.2;
    const Trajectory traj = integrate(params, BlochState::polarized(params.size()), cfg);
    const auto first = static_cast<std::size_t>(
        std::floor(static_cast<double>(traj.samples()) * 0.75));
    for (int a = 0; a < params.size(); ++a) {
        const auto series = traj.mz_series(a);
        const auto [lo, hi] = std::minmax_element(
            series.begin() + static_cast<std::ptrdiff_t>(first), series.end());
        if (0.5 * (*hi - *lo) > amp_threshold) return true;
    }
    return false;
}

double critical_coupling_search(const NetworkParams& params_template,
                                double strength_lo, double strength_hi, double tol) {
    params_template.validate();
    if (!(strength_lo >= 0.0) || !(strength_hi > strength_lo))
        throw ConfigError("critical_coupling_search: need 0 <= strength_lo < strength_hi");
    if (!(tol > 0.0))
        throw ConfigError("critical_coupling_search: tol must be positive");

    auto with_strength = [&params_template](double s) {
        NetworkParams p = params_template;
        p.coupling.strength = s;
        return p;
    };

    if (!persistent_oscillations(with_strength(strength_lo)))
        throw NumericalError("critical_coupling_search: no oscillations at strength_lo; "
                             "bracket does not straddle the transition");
    if (persistent_oscillations(with_strength(strength_hi)))
        throw NumericalError("critical_coupling_search: oscillations persist at "
                             "strength_hi; bracket does not straddle the transition");

    double lo = strength_lo, hi = strength_hi;
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        if (persistent_oscillations(with_strength(mid)))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace timeseed
