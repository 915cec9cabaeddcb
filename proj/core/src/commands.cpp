#include "timeseed/commands.hpp"

#include "timeseed/analysis.hpp"
#include "timeseed/spectral.hpp"
#include "timeseed/stationary.hpp"
#include "timeseed/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace timeseed {

namespace {

std::string f12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

bool axis_equal(const AxisSpec& a, const AxisSpec& b) {
    return a.name == b.name && a.start == b.start && a.stop == b.stop &&
           a.count == b.count;
}

bool spec_equal(const GridSpec& a, const GridSpec& b) {
    if (!axis_equal(a.axis1, b.axis1)) return false;
    if (a.axis2.has_value() != b.axis2.has_value()) return false;
    if (a.axis2 && !axis_equal(*a.axis2, *b.axis2)) return false;
    if (a.metric != b.metric) return false;
    if (a.base.ensembles.size() != b.base.ensembles.size()) return false;
    for (std::size_t i = 0; i < a.base.ensembles.size(); ++i) {
        const auto& ea = a.base.ensembles[i];
        const auto& eb = b.base.ensembles[i];
        if (ea.omega != eb.omega || ea.kappa != eb.kappa ||
            ea.n_spins != eb.n_spins)
            return false;
    }
    return a.base.coupling.kind == b.base.coupling.kind &&
           a.base.coupling.strength == b.base.coupling.strength;
}

}  // namespace

void cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const BlochState start =
        cfg.initial ? *cfg.initial : BlochState::polarized(cfg.params.size());
    const Trajectory traj = integrate(cfg.params, start, cfg.integration);

    out << 't';
    for (int a = 0; a < traj.ensembles(); ++a)
        out << ",mx_" << a << ",my_" << a << ",mz_" << a;
    out << '\n';
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << f12(traj.times[i]);
        for (const auto& m : traj.states[i].m)
            out << ',' << f12(m[0]) << ',' << f12(m[1]) << ',' << f12(m[2]);
        out << '\n';
    }
    if (!out) throw ResourceError("simulate: write failed");
}

void cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    out << "N,re_lambda1,im_lambda1,re_lambda2,im_lambda2\n";

    std::vector<double> re1, im1;
    for (int n_total : cfg.spectrum.sizes) {
        const DickeSpace space = DickeSpace::half_split(n_total);
        const SparseOp liou = build_liouvillian(cfg.params, space);
        const SpectrumResult res = slow_spectrum(liou, 12);
        re1.push_back(res.dominant.real());
        im1.push_back(res.dominant.imag());
        out << n_total << ',' << f12(res.dominant.real()) << ','
            << f12(res.dominant.imag()) << ',' << f12(res.second_dominant.real())
            << ',' << f12(res.second_dominant.imag()) << '\n';
    }

    if (cfg.spectrum.fit) {
        const auto fit_line = [&out, &cfg](const char* series,
                                           const std::vector<double>& values,
                                           int mu) {
            const ScalingFit fit = scaling_fit(cfg.spectrum.sizes, values, mu);
            out << "{\"series\":\"" << series << "\",\"mu\":" << mu
                << ",\"extrapolated\":" << f12(fit.extrapolated)
                << ",\"residual\":" << f12(fit.residual)
                << ",\"coefficients\":[";
            for (std::size_t i = 0; i < fit.coefficients.size(); ++i)
                out << (i ? "," : "") << f12(fit.coefficients[i]);
            out << "]}\n";
        };
        fit_line("im_lambda1", im1, cfg.spectrum.mu_im);
        fit_line("re_lambda1", re1, cfg.spectrum.mu_re);
    }

    if (cfg.spectrum.cross_check) {
        // Dual-solver agreement at the crossover: the largest requested size
        // still under the dense cap is diagonalized both ways.
        const int cap = dense_cap();
        int n_cc = 0;
        for (int n : cfg.spectrum.sizes)
            if (DickeSpace::half_split(n).liouville_dim() <= cap && n > n_cc)
                n_cc = n;
        if (n_cc == 0)
            throw ResourceError(
                "cross-check: no requested size fits under the dense cap");

        const SparseOp liou =
            build_liouvillian(cfg.params, DickeSpace::half_split(n_cc));
        const SpectrumResult dense = slow_spectrum(liou, 12);
        SpectrumOptions force_iterative;
        force_iterative.dense_cap_override = 1;
        const SpectrumResult iter = slow_spectrum(liou, 12, force_iterative);
        const double delta =
            std::max(std::abs(dense.dominant - iter.dominant),
                     std::abs(dense.second_dominant - iter.second_dominant));
        out << "{\"cross_check\":{\"n\":" << n_cc << ",\"dense\":["
            << f12(dense.dominant.real()) << ',' << f12(dense.dominant.imag())
            << "],\"iterative\":[" << f12(iter.dominant.real()) << ','
            << f12(iter.dominant.imag())
            << "],\"max_abs_delta\":" << f12(delta) << "}}\n";
    }
    if (!out) throw ResourceError("spectrum: write failed");
}

void cmd_sweep(const RunConfig& cfg, const std::string& out_path,
               std::ostream& out) {
    cfg.validate();
    GridResult result;
    bool resumed = false;
    if (!out_path.empty()) {
        std::ifstream probe(out_path);
        if (probe.good()) {
            result = load_grid(out_path);
            if (!spec_equal(result.spec, *cfg.grid))
                throw ConfigError("sweep: existing grid at '" + out_path +
                                  "' was produced by a different spec");
            resume_grid(result, cfg.integration, cfg.initial, cfg.threads);
            resumed = true;
        }
    }
    if (!resumed)
        result = run_grid(*cfg.grid, cfg.integration, cfg.initial, cfg.threads);

    if (out_path.empty()) {
        save_grid(result, out);
        return;
    }
    const std::string tmp = out_path + ".tmp";
    save_grid(result, tmp);
    if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
        throw ResourceError("sweep: cannot move grid into place at '" +
                            out_path + "'");
    std::size_t filled = 0;
    for (bool c : result.completed) filled += c ? 1 : 0;
    out << "grid: " << out_path << " (" << filled << '/' << result.cells()
        << " cells)\n";
}

void cmd_crit(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const double bisection = critical_coupling_search(cfg.params, cfg.crit.lo,
                                                      cfg.crit.hi, cfg.crit.tol);
    std::optional<double> analytic;
    if (cfg.params.coupling.kind == CouplingKind::Dissipative) {
        try {
            analytic = gamma_crit(cfg.params);
        } catch (const ConfigError&) {
            // closed form out of domain; report the search result alone
        }
    }
    out << "{\"kind\":\""
        << (cfg.params.coupling.kind == CouplingKind::Dissipative
                ? "dissipative"
                : "coherent")
        << "\",\"bracket\":[" << f12(cfg.crit.lo) << ',' << f12(cfg.crit.hi)
        << "],\"tol\":" << f12(cfg.crit.tol)
        << ",\"bisection\":" << f12(bisection) << ",\"analytic\":";
    if (analytic) {
        out << f12(*analytic)
            << ",\"difference\":" << f12(std::abs(bisection - *analytic));
    } else {
        out << "null,\"difference\":null";
    }
    out << "}\n";
    if (!out) throw ResourceError("crit: write failed");
}

}  // namespace timeseed
