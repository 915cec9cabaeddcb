#include "dicke_ops.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

namespace timeseed {

using detail::Cd;

namespace {

/// vec(A rho B) = (B^T kron A) vec(rho) under column stacking.
void add_left_right(detail::Triplets& trip, const SparseOp& left,
                    const SparseOp& right_transpose, Cd scale) {
    detail::add_kron(trip, right_transpose, left, scale);
}

void add_dissipator(detail::Triplets& trip, const SparseOp& c, double rate,
                    const SparseOp& id) {
    const SparseOp cdag = SparseOp(c.adjoint());
    const SparseOp cdc = SparseOp(cdag * c);
    const Cd r(rate, 0.0);
    // c rho c^dag
    detail::add_kron(trip, SparseOp(c.conjugate()), c, r);
    // -1/2 {c^dag c, rho}
    add_left_right(trip, cdc, id, -0.5 * r);
    detail::add_kron(trip, SparseOp(cdc.transpose()), id, -0.5 * r);
}

}  // namespace

SparseOp build_liouvillian(const NetworkParams& params, const DickeSpace& space) {
    params.validate();
    if (params.size() != 2)
        throw ConfigError("build_liouvillian: finite-size treatment covers exactly "
                          "two ensembles");
    if (space.n_a < 1 || space.n_b < 1)
        throw ConfigError("build_liouvillian: atom numbers must be positive");
    if (space.liouville_dim() > build_dim_cap)
        throw ResourceError(
            "build_liouvillian: superoperator dimension " +
            std::to_string(space.liouville_dim()) + " exceeds the assembly cap " +
            std::to_string(build_dim_cap) +
            "; reduce the atom numbers (iterative eigensolvers still need an "
            "assembled matrix under the cap)");

    const int da = space.dim_a(), db = space.dim_b();
    const int dim = space.hilbert_dim();
    const double s_a = 0.5 * space.n_a;
    const double s_b = 0.5 * space.n_b;
    const double s_tot = s_a + s_b;

    const SparseOp sm_a = detail::kron(detail::spin_minus(space.n_a), detail::identity(db));
    const SparseOp sm_b = detail::kron(detail::identity(da), detail::spin_minus(space.n_b));
    const SparseOp id = detail::identity(dim);

    // H = Omega_A S^x_A + Omega_B S^x_B (+ exchange for coherent coupling)
    SparseOp h = SparseOp(Cd(0.5 * params.ensembles[0].omega, 0.0) *
                          SparseOp(sm_a + SparseOp(sm_a.adjoint()))) +
                 SparseOp(Cd(0.5 * params.ensembles[1].omega, 0.0) *
                          SparseOp(sm_b + SparseOp(sm_b.adjoint())));
    if (params.coupling.kind == CouplingKind::Coherent && params.coupling.strength > 0.0) {
        const SparseOp exchange = SparseOp(SparseOp(sm_a.adjoint()) * sm_b);
        h = SparseOp(h + SparseOp(Cd(params.coupling.strength / (2.0 * s_tot), 0.0) *
                                  SparseOp(exchange + SparseOp(exchange.adjoint()))));
    }

    detail::Triplets trip;
    // -i (I kron H - H^T kron I)
    detail::add_kron(trip, id, h, Cd(0.0, -1.0));
    detail::add_kron(trip, SparseOp(h.transpose()), id, Cd(0.0, 1.0));

    add_dissipator(trip, sm_a, params.ensembles[0].kappa / s_a, id);
    add_dissipator(trip, sm_b, params.ensembles[1].kappa / s_b, id);
    if (params.coupling.kind == CouplingKind::Dissipative && params.coupling.strength > 0.0)
        add_dissipator(trip, SparseOp(sm_a + sm_b), params.coupling.strength / s_tot, id);

    SparseOp liou(dim * dim, dim * dim);
    liou.setFromTriplets(trip.begin(), trip.end());
    liou.makeCompressed();
    return liou;
}

Eigen::VectorXcd polarized_density_vector(const DickeSpace& space) {
    const long dim = space.hilbert_dim();
    Eigen::VectorXcd rho = Eigen::VectorXcd::Zero(dim * dim);
    rho[0] = Cd(1.0, 0.0);   // |S_A, S_B><S_A, S_B| sits at basis index 0
    return rho;
}

void export_coordinate(const SparseOp& liouvillian, std::ostream& out) {
    for (int k = 0; k < liouvillian.outerSize(); ++k)
        for (SparseOp::InnerIterator it(liouvillian, k); it; ++it) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%ld %ld %.17g %.17g\n",
                          static_cast<long>(it.row()), static_cast<long>(it.col()),
                          it.value().real(), it.value().imag());
            out << buf;
        }
}

FiniteSizeSeries finite_size_trajectory(const NetworkParams& params,
                                        const DickeSpace& space,
                                        const Eigen::VectorXcd& rho0,
                                        const IntegrationConfig& cfg) {
    cfg.validate();
    const long ldim = space.liouville_dim();
    if (ldim > dense_cap())
        throw ResourceError("finite_size_trajectory: superoperator dimension " +
                            std::to_string(ldim) + " exceeds the dense cap " +
                            std::to_string(dense_cap()));
    if (rho0.size() != ldim)
        throw ConfigError("finite_size_trajectory: initial state has wrong dimension");

    const SparseOp liou = build_liouvillian(params, space);
    const int dim = space.hilbert_dim();
    const int da = space.dim_a(), db = space.dim_b();
    const double s_a = 0.5 * space.n_a, s_b = 0.5 * space.n_b;

    // <m^z_alpha> and the trace only need the density-matrix diagonal.
    std::vector<double> wa(static_cast<std::size_t>(dim)), wb(static_cast<std::size_t>(dim));
    for (int a = 0; a < da; ++a)
        for (int b = 0; b < db; ++b) {
            wa[static_cast<std::size_t>(a * db + b)] = (s_a - a) / s_a;
            wb[static_cast<std::size_t>(a * db + b)] = (s_b - b) / s_b;
        }

    namespace od = boost::numeric::odeint;
    using state_t = std::vector<Cd>;

    state_t y(rho0.data(), rho0.data() + rho0.size());
    auto rhs = [&liou, ldim](const state_t& x, state_t& dxdt, double) {
        Eigen::Map<const Eigen::VectorXcd> xm(x.data(), ldim);
        Eigen::Map<Eigen::VectorXcd> dm(dxdt.data(), ldim);
        dm = liou * xm;
    };

    auto stepper = od::make_dense_output(cfg.abs_tol, cfg.rel_tol,
                                         od::runge_kutta_dopri5<state_t>());
    stepper.initialize(y, 0.0, std::min(cfg.dt_out, 1e-3));

    FiniteSizeSeries out;
    out.mz.assign(2, {});
    const auto n_out =
        static_cast<std::size_t>(std::floor(cfg.t_end / cfg.dt_out + 1e-9)) + 1;

    auto record = [&](const state_t& state, double t) {
        double mza = 0.0, mzb = 0.0, tr = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double p = state[static_cast<std::size_t>(i) * dim + i].real();
            tr += p;
            mza += wa[static_cast<std::size_t>(i)] * p;
            mzb += wb[static_cast<std::size_t>(i)] * p;
        }
        out.times.push_back(t);
        out.mz[0].push_back(mza);
        out.mz[1].push_back(mzb);
        out.max_trace_defect = std::max(out.max_trace_defect, std::abs(tr - 1.0));
    };

    record(y, 0.0);
    std::size_t next = 1;
    std::int64_t steps = 0;
    state_t sample(y.size());
    while (stepper.current_time() < cfg.t_end && next < n_out) {
        if (++steps > cfg.max_steps)
            throw ResourceError("finite_size_trajectory: step budget exhausted");
        stepper.do_step(rhs);
        while (next < n_out && next * cfg.dt_out <= stepper.current_time()) {
            const double t = next * cfg.dt_out;
            stepper.calc_state(t, sample);
            record(sample, t);
            ++next;
        }
    }
    return out;
}

}  // namespace timeseed
