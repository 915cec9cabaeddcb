#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "timeseed/integrator.hpp"
#include "timeseed/model.hpp"

namespace timeseed {

using SparseOp = Eigen::SparseMatrix<std::complex<double>>;

/// Maximal-spin (Dicke) sectors of a two-ensemble network.  All collective
/// operators act per subsystem, so symmetric initial states never leave these
/// sectors; that is what keeps N ~ 40 tractable.
struct DickeSpace {
    int n_a = 0;   ///< atom number N_A
    int n_b = 0;   ///< atom number N_B

    int dim_a() const { return n_a + 1; }
    int dim_b() const { return n_b + 1; }
    int hilbert_dim() const { return dim_a() * dim_b(); }
    /// Dimension of the vectorized density operator the superoperator acts on.
    long liouville_dim() const {
        return static_cast<long>(hilbert_dim()) * hilbert_dim();
    }
    int n_total() const { return n_a + n_b; }

    /// Equal split of an even total atom number.
    static DickeSpace half_split(int n_total);
};

/// Assembly guard: liouville_dim() above this throws ResourceError.
inline constexpr long build_dim_cap = 1L << 20;

/// Dominant-eigenvalue selection thresholds.
inline constexpr double spectral_im_tol = 1e-7;
inline constexpr double spectral_zero_tol = 1e-10;

struct SpectrumResult {
    std::vector<std::complex<double>> eigenvalues;  ///< Re descending
    /// Largest-real-part eigenvalue with |Im| > spectral_im_tol (Im > 0
    /// branch): the slow oscillating coherence whose scaling is tracked.
    std::complex<double> dominant;
    std::complex<double> second_dominant;
    int steady_count = 0;   ///< multiplicity of |lambda| < spectral_zero_tol
};

struct ScalingFit {
    std::vector<double> coefficients;  ///< a_0 .. a_mu
    int mu = 0;
    double residual = 0.0;             ///< RMS fit error
    double extrapolated = 0.0;         ///< a_0, the N -> infinity limit
};

/// Superoperator of the master equation under column-stacking vectorization:
/// unitary part from H = sum_alpha Omega_alpha S^x_alpha (plus the exchange
/// term (g/2S)(S^+_A S^-_B + h.c.) for coherent coupling), local dissipators
/// at rates kappa_alpha / S_alpha, and for dissipative coupling the collective
/// channel (Gamma/S) D[S^-_A + S^-_B] with S = S_A + S_B.
SparseOp build_liouvillian(const NetworkParams& params, const DickeSpace& space);

/// Default dense-eigensolver dimension cap (4096), overridable through the
/// TIMESEED_DENSE_CAP environment variable.
int dense_cap();

struct SpectrumOptions {
    int dense_cap_override = 0;   ///< 0: use dense_cap()
    int arnoldi_nev = 16;         ///< Ritz values requested per shift
    double shift_re = 0.03;       ///< real offset keeping shifts off the spectrum
    std::vector<double> shift_ims = {0.0, 0.4, 1.1};
};

/// k eigenvalues of largest real part.  Dense full diagonalization when the
/// dimension fits under the cap, shift-invert Arnoldi sweeps along the
/// imaginary axis otherwise.  The returned multiset is conjugation-closed.
SpectrumResult slow_spectrum(const SparseOp& liouvillian, int k,
                             const SpectrumOptions& opts = {});

/// Least-squares fit of values against F(N) = sum_{i=0..mu} a_i / N^i.
/// Requires at least mu + 1 distinct sizes.
ScalingFit scaling_fit(const std::vector<int>& sizes,
                       const std::vector<double>& values, int mu);

struct FiniteSizeSeries {
    std::vector<double> times;
    std::vector<std::vector<double>> mz;   ///< [ensemble][sample], <m^z_alpha>
    double max_trace_defect = 0.0;         ///< max |Tr rho - 1| along the run
};

/// Fully polarized product state |S_A, S_A> x |S_B, S_B| as a vectorized
/// density operator.
Eigen::VectorXcd polarized_density_vector(const DickeSpace& space);

/// Integrates the vectorized master equation and returns the <m^z_alpha>
/// series.  Direct integration is only allowed under the dense cap; larger
/// spaces throw ResourceError.
FiniteSizeSeries finite_size_trajectory(const NetworkParams& params,
                                        const DickeSpace& space,
                                        const Eigen::VectorXcd& rho0,
                                        const IntegrationConfig& cfg);

/// Coordinate-format text export (row col re im per line) for external
/// verification of the assembled superoperator.
void export_coordinate(const SparseOp& liouvillian, std::ostream& out);

}  // namespace timeseed
