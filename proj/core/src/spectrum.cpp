#include "timeseed/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SuperLUSupport>

#include <arpack/arpack.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace timeseed {

namespace {

using Cd = std::complex<double>;

constexpr double merge_tol = 1e-9;

std::vector<Cd> dense_eigenvalues(const SparseOp& liou) {
    const auto dim = static_cast<lapack_int>(liou.rows());
    Eigen::MatrixXcd dense(liou);
    std::vector<Cd> w(static_cast<std::size_t>(dim));
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'N', dim,
        reinterpret_cast<lapack_complex_double*>(dense.data()), dim,
        reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw NumericalError("slow_spectrum: dense eigensolve failed (zgeev info=" +
                             std::to_string(info) + ")");
    return w;
}

/// Ritz values of (L - sigma I)^{-1} mapped back to eigenvalues of L.
std::vector<Cd> shift_invert_eigenvalues(const SparseOp& liou, Cd sigma, int nev_req) {
    const auto n = static_cast<a_int>(liou.rows());
    SparseOp id(liou.rows(), liou.cols());
    id.setIdentity();
    const SparseOp shifted = SparseOp(liou - SparseOp(sigma * id));

    Eigen::SuperLU<SparseOp> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success)
        throw NumericalError("slow_spectrum: shift-invert factorization failed at "
                             "sigma = (" + std::to_string(sigma.real()) + ", " +
                             std::to_string(sigma.imag()) + ")");

    const a_int nev = std::min<a_int>(nev_req, n - 2);
    const a_int ncv = std::min<a_int>(n, std::max<a_int>(3 * nev + 20, 40));
    std::vector<Cd> resid(static_cast<std::size_t>(n)),
        v(static_cast<std::size_t>(n) * static_cast<std::size_t>(ncv)),
        workd(3 * static_cast<std::size_t>(n)),
        workl(3 * static_cast<std::size_t>(ncv) * static_cast<std::size_t>(ncv) +
              5 * static_cast<std::size_t>(ncv)),
        d(static_cast<std::size_t>(nev) + 1),
        z(static_cast<std::size_t>(n) * (static_cast<std::size_t>(nev) + 1)),
        workev(2 * static_cast<std::size_t>(ncv));
    std::vector<double> rwork(static_cast<std::size_t>(ncv));
    std::vector<a_int> select(static_cast<std::size_t>(ncv), 1);
    a_int iparam[11] = {}, ipntr[14] = {};
    iparam[0] = 1;     // exact shifts
    iparam[2] = 500;   // max Arnoldi restarts
    iparam[3] = 1;
    iparam[6] = 1;     // standard problem; we apply OP = inv(L - sigma I) ourselves

    a_int ido = 0, info = 0;
    const double tol = 1e-12;
    while (true) {
        znaupd_c(&ido, "I", n, "LM", nev, tol,
                 reinterpret_cast<double _Complex*>(resid.data()), ncv,
                 reinterpret_cast<double _Complex*>(v.data()), n, iparam, ipntr,
                 reinterpret_cast<double _Complex*>(workd.data()),
                 reinterpret_cast<double _Complex*>(workl.data()),
                 static_cast<a_int>(workl.size()), rwork.data(), &info);
        if (ido == 1 || ido == -1) {
            Eigen::Map<const Eigen::VectorXcd> x(workd.data() + ipntr[0] - 1, n);
            Eigen::Map<Eigen::VectorXcd> y(workd.data() + ipntr[1] - 1, n);
            y = lu.solve(x);
        } else {
            break;
        }
    }
    if (info < 0)
        throw NumericalError("slow_spectrum: znaupd failed (info=" +
                             std::to_string(info) + ")");

    a_int info2 = 0;
    Cd sigma_out = sigma;
    zneupd_c(/*rvec=*/0, "A", select.data(),
             reinterpret_cast<double _Complex*>(d.data()),
             reinterpret_cast<double _Complex*>(z.data()), n,
             *reinterpret_cast<double _Complex*>(&sigma_out),
             reinterpret_cast<double _Complex*>(workev.data()),
             "I", n, "LM", nev, tol,
             reinterpret_cast<double _Complex*>(resid.data()), ncv,
             reinterpret_cast<double _Complex*>(v.data()), n, iparam, ipntr,
             reinterpret_cast<double _Complex*>(workd.data()),
             reinterpret_cast<double _Complex*>(workl.data()),
             static_cast<a_int>(workl.size()), rwork.data(), &info2);
    if (info2 != 0)
        throw NumericalError("slow_spectrum: zneupd failed (info=" +
                             std::to_string(info2) + ")");

    const auto nconv = std::min<a_int>(iparam[4], nev);
    std::vector<Cd> out;
    out.reserve(static_cast<std::size_t>(nconv));
    for (a_int i = 0; i < nconv; ++i)
        out.push_back(sigma + 1.0 / d[static_cast<std::size_t>(i)]);
    return out;
}

void merge_unique(std::vector<Cd>& into, const std::vector<Cd>& more) {
    for (const Cd& w : more) {
        bool seen = false;
        for (const Cd& have : into)
            if (std::abs(have - w) < merge_tol) {
                seen = true;
                break;
            }
        if (!seen) into.push_back(w);
    }
}

}  // namespace

int dense_cap() {
    const char* env = std::getenv("TIMESEED_DENSE_CAP");
    if (env == nullptr || *env == '\0') return 4096;
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || value <= 0)
        throw ConfigError("TIMESEED_DENSE_CAP: must be a positive integer, got '" +
                          std::string(env) + "'");
    return static_cast<int>(std::min<long>(value, 1L << 30));
}

SpectrumResult slow_spectrum(const SparseOp& liouvillian, int k,
                             const SpectrumOptions& opts) {
    if (k < 3)
        throw ConfigError("slow_spectrum: k must be at least 3");
    if (liouvillian.rows() != liouvillian.cols() || liouvillian.rows() < 4)
        throw ConfigError("slow_spectrum: malformed superoperator");

    const long dim = liouvillian.rows();
    const int cap = opts.dense_cap_override > 0 ? opts.dense_cap_override : dense_cap();

    std::vector<Cd> found;
    if (dim <= cap) {
        found = dense_eigenvalues(liouvillian);
    } else {
        for (double im : opts.shift_ims) {
            const auto batch = shift_invert_eigenvalues(
                liouvillian, Cd(opts.shift_re, im), opts.arnoldi_nev);
            merge_unique(found, batch);
        }
        // The spectrum is conjugation-symmetric; complete pairs the
        // upper-half-plane shifts did not visit.
        std::vector<Cd> conjugates;
        for (const Cd& w : found)
            if (std::abs(w.imag()) > spectral_im_tol) conjugates.push_back(std::conj(w));
        merge_unique(found, conjugates);
    }

    std::sort(found.begin(), found.end(), [](const Cd& a, const Cd& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });

    auto kept = static_cast<std::size_t>(std::min<long>(k, static_cast<long>(found.size())));
    // Do not strand a conjugate twin at the truncation boundary.
    if (kept < found.size() && kept > 0 &&
        std::abs(found[kept - 1].imag()) > spectral_im_tol &&
        std::abs(found[kept] - std::conj(found[kept - 1])) < merge_tol)
        ++kept;

    SpectrumResult result;
    result.eigenvalues.assign(found.begin(),
                              found.begin() + static_cast<std::ptrdiff_t>(kept));

    for (const Cd& w : result.eigenvalues) {
        if (w.real() > spectral_zero_tol)
            throw NumericalError(
                "slow_spectrum: eigenvalue with positive real part " +
                std::to_string(w.real()) + " (solver breakdown)");
        if (std::abs(w) < spectral_zero_tol) ++result.steady_count;
    }

    bool have_dominant = false;
    for (const Cd& w : result.eigenvalues) {
        if (w.imag() > spectral_im_tol) {
            if (!have_dominant) {
                result.dominant = w;
                have_dominant = true;
            } else {
                result.second_dominant = w;
                break;
            }
        }
    }
    if (!have_dominant)
        throw NumericalError("slow_spectrum: no oscillating eigenvalue among the " +
                             std::to_string(result.eigenvalues.size()) + " slowest");
    return result;
}

}  // namespace timeseed
