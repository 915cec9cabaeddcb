#include "dicke_ops.hpp"

#include <cmath>
#include <string>

namespace timeseed {

DickeSpace DickeSpace::half_split(int n_total) {
    if (n_total < 2 || n_total % 2 != 0)
        throw ConfigError("DickeSpace::half_split: total atom number must be even and "
                          "at least 2, got " + std::to_string(n_total));
    return DickeSpace{n_total / 2, n_total / 2};
}

namespace detail {

SparseOp spin_minus(int n) {
    const int dim = n + 1;
    const double s = 0.5 * n;
    Triplets trip;
    trip.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double m = s - i;
        trip.emplace_back(i + 1, i, Cd(std::sqrt(s * (s + 1.0) - m * (m - 1.0)), 0.0));
    }
    SparseOp op(dim, dim);
    op.setFromTriplets(trip.begin(), trip.end());
    return op;
}

SparseOp spin_z(int n) {
    const int dim = n + 1;
    const double s = 0.5 * n;
    Triplets trip;
    trip.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) trip.emplace_back(i, i, Cd(s - i, 0.0));
    SparseOp op(dim, dim);
    op.setFromTriplets(trip.begin(), trip.end());
    return op;
}

SparseOp identity(int dim) {
    SparseOp op(dim, dim);
    op.setIdentity();
    return op;
}

void add_kron(Triplets& trip, const SparseOp& a, const SparseOp& b, Cd scale) {
    const auto rows_b = b.rows();
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (SparseOp::InnerIterator ita(a, ka); ita; ++ita) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (SparseOp::InnerIterator itb(b, kb); itb; ++itb) {
                    trip.emplace_back(
                        static_cast<int>(ita.row() * rows_b + itb.row()),
                        static_cast<int>(ita.col() * rows_b + itb.col()),
                        scale * ita.value() * itb.value());
                }
            }
        }
    }
}

SparseOp kron(const SparseOp& a, const SparseOp& b) {
    Triplets trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros()) *
                 static_cast<std::size_t>(b.nonZeros()));
    add_kron(trip, a, b, Cd(1.0, 0.0));
    SparseOp out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

}  // namespace detail
}  // namespace timeseed
