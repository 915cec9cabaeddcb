#pragma once

#include <complex>
#include <vector>

#include <Eigen/SparseCore>

#include "timeseed/spectral.hpp"

namespace timeseed::detail {

using Cd = std::complex<double>;
using Triplets = std::vector<Eigen::Triplet<Cd>>;

/// Collective lowering operator on the (n+1)-dimensional maximal-spin space.
/// Basis ordering |i> with m_i = S - i, S = n/2, so row i+1 carries
/// sqrt(S(S+1) - m(m-1)).
SparseOp spin_minus(int n);

/// Diagonal m-value operator (S^z).
SparseOp spin_z(int n);

SparseOp identity(int dim);

/// Kronecker product a (x) b with index (ia*rows_b + ib).
SparseOp kron(const SparseOp& a, const SparseOp& b);

/// Accumulates scale * kron(a, b) into trip.
void add_kron(Triplets& trip, const SparseOp& a, const SparseOp& b, Cd scale);

}  // namespace timeseed::detail
