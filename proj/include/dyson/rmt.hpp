#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "dyson/dixon_anderson.hpp"
#include "dyson/rng.hpp"
#include "dyson/sde.hpp"

namespace dyson {

struct SymMatrixState {
    Eigen::MatrixXd m;
    double time = 0.0;
};

// Variance pattern of the matrix Brownian increments (diagonal, off-diagonal)
// per unit time. dbm_matched (t, t/2) is the scaling whose eigenvalue process
// solves the beta = 1 particle system exactly and is the default; the other
// two are selectable for the convention comparison tests.
enum class MatrixBmConvention { dbm_matched, literal_unit, goe };

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the sign
// correction on the diagonal of R that removes the QR gauge freedom.
Eigen::MatrixXd haar_orthogonal(int n, Rng& rng);

// Unitary version (phase correction instead of signs), for the beta = 2 mirror.
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

// Symmetric matrix with spectrum exactly x_top and a Haar-random eigenframe.
SymMatrixState embed_spectrum(const OrderedVector& x_top, Rng& rng);

// Adds independent Gaussian increments of horizon t to the upper triangle
// (mirrored); exact in law, no time discretization.
SymMatrixState evolve_matrix_bm(const SymMatrixState& state, double t, Rng& rng,
                                MatrixBmConvention conv = MatrixBmConvention::dbm_matched);

// Ordered eigenvalues of the leading k x k principal submatrix (default: drop
// one row/column).
OrderedVector corner_spectrum(const SymMatrixState& state, int k = -1);

OrderedVector full_spectrum(const SymMatrixState& state);

// Hermitian mirror (beta = 2): Haar-unitary frame, complex Brownian entries.
struct HermMatrixState {
    Eigen::MatrixXcd m;
    double time = 0.0;
};
HermMatrixState embed_spectrum_hermitian(const OrderedVector& x_top, Rng& rng);
HermMatrixState evolve_matrix_bm_hermitian(const HermMatrixState& state, double t, Rng& rng);
OrderedVector corner_spectrum_hermitian(const HermMatrixState& state, int k = -1);

struct CornerCheckReport {
    StatComparison p1;
    StatComparison p2;
    double max_abs_z = 0.0;
    long interlacing_failures = 0;
};

// Matrix route (embed, Brownian entries, corner eigenvalues) against process
// route (beta = 1 particle SDE from x_top, then a kernel draw at theta = 1/2);
// also checks Cauchy interlacing on every matrix-route sample.
CornerCheckReport rmt_corner_check(const OrderedVector& x_top, double t, long paths,
                                   std::uint64_t seed, int workers,
                                   MatrixBmConvention conv = MatrixBmConvention::dbm_matched,
                                   double sde_dt = 0.0);

}  // namespace dyson
