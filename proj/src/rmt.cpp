#include "dyson/rmt.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace dyson {

namespace {

std::pair<double, double> variance_pattern(MatrixBmConvention conv) {
    switch (conv) {
        case MatrixBmConvention::dbm_matched:
            return {1.0, 0.5};
        case MatrixBmConvention::literal_unit:
            return {1.0, 1.0};
        case MatrixBmConvention::goe:
            return {2.0, 1.0};
    }
    return {1.0, 0.5};
}

}  // namespace

Eigen::MatrixXd haar_orthogonal(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("haar_orthogonal: n must be at least 1");
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("haar_unitary: n must be at least 1");
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = std::complex<double>(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const std::complex<double> d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) q.col(j) *= d / a;
    }
    return q;
}

SymMatrixState embed_spectrum(const OrderedVector& x_top, Rng& rng) {
    const int n = x_top.dim();
    const Eigen::MatrixXd q = haar_orthogonal(n, rng);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = x_top[i];
    Eigen::MatrixXd m = q * d.asDiagonal() * q.transpose();
    m = 0.5 * (m + m.transpose()).eval();  // restore exact symmetry
    return {std::move(m), 0.0};
}

SymMatrixState evolve_matrix_bm(const SymMatrixState& state, double t, Rng& rng,
                                MatrixBmConvention conv) {
    if (t < 0.0) throw std::invalid_argument("evolve_matrix_bm: negative horizon");
    const auto [var_diag, var_off] = variance_pattern(conv);
    const int n = static_cast<int>(state.m.rows());
    Eigen::MatrixXd m = state.m;
    const double sd_diag = std::sqrt(t * var_diag);
    const double sd_off = std::sqrt(t * var_off);
    for (int i = 0; i < n; ++i) {
        m(i, i) += sd_diag * rng.normal();
        for (int j = i + 1; j < n; ++j) {
            const double g = sd_off * rng.normal();
            m(i, j) += g;
            m(j, i) += g;
        }
    }
    return {std::move(m), state.time + t};
}

OrderedVector corner_spectrum(const SymMatrixState& state, int k) {
    const int n = static_cast<int>(state.m.rows());
    if (k < 0) k = n - 1;
    if (k < 1 || k > n) throw std::invalid_argument("corner_spectrum: bad corner size");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(state.m.topLeftCorner(k, k));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("corner_spectrum: eigensolver failed");
    std::vector<double> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + k);
    return OrderedVector(std::move(vals));  // ascending by construction
}

OrderedVector full_spectrum(const SymMatrixState& state) {
    return corner_spectrum(state, static_cast<int>(state.m.rows()));
}

HermMatrixState embed_spectrum_hermitian(const OrderedVector& x_top, Rng& rng) {
    const int n = x_top.dim();
    const Eigen::MatrixXcd q = haar_unitary(n, rng);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = x_top[i];
    Eigen::MatrixXcd m = q * d.asDiagonal() * q.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    return {std::move(m), 0.0};
}

HermMatrixState evolve_matrix_bm_hermitian(const HermMatrixState& state, double t, Rng& rng) {
    // Exact-in-law scaling for the beta = 2 particle system: real diagonal of
    // variance t, complex off-diagonal entries of total variance t.
    const int n = static_cast<int>(state.m.rows());
    Eigen::MatrixXcd m = state.m;
    const double sd_diag = std::sqrt(t);
    const double sd_off = std::sqrt(0.5 * t);
    for (int i = 0; i < n; ++i) {
        m(i, i) += sd_diag * rng.normal();
        for (int j = i + 1; j < n; ++j) {
            const std::complex<double> g(sd_off * rng.normal(), sd_off * rng.normal());
            m(i, j) += g;
            m(j, i) += std::conj(g);
        }
    }
    return {std::move(m), state.time + t};
}

OrderedVector corner_spectrum_hermitian(const HermMatrixState& state, int k) {
    const int n = static_cast<int>(state.m.rows());
    if (k < 0) k = n - 1;
    if (k < 1 || k > n) throw std::invalid_argument("corner_spectrum_hermitian: bad corner size");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(state.m.topLeftCorner(k, k));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("corner_spectrum_hermitian: eigensolver failed");
    std::vector<double> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + k);
    return OrderedVector(std::move(vals));
}

CornerCheckReport rmt_corner_check(const OrderedVector& x_top, double t, long paths,
                                   std::uint64_t seed, int workers, MatrixBmConvention conv,
                                   double sde_dt) {
    const int n = x_top.dim();
    const int k = n - 1;
    if (k < 1) throw std::invalid_argument("rmt_corner_check: need at least a 2x2 matrix");

    std::atomic<long> interlacing_failures{0};

    // Matrix route.
    auto lhs = run_antithetic_pairs(
        std::max<long>(1, paths / 2), workers, seed, 0x3147, 2,
        [&](long, Rng& rng, double sign) -> std::vector<double> {
            SymMatrixState m0 = embed_spectrum(x_top, rng);
            // antithetic mirror: flip the Brownian increments only
            SymMatrixState mt = m0;
            {
                Rng* r = &rng;
                SymMatrixState evolved = evolve_matrix_bm(mt, t, *r, conv);
                if (sign < 0.0) {
                    evolved.m = 2.0 * m0.m - evolved.m;  // mirrored increments
                    evolved.m = 0.5 * (evolved.m + evolved.m.transpose()).eval();
                }
                mt = std::move(evolved);
            }
            const OrderedVector corner = corner_spectrum(mt);
            const OrderedVector full = full_spectrum(mt);
            const double tol = 1e-10 * (1.0 + full.span());
            for (int i = 0; i < k; ++i)
                if (corner[i] < full[i] - tol || corner[i] > full[i + 1] + tol)
                    interlacing_failures.fetch_add(1, std::memory_order_relaxed);
            double p1 = 0.0, p2 = 0.0;
            for (double v : corner.values()) {
                p1 += v;
                p2 += v * v;
            }
            return {p1, p2};
        });

    // Particle route: beta = 1 SDE on the top level, then a kernel draw.
    SdeConfig cfg;
    cfg.beta = 1.0;
    cfg.dim = n;
    cfg.t_final = t;
    cfg.dt = sde_dt;
    cfg.paths = paths;
    cfg.seed = seed;
    cfg.workers = workers;
    auto rhs = run_antithetic_pairs(
        std::max<long>(1, paths / 2), workers, seed, 0x4147, 2,
        [&](long, Rng& rng, double sign) -> std::vector<double> {
            OrderedVector y = simulate_dbm(x_top, cfg, rng, sign);
            if (!y.strictly_increasing()) y = jitter_ties(y, 1e-12);
            const OrderedVector x = da_sample(y, 0.5, rng);
            double p1 = 0.0, p2 = 0.0;
            for (double v : x.values()) {
                p1 += v;
                p2 += v * v;
            }
            return {p1, p2};
        });

    CornerCheckReport report;
    report.p1 = {"p1", to_estimate(lhs[0]), to_estimate(rhs[0]), 0.0};
    report.p2 = {"p2", to_estimate(lhs[1]), to_estimate(rhs[1]), 0.0};
    report.p1.z = two_sample_z(report.p1.lhs, report.p1.rhs);
    report.p2.z = two_sample_z(report.p2.lhs, report.p2.rhs);
    report.max_abs_z = std::max(std::abs(report.p1.z), std::abs(report.p2.z));
    report.interlacing_failures = interlacing_failures.load();
    return report;
}

}  // namespace dyson
