#include "dyson/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "dyson/jack.hpp"

namespace dyson {

Eigen::MatrixXd exact_matrix_exp(const GeneratorMatrix& gen, double t) {
    const int n = static_cast<int>(gen.basis_index.size());
    if (t < 0.0) throw std::invalid_argument("exact_matrix_exp: negative time");

    if (gen.kind == GeneratorKind::dbm) {
        // Strictly graded-lowering, hence nilpotent: the series terminates.
        Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
        for (int m = 1; m <= n; ++m) {
            power = (gen.entries * power).eval();
            if (power.isZero(0.0)) break;
            result += (std::pow(t, m) / std::tgamma(m + 1.0)) * power;
        }
        return result;
    }

    // dou: lower triangular, diagonal -|mu|/2. Coupled entries always sit on
    // distinct diagonal values (weights differ), so the commutation recurrence
    // F L = L F resolves every off-diagonal entry.
    const Eigen::MatrixXd& L = gen.entries;
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) F(i, i) = std::exp(t * L(i, i));
    for (int d = 1; d < n; ++d) {
        for (int j = 0; j + d < n; ++j) {
            const int i = j + d;
            const double gap = L(i, i) - L(j, j);
            if (gap == 0.0) continue;  // same weight: no coupling
            double rhs = 0.0;
            for (int m = j + 1; m <= i; ++m) rhs += F(i, m) * L(m, j);
            for (int m = j; m < i; ++m) rhs -= L(i, m) * F(m, j);
            F(i, j) = rhs / gap;
        }
    }
    return F;
}

SemigroupAction make_semigroup(GeneratorMatrix gen, double t) {
    SemigroupAction action;
    action.expm = exact_matrix_exp(gen, t);
    action.gen = std::move(gen);
    action.t = t;
    return action;
}

std::map<Partition, double> semigroup_apply(const SemigroupAction& action,
                                            const std::map<Partition, double>& coeffs) {
    const int n = static_cast<int>(action.gen.basis_index.size());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (const auto& [mu, c] : coeffs) {
        const int idx = action.gen.index_of(mu);
        if (idx < 0) throw std::out_of_range("semigroup_apply: partition not indexed");
        v(idx) = c;
    }
    const Eigen::VectorXd w = action.expm * v;
    std::map<Partition, double> out;
    for (int i = 0; i < n; ++i)
        if (w(i) != 0.0) out[action.gen.basis_index[i]] = w(i);
    return out;
}

double kernel_factor(double theta, int k, const Partition& kappa) {
    if (theta <= 0.0) throw std::invalid_argument("kernel_factor: theta must be positive");
    if (kappa.length() > k)
        throw std::invalid_argument("kernel_factor: partition longer than level dimension");
    double log_value = std::lgamma((k + 1) * theta) - std::lgamma(theta);
    for (int i = 1; i <= k; ++i) {
        log_value += std::lgamma((k + 1 - i) * theta + kappa.part(i));
        log_value -= std::lgamma((k + 2 - i) * theta + kappa.part(i));
    }
    return std::exp(log_value);
}

namespace {

IntertwiningReport compare_vectors(const std::vector<Partition>& index, const Eigen::VectorXd& lhs,
                                   const Eigen::VectorXd& rhs) {
    IntertwiningReport report;
    for (int i = 0; i < lhs.size(); ++i) {
        report.per_coefficient.push_back({index[i], lhs(i), rhs(i)});
        report.max_abs_error = std::max(report.max_abs_error, std::abs(lhs(i) - rhs(i)));
        report.scale = std::max({report.scale, std::abs(lhs(i)), std::abs(rhs(i))});
    }
    report.scaled_error = report.max_abs_error / std::max(1.0, report.scale);
    return report;
}

}  // namespace

IntertwiningReport verify_intertwining_exact(double theta, int k, const Partition& kappa,
                                             double t, GeneratorKind kind) {
    if (kappa.length() > k)
        throw std::invalid_argument("verify_intertwining_exact: partition longer than k");
    if (t < 0.0) throw std::invalid_argument("verify_intertwining_exact: negative time");

    const JackBasis basis_k({theta, k}, kappa.weight());
    const JackBasis basis_k1({theta, k + 1}, kappa.weight());
    const GeneratorMatrix gen_k = build_generator_matrix(basis_k, kappa, kind);
    const GeneratorMatrix gen_k1 = build_generator_matrix(basis_k1, kappa, kind);
    // Lowering never increases length, so both matrices share this index set.
    const int n = static_cast<int>(gen_k.basis_index.size());
    const int start = gen_k.index_of(kappa);

    Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
    unit(start) = 1.0;
    const Eigen::VectorXd evolved_k = exact_matrix_exp(gen_k, t) * unit;
    const Eigen::VectorXd evolved_k1 = exact_matrix_exp(gen_k1, t) * unit;

    Eigen::VectorXd lhs(n), rhs(n);
    const double c_kappa = kernel_factor(theta, k, kappa);
    for (int i = 0; i < n; ++i) {
        lhs(i) = kernel_factor(theta, k, gen_k.basis_index[i]) * evolved_k(i);
        rhs(i) = c_kappa * evolved_k1(i);
    }
    return compare_vectors(gen_k.basis_index, lhs, rhs);
}

IntertwiningReport verify_generator_intertwining(double theta, int k, const Partition& kappa) {
    if (kappa.length() > k)
        throw std::invalid_argument("verify_generator_intertwining: partition longer than k");

    const JackBasis basis_k({theta, k}, kappa.weight());
    const JackBasis basis_k1({theta, k + 1}, kappa.weight());
    const GeneratorMatrix gen_k = build_generator_matrix(basis_k, kappa, GeneratorKind::dbm);
    const GeneratorMatrix gen_k1 = build_generator_matrix(basis_k1, kappa, GeneratorKind::dbm);
    const int n = static_cast<int>(gen_k.basis_index.size());
    const int col = gen_k.index_of(kappa);

    Eigen::VectorXd lhs(n), rhs(n);
    const double c_kappa = kernel_factor(theta, k, kappa);
    for (int i = 0; i < n; ++i) {
        lhs(i) = kernel_factor(theta, k, gen_k.basis_index[i]) * gen_k.entries(i, col);
        rhs(i) = c_kappa * gen_k1.entries(i, col);
    }
    return compare_vectors(gen_k.basis_index, lhs, rhs);
}

}  // namespace dyson
