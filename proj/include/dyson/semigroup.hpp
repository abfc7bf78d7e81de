#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "dyson/operators.hpp"
#include "dyson/partition.hpp"

namespace dyson {

// e^{tM} for a generator matrix, computed exactly through structure: the dbm
// matrix is nilpotent (finite series), the dou matrix is triangular with the
// weight grading on the diagonal (Parlett-style back-substitution).
Eigen::MatrixXd exact_matrix_exp(const GeneratorMatrix& gen, double t);

struct SemigroupAction {
    GeneratorMatrix gen;
    double t = 0.0;
    Eigen::MatrixXd expm;
};

SemigroupAction make_semigroup(GeneratorMatrix gen, double t);

// expm applied to a Jack-coefficient vector: the expectation of the polynomial
// under the process at time t, expressed again in the Jack basis. Throws on
// partitions outside the action's index.
std::map<Partition, double> semigroup_apply(const SemigroupAction& action,
                                            const std::map<Partition, double>& coeffs);

// Scalar c_kappa with (corner kernel) J_kappa^{(k vars)} = c_kappa * J_kappa^{(k+1 vars)}:
// Gamma((k+1)theta)/Gamma(theta) * prod_{i=1..k} Gamma((k+1-i)theta + kappa_i) /
// Gamma((k+2-i)theta + kappa_i), via log-Gamma.
double kernel_factor(double theta, int k, const Partition& kappa);

struct CoefficientComparison {
    Partition mu;
    double lhs;
    double rhs;
};

struct IntertwiningReport {
    double max_abs_error = 0.0;
    double scale = 0.0;         // max |coefficient| on either side
    double scaled_error = 0.0;  // max_abs_error / max(1, scale)
    std::vector<CoefficientComparison> per_coefficient;
};

// Exact check of L P^(k)(t) = P^(k+1)(t) L on the Jack subspace generated by
// kappa: both sides are finite coefficient vectors, equal up to round-off.
IntertwiningReport verify_intertwining_exact(double theta, int k, const Partition& kappa,
                                             double t, GeneratorKind kind);

// Generator-level version: kernel factors against the two generator matrices.
IntertwiningReport verify_generator_intertwining(double theta, int k, const Partition& kappa);

}  // namespace dyson
