#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "dyson/jack.hpp"
#include "dyson/partition.hpp"
#include "dyson/sympoly.hpp"

namespace dyson {

// Differential operators acting on symmetric polynomials, computed exactly on
// the monomial basis. The pairwise drift terms g(z_i)/(z_i - z_j) d_i are
// evaluated as divided differences of monomials, so the output is the exact
// polynomial (the symmetric combination has no poles).
//
//   b1 = sum_i d_i
//   b2 = 1/2 sum_i z_i d_i^2 + theta sum_{i != j} z_i/(z_i - z_j) d_i
//   b3 = sum_i z_i d_i
//   jack operator = sum_i z_i^2 d_i^2 + 2 theta sum_{i != j} z_i^2/(z_i - z_j) d_i
//   dbm generator = 1/2 sum_i d_i^2 + theta sum_{i != j} 1/(z_i - z_j) d_i
//   dou generator = dbm generator - 1/2 b3
SymPoly apply_b1(const SymPoly& p);
SymPoly apply_b2(const SymPoly& p, double theta);
SymPoly apply_b3(const SymPoly& p);
SymPoly apply_jack_operator(const SymPoly& p, double theta);
SymPoly apply_dbm_generator(const SymPoly& p, double theta);
SymPoly apply_dou_generator(const SymPoly& p, double theta);

// Closed-form actions on the Jack basis via lowering and generalized binomial
// coefficients; independent of the differential path above and cross-validated
// against it. Keys are the lowered partitions kappa_(i).
std::map<Partition, double> jack_action_b1(const JackBasis& basis, const Partition& kappa);
std::map<Partition, double> jack_action_b2(const JackBasis& basis, const Partition& kappa);

enum class GeneratorKind { dbm, dou };

// Matrix of the process generator on the Jack subspace spanned by the
// sub-partitions of kappa_max. Column mu holds the Jack-basis coefficients of
// the generator applied to J_mu. The dbm matrix is strictly graded-lowering
// (entries only between weights w and w-2), hence nilpotent; the dou matrix
// adds -|mu|/2 on the diagonal.
struct GeneratorMatrix {
    GeneratorKind kind;
    double theta;
    int num_vars;
    std::vector<Partition> basis_index;  // weight-major order
    Eigen::MatrixXd entries;

    int index_of(const Partition& mu) const;  // -1 when absent
};

GeneratorMatrix build_generator_matrix(const JackBasis& basis, const Partition& kappa_max,
                                       GeneratorKind kind);

}  // namespace dyson
