#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "dyson/partition.hpp"
#include "dyson/sympoly.hpp"

namespace dyson {

// theta = beta/2 throughout.
struct JackParams {
    double theta;
    int num_vars;
};

// Raised when two same-degree eigenvalues of the defining operator collide,
// which makes the triangular eigenvector solve ill-posed.
struct degenerate_theta_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// J_kappa(1_k; theta) as a Gamma-ratio product, evaluated through log-Gamma
// differences: theta^{-|kappa|} prod_i Gamma((k+1-i)theta + kappa_i) / Gamma((k+1-i)theta).
double jack_norm(const JackParams& params, const Partition& kappa);

// All Jack polynomials with weight <= max_weight and length <= num_vars, with
// their normalizations, eigenvalues and generalized binomial coefficients.
// Built once; immutable afterwards, safe for concurrent readers.
class JackBasis {
  public:
    JackBasis(JackParams params, int max_weight);

    const JackParams& params() const { return params_; }
    int max_weight() const { return max_weight_; }

    // Weight-major order (weight descending, lexicographically descending
    // within a weight); fixes the indexing of every generator matrix.
    const std::vector<Partition>& index() const { return index_; }

    bool contains(const Partition& mu) const { return polys_.count(mu) > 0; }
    const SymPoly& poly(const Partition& mu) const;
    double norm(const Partition& mu) const;        // J_mu(1_k), Gamma formula
    double eigenvalue(const Partition& mu) const;  // of the defining operator

    // Coefficients a_mu with p = sum_mu a_mu J_mu, by triangular
    // back-substitution in the leading-monomial order. Throws when p contains
    // a monomial outside the basis span.
    std::map<Partition, double> to_jack(const SymPoly& p) const;

    SymPoly from_jack(const std::map<Partition, double>& coeffs) const;

    // Generalized binomial coefficients binom(kappa, rho) for all indexed rho,
    // read off the expansion of J_kappa(1_k + z) / J_kappa(1_k).
    const std::map<Partition, double>& binomial_coefficients(const Partition& kappa) const;

  private:
    JackParams params_;
    int max_weight_;
    std::vector<Partition> index_;
    std::map<Partition, SymPoly> polys_;
    std::map<Partition, double> norms_;
    std::map<Partition, double> eigs_;
    std::map<Partition, std::map<Partition, double>> binomials_;
};

// One-off construction of J_kappa in params.num_vars variables.
SymPoly build_jack(const JackParams& params, const Partition& kappa);

}  // namespace dyson
