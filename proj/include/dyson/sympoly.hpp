#pragma once

#include <map>
#include <span>
#include <vector>

#include "dyson/partition.hpp"

namespace dyson {

// Symmetric polynomial in a fixed number of variables, stored as coefficients
// over the monomial symmetric basis {m_mu}. Keys always have length <= num_vars
// and zero coefficients are never stored, so equality is structural.
class SymPoly {
  public:
    explicit SymPoly(int num_vars);

    // c * m_mu; requires length(mu) <= num_vars.
    static SymPoly monomial(int num_vars, const Partition& mu, double c = 1.0);

    int num_vars() const { return num_vars_; }
    const std::map<Partition, double>& terms() const { return coeffs_; }
    double coeff(const Partition& mu) const;
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const;  // 0 for the zero polynomial

    double eval(std::span<const double> x) const;

    // p(1_k), computed combinatorially (distinct-permutation counts).
    double eval_at_ones() const;

    // q with q(z) = p(1_k + z); degree-preserving, top-degree part unchanged.
    SymPoly shift_by_ones() const;

    SymPoly& operator+=(const SymPoly& rhs);
    SymPoly& operator-=(const SymPoly& rhs);
    SymPoly& operator*=(double s);
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator*(SymPoly a, double s) { return a *= s; }
    friend SymPoly operator*(double s, SymPoly a) { return a *= s; }

    // Drops coefficients with |c| <= tol (tol = 0 drops exact zeros only).
    SymPoly& prune(double tol = 0.0);

    double max_abs_coeff() const;

    bool operator==(const SymPoly&) const = default;

    void set_coeff(const Partition& mu, double c);  // enforces length <= num_vars

  private:
    int num_vars_;
    std::map<Partition, double> coeffs_;
};

// Product in the monomial basis. Throws std::domain_error when the result
// degree would exceed degree_cap (monomial products grow combinatorially).
SymPoly multiply(const SymPoly& p, const SymPoly& q, int degree_cap = 12);

inline SymPoly operator*(const SymPoly& p, const SymPoly& q) { return multiply(p, q); }

// Number of distinct permutations of mu zero-padded to num_vars slots.
double distinct_permutation_count(const Partition& mu, int num_vars);

}  // namespace dyson
