#pragma once

#include <vector>

#include "dyson/partition.hpp"
#include "dyson/rng.hpp"
#include "dyson/stats.hpp"
#include "dyson/sympoly.hpp"

namespace dyson {

// Point of the ordered chamber: a weakly increasing real vector.
class OrderedVector {
  public:
    OrderedVector() = default;
    explicit OrderedVector(std::vector<double> values);  // throws unless weakly increasing
    static OrderedVector sorted(std::vector<double> values);

    int dim() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    bool strictly_increasing() const;
    double span() const { return values_.empty() ? 0.0 : values_.back() - values_.front(); }

  private:
    std::vector<double> values_;
};

// Spreads exact or near ties by eps * max(1, span); used for densely packed
// starting configurations where the kernel density is degenerate.
OrderedVector jitter_ties(const OrderedVector& v, double eps = 1e-9);

bool interlaces(const OrderedVector& x, const OrderedVector& top);

// log of the corner kernel density at x given top (dim k vs k+1), with
// beta = 2 theta. Returns -inf outside the interlacing region; on the region
// boundary the sign of the exponent theta-1 decides (+inf, finite or -inf).
// Throws on tied top levels, where the density is undefined.
double da_log_density(const OrderedVector& top, const OrderedVector& x, double theta);
double da_density(const OrderedVector& top, const OrderedVector& x, double theta);

// Exact draw: Dirichlet(theta,...,theta) weights on the top levels, then the
// roots of sum_j w_j/(z - top_j) = 0, one bracketed in each gap (the weighted
// secular equation; roots interlace the poles).
OrderedVector da_sample(const OrderedVector& top, double theta, Rng& rng);

// Independent oracle for small k: rejection with per-cell Beta(theta, theta)
// proposals. (A uniform proposal fails for theta < 1, where the density is
// unbounded at the cell edges; the Beta proposal cancels those edge factors.)
OrderedVector da_sample_rejection(const OrderedVector& top, double theta, Rng& rng);

// Monte Carlo estimate of E[J_kappa(X)] under the kernel at top; compare
// against kernel_factor(theta, k, kappa) * J_kappa(top) in k+1 variables.
MomentEstimate da_moment_mc(const OrderedVector& top, double theta, const Partition& kappa,
                            long n_samples, Rng& rng);

// Quadrature of the kernel density times p over the interlacing region, for
// k = 1 and k = 2 only. Endpoint singularities are removed by the
// substitution u = (x - edge)^theta on each half cell.
double da_moment_quad(const OrderedVector& top, double theta, const SymPoly& p,
                      double tol = 1e-10);
double da_normalization_quad(const OrderedVector& top, double theta, double tol = 1e-10);

}  // namespace dyson
