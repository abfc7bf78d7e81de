#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dyson/dixon_anderson.hpp"
#include "dyson/partition.hpp"
#include "dyson/rng.hpp"
#include "dyson/stats.hpp"

namespace dyson {

enum class SdeScheme { euler_sorted, euler_reflect };
enum class ProcessKind { dbm, dou };

struct SdeConfig {
    double beta = 2.0;
    int dim = 1;
    double dt = 0.0;  // 0: use 1e-3 * t_final
    double t_final = 1.0;
    SdeScheme scheme = SdeScheme::euler_sorted;
    long paths = 100000;
    std::uint64_t seed = 0;
    int workers = 4;
    bool antithetic = true;

    double resolved_dt() const { return dt > 0.0 ? dt : 1e-3 * t_final; }
    void validate() const;
};

// One path endpoint. Euler-Maruyama with re-ordering after every step; steps
// that land two particles closer than sqrt(dt)*1e-3, or whose drift
// displacement exceeds the diffusive scale (the overshoot regime near a
// collision), are redone as four quarter-steps, four levels deep.
// noise_sign = -1 runs the antithetic mirror of the same stream.
OrderedVector simulate_dbm(const OrderedVector& x0, const SdeConfig& cfg, Rng& rng,
                           double noise_sign = 1.0);
OrderedVector simulate_dou(const OrderedVector& y0, const SdeConfig& cfg, Rng& rng,
                           double noise_sign = 1.0);

// As above, but returns the state at each requested time (weakly increasing
// times, all <= t_final).
std::vector<OrderedVector> simulate_recorded(ProcessKind kind, const OrderedVector& x0,
                                             const SdeConfig& cfg,
                                             std::span<const double> record_times, Rng& rng,
                                             double noise_sign = 1.0);

// E[J_kappa(X(t_final))] by antithetic Monte Carlo.
MomentEstimate mc_jack_moment(ProcessKind kind, const OrderedVector& x0, const SdeConfig& cfg,
                              const Partition& kappa);

// Per-path least-squares slope of ||X(t)||^2 on a uniform time grid; for dbm
// the mean slope is beta k(k-1)/2 + k (squared-Bessel dimension).
MomentEstimate squared_radius_slope(ProcessKind kind, const OrderedVector& x0,
                                    const SdeConfig& cfg, int grid_points = 4);

// E[||X(t_final)||^2].
MomentEstimate squared_radius_endpoint(ProcessKind kind, const OrderedVector& x0,
                                       const SdeConfig& cfg);

struct StatComparison {
    std::string name;
    MomentEstimate lhs;
    MomentEstimate rhs;
    double z = 0.0;
};

struct PipelineReport {
    std::vector<StatComparison> stats;
    double max_abs_z = 0.0;
};

// Two realizations of the same law: (sample kernel at x_top, evolve k levels)
// against (evolve k+1 levels, sample kernel at the endpoint). Statistics
// recorded: p1, p2, p1^2 and J_kappa of the k-dimensional state.
PipelineReport mc_intertwining(const OrderedVector& x_top, const SdeConfig& cfg,
                               const Partition& kappa, double t,
                               ProcessKind kind = ProcessKind::dbm);

// Deterministic parallel driver: antithetic pair i draws substream (seed, salt, i),
// statistics are merged block-by-block in fixed order, so results depend only
// on (seed, paths, workers).
std::vector<Accumulator> run_antithetic_pairs(
    long n_pairs, int workers, std::uint64_t seed, std::uint64_t salt, int n_stats,
    const std::function<std::vector<double>(long, Rng&, double)>& path_fn, bool antithetic = true);

}  // namespace dyson
