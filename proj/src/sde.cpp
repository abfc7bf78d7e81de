#include "dyson/sde.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <numbers>
#include <thread>

#include "dyson/jack.hpp"

namespace dyson {

void SdeConfig::validate() const {
    if (beta <= 0.0) throw std::invalid_argument("SdeConfig: beta must be positive");
    if (dim < 1) throw std::invalid_argument("SdeConfig: dim must be at least 1");
    if (dt < 0.0 || t_final < 0.0) throw std::invalid_argument("SdeConfig: negative time");
    if (paths < 1) throw std::invalid_argument("SdeConfig: need at least one path");
    if (workers < 1) throw std::invalid_argument("SdeConfig: need at least one worker");
}

namespace {

double semicircle_cdf(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    return 0.5 + (x * std::sqrt(4.0 - x * x) + 4.0 * std::asin(0.5 * x)) / (4.0 * std::numbers::pi);
}

double semicircle_quantile(double p) {
    double lo = -2.0, hi = 2.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (semicircle_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct Stepper {
    ProcessKind kind;
    double theta;  // beta / 2
    SdeScheme scheme;
    double min_gap;  // refinement trigger, sqrt(dt) * 1e-3 from the base step
    Rng& rng;
    double sign;

    void drift(const std::vector<double>& x, std::vector<double>& b) const {
        const int k = static_cast<int>(x.size());
        for (int i = 0; i < k; ++i) {
            double d = 0.0;
            for (int j = 0; j < k; ++j)
                if (j != i) d += 1.0 / (x[i] - x[j]);
            b[i] = theta * d;
            if (kind == ProcessKind::dou) b[i] -= 0.5 * x[i];
        }
    }

    static void reorder(std::vector<double>& x, SdeScheme scheme) {
        if (scheme == SdeScheme::euler_reflect) {
            // pairwise reflection sweeps; for exchangeable particles this
            // coincides with sorting but stays local
            bool swapped = true;
            while (swapped) {
                swapped = false;
                for (std::size_t i = 1; i < x.size(); ++i)
                    if (x[i] < x[i - 1]) {
                        std::swap(x[i], x[i - 1]);
                        swapped = true;
                    }
            }
        } else {
            std::sort(x.begin(), x.end());
        }
    }

    void step(std::vector<double>& x, double h, int depth, std::vector<double>& b,
              std::vector<double>& y) const {
        drift(x, b);

        if (depth < 4) {
            double max_disp = 0.0;
            for (double bi : b) max_disp = std::max(max_disp, std::abs(bi) * h);
            if (max_disp > 10.0 * std::sqrt(h)) {
                for (int s = 0; s < 4; ++s) step(x, 0.25 * h, depth + 1, b, y);
                return;
            }
        }

        const double root_h = std::sqrt(h);
        y.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            y[i] = x[i] + h * b[i] + root_h * sign * rng.normal();
        reorder(y, scheme);

        if (depth < 4 && x.size() > 1) {
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t i = 1; i < y.size(); ++i) gap = std::min(gap, y[i] - y[i - 1]);
            if (gap < min_gap) {
                for (int s = 0; s < 4; ++s) step(x, 0.25 * h, depth + 1, b, y);
                return;
            }
        }
        x = y;
    }
};

// Ties in the start configuration are split by one deterministic square-root
// fan of semicircle quantiles before the drift is first evaluated.
std::vector<double> split_ties(std::vector<double> x, double dt) {
    bool tied = false;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] == x[i - 1]) tied = true;
    if (!tied || x.size() < 2) return x;
    const int k = static_cast<int>(x.size());
    for (int i = 0; i < k; ++i)
        x[i] += std::sqrt(dt) * semicircle_quantile((i + 0.5) / k);
    std::sort(x.begin(), x.end());
    return x;
}

std::vector<OrderedVector> run_path(ProcessKind kind, const OrderedVector& x0,
                                    const SdeConfig& cfg, std::span<const double> record_times,
                                    Rng& rng, double sign) {
    cfg.validate();
    if (x0.dim() != cfg.dim) throw std::invalid_argument("simulate: x0 dimension mismatch");
    const double dt = cfg.resolved_dt();
    Stepper stepper{kind, 0.5 * cfg.beta, cfg.scheme, std::sqrt(dt) * 1e-3, rng, sign};

    std::vector<double> x = split_ties(x0.values(), dt);
    std::vector<double> b(x.size()), y(x.size());
    std::vector<OrderedVector> out;
    out.reserve(record_times.size());

    double t = 0.0;
    for (double target : record_times) {
        if (target < t) throw std::invalid_argument("simulate: record times must increase");
        while (t < target - 1e-15 * std::max(1.0, target)) {
            const double h = std::min(dt, target - t);
            stepper.step(x, h, 0, b, y);
            t += h;
        }
        out.emplace_back(OrderedVector(x));
    }
    return out;
}

OrderedVector endpoint_state(ProcessKind kind, const OrderedVector& x0, const SdeConfig& cfg,
                             double t, Rng& rng, double sign) {
    const double times[1] = {t};
    return run_path(kind, x0, cfg, times, rng, sign).front();
}

}  // namespace

OrderedVector simulate_dbm(const OrderedVector& x0, const SdeConfig& cfg, Rng& rng,
                           double noise_sign) {
    const double times[] = {cfg.t_final};
    return run_path(ProcessKind::dbm, x0, cfg, times, rng, noise_sign).front();
}

OrderedVector simulate_dou(const OrderedVector& y0, const SdeConfig& cfg, Rng& rng,
                           double noise_sign) {
    const double times[] = {cfg.t_final};
    return run_path(ProcessKind::dou, y0, cfg, times, rng, noise_sign).front();
}

std::vector<OrderedVector> simulate_recorded(ProcessKind kind, const OrderedVector& x0,
                                             const SdeConfig& cfg,
                                             std::span<const double> record_times, Rng& rng,
                                             double noise_sign) {
    return run_path(kind, x0, cfg, record_times, rng, noise_sign);
}

std::vector<Accumulator> run_antithetic_pairs(
    long n_pairs, int workers, std::uint64_t seed, std::uint64_t salt, int n_stats,
    const std::function<std::vector<double>(long, Rng&, double)>& path_fn, bool antithetic) {
    workers = std::max(1, workers);
    std::vector<std::vector<Accumulator>> partial(workers, std::vector<Accumulator>(n_stats));

    auto work = [&](int w) {
        const long lo = n_pairs * w / workers;
        const long hi = n_pairs * (w + 1) / workers;
        auto& acc = partial[w];
        for (long p = lo; p < hi; ++p) {
            const std::uint64_t stream = salt * 0x100000000ULL + static_cast<std::uint64_t>(p);
            Rng rng_a = Rng::substream(seed, stream);
            const std::vector<double> sa = path_fn(p, rng_a, 1.0);
            if (antithetic) {
                Rng rng_b = Rng::substream(seed, stream);
                const std::vector<double> sb = path_fn(p, rng_b, -1.0);
                for (int s = 0; s < n_stats; ++s) acc[s].add(0.5 * (sa[s] + sb[s]));
            } else {
                for (int s = 0; s < n_stats; ++s) acc[s].add(sa[s]);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();

    std::vector<Accumulator> total(n_stats);
    for (int w = 0; w < workers; ++w)
        for (int s = 0; s < n_stats; ++s) total[s].merge(partial[w][s]);
    return total;
}

MomentEstimate mc_jack_moment(ProcessKind kind, const OrderedVector& x0, const SdeConfig& cfg,
                              const Partition& kappa) {
    cfg.validate();
    if (kappa.length() > cfg.dim)
        throw std::invalid_argument("mc_jack_moment: partition longer than dimension");
    const SymPoly jack = build_jack({0.5 * cfg.beta, cfg.dim}, kappa);
    const long n_pairs = std::max<long>(1, cfg.paths / 2);
    auto acc = run_antithetic_pairs(
        n_pairs, cfg.workers, cfg.seed, 0x5DE1, 1,
        [&](long, Rng& rng, double sign) -> std::vector<double> {
            const OrderedVector x = endpoint_state(kind, x0, cfg, cfg.t_final, rng, sign);
            return {jack.eval(x.values())};
        },
        cfg.antithetic);
    return to_estimate(acc[0]);
}

MomentEstimate squared_radius_slope(ProcessKind kind, const OrderedVector& x0,
                                    const SdeConfig& cfg, int grid_points) {
    cfg.validate();
    std::vector<double> times(grid_points);
    for (int g = 0; g < grid_points; ++g) times[g] = cfg.t_final * (g + 1) / grid_points;

    // Per-path OLS slope through (0, ||x0||^2) and the recorded grid.
    std::vector<double> ts{0.0};
    ts.insert(ts.end(), times.begin(), times.end());
    double t_bar = 0.0;
    for (double t : ts) t_bar += t;
    t_bar /= static_cast<double>(ts.size());
    double denom = 0.0;
    for (double t : ts) denom += (t - t_bar) * (t - t_bar);

    double r0 = 0.0;
    for (double v : x0.values()) r0 += v * v;

    const long n_pairs = std::max<long>(1, cfg.paths / 2);
    auto acc = run_antithetic_pairs(
        n_pairs, cfg.workers, cfg.seed, 0xBE55, 1,
        [&](long, Rng& rng, double sign) -> std::vector<double> {
            const auto states = simulate_recorded(kind, x0, cfg, times, rng, sign);
            double slope = (0.0 - t_bar) * r0;
            for (std::size_t g = 0; g < states.size(); ++g) {
                double r = 0.0;
                for (double v : states[g].values()) r += v * v;
                slope += (times[g] - t_bar) * r;
            }
            return {slope / denom};
        },
        cfg.antithetic);
    return to_estimate(acc[0]);
}

MomentEstimate squared_radius_endpoint(ProcessKind kind, const OrderedVector& x0,
                                       const SdeConfig& cfg) {
    cfg.validate();
    const long n_pairs = std::max<long>(1, cfg.paths / 2);
    auto acc = run_antithetic_pairs(
        n_pairs, cfg.workers, cfg.seed, 0xE14D, 1,
        [&](long, Rng& rng, double sign) -> std::vector<double> {
            const OrderedVector x = endpoint_state(kind, x0, cfg, cfg.t_final, rng, sign);
            double r = 0.0;
            for (double v : x.values()) r += v * v;
            return {r};
        },
        cfg.antithetic);
    return to_estimate(acc[0]);
}

PipelineReport mc_intertwining(const OrderedVector& x_top, const SdeConfig& cfg,
                               const Partition& kappa, double t, ProcessKind kind) {
    cfg.validate();
    const int k = cfg.dim;
    if (x_top.dim() != k + 1)
        throw std::invalid_argument("mc_intertwining: top level must have dim k+1");
    if (!x_top.strictly_increasing())
        throw std::invalid_argument("mc_intertwining: tied top levels (jitter the input)");

    const double theta = 0.5 * cfg.beta;
    const SymPoly jack = build_jack({theta, k}, kappa);

    SdeConfig lower_cfg = cfg;
    lower_cfg.t_final = t;
    SdeConfig upper_cfg = cfg;
    upper_cfg.dim = k + 1;
    upper_cfg.t_final = t;

    const auto record = [&](const OrderedVector& x) -> std::vector<double> {
        double p1 = 0.0, p2 = 0.0;
        for (double v : x.values()) {
            p1 += v;
            p2 += v * v;
        }
        return {p1, p2, p1 * p1, jack.eval(x.values())};
    };

    const long n_pairs = std::max<long>(1, cfg.paths / 2);
    // Left route: kernel first, then evolve k levels.
    auto lhs = run_antithetic_pairs(
        n_pairs, cfg.workers, cfg.seed, 0x1E57, 4,
        [&](long, Rng& rng, double sign) {
            const OrderedVector x = da_sample(x_top, theta, rng);
            return record(endpoint_state(kind, x, lower_cfg, t, rng, sign));
        },
        cfg.antithetic);
    // Right route: evolve k+1 levels, then kernel at the endpoint.
    auto rhs = run_antithetic_pairs(
        n_pairs, cfg.workers, cfg.seed, 0x2E57, 4,
        [&](long, Rng& rng, double sign) {
            OrderedVector y = endpoint_state(kind, x_top, upper_cfg, t, rng, sign);
            if (!y.strictly_increasing()) y = jitter_ties(y, 1e-12);
            return record(da_sample(y, theta, rng));
        },
        cfg.antithetic);

    PipelineReport report;
    const char* names[] = {"p1", "p2", "p1^2", "jack"};
    for (int s = 0; s < 4; ++s) {
        StatComparison c;
        c.name = names[s];
        c.lhs = to_estimate(lhs[s]);
        c.rhs = to_estimate(rhs[s]);
        c.z = two_sample_z(c.lhs, c.rhs);
        report.stats.push_back(c);
        report.max_abs_z = std::max(report.max_abs_z, std::abs(c.z));
    }
    return report;
}

}  // namespace dyson
