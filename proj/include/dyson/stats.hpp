#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dyson {

// Streaming mean/variance (Welford) with deterministic pairwise merge.
class Accumulator {
  public:
    void add(double x) {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    void merge(const Accumulator& other) {
        if (other.n_ == 0) return;
        if (n_ == 0) {
            *this = other;
            return;
        }
        const double delta = other.mean_ - mean_;
        const std::int64_t n = n_ + other.n_;
        m2_ += other.m2_ + delta * delta * static_cast<double>(n_) * other.n_ / n;
        mean_ += delta * other.n_ / static_cast<double>(n);
        n_ = n;
    }

    std::int64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double std_error() const {
        return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    }

  private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n = 0;
};

inline MomentEstimate to_estimate(const Accumulator& acc) {
    return {acc.mean(), acc.std_error(), acc.count()};
}

inline double two_sample_z(const MomentEstimate& a, const MomentEstimate& b) {
    const double se = std::hypot(a.std_error, b.std_error);
    if (se == 0.0) return a.mean == b.mean ? 0.0 : std::numeric_limits<double>::infinity();
    return (a.mean - b.mean) / se;
}

inline double z_against(const MomentEstimate& est, double reference) {
    if (est.std_error == 0.0)
        return est.mean == reference ? 0.0 : std::numeric_limits<double>::infinity();
    return (est.mean - reference) / est.std_error;
}

// One-sample Kolmogorov-Smirnov statistic against a reference CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// Asymptotic critical value: P(D_n > c) = alpha with c = sqrt(-ln(alpha/2)/2)/sqrt(n).
inline double ks_critical_value(double alpha, std::int64_t n) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace dyson
