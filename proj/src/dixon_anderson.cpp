#include "dyson/dixon_anderson.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dyson/jack.hpp"

namespace dyson {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_strict(const OrderedVector& top, const char* who) {
    if (!top.strictly_increasing())
        throw std::invalid_argument(std::string(who) + ": tied top levels");
}

double log_normalization(const OrderedVector& top, double theta) {
    const int n = top.dim();  // k + 1
    double log_c = std::lgamma(n * theta) - n * std::lgamma(theta);
    if (theta != 0.5) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) log_c += (1.0 - 2.0 * theta) * std::log(top[j] - top[i]);
    }
    return log_c;
}

}  // namespace

OrderedVector::OrderedVector(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] < values_[i - 1])
            throw std::invalid_argument("OrderedVector: values not weakly increasing");
}

OrderedVector OrderedVector::sorted(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return OrderedVector(std::move(values));
}

bool OrderedVector::strictly_increasing() const {
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] <= values_[i - 1]) return false;
    return true;
}

OrderedVector jitter_ties(const OrderedVector& v, double eps) {
    std::vector<double> out = v.values();
    const double step = eps * std::max(1.0, v.span());
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] - out[i - 1] < step) out[i] = out[i - 1] + step;
    return OrderedVector(std::move(out));
}

bool interlaces(const OrderedVector& x, const OrderedVector& top) {
    if (x.dim() + 1 != top.dim()) return false;
    for (int i = 0; i < x.dim(); ++i)
        if (x[i] < top[i] || x[i] > top[i + 1]) return false;
    return true;
}

double da_log_density(const OrderedVector& top, const OrderedVector& x, double theta) {
    require_strict(top, "da_log_density");
    if (theta <= 0.0) throw std::invalid_argument("da_log_density: theta must be positive");
    if (!interlaces(x, top)) return -kInf;

    double log_v = log_normalization(top, theta);
    for (int i = 0; i < x.dim(); ++i)
        for (int j = i + 1; j < x.dim(); ++j) {
            const double gap = x[j] - x[i];
            if (gap == 0.0) return -kInf;
            log_v += std::log(gap);
        }
    if (theta != 1.0) {
        for (int i = 0; i < x.dim(); ++i)
            for (int j = 0; j < top.dim(); ++j) {
                const double d = std::abs(x[i] - top[j]);
                if (d == 0.0) return theta < 1.0 ? kInf : -kInf;
                log_v += (theta - 1.0) * std::log(d);
            }
    }
    return log_v;
}

double da_density(const OrderedVector& top, const OrderedVector& x, double theta) {
    return std::exp(da_log_density(top, x, theta));
}

OrderedVector da_sample(const OrderedVector& top, double theta, Rng& rng) {
    require_strict(top, "da_sample");
    if (theta <= 0.0) throw std::invalid_argument("da_sample: theta must be positive");
    const int n = top.dim();
    const int k = n - 1;
    const std::vector<double> w = dirichlet(rng, theta, n);

    const auto secular = [&](double z) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += w[j] / (z - top[j]);
        return s;
    };

    const double tol = 1e-12 * std::max(top.span(), 1.0);
    std::vector<double> roots(k);
    for (int g = 0; g < k; ++g) {
        // f decreases from +inf to -inf across the gap: safeguarded Newton.
        double lo = top[g], hi = top[g + 1];
        double z = 0.5 * (lo + hi);
        bool converged = false;
        for (int it = 0; it < 200 && !converged; ++it) {
            const double f = secular(z);
            if (f > 0.0)
                lo = z;
            else
                hi = z;
            double fprime = 0.0;
            for (int j = 0; j < n; ++j) {
                const double d = z - top[j];
                fprime -= w[j] / (d * d);
            }
            double z_next = z - f / fprime;
            if (!(z_next > lo && z_next < hi)) z_next = 0.5 * (lo + hi);
            converged = std::abs(z_next - z) <= tol || hi - lo <= tol;
            z = z_next;
        }
        if (!(z >= top[g] && z <= top[g + 1]))
            throw std::runtime_error("da_sample: root escaped gap " + std::to_string(g));
        roots[g] = z;
    }
    return OrderedVector(std::move(roots));
}

OrderedVector da_sample_rejection(const OrderedVector& top, double theta, Rng& rng) {
    require_strict(top, "da_sample_rejection");
    const int n = top.dim();
    const int k = n - 1;
    const double log_beta_fn = 2.0 * std::lgamma(theta) - std::lgamma(2.0 * theta);

    // log of a valid envelope constant for density / proposal, factor by factor.
    double log_m = log_normalization(top, theta);
    for (int i = 0; i < k; ++i) {
        log_m += log_beta_fn + (2.0 * theta - 1.0) * std::log(top[i + 1] - top[i]);
        for (int j = 0; j < n; ++j) {
            if (j == i || j == i + 1) continue;  // cancelled by the proposal
            const double near = j < i ? top[i] - top[j] : top[j] - top[i + 1];
            const double far = j < i ? top[i + 1] - top[j] : top[j] - top[i];
            log_m += (theta - 1.0) * std::log(theta < 1.0 ? near : far);
        }
        for (int j = i + 1; j < k; ++j) log_m += std::log(top[j + 1] - top[i]);
    }

    for (long attempt = 0; attempt < 1000000; ++attempt) {
        std::vector<double> x(k);
        double log_q = 0.0;
        bool degenerate = false;
        for (int i = 0; i < k; ++i) {
            const double a = rng.gamma(theta), b = rng.gamma(theta);
            const double u = a / (a + b);  // Beta(theta, theta)
            if (!(u > 0.0 && u < 1.0)) {
                degenerate = true;
                break;
            }
            const double width = top[i + 1] - top[i];
            x[i] = top[i] + u * width;
            log_q += (theta - 1.0) * (std::log(u) + std::log1p(-u)) - log_beta_fn -
                     std::log(width);
        }
        if (degenerate) continue;
        OrderedVector candidate(std::move(x));  // cells are disjoint, already ordered
        const double log_p = da_log_density(top, candidate, theta);
        if (log_p == -kInf) continue;
        const double log_accept = log_p - log_q - log_m;
        if (std::log(1.0 - rng.uniform()) < log_accept) return candidate;
    }
    throw std::runtime_error("da_sample_rejection: acceptance failed (envelope too loose)");
}

MomentEstimate da_moment_mc(const OrderedVector& top, double theta, const Partition& kappa,
                            long n_samples, Rng& rng) {
    const int k = top.dim() - 1;
    if (kappa.length() > k)
        throw std::invalid_argument("da_moment_mc: partition longer than level dimension");
    const SymPoly jack = build_jack({theta, k}, kappa);
    Accumulator acc;
    for (long i = 0; i < n_samples; ++i) {
        const OrderedVector x = da_sample(top, theta, rng);
        acc.add(jack.eval(x.values()));
    }
    return to_estimate(acc);
}

namespace {

// Integral over one interlacing cell [a, b] with own-edge singular factors
// (x-a)^{theta-1} (b-x)^{theta-1} peeled off into the substitution
// u = (x-edge)^theta; `rest` must supply the remainder of the integrand.
template <typename F>
double integrate_cell(double a, double b, double theta, double tol, F&& rest) {
    using boost::math::quadrature::gauss_kronrod;
    const double mid = 0.5 * (a + b);
    const auto left = [&](double u) {
        const double dx = std::pow(u, 1.0 / theta);
        const double x = a + dx;
        return std::pow(b - x, theta - 1.0) * rest(x) / theta;
    };
    const auto right = [&](double u) {
        const double dx = std::pow(u, 1.0 / theta);
        const double x = b - dx;
        return std::pow(x - a, theta - 1.0) * rest(x) / theta;
    };
    const double i_left =
        gauss_kronrod<double, 31>::integrate(left, 0.0, std::pow(mid - a, theta), 12, tol);
    const double i_right =
        gauss_kronrod<double, 31>::integrate(right, 0.0, std::pow(b - mid, theta), 12, tol);
    return i_left + i_right;
}

}  // namespace

double da_moment_quad(const OrderedVector& top, double theta, const SymPoly& p, double tol) {
    require_strict(top, "da_moment_quad");
    const int k = top.dim() - 1;
    if (p.num_vars() != k) throw std::invalid_argument("da_moment_quad: dimension mismatch");
    const double c = std::exp(log_normalization(top, theta));

    if (k == 1) {
        const double a = top[0], b = top[1];
        return c * integrate_cell(a, b, theta, tol, [&](double x) { return p.eval({{x}}); });
    }
    if (k == 2) {
        const double t1 = top[0], t2 = top[1], t3 = top[2];
        const auto outer = [&](double x1) {
            const auto inner = [&](double x2) {
                // cross factors are smooth on the inner cell
                return (x2 - x1) * std::pow(std::abs(x2 - t1), theta - 1.0) *
                       p.eval({{x1, x2}});
            };
            return std::pow(t3 - x1, theta - 1.0) *
                   integrate_cell(t2, t3, theta, tol, inner);
        };
        return c * integrate_cell(t1, t2, theta, tol, outer);
    }
    throw std::invalid_argument("da_moment_quad: only k = 1, 2 supported");
}

double da_normalization_quad(const OrderedVector& top, double theta, double tol) {
    const int k = top.dim() - 1;
    SymPoly one = SymPoly::monomial(k, Partition{});
    return da_moment_quad(top, theta, one, tol);
}

}  // namespace dyson
