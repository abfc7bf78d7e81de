#include "dyson/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dyson/detail/expmap.hpp"

namespace dyson {

namespace {

double powi(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Padded exponent vector sorted ascending, ready for std::next_permutation.
std::vector<int> padded_ascending(const Partition& mu, int num_vars) {
    std::vector<int> e(num_vars, 0);
    for (int i = 1; i <= mu.length(); ++i) e[num_vars - i] = mu.part(i);
    return e;
}

}  // namespace

SymPoly::SymPoly(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 1) throw std::invalid_argument("SymPoly: need at least one variable");
}

SymPoly SymPoly::monomial(int num_vars, const Partition& mu, double c) {
    SymPoly p(num_vars);
    p.set_coeff(mu, c);
    return p;
}

void SymPoly::set_coeff(const Partition& mu, double c) {
    if (mu.length() > num_vars_)
        throw std::invalid_argument("SymPoly: partition longer than variable count");
    if (c == 0.0)
        coeffs_.erase(mu);
    else
        coeffs_[mu] = c;
}

double SymPoly::coeff(const Partition& mu) const {
    auto it = coeffs_.find(mu);
    return it == coeffs_.end() ? 0.0 : it->second;
}

int SymPoly::degree() const {
    int d = 0;
    for (const auto& [mu, c] : coeffs_) d = std::max(d, mu.weight());
    return d;
}

double SymPoly::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != num_vars_)
        throw std::invalid_argument("SymPoly::eval: dimension mismatch");
    double total = 0.0;
    for (const auto& [mu, c] : coeffs_) {
        auto e = padded_ascending(mu, num_vars_);
        double m = 0.0;
        do {
            double term = 1.0;
            for (int i = 0; i < num_vars_; ++i) term *= powi(x[i], e[i]);
            m += term;
        } while (std::next_permutation(e.begin(), e.end()));
        total += c * m;
    }
    return total;
}

double distinct_permutation_count(const Partition& mu, int num_vars) {
    if (mu.length() > num_vars) return 0.0;
    double denom = factorial(num_vars - mu.length());
    int run = 1;
    for (int i = 2; i <= mu.length() + 1; ++i) {
        if (i <= mu.length() && mu.part(i) == mu.part(i - 1)) {
            ++run;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    return factorial(num_vars) / denom;
}

double SymPoly::eval_at_ones() const {
    double total = 0.0;
    for (const auto& [mu, c] : coeffs_) total += c * distinct_permutation_count(mu, num_vars_);
    return total;
}

SymPoly SymPoly::shift_by_ones() const {
    detail::ExpMap shifted;
    shifted.num_vars = num_vars_;
    const detail::ExpMap full = detail::expand(*this);
    // (1+z_1)^{e_1} ... (1+z_k)^{e_k}, expanded variable by variable.
    for (const auto& [key, c] : full.terms) {
        std::vector<std::pair<detail::ExpKey, double>> acc{{0, c}};
        for (int v = 0; v < num_vars_; ++v) {
            const int e = detail::exp_at(key, v);
            if (e == 0) continue;
            std::vector<std::pair<detail::ExpKey, double>> next;
            next.reserve(acc.size() * (e + 1));
            for (const auto& [k2, c2] : acc)
                for (int j = 0; j <= e; ++j)
                    next.emplace_back(detail::with_exp(k2, v, j), c2 * binom(e, j));
            acc = std::move(next);
        }
        for (const auto& [k2, c2] : acc) shifted.add(k2, c2);
    }
    return detail::fold_symmetric(shifted);
}

SymPoly& SymPoly::operator+=(const SymPoly& rhs) {
    if (rhs.num_vars_ != num_vars_)
        throw std::invalid_argument("SymPoly: variable count mismatch");
    for (const auto& [mu, c] : rhs.coeffs_) {
        auto [it, inserted] = coeffs_.try_emplace(mu, c);
        if (!inserted && (it->second += c) == 0.0) coeffs_.erase(it);
    }
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& rhs) {
    if (rhs.num_vars_ != num_vars_)
        throw std::invalid_argument("SymPoly: variable count mismatch");
    for (const auto& [mu, c] : rhs.coeffs_) {
        auto [it, inserted] = coeffs_.try_emplace(mu, -c);
        if (!inserted && (it->second -= c) == 0.0) coeffs_.erase(it);
    }
    return *this;
}

SymPoly& SymPoly::operator*=(double s) {
    if (s == 0.0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [mu, c] : coeffs_) c *= s;
    return *this;
}

SymPoly& SymPoly::prune(double tol) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= tol)
            it = coeffs_.erase(it);
        else
            ++it;
    }
    return *this;
}

double SymPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [mu, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

SymPoly multiply(const SymPoly& p, const SymPoly& q, int degree_cap) {
    if (p.num_vars() != q.num_vars())
        throw std::invalid_argument("multiply: variable count mismatch");
    if (p.is_zero() || q.is_zero()) return SymPoly(p.num_vars());
    if (p.degree() + q.degree() > degree_cap)
        throw std::domain_error("multiply: product degree exceeds cap");
    const detail::ExpMap a = detail::expand(p);
    const detail::ExpMap b = detail::expand(q);
    detail::ExpMap out;
    out.num_vars = p.num_vars();
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) out.add(ka + kb, ca * cb);  // disjoint 4-bit fields
    return detail::fold_symmetric(out);
}

namespace detail {

ExpMap expand(const SymPoly& p) {
    if (p.num_vars() > kMaxVars) throw std::invalid_argument("expand: too many variables");
    ExpMap out;
    out.num_vars = p.num_vars();
    for (const auto& [mu, c] : p.terms()) {
        if (mu.part(1) > kMaxExp) throw std::invalid_argument("expand: exponent too large");
        std::vector<int> e(p.num_vars(), 0);
        for (int i = 1; i <= mu.length(); ++i) e[p.num_vars() - i] = mu.part(i);
        do {
            ExpKey key = 0;
            for (int v = 0; v < p.num_vars(); ++v) key = with_exp(key, v, e[v]);
            out.add(key, c);
        } while (std::next_permutation(e.begin(), e.end()));
    }
    return out;
}

SymPoly fold_symmetric(const ExpMap& m, double rel_tol) {
    SymPoly out(m.num_vars);
    double scale = 0.0;
    for (const auto& [key, c] : m.terms) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return out;

    std::map<Partition, double> sums;
    for (const auto& [key, c] : m.terms) {
        std::vector<int> e;
        e.reserve(m.num_vars);
        for (int v = 0; v < m.num_vars; ++v) e.push_back(exp_at(key, v));
        std::sort(e.begin(), e.end(), std::greater<int>());
        sums[Partition(e)] += c;
    }
    for (const auto& [mu, s] : sums) {
        const double mean = s / distinct_permutation_count(mu, m.num_vars);
        if (mean != 0.0) out.set_coeff(mu, mean);
    }
    // Orbit-constancy check: any deviation means the expansion was not symmetric.
    for (const auto& [key, c] : m.terms) {
        std::vector<int> e;
        e.reserve(m.num_vars);
        for (int v = 0; v < m.num_vars; ++v) e.push_back(exp_at(key, v));
        std::sort(e.begin(), e.end(), std::greater<int>());
        if (std::abs(c - out.coeff(Partition(e))) > rel_tol * scale)
            throw std::logic_error("fold_symmetric: expansion is not a symmetric polynomial");
    }
    return out;
}

}  // namespace detail

}  // namespace dyson
