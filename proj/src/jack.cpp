#include "dyson/jack.hpp"

#include <algorithm>
#include <cmath>

#include "dyson/operators.hpp"

namespace dyson {

double jack_norm(const JackParams& params, const Partition& kappa) {
    if (kappa.length() > params.num_vars)
        throw std::invalid_argument("jack_norm: partition longer than variable count");
    const double theta = params.theta;
    double log_value = -kappa.weight() * std::log(theta);
    for (int i = 1; i <= kappa.length(); ++i) {
        const double base = (params.num_vars + 1 - i) * theta;
        log_value += std::lgamma(base + kappa.part(i)) - std::lgamma(base);
    }
    return std::exp(log_value);
}

JackBasis::JackBasis(JackParams params, int max_weight)
    : params_(params), max_weight_(max_weight) {
    if (params.theta <= 0.0) throw std::invalid_argument("JackBasis: theta must be positive");
    if (params.num_vars < 1) throw std::invalid_argument("JackBasis: need at least one variable");
    if (max_weight < 0) throw std::invalid_argument("JackBasis: negative max weight");

    const int k = params.num_vars;
    index_ = partitions_up_to_weight(max_weight, k);

    // One degree layer at a time: the defining operator preserves degree and
    // acts triangularly in the lex-descending order, with m_kappa leading.
    for (int d = 0; d <= max_weight; ++d) {
        const auto layer = partitions_of_weight(d, k);
        std::map<Partition, SymPoly> images;
        for (const auto& nu : layer) {
            images.emplace(nu, apply_jack_operator(SymPoly::monomial(k, nu), params.theta));
            eigs_[nu] = images.at(nu).coeff(nu);
        }
        for (const auto& kappa : layer) {
            const double eig_kappa = eigs_.at(kappa);
            // Candidates restricted to the dominance ideal of kappa.
            std::vector<Partition> cands;
            for (const auto& mu : layer)
                if (dominated_by(mu, kappa)) cands.push_back(mu);  // layer is lex-descending

            std::map<Partition, double> c;
            c[kappa] = 1.0;
            for (std::size_t idx = 1; idx < cands.size(); ++idx) {
                const Partition& mu = cands[idx];
                const double gap = eig_kappa - eigs_.at(mu);
                if (std::abs(gap) < 1e-8)
                    throw degenerate_theta_error("JackBasis: eigenvalue collision at theta = " +
                                                 std::to_string(params.theta));
                double rhs = 0.0;
                for (std::size_t j = 0; j < idx; ++j)
                    rhs += images.at(cands[j]).coeff(mu) * c.at(cands[j]);
                c[mu] = rhs / gap;
            }

            SymPoly jack(k);
            for (const auto& [mu, coeff] : c)
                if (coeff != 0.0) jack.set_coeff(mu, coeff);
            const double target = jack_norm(params, kappa);
            jack *= target / jack.eval_at_ones();
            norms_[kappa] = target;
            polys_.emplace(kappa, std::move(jack));
        }
    }

    for (const auto& kappa : index_) {
        const SymPoly shifted = polys_.at(kappa).shift_by_ones();
        const auto in_jack = to_jack(shifted);
        std::map<Partition, double> row;
        const double scale_guard = 1e-12;
        double max_abs = 1.0;
        for (const auto& [rho, a] : in_jack) max_abs = std::max(max_abs, std::abs(a));
        for (const auto& [rho, a] : in_jack) {
            if (std::abs(a) <= scale_guard * max_abs) continue;  // containment zeros
            row[rho] = a * norms_.at(rho) / norms_.at(kappa);
        }
        binomials_.emplace(kappa, std::move(row));
    }
}

const SymPoly& JackBasis::poly(const Partition& mu) const {
    auto it = polys_.find(mu);
    if (it == polys_.end()) throw std::out_of_range("JackBasis: partition not indexed");
    return it->second;
}

double JackBasis::norm(const Partition& mu) const {
    auto it = norms_.find(mu);
    if (it == norms_.end()) throw std::out_of_range("JackBasis: partition not indexed");
    return it->second;
}

double JackBasis::eigenvalue(const Partition& mu) const {
    auto it = eigs_.find(mu);
    if (it == eigs_.end()) throw std::out_of_range("JackBasis: partition not indexed");
    return it->second;
}

std::map<Partition, double> JackBasis::to_jack(const SymPoly& p) const {
    if (p.num_vars() != params_.num_vars)
        throw std::invalid_argument("JackBasis::to_jack: variable count mismatch");
    std::map<Partition, double> out;
    SymPoly rest = p;
    const double scale = std::max(1.0, p.max_abs_coeff());
    for (const auto& kappa : index_) {
        const double lead = rest.coeff(kappa);
        if (lead == 0.0) continue;
        const double a = lead / polys_.at(kappa).coeff(kappa);
        out[kappa] = a;
        rest -= a * polys_.at(kappa);
        rest.set_coeff(kappa, 0.0);  // cancel the leading residue exactly
    }
    if (rest.max_abs_coeff() > 1e-9 * scale)
        throw std::domain_error("JackBasis::to_jack: polynomial outside basis span");
    return out;
}

SymPoly JackBasis::from_jack(const std::map<Partition, double>& coeffs) const {
    SymPoly out(params_.num_vars);
    for (const auto& [mu, a] : coeffs) out += a * poly(mu);
    return out;
}

const std::map<Partition, double>& JackBasis::binomial_coefficients(const Partition& kappa) const {
    auto it = binomials_.find(kappa);
    if (it == binomials_.end()) throw std::out_of_range("JackBasis: partition not indexed");
    return it->second;
}

SymPoly build_jack(const JackParams& params, const Partition& kappa) {
    if (kappa.length() > params.num_vars)
        throw std::invalid_argument("build_jack: partition longer than variable count");
    JackBasis basis(params, kappa.weight());
    return basis.poly(kappa);
}

}  // namespace dyson
