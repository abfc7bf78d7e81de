#include <doctest.h>

#include <cmath>

#include "dyson/jack.hpp"
#include "dyson/operators.hpp"
#include "dyson/rng.hpp"

using namespace dyson;

namespace {

const double kThetas[] = {0.5, 1.0, 2.0, 1.85};

double coeff_distance(const SymPoly& a, const SymPoly& b) {
    SymPoly d = a;
    d -= b;
    return d.max_abs_coeff();
}

}  // namespace

TEST_CASE("jack_norm gamma formula") {
    for (double theta : kThetas) {
        for (int k = 1; k <= 5; ++k) {
            const JackParams params{theta, k};
            CHECK(jack_norm(params, Partition{}) == doctest::Approx(1.0));
            CHECK(jack_norm(params, Partition({1})) == doctest::Approx(double(k)));
            CHECK(jack_norm(params, Partition({2})) ==
                  doctest::Approx(k * (k * theta + 1.0) / theta).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(jack_norm({1.0, 1}, Partition({1, 1})), std::invalid_argument);
}

TEST_CASE("low-degree jack polynomials") {
    for (double theta : kThetas) {
        for (int k = 1; k <= 4; ++k) {
            const JackParams params{theta, k};
            CHECK(build_jack(params, Partition{}) == SymPoly::monomial(k, Partition{}));
            CHECK(build_jack(params, Partition({1})) == SymPoly::monomial(k, Partition({1})));
            if (k >= 2) {
                // independent 2x2 hand solve: ((1+theta)/theta) m_(2) + 2 m_(1,1)
                SymPoly expected = SymPoly::monomial(k, Partition({2}), (1.0 + theta) / theta) +
                                   SymPoly::monomial(k, Partition({1, 1}), 2.0);
                CHECK(coeff_distance(build_jack(params, Partition({2})), expected) < 1e-10);
            }
        }
    }
}

TEST_CASE("eigenfunction property and leading-monomial structure") {
    for (double theta : kThetas) {
        for (int k = 2; k <= 4; ++k) {
            const JackBasis basis({theta, k}, 6);
            for (const auto& kappa : basis.index()) {
                const SymPoly& jack = basis.poly(kappa);
                // residual of the defining eigenproblem
                SymPoly residual = apply_jack_operator(jack, theta);
                residual -= basis.eigenvalue(kappa) * jack;
                CHECK(residual.max_abs_coeff() <= 1e-9 * std::max(1.0, jack.max_abs_coeff()));

                // eigenvalue formula sum kappa_i(kappa_i - 1) + 2 theta sum (k-i) kappa_i
                double eig = 0.0;
                for (int i = 1; i <= kappa.length(); ++i)
                    eig += kappa.part(i) * (kappa.part(i) - 1.0) +
                           2.0 * theta * (k - i) * kappa.part(i);
                CHECK(basis.eigenvalue(kappa) == doctest::Approx(eig).epsilon(1e-10));

                // support: leading coefficient nonzero, support dominated by kappa
                CHECK(jack.coeff(kappa) != 0.0);
                for (const auto& [mu, c] : jack.terms()) {
                    CHECK(mu.weight() == kappa.weight());
                    CHECK(dominated_by(mu, kappa));
                }

                // normalization against the Gamma formula
                CHECK(jack.eval_at_ones() ==
                      doctest::Approx(basis.norm(kappa)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("pochhammer ratio identity") {
    // norm(k vars)/norm(k+1 vars) * prod Gamma((k+2-m)theta + kappa_m)/Gamma((k+1-m)theta + kappa_m)
    //   = Gamma((k+1)theta)/Gamma(theta)
    for (double theta : {0.25, 0.5, 1.0, 2.0, 3.7}) {
        for (int k = 1; k <= 3; ++k) {
            for (const auto& kappa : partitions_up_to_weight(4, k)) {
                double log_lhs = std::log(jack_norm({theta, k}, kappa)) -
                                 std::log(jack_norm({theta, k + 1}, kappa));
                for (int m = 1; m <= k; ++m) {
                    log_lhs += std::lgamma((k + 2 - m) * theta + kappa.part(m));
                    log_lhs -= std::lgamma((k + 1 - m) * theta + kappa.part(m));
                }
                const double log_rhs = std::lgamma((k + 1) * theta) - std::lgamma(theta);
                CHECK(log_lhs == doctest::Approx(log_rhs).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("to_jack round trip") {
    const JackBasis basis({1.3, 3}, 5);

    SUBCASE("basis elements map to unit vectors") {
        for (const auto& kappa : basis.index()) {
            const auto coeffs = basis.to_jack(basis.poly(kappa));
            REQUIRE(coeffs.size() == 1);
            CHECK(coeffs.begin()->first == kappa);
            CHECK(coeffs.begin()->second == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("zero polynomial maps to the empty expansion") {
        CHECK(basis.to_jack(SymPoly(3)).empty());
    }

    SUBCASE("random polynomials reconstruct") {
        Rng rng(7);
        for (int rep = 0; rep < 10; ++rep) {
            SymPoly p(3);
            for (const auto& mu : basis.index())
                if (rng.uniform() < 0.6) p.set_coeff(mu, 2.0 * rng.uniform() - 1.0);
            const SymPoly q = basis.from_jack(basis.to_jack(p));
            CHECK(coeff_distance(p, q) <= 1e-10 * std::max(1.0, p.max_abs_coeff()));
        }
    }

    SUBCASE("monomial fixture at theta = 1, k = 2") {
        const JackBasis b2({1.0, 2}, 2);
        // J_(2) = 2 m_(2) + 2 m_(1,1), J_(1,1) = m_(1,1) * norm ratio
        const auto coeffs = b2.to_jack(SymPoly::monomial(2, Partition({2})));
        CHECK(coeffs.at(Partition({2})) == doctest::Approx(0.5));
        const double c11 = coeffs.at(Partition({1, 1}));
        SymPoly recon = b2.from_jack({{Partition({2}), 0.5}, {Partition({1, 1}), c11}});
        CHECK(coeff_distance(recon, SymPoly::monomial(2, Partition({2}))) < 1e-12);
    }

    SUBCASE("unspanned input is rejected") {
        const JackBasis small({1.0, 2}, 1);
        CHECK_THROWS_AS(small.to_jack(SymPoly::monomial(2, Partition({2}))),
                        std::domain_error);
    }
}

TEST_CASE("generalized binomial coefficients") {
    for (double theta : {0.5, 1.0, 2.0}) {
        for (int k = 2; k <= 3; ++k) {
            const JackBasis basis({theta, k}, 4);

            CHECK(basis.binomial_coefficients(Partition({1})).at(Partition{}) ==
                  doctest::Approx(1.0).epsilon(1e-12));
            CHECK(basis.binomial_coefficients(Partition({2})).at(Partition({1})) ==
                  doctest::Approx(2.0).epsilon(1e-11));

            for (const auto& kappa : basis.index()) {
                const auto& binoms = basis.binomial_coefficients(kappa);
                if (!kappa.empty())
                    CHECK(binoms.at(kappa) == doctest::Approx(1.0).epsilon(1e-11));

                // vanishing outside containment
                for (const auto& [rho, b] : binoms) CHECK(contained_in(rho, kappa));

                // re-summing reconstructs the shifted polynomial
                SymPoly resum(k);
                for (const auto& [rho, b] : binoms)
                    resum += (b / basis.norm(rho)) * basis.poly(rho);
                resum *= basis.norm(kappa);
                const SymPoly shifted = basis.poly(kappa).shift_by_ones();
                CHECK(coeff_distance(resum, shifted) <=
                      1e-10 * std::max(1.0, shifted.max_abs_coeff()));
            }
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(JackBasis({0.0, 2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(JackBasis({-1.0, 2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_jack({1.0, 1}, Partition({1, 1})), std::invalid_argument);
}
