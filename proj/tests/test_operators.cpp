#include <doctest.h>

#include <cmath>

#include "dyson/jack.hpp"
#include "dyson/operators.hpp"
#include "dyson/rng.hpp"

using namespace dyson;

namespace {

SymPoly random_symmetric(int k, int max_degree, Rng& rng) {
    SymPoly p(k);
    for (const auto& mu : partitions_up_to_weight(max_degree, k))
        if (rng.uniform() < 0.5) p.set_coeff(mu, 2.0 * rng.uniform() - 1.0);
    return p;
}

double coeff_distance(const SymPoly& a, const SymPoly& b) {
    SymPoly d = a;
    d -= b;
    return d.max_abs_coeff();
}

}  // namespace

TEST_CASE("first-order actions on simple inputs") {
    for (int k = 2; k <= 4; ++k) {
        const SymPoly m1 = SymPoly::monomial(k, Partition({1}));
        const SymPoly b1 = apply_b1(m1);
        CHECK(b1.coeff(Partition{}) == doctest::Approx(double(k)));
        CHECK(b1.terms().size() == 1);

        // b2 p_1 = theta sum_{i != j} z_i/(z_i - z_j) = theta k(k-1)/2
        const double theta = 0.75;
        const SymPoly b2 = apply_b2(m1, theta);
        CHECK(b2.coeff(Partition{}) ==
              doctest::Approx(theta * k * (k - 1) / 2.0).epsilon(1e-13));

        CHECK(apply_b1(SymPoly::monomial(k, Partition{})).is_zero());
        CHECK(apply_b3(SymPoly::monomial(k, Partition{})).is_zero());
    }
}

TEST_CASE("b3 is the degree operator") {
    Rng rng(5);
    const SymPoly p = random_symmetric(3, 6, rng);
    const SymPoly q = apply_b3(p);
    for (const auto& [mu, c] : p.terms())
        CHECK(q.coeff(mu) == doctest::Approx(c * mu.weight()));

    for (double theta : {0.5, 1.0, 2.0}) {
        const JackBasis basis({theta, 3}, 5);
        for (const auto& kappa : basis.index()) {
            SymPoly expect = basis.poly(kappa);
            expect *= double(kappa.weight());
            CHECK(coeff_distance(apply_b3(basis.poly(kappa)), expect) <=
                  1e-12 * std::max(1.0, expect.max_abs_coeff()));
        }
    }
}

TEST_CASE("dbm generator on the degree-2 jack polynomial") {
    for (double theta : {0.5, 1.0, 2.0, 3.7}) {
        for (int k = 2; k <= 4; ++k) {
            const SymPoly jack2 = build_jack({theta, k}, Partition({2}));
            const SymPoly image = apply_dbm_generator(jack2, theta);
            CHECK(image.terms().size() == 1);
            CHECK(image.coeff(Partition{}) ==
                  doctest::Approx(k * (1.0 + k * theta) / theta).epsilon(1e-12));
        }
    }
}

TEST_CASE("commutator identity b1 b2 - b2 b1 = dbm generator") {
    Rng rng(17);
    for (int rep = 0; rep < 25; ++rep) {
        const int k = 1 + static_cast<int>(rng.uniform() * 4);
        const double theta = 0.25 + 3.0 * rng.uniform();
        const SymPoly p = random_symmetric(k, 8, rng);
        const SymPoly lhs = apply_b1(apply_b2(p, theta)) - apply_b2(apply_b1(p), theta);
        const SymPoly rhs = apply_dbm_generator(p, theta);
        CHECK(coeff_distance(lhs, rhs) <= 1e-11 * std::max(1.0, p.max_abs_coeff()));
    }
}

TEST_CASE("closed-form jack actions match the differential path") {
    for (double theta : {0.5, 1.0, 2.0}) {
        for (int k = 2; k <= 4; ++k) {
            const JackBasis basis({theta, k}, 6);
            for (const auto& kappa : basis.index()) {
                const auto closed_b1 = jack_action_b1(basis, kappa);
                const auto direct_b1 = basis.to_jack(apply_b1(basis.poly(kappa)));
                for (const auto& [mu, c] : closed_b1)
                    CHECK(c == doctest::Approx(direct_b1.count(mu) ? direct_b1.at(mu) : 0.0)
                                   .epsilon(1e-10));
                for (const auto& [mu, c] : direct_b1)
                    CHECK(closed_b1.count(mu) == 1);

                const auto closed_b2 = jack_action_b2(basis, kappa);
                const auto direct_b2 = basis.to_jack(apply_b2(basis.poly(kappa), theta));
                for (const auto& [mu, c] : closed_b2)
                    CHECK(c == doctest::Approx(direct_b2.count(mu) ? direct_b2.at(mu) : 0.0)
                                   .epsilon(1e-10));
                for (const auto& [mu, c] : direct_b2)
                    CHECK(closed_b2.count(mu) == 1);
            }
        }
    }
}

TEST_CASE("closed-form b1/b2 fixtures") {
    const double theta = 1.4;
    const int k = 3;
    const JackBasis basis({theta, k}, 2);

    const auto b1_of_1 = jack_action_b1(basis, Partition({1}));
    REQUIRE(b1_of_1.size() == 1);
    CHECK(b1_of_1.at(Partition{}) == doctest::Approx(double(k)));

    CHECK(jack_action_b1(basis, Partition{}).empty());
    CHECK(jack_action_b2(basis, Partition{}).empty());

    // b2 J_(1) = (1/2) k (k-1) theta J_0 (half the lowering-formula weight)
    const auto b2_of_1 = jack_action_b2(basis, Partition({1}));
    REQUIRE(b2_of_1.size() == 1);
    CHECK(b2_of_1.at(Partition{}) == doctest::Approx(0.5 * k * (k - 1) * theta));
}

TEST_CASE("generator matrix structure") {
    SUBCASE("kappa (1): zero matrix") {
        const JackBasis basis({1.0, 2}, 1);
        const auto gen = build_generator_matrix(basis, Partition({1}), GeneratorKind::dbm);
        CHECK(gen.basis_index.size() == 2);
        CHECK(gen.entries.isZero(0.0));
    }

    SUBCASE("kappa (2): single entry matches the differential fixture") {
        for (double theta : {0.5, 1.0, 3.7}) {
            for (int k = 1; k <= 3; ++k) {
                const JackBasis basis({theta, k}, 2);
                const auto gen = build_generator_matrix(basis, Partition({2}), GeneratorKind::dbm);
                const int row = gen.index_of(Partition{});
                const int col = gen.index_of(Partition({2}));
                CHECK(gen.entries(row, col) ==
                      doctest::Approx(k * (1.0 + k * theta) / theta).epsilon(1e-12));

                const auto dou = build_generator_matrix(basis, Partition({2}), GeneratorKind::dou);
                CHECK(dou.entries(col, col) == doctest::Approx(-1.0));
                CHECK(dou.entries(row, col) == doctest::Approx(gen.entries(row, col)));
            }
        }
    }

    SUBCASE("strictly graded-lowering sparsity and nilpotency") {
        const JackBasis basis({0.8, 3}, 4);
        const auto gen = build_generator_matrix(basis, Partition({2, 2}), GeneratorKind::dbm);
        const int n = static_cast<int>(gen.basis_index.size());
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (gen.entries(r, c) != 0.0)
                    CHECK(gen.basis_index[r].weight() == gen.basis_index[c].weight() - 2);
        Eigen::MatrixXd power = gen.entries;
        const int nil = gen.basis_index.front().weight() / 2 + 1;
        for (int m = 1; m < nil; ++m) power = (gen.entries * power).eval();
        CHECK(power.isZero(0.0));
    }

    SUBCASE("columns match the differential generator, multi-path case") {
        for (double theta : {0.5, 2.0}) {
            const int k = 3;
            const JackBasis basis({theta, k}, 4);
            for (const auto& kappa_max : {Partition({2, 2}), Partition({2, 1}), Partition({3, 1})}) {
                const auto gen = build_generator_matrix(basis, kappa_max, GeneratorKind::dbm);
                for (std::size_t col = 0; col < gen.basis_index.size(); ++col) {
                    const auto& kappa = gen.basis_index[col];
                    const auto direct =
                        basis.to_jack(apply_dbm_generator(basis.poly(kappa), theta));
                    for (std::size_t row = 0; row < gen.basis_index.size(); ++row) {
                        const auto& mu = gen.basis_index[row];
                        const double want = direct.count(mu) ? direct.at(mu) : 0.0;
                        CHECK(gen.entries(row, col) ==
                              doctest::Approx(want).epsilon(1e-10).scale(
                                  std::max(1.0, std::abs(want))));
                    }
                }
            }
        }
    }
}

TEST_CASE("dou generator is dbm minus half the degree operator") {
    Rng rng(23);
    const double theta = 1.1;
    const SymPoly p = random_symmetric(3, 6, rng);
    const SymPoly lhs = apply_dou_generator(p, theta);
    SymPoly rhs = apply_dbm_generator(p, theta);
    rhs -= 0.5 * apply_b3(p);
    CHECK(coeff_distance(lhs, rhs) == 0.0);
}
