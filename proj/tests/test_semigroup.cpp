#include <doctest.h>

#include <cmath>

#include "dyson/jack.hpp"
#include "dyson/semigroup.hpp"

using namespace dyson;

TEST_CASE("kernel factor") {
    for (double theta : {0.25, 0.5, 1.0, 2.0, 3.7}) {
        for (int k = 1; k <= 4; ++k) {
            CHECK(kernel_factor(theta, k, Partition{}) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(kernel_factor(theta, k, Partition({1})) ==
                  doctest::Approx(double(k) / (k + 1)).epsilon(1e-12));
        }
        // k = 1, kappa = (2): (theta+1)/(2(2 theta+1)) by direct Gamma algebra
        CHECK(kernel_factor(theta, 1, Partition({2})) ==
              doctest::Approx((theta + 1.0) / (2.0 * (2.0 * theta + 1.0))).epsilon(1e-12));
    }
    // factors lie in (0, 1] for indexed partitions
    for (const auto& kappa : partitions_up_to_weight(5, 3)) {
        const double c = kernel_factor(0.7, 3, kappa);
        CHECK(c > 0.0);
        CHECK(c <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(kernel_factor(1.0, 1, Partition({1, 1})), std::invalid_argument);
}

TEST_CASE("exact semigroup action") {
    const double theta = 1.0;
    const int k = 2;
    const JackBasis basis({theta, k}, 2);
    const auto gen = build_generator_matrix(basis, Partition({2}), GeneratorKind::dbm);

    SUBCASE("t = 0 is the identity") {
        const auto action = make_semigroup(gen, 0.0);
        CHECK(action.expm.isIdentity(1e-15));
    }

    SUBCASE("single nilpotent step") {
        const double t = 0.37;
        const auto action = make_semigroup(gen, t);
        const auto out = semigroup_apply(action, {{Partition({2}), 1.0}});
        CHECK(out.at(Partition({2})) == doctest::Approx(1.0));
        CHECK(out.at(Partition{}) ==
              doctest::Approx(t * k * (1.0 + k * theta) / theta).epsilon(1e-12));
    }

    SUBCASE("p_1 is a martingale") {
        const auto gen1 = build_generator_matrix(basis, Partition({1}), GeneratorKind::dbm);
        const auto action = make_semigroup(gen1, 5.0);
        const auto out = semigroup_apply(action, {{Partition({1}), 1.0}});
        CHECK(out.size() == 1);
        CHECK(out.at(Partition({1})) == doctest::Approx(1.0));
    }

    SUBCASE("unindexed partitions are rejected") {
        const auto action = make_semigroup(gen, 1.0);
        CHECK_THROWS_AS(semigroup_apply(action, {{Partition({3}), 1.0}}), std::out_of_range);
    }
}

TEST_CASE("semigroup property") {
    for (auto kind : {GeneratorKind::dbm, GeneratorKind::dou}) {
        const JackBasis basis({0.6, 3}, 4);
        const auto gen = build_generator_matrix(basis, Partition({2, 2}), kind);
        const double t = 0.8, s = 1.7;
        const Eigen::MatrixXd lhs = exact_matrix_exp(gen, t + s);
        const Eigen::MatrixXd rhs = exact_matrix_exp(gen, t) * exact_matrix_exp(gen, s);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-11 * lhs.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("dou exponential structure") {
    const JackBasis basis({1.2, 2}, 4);
    const auto gen = build_generator_matrix(basis, Partition({2, 2}), GeneratorKind::dou);
    const double t = 0.9;
    const Eigen::MatrixXd expm = exact_matrix_exp(gen, t);
    for (std::size_t i = 0; i < gen.basis_index.size(); ++i)
        CHECK(expm(i, i) ==
              doctest::Approx(std::exp(-0.5 * t * gen.basis_index[i].weight())).epsilon(1e-13));

    // consistency: dou with the diagonal switched off reproduces dbm
    auto dbm = build_generator_matrix(basis, Partition({2, 2}), GeneratorKind::dbm);
    Eigen::MatrixXd stripped = gen.entries;
    for (std::size_t i = 0; i < gen.basis_index.size(); ++i)
        stripped(i, i) += 0.5 * gen.basis_index[i].weight();
    CHECK((stripped - dbm.entries).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix-level intertwining (kernel factors against both generators)") {
    // M1 diag(c_mu), M2 the k-level generator, M3 the (k+1)-level generator:
    // M1 M2 = M3 M1, hence M1 e^{t M2} = e^{t M3} M1.
    for (double theta : {0.5, 1.0, 2.0}) {
        for (int k = 1; k <= 3; ++k) {
            const Partition kappa_max = k >= 2 ? Partition({2, 2}) : Partition({3});
            const JackBasis basis_k({theta, k}, kappa_max.weight());
            const JackBasis basis_k1({theta, k + 1}, kappa_max.weight());
            for (auto kind : {GeneratorKind::dbm, GeneratorKind::dou}) {
                const auto gen_k = build_generator_matrix(basis_k, kappa_max, kind);
                const auto gen_k1 = build_generator_matrix(basis_k1, kappa_max, kind);
                const int n = static_cast<int>(gen_k.basis_index.size());
                Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(n, n);
                for (int i = 0; i < n; ++i)
                    m1(i, i) = kernel_factor(theta, k, gen_k.basis_index[i]);

                const Eigen::MatrixXd prod_lhs = m1 * gen_k.entries;
                const Eigen::MatrixXd prod_rhs = gen_k1.entries * m1;
                CHECK((prod_lhs - prod_rhs).cwiseAbs().maxCoeff() <=
                      1e-10 * std::max(1.0, prod_lhs.cwiseAbs().maxCoeff()));

                const double t = 1.3;
                const Eigen::MatrixXd exp_lhs = m1 * exact_matrix_exp(gen_k, t);
                const Eigen::MatrixXd exp_rhs = exact_matrix_exp(gen_k1, t) * m1;
                CHECK((exp_lhs - exp_rhs).cwiseAbs().maxCoeff() <=
                      1e-10 * std::max(1.0, exp_lhs.cwiseAbs().maxCoeff()));
            }
        }
    }
}

TEST_CASE("intertwining verifier") {
    SUBCASE("martingale case kappa = (1)") {
        for (double t : {0.0, 0.5, 2.0}) {
            const auto report = verify_intertwining_exact(1.0, 2, Partition({1}), t,
                                                          GeneratorKind::dbm);
            CHECK(report.scaled_error <= 1e-13);
            for (const auto& c : report.per_coefficient) {
                if (c.mu == Partition({1}))
                    CHECK(c.lhs == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
            }
        }
    }

    SUBCASE("theorem instance kappa = (2), theta = 1, k = 1") {
        const auto report =
            verify_intertwining_exact(1.0, 1, Partition({2}), 1.0, GeneratorKind::dbm);
        CHECK(report.per_coefficient.size() == 3);
        CHECK(report.scaled_error <= 1e-10);
    }

    SUBCASE("t = 0 reduces to kernel-factor consistency") {
        const auto report =
            verify_intertwining_exact(0.5, 3, Partition({2, 1}), 0.0, GeneratorKind::dou);
        CHECK(report.max_abs_error <= 1e-12);
    }

    SUBCASE("generator level") {
        CHECK(verify_generator_intertwining(1.0, 2, Partition({1})).max_abs_error <= 1e-14);
        CHECK(verify_generator_intertwining(0.5, 2, Partition({2})).scaled_error <= 1e-10);
        CHECK(verify_generator_intertwining(2.0, 3, Partition({2, 2})).scaled_error <= 1e-10);
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(verify_intertwining_exact(1.0, 1, Partition({1, 1}), 1.0,
                                                  GeneratorKind::dbm),
                        std::invalid_argument);
        CHECK_THROWS_AS(verify_intertwining_exact(1.0, 2, Partition({1}), -1.0,
                                                  GeneratorKind::dbm),
                        std::invalid_argument);
    }
}

TEST_CASE("iterated intertwining across two levels") {
    // kernels composed k -> k+1 -> k+2 commute with the corresponding semigroups
    const double theta = 0.75, t = 1.1;
    const int k = 2;
    const Partition kappa({2, 1});
    const JackBasis basis_k({theta, k}, kappa.weight());
    const JackBasis basis_k2({theta, k + 2}, kappa.weight());
    const auto gen_k = build_generator_matrix(basis_k, kappa, GeneratorKind::dbm);
    const auto gen_k2 = build_generator_matrix(basis_k2, kappa, GeneratorKind::dbm);
    const int n = static_cast<int>(gen_k.basis_index.size());

    Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& mu = gen_k.basis_index[i];
        m1(i, i) = kernel_factor(theta, k, mu) * kernel_factor(theta, k + 1, mu);
    }
    const Eigen::MatrixXd lhs = m1 * exact_matrix_exp(gen_k, t);
    const Eigen::MatrixXd rhs = exact_matrix_exp(gen_k2, t) * m1;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, lhs.cwiseAbs().maxCoeff()));
}
