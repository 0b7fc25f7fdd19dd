#include <doctest.h>

#include <Eigen/Dense>

#include "bellsteer/bloch.hpp"
#include "bellsteer/errors.hpp"
#include "bellsteer/povm_sampling.hpp"
#include "test_support.hpp"

using namespace bellsteer;

TEST_CASE("correlation matrix validation") {
    CHECK_THROWS_WITH_AS(CorrelationMatrix::diagonal(0.0, 0.0, 0.0),
                         "singular correlation matrix", validation_error);
    CHECK_THROWS_AS(CorrelationMatrix::diagonal(1e-4, 1e-4, 1e-4), validation_error);

    Eigen::Matrix3d m = Eigen::Matrix3d::Identity() * -0.5;
    m(0, 1) = 0.1;  // asymmetric
    CHECK_THROWS_WITH_AS(CorrelationMatrix{m}, "correlation matrix must be symmetric",
                         validation_error);

    m(1, 0) = 0.1;
    const CorrelationMatrix t(m);
    CHECK((t.matrix() * t.inverse() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK((t.inverse_squared() - t.inverse() * t.inverse()).norm() < 1e-12);
    CHECK(t.det() == doctest::Approx(m.determinant()));
    CHECK_FALSE(t.is_diagonal());

    const CorrelationMatrix d = CorrelationMatrix::diagonal(-0.3, 0.4, -0.5);
    CHECK(d.is_diagonal());
    CHECK(d.diagonal_entries().isApprox(Eigen::Vector3d(-0.3, 0.4, -0.5)));
}

TEST_CASE("density reconstruction matches the closed-form spectrum") {
    const CorrelationMatrix t = CorrelationMatrix::diagonal(-0.3, -0.3, -0.3);
    const Eigen::Matrix4cd rho = reconstruct_density({t});

    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-14);
    CHECK(std::abs(rho.trace().imag()) < 1e-14);
    CHECK((rho - rho.adjoint()).norm() < 1e-14);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
    const auto eigs = solver.eigenvalues();
    // spectrum {0.175, 0.175, 0.175, 0.475}
    CHECK(eigs[0] == doctest::Approx(0.175).epsilon(1e-12));
    CHECK(eigs[2] == doctest::Approx(0.175).epsilon(1e-12));
    CHECK(eigs[3] == doctest::Approx(0.475).epsilon(1e-12));
}

TEST_CASE("physicality boundary") {
    CHECK(is_physical(CorrelationMatrix::diagonal(-1.0, -1.0, -1.0)));  // singlet
    CHECK(is_physical(CorrelationMatrix::diagonal(-0.5, -0.5, -0.5)));
    CHECK(is_physical(CorrelationMatrix::diagonal(-0.9, 0.9, 0.9)));  // near vertex (-1,1,1)
    CHECK_FALSE(is_physical(CorrelationMatrix::diagonal(0.9, 0.9, 0.9)));
    CHECK_FALSE(is_physical(CorrelationMatrix::diagonal(-0.9, -0.9, 0.9)));

    // Closed-form spectrum agrees with the solver on random draws.
    CounterRng rng(11);
    for (int k = 0; k < 20; ++k) {
        const Eigen::Vector3d t = testing::random_physical_diag(rng);
        CHECK(testing::min_density_eigenvalue(t) >= 0.0);
        CHECK(is_physical(CorrelationMatrix::diagonal(t[0], t[1], t[2])));
    }
}

TEST_CASE("conditional state formula") {
    const CorrelationMatrix t = CorrelationMatrix::diagonal(-0.4, -0.6, -0.8);
    const Effect eff{0.7, Eigen::Vector3d(0.0, 0.0, 1.0)};
    const FourVector v = conditional_state({t}, eff);
    CHECK(v.x0 == doctest::Approx(0.35));
    CHECK(v.x.isApprox(Eigen::Vector3d(0.0, 0.0, 0.35 * -0.8)));
}

TEST_CASE("povm validation catches each violated constraint") {
    CHECK(validate_povm(sic_povm()).empty());
    CHECK(validate_povm(embed_pvm(Eigen::Vector3d::UnitX())).empty());

    Povm bad = sic_povm();
    bad.effects.pop_back();
    CHECK(validate_povm(bad).size() == 1);  // outcome count

    bad = sic_povm();
    bad.effects[0].alpha = 1.2;
    CHECK(!validate_povm(bad).empty());

    bad = sic_povm();
    bad.effects[1].e *= 0.9;  // not unit
    CHECK(!validate_povm(bad).empty());

    bad = sic_povm();
    bad.effects[2].alpha = 0.4;  // breaks both sum constraints
    CHECK(validate_povm(bad).size() >= 2);

    Povm pair = embed_pvm(Eigen::Vector3d::UnitZ());
    pair.effects[1].e = Eigen::Vector3d::UnitX();  // not antipodal
    CHECK(!validate_povm(pair).empty());

    CHECK_THROWS_AS(require_valid_povm(pair), validation_error);
    CHECK_NOTHROW(require_valid_povm(sic_povm()));
}
