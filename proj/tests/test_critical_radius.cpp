#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bellsteer/critical_radius.hpp"
#include "bellsteer/errors.hpp"
#include "test_support.hpp"

using namespace bellsteer;

TEST_CASE("normalization for isotropic matrices") {
    const SphereGrid grid = build_grid(32, 64);
    // T = -I: the density is uniform, N_T = 1/(4 pi)
    CHECK(compute_NT(CorrelationMatrix::diagonal(-1, -1, -1), grid) ==
          doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-12));
    // T = -I/2: integrand is the constant 1/16
    CHECK(compute_NT(CorrelationMatrix::diagonal(-0.5, -0.5, -0.5), grid) ==
          doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-12));

    // density normalizes to 1 for an anisotropic matrix too
    const CorrelationMatrix t = CorrelationMatrix::diagonal(-0.3, -0.45, -0.7);
    const double n_t = compute_NT(t, grid);
    const double mass =
        integrate(grid, [&](const Eigen::Vector3d& n) { return ensemble_density(t, n_t, n); });
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("werner closed form against quadrature") {
    const SphereGrid grid = build_grid(64, 128);
    for (double p : {0.2, 0.5, 0.9}) {
        const auto res = compute_RT(CorrelationMatrix::diagonal(-p, -p, -p), grid);
        CHECK(res.r_t == doctest::Approx(rt_werner(p)).epsilon(1e-10));
        CHECK(res.method == RadiusMethod::quadrature);
        CHECK(res.est_error < 1e-8);
    }
    CHECK(rt_werner(0.5) == 1.0);
    CHECK_THROWS_AS(rt_werner(0.0), validation_error);
    CHECK_THROWS_AS(rt_werner(1.5), validation_error);
}

TEST_CASE("axial closed form covers both branches") {
    const SphereGrid grid = build_grid(96, 192);

    // |x| < 1: artanh branch
    const double r1 = compute_RT(CorrelationMatrix::diagonal(-0.3, -0.3, -0.8), grid).r_t;
    CHECK(rt_axial(0.3, 0.8) == doctest::Approx(r1).epsilon(1e-8));

    // |x| > 1: arctan branch
    const double r2 = compute_RT(CorrelationMatrix::diagonal(-0.8, -0.8, -0.3), grid).r_t;
    CHECK(rt_axial(0.8, 0.3) == doctest::Approx(r2).epsilon(1e-8));

    // series continuation is continuous through x = 1
    CHECK(rt_axial(0.5, 0.5 * (1.0 + 1e-9)) == doctest::Approx(rt_werner(0.5)).epsilon(1e-7));
    CHECK(rt_axial(0.5, 0.5 * (1.0 - 1e-9)) == doctest::Approx(rt_werner(0.5)).epsilon(1e-7));

    CHECK_THROWS_AS(rt_axial(0.0, 0.5), validation_error);
    CHECK_THROWS_AS(rt_axial(0.5, 0.0), validation_error);
}

TEST_CASE("radius depends only on the entry magnitudes") {
    const SphereGrid grid = build_grid(96, 192);
    // T enters through T^-2 and |det T|, so diagonal sign flips are invisible
    const double r = compute_RT(CorrelationMatrix::diagonal(0.3, -0.3, 0.8), grid).r_t;
    CHECK(r == doctest::Approx(rt_axial(0.3, 0.8)).epsilon(1e-8));
}

TEST_CASE("automatic method dispatch") {
    const SphereGrid grid = build_grid(64, 128);

    auto res = compute_RT_auto(CorrelationMatrix::diagonal(-0.4, -0.4, -0.4), grid);
    CHECK(res.method == RadiusMethod::werner_closed_form);
    CHECK(res.r_t == doctest::Approx(1.25));
    CHECK(res.est_error == 0.0);
    CHECK(res.n_t ==
          doctest::Approx(res.r_t / (2.0 * std::numbers::pi * std::pow(0.4, 3))).epsilon(1e-13));

    res = compute_RT_auto(CorrelationMatrix::diagonal(-0.3, -0.8, -0.3), grid);
    CHECK(res.method == RadiusMethod::axial_closed_form);
    CHECK(res.r_t == doctest::Approx(rt_axial(0.3, 0.8)).epsilon(1e-14));

    res = compute_RT_auto(CorrelationMatrix::diagonal(-0.2, -0.4, -0.6), grid);
    CHECK(res.method == RadiusMethod::quadrature);
    CHECK(res.r_t == doctest::Approx(compute_RT(CorrelationMatrix::diagonal(-0.2, -0.4, -0.6),
                                                grid).r_t));

    // full matrices always go through quadrature
    Eigen::Matrix3d m = Eigen::Vector3d(-0.5, -0.5, -0.5).asDiagonal();
    m(0, 1) = m(1, 0) = 0.05;
    res = compute_RT_auto(CorrelationMatrix(m), grid);
    CHECK(res.method == RadiusMethod::quadrature);
}

TEST_CASE("scaling law R_{kT} = R_T / k") {
    const SphereGrid grid = build_grid(64, 128);
    CounterRng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::Vector3d t = testing::random_physical_diag(rng);
        const double r1 = compute_RT(CorrelationMatrix::diagonal(t[0], t[1], t[2]), grid).r_t;
        const double k = 0.6;
        const double rk =
            compute_RT(CorrelationMatrix::diagonal(k * t[0], k * t[1], k * t[2]), grid).r_t;
        CHECK(rk == doctest::Approx(r1 / k).epsilon(1e-10));
    }
}
