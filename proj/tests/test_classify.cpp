#include <doctest.h>

#include <cmath>

#include "bellsteer/classify.hpp"
#include "bellsteer/errors.hpp"
#include "lp_membership.hpp"
#include "test_support.hpp"

using namespace bellsteer;

TEST_CASE("separability octahedron") {
    CHECK(is_separable(0.3, 0.3, 0.3));
    CHECK(is_separable(0.5, -0.25, 0.25));
    CHECK(is_separable(1.0, 0.0, 0.0));
    CHECK(is_separable(1.0 / 3 + 1e-14, 1.0 / 3, 1.0 / 3));  // boundary slack
    CHECK_FALSE(is_separable(0.4, 0.4, 0.4));
    CHECK_FALSE(is_separable(-0.6, 0.6, 0.2));
}

TEST_CASE("prior hull membership agrees with the lp oracle") {
    CHECK(in_prior_hull(5.0 / 12, 5.0 / 12, 5.0 / 12));
    CHECK(in_prior_hull(-5.0 / 12, 5.0 / 12, -5.0 / 12));
    CHECK(in_prior_hull(1.0, 0.0, 0.0));
    CHECK(in_prior_hull(0.3, 0.3, 0.3));
    CHECK_FALSE(in_prior_hull(0.45, 0.45, 0.45));  // 12 * 0.45 = 5.4 > 5
    CHECK_FALSE(in_prior_hull(0.5, 0.5, 0.2));

    CounterRng rng(77);
    int checked = 0;
    while (checked < 400) {
        const Eigen::Vector3d p(1.05 * rng.next_unit(), 1.05 * rng.next_unit(),
                                1.05 * rng.next_unit());
        const double worst = std::max({5 * p[0] + 5 * p[1] + 2 * p[2],
                                       5 * p[0] + 2 * p[1] + 5 * p[2],
                                       2 * p[0] + 5 * p[1] + 5 * p[2]});
        if (std::abs(worst - 5.0) < 1e-6) continue;  // keep clear of tolerance edges
        CHECK(in_prior_hull(p[0], p[1], p[2]) == testing::lp_in_prior_hull(p));
        ++checked;
    }
}

TEST_CASE("classification of reference states") {
    const SphereGrid grid = build_grid(64, 128);

    SUBCASE("werner boundary p = 1/2") {
        const auto c = classify_state(CorrelationMatrix::diagonal(-0.5, -0.5, -0.5), grid);
        CHECK(c.r_t == doctest::Approx(1.0));
        CHECK(c.pvm_unsteerable);
        CHECK_FALSE(c.povm_unsteerable_new);
        CHECK_FALSE(c.separable);
        CHECK(c.method == RadiusMethod::werner_closed_form);
        CHECK(c.margin == doctest::Approx(0.0));
    }

    SUBCASE("werner boundary p = 5/12 stays on the unsteerable side") {
        const auto c =
            classify_state(CorrelationMatrix::diagonal(-5.0 / 12, -5.0 / 12, -5.0 / 12), grid);
        CHECK(c.r_t == doctest::Approx(1.2));
        CHECK(c.pvm_unsteerable);
        CHECK(c.povm_unsteerable_new);
        CHECK(c.povm_unsteerable_prior);
    }

    SUBCASE("werner p = 0.45 sits between the thresholds") {
        const auto c = classify_state(CorrelationMatrix::diagonal(-0.45, -0.45, -0.45), grid);
        CHECK(c.r_t == doctest::Approx(1.0 / 0.9));
        CHECK(c.pvm_unsteerable);
        CHECK_FALSE(c.povm_unsteerable_new);
        CHECK_FALSE(c.povm_unsteerable_prior);
        CHECK_FALSE(c.separable);
        CHECK(c.margin == doctest::Approx(std::min(1.0 / 0.9 - 1.0, 1.2 - 1.0 / 0.9)));
    }

    SUBCASE("separable witness escapes the new certificate") {
        const auto c = classify_state(CorrelationMatrix::diagonal(-0.9, -0.05, -0.05), grid);
        CHECK(c.separable);
        CHECK(c.povm_unsteerable_prior);
        CHECK(c.pvm_unsteerable);
        CHECK_FALSE(c.povm_unsteerable_new);
        CHECK(c.r_t < 6.0 / 5.0 - 1e-3);
        CHECK(c.method == RadiusMethod::axial_closed_form);
    }

    SUBCASE("invalid inputs") {
        Eigen::Matrix3d m = Eigen::Vector3d(-0.5, -0.5, -0.5).asDiagonal();
        m(0, 1) = m(1, 0) = 0.05;
        CHECK_THROWS_AS(classify_state(CorrelationMatrix(m), grid), validation_error);
        CHECK_THROWS_AS(classify_state(CorrelationMatrix::diagonal(0.9, 0.9, 0.9), grid),
                        validation_error);
    }
}

TEST_CASE("surface grid validation and structure") {
    const SphereGrid grid = build_grid(32, 64);
    CHECK_THROWS_AS(surface_grid(4, 1.0, grid), validation_error);
    CHECK_THROWS_AS(surface_grid(16, 1.1, grid), validation_error);

    const SurfaceResult res = surface_grid(8, 1.0, grid);
    CHECK(res.points.size() == 8 * 8 + 1);
    CHECK(res.prior_hull_faces.size() == 3);
    CHECK(res.separability_triangle[0].isApprox(Eigen::Vector3d::UnitX()));

    // axis-plane rays have singular matrices and must be absent
    CHECK(res.points.front().absent);
    for (const auto& p : res.points) {
        if (p.absent) continue;
        CHECK(p.s.minCoeff() > 0.0);
        CHECK(p.level == 1.0);
    }

    // the appended diagonal ray lands on the Werner boundary
    const SurfacePoint& diag = res.points.back();
    REQUIRE_FALSE(diag.absent);
    CHECK((diag.s - Eigen::Vector3d::Constant(0.5)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("scaling and bisection extraction agree") {
    const SphereGrid grid = build_grid(32, 64);
    const SurfaceResult scal = surface_grid(8, 6.0 / 5.0, grid, SurfaceMethod::scaling);
    const SurfaceResult bis = surface_grid(8, 6.0 / 5.0, grid, SurfaceMethod::bisection);
    REQUIRE(scal.points.size() == bis.points.size());

    int compared = 0;
    for (std::size_t i = 0; i < scal.points.size(); ++i) {
        if (scal.points[i].absent || bis.points[i].absent) continue;
        CHECK((scal.points[i].s - bis.points[i].s).norm() < 1e-6);
        ++compared;
    }
    CHECK(compared > 10);

    // every emitted point really sits on the level set
    for (std::size_t i = 0; i < scal.points.size(); i += 7) {
        const auto& p = scal.points[i];
        if (p.absent) continue;
        const auto r =
            compute_RT(CorrelationMatrix::diagonal(-p.s[0], -p.s[1], -p.s[2]), grid);
        CHECK(r.r_t == doctest::Approx(6.0 / 5.0).epsilon(1e-6));
    }
}
