#include "bellsteer/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellsteer/errors.hpp"

namespace bellsteer {

namespace {

constexpr double kPvmThreshold = 1.0;
constexpr double kPovmThreshold = 6.0 / 5.0;

// Largest radial scale r such that diag(-r*d) stays positive semidefinite:
// the binding constraints are r (d_a + d_b - d_c) <= 1 over the cyclic
// relabelings (d in the closed positive octant).
double max_physical_radius(const Eigen::Vector3d& d) {
    double r_max = std::numeric_limits<double>::infinity();
    for (int c = 0; c < 3; ++c) {
        const double coef = d.sum() - 2.0 * d[c];
        if (coef > 0.0) r_max = std::min(r_max, 1.0 / coef);
    }
    return r_max;
}

double radius_at_scale(const Eigen::Vector3d& d, double r, const SphereGrid& grid) {
    return compute_RT(CorrelationMatrix::diagonal(-r * d[0], -r * d[1], -r * d[2]), grid).r_t;
}

}  // namespace

bool is_separable(double s1, double s2, double s3) {
    return std::abs(s1) + std::abs(s2) + std::abs(s3) <= 1.0 + 1e-12;
}

bool in_prior_hull(double s1, double s2, double s3) {
    const double a = std::abs(s1), b = std::abs(s2), c = std::abs(s3);
    const double worst = std::max({5 * a + 5 * b + 2 * c, 5 * a + 2 * b + 5 * c,
                                   2 * a + 5 * b + 5 * c});
    return worst <= 5.0 * (1.0 + 1e-12);
}

Classification classify_state(const CorrelationMatrix& t, const SphereGrid& grid) {
    if (!t.is_diagonal()) {
        throw validation_error("classification expects a diagonal correlation matrix");
    }
    if (!is_physical(t)) {
        throw validation_error("correlation matrix is not physical");
    }
    const Eigen::Vector3d s = t.diagonal_entries();
    const RadiusResult radius = compute_RT_auto(t, grid);

    Classification out;
    out.r_t = radius.r_t;
    out.method = radius.method;
    out.separable = is_separable(s[0], s[1], s[2]);
    out.povm_unsteerable_prior = in_prior_hull(s[0], s[1], s[2]);
    // Threshold comparisons get a hair of slack so states lying exactly on a
    // boundary are not lost to roundoff; quadrature results widen it by
    // their refinement delta.
    const double tol = std::max(1e-9, 10.0 * radius.est_error);
    out.pvm_unsteerable = radius.r_t >= kPvmThreshold - tol;
    out.povm_unsteerable_new = radius.r_t >= kPovmThreshold - tol;
    out.margin = std::min(std::abs(radius.r_t - kPvmThreshold),
                          std::abs(radius.r_t - kPovmThreshold));
    return out;
}

SurfaceResult surface_grid(int resolution, double level, const SphereGrid& grid,
                           SurfaceMethod method) {
    if (resolution < 8) throw validation_error("surface resolution must be >= 8");
    if (std::abs(level - 1.0) > 1e-9 && std::abs(level - kPovmThreshold) > 1e-9) {
        throw validation_error("surface level must be 1 or 6/5");
    }

    SurfaceResult out;
    const Eigen::Vector3d ex = Eigen::Vector3d::UnitX();
    const Eigen::Vector3d ey = Eigen::Vector3d::UnitY();
    const Eigen::Vector3d ez = Eigen::Vector3d::UnitZ();
    const Eigen::Vector3d barrett = Eigen::Vector3d::Constant(5.0 / 12.0);
    out.prior_hull_faces = {{{ex, ey, barrett}, {ex, ez, barrett}, {ey, ez, barrett}}};
    out.separability_triangle = {ex, ey, ez};

    const double half_pi = 0.5 * std::numbers::pi;
    std::vector<std::pair<double, double>> rays;
    rays.reserve(static_cast<std::size_t>(resolution) * resolution + 1);
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            rays.emplace_back(i * half_pi / (resolution - 1), j * half_pi / (resolution - 1));
        }
    }
    // Main diagonal appended so the Werner boundary point is always present.
    rays.emplace_back(std::acos(1.0 / std::sqrt(3.0)), 0.25 * std::numbers::pi);

    for (const auto& [theta, phi] : rays) {
        SurfacePoint pt;
        pt.dir_theta = theta;
        pt.dir_phi = phi;
        pt.level = level;
        const Eigen::Vector3d d(std::sin(theta) * std::cos(phi),
                                std::sin(theta) * std::sin(phi), std::cos(theta));
        const double r_max = max_physical_radius(d);
        const double k0 = 0.5 * r_max;
        // The density needs T^-1: rays hugging a coordinate plane never
        // produce an invertible matrix and are marked absent.
        if (std::abs(std::pow(k0, 3) * d.prod()) <= kSingularDetEps) {
            pt.absent = true;
            out.points.push_back(pt);
            continue;
        }

        double r_cross = 0.0;
        if (method == SurfaceMethod::scaling) {
            const double r_ref = radius_at_scale(d, k0, grid);
            r_cross = k0 * r_ref / level;  // R(r) = R(k0) * k0 / r
        } else {
            double lo = 0.05 * r_max, hi = r_max;
            if (radius_at_scale(d, lo, grid) < level || radius_at_scale(d, hi, grid) > level) {
                pt.absent = true;
                out.points.push_back(pt);
                continue;
            }
            for (int iter = 0; iter < 60 && (hi - lo) > 1e-12 * r_max; ++iter) {
                const double mid = 0.5 * (lo + hi);
                (radius_at_scale(d, mid, grid) >= level ? lo : hi) = mid;
            }
            r_cross = 0.5 * (lo + hi);
        }

        if (!(r_cross > 0.0) || r_cross > r_max) {
            pt.absent = true;
        } else {
            pt.s = r_cross * d;
        }
        out.points.push_back(pt);
    }
    return out;
}

}  // namespace bellsteer
