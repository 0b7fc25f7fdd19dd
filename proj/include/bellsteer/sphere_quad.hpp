#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <type_traits>
#include <vector>

namespace bellsteer {

// Heaviside step with the symmetric convention theta(0) = 1/2.  The zero set
// of the integrands handled here has measure zero, so integrals are
// unaffected; the symmetric value keeps response functions exact at nodes
// that happen to land on a discontinuity circle.
inline double heaviside(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    return 0.5;
}

// Product quadrature rule on the unit sphere.
//
// The cos(theta) axis uses Gauss-Legendre panels split at the equator
// (ceil(n/2) nodes on (0,1), floor(n/2) on (-1,0)); the azimuth uses the
// uniform trapezoid rule, which is spectrally accurate for periodic
// integrands.  Splitting at the equator matters for integrands with a
// Heaviside jump along a great circle: rotating the grid pole onto the
// circle's normal puts the jump exactly between panels, so the integrand is
// smooth on each panel and the rule converges at spectral rate.
//
// Weights carry the surface measure and sum to 4*pi.
struct SphereGrid {
    std::vector<Eigen::Vector3d> nodes;
    std::vector<double> weights;
    std::optional<Eigen::Vector3d> pole;  // direction the north pole was rotated to
    int order_theta = 0;
    int order_phi = 0;
};

// Builds the product grid.  Orders must be >= 2.  When `pole` is given the
// grid is rotated so its north pole aligns with it; weights are untouched
// (rotations preserve the surface measure).
SphereGrid build_grid(int order_theta, int order_phi,
                      std::optional<Eigen::Vector3d> pole = std::nullopt);

// Rebuilds a grid with the same orders but a different pole.
SphereGrid rotated_grid(const SphereGrid& grid, const Eigen::Vector3d& pole);

// Sum_i w_i f(n_i).  Works for scalar and fixed-size Eigen vector results;
// summation is in node order, so results are bit-stable for a fixed grid.
template <typename F>
auto integrate(const SphereGrid& grid, F&& f) {
    using R = std::decay_t<decltype(f(grid.nodes[0]))>;
    R acc;
    if constexpr (std::is_floating_point_v<R>) {
        acc = R(0);
    } else {
        acc = R::Zero();
    }
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        acc += grid.weights[i] * f(grid.nodes[i]);
    }
    return acc;
}

struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;
};

struct McVecResult {
    Eigen::Vector3d estimate = Eigen::Vector3d::Zero();
    Eigen::Vector3d std_error = Eigen::Vector3d::Zero();
};

// Uniform-sphere Monte-Carlo estimate of integral f dS with its standard
// error.  Deterministic for a fixed seed (counter-based sampling).
// Requires samples >= 1000.
McResult integrate_mc(std::uint64_t seed, std::size_t samples,
                      const std::function<double(const Eigen::Vector3d&)>& f);

// Vector-valued variant; the standard error is reported per component.
McVecResult integrate_mc3(std::uint64_t seed, std::size_t samples,
                          const std::function<Eigen::Vector3d(const Eigen::Vector3d&)>& f);

}  // namespace bellsteer
