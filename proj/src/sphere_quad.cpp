#include "bellsteer/sphere_quad.hpp"

#include <cmath>
#include <numbers>

#include "bellsteer/errors.hpp"
#include "bellsteer/rng.hpp"

namespace bellsteer {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// Legendre recurrence (classic gauleg).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        x[i - 1] = -z;
        x[n - i] = z;
        w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - i] = w[i - 1];
    }
}

// Nodes and weights of the split rule in u = cos(theta): lower panel on
// (-1, 0), upper panel on (0, 1).
void split_cos_theta_rule(int order, std::vector<double>& u, std::vector<double>& w) {
    const int n_upper = (order + 1) / 2;
    const int n_lower = order / 2;
    std::vector<double> xg, wg;
    u.clear();
    w.clear();
    u.reserve(order);
    w.reserve(order);
    gauss_legendre(n_lower, xg, wg);
    for (int i = 0; i < n_lower; ++i) {
        u.push_back(0.5 * (xg[i] - 1.0));
        w.push_back(0.5 * wg[i]);
    }
    gauss_legendre(n_upper, xg, wg);
    for (int i = 0; i < n_upper; ++i) {
        u.push_back(0.5 * (xg[i] + 1.0));
        w.push_back(0.5 * wg[i]);
    }
}

}  // namespace

SphereGrid build_grid(int order_theta, int order_phi, std::optional<Eigen::Vector3d> pole) {
    if (order_theta < 2 || order_phi < 2) {
        throw validation_error("sphere grid orders must be >= 2");
    }
    SphereGrid grid;
    grid.order_theta = order_theta;
    grid.order_phi = order_phi;

    std::vector<double> u, wu;
    split_cos_theta_rule(order_theta, u, wu);

    const double dphi = 2.0 * std::numbers::pi / order_phi;
    std::vector<double> cph(order_phi), sph(order_phi);
    for (int j = 0; j < order_phi; ++j) {
        cph[j] = std::cos(j * dphi);
        sph[j] = std::sin(j * dphi);
    }

    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    if (pole) {
        const double norm = pole->norm();
        if (std::abs(norm - 1.0) > 1e-9) {
            throw validation_error("grid pole must be a unit vector");
        }
        const Eigen::Vector3d p = *pole / norm;
        rot = Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), p).toRotationMatrix();
        grid.pole = p;
    }

    grid.nodes.reserve(static_cast<std::size_t>(order_theta) * order_phi);
    grid.weights.reserve(grid.nodes.capacity());
    for (int i = 0; i < order_theta; ++i) {
        const double st = std::sqrt(std::max(0.0, 1.0 - u[i] * u[i]));
        const double wi = wu[i] * dphi;
        for (int j = 0; j < order_phi; ++j) {
            Eigen::Vector3d n(st * cph[j], st * sph[j], u[i]);
            if (pole) n = rot * n;
            grid.nodes.push_back(n);
            grid.weights.push_back(wi);
        }
    }
    return grid;
}

SphereGrid rotated_grid(const SphereGrid& grid, const Eigen::Vector3d& pole) {
    return build_grid(grid.order_theta, grid.order_phi, pole);
}

void CounterRng::next_gaussian_pair(double& g0, double& g1) {
    const double u0 = next_unit();
    const double u1 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u0));
    g0 = r * std::cos(2.0 * std::numbers::pi * u1);
    g1 = r * std::sin(2.0 * std::numbers::pi * u1);
}

Eigen::Vector3d CounterRng::next_direction() {
    // Each draw consumes exactly four uniforms so the stream layout stays
    // fixed; the fourth Gaussian is discarded.
    for (;;) {
        double g0, g1, g2, g3;
        next_gaussian_pair(g0, g1);
        next_gaussian_pair(g2, g3);
        Eigen::Vector3d v(g0, g1, g2);
        const double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

McResult integrate_mc(std::uint64_t seed, std::size_t samples,
                      const std::function<double(const Eigen::Vector3d&)>& f) {
    if (samples < 1000) throw validation_error("integrate_mc requires at least 1000 samples");
    CounterRng rng(seed);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double v = f(rng.next_direction());
        sum += v;
        sumsq += v * v;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    const double area = 4.0 * std::numbers::pi;
    return {area * mean, area * std::sqrt(var / n)};
}

McVecResult integrate_mc3(std::uint64_t seed, std::size_t samples,
                          const std::function<Eigen::Vector3d(const Eigen::Vector3d&)>& f) {
    if (samples < 1000) throw validation_error("integrate_mc3 requires at least 1000 samples");
    CounterRng rng(seed);
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    Eigen::Vector3d sumsq = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < samples; ++i) {
        const Eigen::Vector3d v = f(rng.next_direction());
        sum += v;
        sumsq += v.cwiseProduct(v);
    }
    const double n = static_cast<double>(samples);
    const double area = 4.0 * std::numbers::pi;
    McVecResult out;
    out.estimate = area * sum / n;
    for (int k = 0; k < 3; ++k) {
        const double mean = sum[k] / n;
        const double var = std::max(0.0, (sumsq[k] - n * mean * mean) / (n - 1.0));
        out.std_error[k] = area * std::sqrt(var / n);
    }
    return out;
}

}  // namespace bellsteer
