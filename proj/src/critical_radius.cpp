#include "bellsteer/critical_radius.hpp"

#include <cmath>
#include <numbers>

#include "bellsteer/errors.hpp"

namespace bellsteer {

namespace {

double inv_norm_integral(const CorrelationMatrix& t, const SphereGrid& grid) {
    const Eigen::Matrix3d& m = t.inverse_squared();
    return integrate(grid, [&](const Eigen::Vector3d& n) {
        const double q = n.dot(m * n);
        return 1.0 / (q * q);
    });
}

// arctan(sqrt(y))/sqrt(y) continued through y = 0 (y = x^2 - 1).
double arctan_quotient(double y) {
    if (std::abs(y) < 1e-6) {
        // series 1 - y/3 + y^2/5 - y^3/7; truncation error ~ y^4/9 < 2e-25
        return 1.0 + y * (-1.0 / 3.0 + y * (1.0 / 5.0 - y / 7.0));
    }
    if (y > 0.0) {
        const double r = std::sqrt(y);
        return std::atan(r) / r;
    }
    const double r = std::sqrt(-y);
    return std::atanh(r) / r;
}

}  // namespace

std::string to_string(RadiusMethod method) {
    switch (method) {
        case RadiusMethod::quadrature: return "quadrature";
        case RadiusMethod::axial_closed_form: return "axial-closed-form";
        case RadiusMethod::werner_closed_form: return "werner-closed-form";
    }
    return "unknown";
}

double ensemble_density(const CorrelationMatrix& t, double n_t, const Eigen::Vector3d& n) {
    const double q = n.dot(t.inverse_squared() * n);
    return n_t / (q * q);
}

double compute_NT(const CorrelationMatrix& t, const SphereGrid& grid) {
    return 1.0 / inv_norm_integral(t, grid);
}

RadiusResult compute_RT(const CorrelationMatrix& t, const SphereGrid& grid) {
    RadiusResult out;
    out.method = RadiusMethod::quadrature;
    out.n_t = compute_NT(t, grid);
    out.r_t = 2.0 * std::numbers::pi * out.n_t * std::abs(t.det());
    const SphereGrid half = build_grid(std::max(2, grid.order_theta / 2),
                                       std::max(2, grid.order_phi / 2), grid.pole);
    const double r_half = 2.0 * std::numbers::pi * compute_NT(t, half) * std::abs(t.det());
    out.est_error = std::abs(out.r_t - r_half);
    return out;
}

RadiusResult compute_RT_auto(const CorrelationMatrix& t, const SphereGrid& grid) {
    constexpr double tol = 1e-12;
    if (t.is_diagonal()) {
        const Eigen::Vector3d d = t.diagonal_entries().cwiseAbs();
        RadiusResult out;
        if (std::abs(d[0] - d[1]) <= tol && std::abs(d[1] - d[2]) <= tol) {
            out.method = RadiusMethod::werner_closed_form;
            out.r_t = rt_werner(d[0]);
        } else if (std::abs(d[0] - d[1]) <= tol) {
            out.method = RadiusMethod::axial_closed_form;
            out.r_t = rt_axial(d[0], d[2]);
        } else if (std::abs(d[0] - d[2]) <= tol) {
            out.method = RadiusMethod::axial_closed_form;
            out.r_t = rt_axial(d[0], d[1]);
        } else if (std::abs(d[1] - d[2]) <= tol) {
            out.method = RadiusMethod::axial_closed_form;
            out.r_t = rt_axial(d[1], d[0]);
        } else {
            return compute_RT(t, grid);
        }
        out.n_t = out.r_t / (2.0 * std::numbers::pi * std::abs(t.det()));
        out.est_error = 0.0;
        return out;
    }
    return compute_RT(t, grid);
}

double rt_werner(double p) {
    if (p <= 0.0 || p > 1.0) throw validation_error("werner parameter must be in (0, 1]");
    return 1.0 / (2.0 * p);
}

double rt_axial(double s, double t) {
    if (s == 0.0 || t == 0.0) throw validation_error("axial closed form requires s != 0 and t != 0");
    const double x = s / t;
    const double q = arctan_quotient(x * x - 1.0);
    return (1.0 / std::abs(t)) / (1.0 + x * x * q);
}

}  // namespace bellsteer
