#include "bellsteer/lhs_model.hpp"

#include <cmath>
#include <numbers>

#include "bellsteer/errors.hpp"

namespace bellsteer {

namespace {

Eigen::Vector3d discontinuity_pole(const CorrelationMatrix& t, const Eigen::Vector3d& e) {
    // step(e^T T^-1 n) jumps on the great circle orthogonal to T^-1 e
    // (T^-1 is symmetric).
    const Eigen::Vector3d m = t.inverse() * e;
    return m / m.norm();
}

// integral dS p(n) g_e(n) (1, n) on a grid pole-rotated to the jump circle.
// The scalar part is the ensemble average c_e; the vector part is the first
// moment of the softened response.
FourVector softened_term_integral(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                                  double n_t, const SphereGrid& grid) {
    const SphereGrid rotated = rotated_grid(grid, discontinuity_pole(t, e));
    const Eigen::Vector4d r = integrate(rotated, [&](const Eigen::Vector3d& n) -> Eigen::Vector4d {
        const double p = ensemble_density(t, n_t, n);
        const double g = softened_response(t, e, n);
        Eigen::Vector4d v;
        v << p * g, p * g * n;
        return v;
    });
    return {r[0], r.tail<3>()};
}

double distance(const FourVector& a, const FourVector& b) {
    Eigen::Vector4d d;
    d << a.x0 - b.x0, a.x - b.x;
    return d.norm();
}

}  // namespace

double pvm_response(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                    const Eigen::Vector3d& n) {
    return heaviside(e.dot(t.inverse() * n));
}

double softened_response(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                         const Eigen::Vector3d& n) {
    const Eigen::Vector3d tin = t.inverse() * n;
    const double w = e.dot(tin);
    return 0.5 * (1.0 + w / tin.norm()) * heaviside(w);
}

double softened_response_mean(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                              const SphereGrid& grid) {
    const double n_t = compute_NT(t, grid);
    const double c = softened_term_integral(t, e, n_t, grid).x0;
    if (c < -1e-8 || c > 0.5 + 1e-8) {
        throw numerical_error("ensemble average of softened response out of [0, 1/2]: quadrature failure");
    }
    return std::clamp(c, 0.0, 0.5);
}

PovmResponse::PovmResponse(CorrelationMatrix t, Povm povm, std::vector<double> c,
                           std::vector<double> gamma, double n_t)
    : t_(std::move(t)), povm_(std::move(povm)), c_(std::move(c)), gamma_(std::move(gamma)),
      n_t_(n_t) {}

double PovmResponse::evaluate(int outcome, const Eigen::Vector3d& n) const {
    return evaluate_all(n)[outcome];
}

Eigen::Vector4d PovmResponse::evaluate_all(const Eigen::Vector3d& n) const {
    double weighted = 0.0;
    Eigen::Vector4d g;
    for (int j = 0; j < 4; ++j) {
        g[j] = softened_response(t_, povm_.effects[j].e, n);
        weighted += povm_.effects[j].alpha * g[j];
    }
    Eigen::Vector4d out;
    for (int i = 0; i < 4; ++i) {
        out[i] = povm_.effects[i].alpha * g[i] + gamma_[i] * (1.0 - weighted);
    }
    return out;
}

PovmResponse build_povm_response(const CorrelationMatrix& t, const Povm& povm,
                                 const SphereGrid& grid) {
    require_valid_povm(povm);
    if (povm.outcomes() != 4) {
        throw validation_error("response construction needs a 4-outcome POVM");
    }
    const double n_t = compute_NT(t, grid);
    std::vector<double> c(4);
    double weighted_c = 0.0;
    for (int i = 0; i < 4; ++i) {
        c[i] = softened_term_integral(t, povm.effects[i].e, n_t, grid).x0;
        if (c[i] < -1e-8 || c[i] > 0.5 + 1e-8) {
            throw numerical_error("ensemble average of softened response out of [0, 1/2]: quadrature failure");
        }
        c[i] = std::clamp(c[i], 0.0, 0.5);
        weighted_c += povm.effects[i].alpha * c[i];
    }
    const double denom = 1.0 - weighted_c;
    if (denom <= 0.0) {
        throw numerical_error("response weights degenerate: 1 - sum alpha_k c_k <= 0");
    }
    std::vector<double> gamma(4);
    for (int i = 0; i < 4; ++i) {
        gamma[i] = povm.effects[i].alpha * (0.5 - c[i]) / denom;
    }
    return PovmResponse(t, povm, std::move(c), std::move(gamma), n_t);
}

std::vector<FourVector> simulate_conditional(const PovmResponse& response,
                                             const SphereGrid& grid) {
    const CorrelationMatrix& t = response.t();
    const Povm& povm = response.povm();
    const double n_t = response.n_t();

    // Per-outcome integrals of p g_j (1, n), each on its own rotated grid.
    std::array<FourVector, 4> term;
    for (int j = 0; j < 4; ++j) {
        term[j] = softened_term_integral(t, povm.effects[j].e, n_t, grid);
    }

    // integral p (1, n): smooth integrand, unrotated grid.
    const Eigen::Vector4d base = integrate(grid, [&](const Eigen::Vector3d& n) -> Eigen::Vector4d {
        const double p = ensemble_density(t, n_t, n);
        Eigen::Vector4d v;
        v << p, p * n;
        return v;
    });

    FourVector weighted{0.0, Eigen::Vector3d::Zero()};
    for (int j = 0; j < 4; ++j) {
        weighted.x0 += povm.effects[j].alpha * term[j].x0;
        weighted.x += povm.effects[j].alpha * term[j].x;
    }

    std::vector<FourVector> out(4);
    for (int i = 0; i < 4; ++i) {
        const double a = povm.effects[i].alpha;
        const double g = response.gamma()[i];
        out[i].x0 = a * term[i].x0 + g * (base[0] - weighted.x0);
        out[i].x = a * term[i].x + g * (base.tail<3>() - weighted.x);
    }
    return out;
}

std::array<FourVector, 2> simulate_conditional_pvm(const CorrelationMatrix& t,
                                                   const Eigen::Vector3d& e,
                                                   const SphereGrid& grid) {
    const double n_t = compute_NT(t, grid);
    std::array<FourVector, 2> out;
    const Eigen::Vector3d dirs[2] = {e, -e};
    for (int i = 0; i < 2; ++i) {
        const SphereGrid rotated = rotated_grid(grid, discontinuity_pole(t, dirs[i]));
        const Eigen::Vector4d r =
            integrate(rotated, [&](const Eigen::Vector3d& n) -> Eigen::Vector4d {
                const double p = ensemble_density(t, n_t, n);
                const double g = pvm_response(t, dirs[i], n);
                Eigen::Vector4d v;
                v << p * g, p * g * n;
                return v;
            });
        out[i] = {r[0], r.tail<3>()};
    }
    return out;
}

ResponseMoments closed_form_moments(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                                    double n_t) {
    const double scale = std::abs(t.det()) * std::numbers::pi * n_t;
    const Eigen::Vector3d te = t.matrix() * e;
    ResponseMoments out;
    out.step = (scale / 2.0) * te;
    out.linear = (scale / 3.0) * te;
    out.total = out.step + out.linear;
    return out;
}

ResponseMoments quadrature_moments(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                                   double n_t, const SphereGrid& grid) {
    const SphereGrid rotated = rotated_grid(grid, discontinuity_pole(t, e));
    const Eigen::Matrix3d& tinv = t.inverse();
    ResponseMoments out;
    // step part: (1/2) integral p(n) step(e^T T^-1 n) n
    out.step = 0.5 * integrate(rotated, [&](const Eigen::Vector3d& n) -> Eigen::Vector3d {
        const double w = e.dot(tinv * n);
        return ensemble_density(t, n_t, n) * heaviside(w) * n;
    });
    // linear part: (1/2) integral p(n) (e^T T^-1 n / |T^-1 n|) step(...) n
    out.linear = 0.5 * integrate(rotated, [&](const Eigen::Vector3d& n) -> Eigen::Vector3d {
        const Eigen::Vector3d tin = tinv * n;
        const double w = e.dot(tin);
        return ensemble_density(t, n_t, n) * (w / tin.norm()) * heaviside(w) * n;
    });
    out.total = out.step + out.linear;
    return out;
}

SimulationReport verify_simulation(const CorrelationMatrix& t, const Povm& povm,
                                   const SphereGrid& grid) {
    require_valid_povm(povm);
    const int n = povm.outcomes();

    SimulationReport report;
    report.r_t = compute_RT(t, grid).r_t;
    report.target_factor = (n == 4) ? 5.0 * report.r_t / 6.0 : report.r_t;

    std::vector<FourVector> simulated;
    if (n == 4) {
        const PovmResponse response = build_povm_response(t, povm, grid);
        simulated = simulate_conditional(response, grid);
    } else {
        const auto pair = simulate_conditional_pvm(t, povm.effects[0].e, grid);
        simulated = {pair[0], pair[1]};
    }

    const BellDiagonalState state{t};
    for (int i = 0; i < n; ++i) {
        OutcomeComparison cmp;
        cmp.simulated = simulated[i];
        const Effect& eff = povm.effects[i];
        cmp.target.x0 = 0.5 * eff.alpha;
        cmp.target.x = 0.5 * eff.alpha * report.target_factor * (t.matrix() * eff.e);
        cmp.residual = distance(cmp.simulated, cmp.target);
        report.max_residual = std::max(report.max_residual, cmp.residual);
        report.outcomes.push_back(std::move(cmp));
    }

    // When the scale factor reaches 1, shrinking the simulated Bloch vectors
    // by it must land exactly on the actual conditional states.
    if (report.target_factor >= 1.0) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            FourVector rescaled = simulated[i];
            rescaled.x /= report.target_factor;
            worst = std::max(worst, distance(rescaled, conditional_state(state, povm.effects[i])));
        }
        report.physical_match_residual = worst;
    }
    return report;
}

}  // namespace bellsteer
