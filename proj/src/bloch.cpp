#include "bellsteer/bloch.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "bellsteer/errors.hpp"

namespace bellsteer {

namespace {

using Matrix2cd = Eigen::Matrix2cd;
constexpr std::complex<double> kI{0.0, 1.0};

const Matrix2cd& pauli(int k) {
    static const Matrix2cd sigma[4] = {
        (Matrix2cd() << 1, 0, 0, 1).finished(),
        (Matrix2cd() << 0, 1, 1, 0).finished(),
        (Matrix2cd() << 0, -kI, kI, 0).finished(),
        (Matrix2cd() << 1, 0, 0, -1).finished(),
    };
    return sigma[k];
}

Eigen::Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(const Eigen::Matrix3d& t) : t_(t) {
    if ((t - t.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw validation_error("correlation matrix must be symmetric");
    }
    det_ = t.determinant();
    if (std::abs(det_) <= kSingularDetEps) {
        throw validation_error("singular correlation matrix");
    }
    inv_ = t.inverse();
    inv2_ = inv_ * inv_;
}

CorrelationMatrix CorrelationMatrix::diagonal(double t1, double t2, double t3) {
    return CorrelationMatrix(Eigen::Vector3d(t1, t2, t3).asDiagonal().toDenseMatrix());
}

bool CorrelationMatrix::is_diagonal(double tol) const {
    Eigen::Matrix3d off = t_;
    off.diagonal().setZero();
    return off.cwiseAbs().maxCoeff() <= tol;
}

Eigen::Matrix4cd reconstruct_density(const BellDiagonalState& state) {
    // Lambda is block-diagonal: Lambda_00 = 1, Lambda_ab = T_ab for a,b >= 1,
    // zero first row/column otherwise (maximally mixed reduced states).
    Eigen::Matrix4cd rho = kron2(pauli(0), pauli(0));
    const Eigen::Matrix3d& t = state.t.matrix();
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) rho += t(a - 1, b - 1) * kron2(pauli(a), pauli(b));
    return 0.25 * rho;
}

bool is_physical(const CorrelationMatrix& t) {
    const Eigen::Matrix4cd rho = reconstruct_density({t});
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -1e-10;
}

FourVector conditional_state(const BellDiagonalState& state, const Effect& effect) {
    FourVector out;
    out.x0 = 0.5 * effect.alpha;
    out.x = 0.5 * effect.alpha * (state.t.matrix() * effect.e);
    return out;
}

std::vector<std::string> validate_povm(const Povm& povm) {
    constexpr double tol = 1e-12;
    std::vector<std::string> violations;
    std::ostringstream msg;
    auto report = [&](auto&&... parts) {
        msg.str("");
        (msg << ... << parts);
        violations.push_back(msg.str());
    };

    const int n = povm.outcomes();
    if (n != 2 && n != 4) {
        report("outcome count must be 2 or 4, got ", n);
        return violations;
    }

    double alpha_sum = 0.0;
    Eigen::Vector3d weighted_sum = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i) {
        const Effect& eff = povm.effects[i];
        if (eff.alpha < -tol || eff.alpha > 1.0 + tol) {
            report("effect ", i, ": weight ", eff.alpha, " outside [0, 1]");
        }
        const double unit_residual = std::abs(eff.e.norm() - 1.0);
        if (unit_residual > tol) {
            report("effect ", i, ": direction not unit (residual ", unit_residual, ")");
        }
        alpha_sum += eff.alpha;
        weighted_sum += eff.alpha * eff.e;
    }
    if (std::abs(alpha_sum - 2.0) > tol) {
        report("sum of weights = ", alpha_sum, " != 2 (residual ", std::abs(alpha_sum - 2.0), ")");
    }
    if (weighted_sum.cwiseAbs().maxCoeff() > tol) {
        report("weighted directions do not sum to zero (residual ",
               weighted_sum.cwiseAbs().maxCoeff(), ")");
    }
    if (n == 2) {
        if (std::abs(povm.effects[0].alpha - 1.0) > tol || std::abs(povm.effects[1].alpha - 1.0) > tol) {
            report("projective pair must have unit weights");
        }
        if ((povm.effects[1].e + povm.effects[0].e).cwiseAbs().maxCoeff() > tol) {
            report("projective pair must have antipodal directions");
        }
    }
    return violations;
}

void require_valid_povm(const Povm& povm) {
    const auto violations = validate_povm(povm);
    if (violations.empty()) return;
    std::string msg = "invalid POVM:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw validation_error(msg);
}

}  // namespace bellsteer
