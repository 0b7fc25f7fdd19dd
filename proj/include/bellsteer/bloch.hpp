#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace bellsteer {

// Rejection threshold on |det T|; the LHS construction needs T^-1, so
// near-singular correlation matrices are an error, not a regularization.
inline constexpr double kSingularDetEps = 1e-9;

// Bloch four-vector (x0, x) of a qubit operator X = (x0*I + x.sigma)/2.
// A state has x0 = 1 and |x| <= 1; pure states have |x| = 1.
struct FourVector {
    double x0 = 0.0;
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
};

// Symmetric invertible 3x3 correlation block of a Bell-diagonal state's
// Bloch tensor.  Validation happens at construction; T^-1 and T^-2 are
// cached since every downstream formula needs them.
class CorrelationMatrix {
  public:
    // Throws validation_error if `t` is not symmetric (within 1e-12) or
    // |det t| <= kSingularDetEps.
    explicit CorrelationMatrix(const Eigen::Matrix3d& t);

    static CorrelationMatrix diagonal(double t1, double t2, double t3);

    const Eigen::Matrix3d& matrix() const { return t_; }
    const Eigen::Matrix3d& inverse() const { return inv_; }
    const Eigen::Matrix3d& inverse_squared() const { return inv2_; }
    double det() const { return det_; }

    bool is_diagonal(double tol = 1e-12) const;
    Eigen::Vector3d diagonal_entries() const { return t_.diagonal(); }

  private:
    Eigen::Matrix3d t_;
    Eigen::Matrix3d inv_;
    Eigen::Matrix3d inv2_;
    double det_;
};

// Two-qubit Bell-diagonal state: both reduced states are maximally mixed, so
// the Bloch tensor is the block diagonal of 1 and T.
struct BellDiagonalState {
    CorrelationMatrix t;
};

// Rank-1 POVM effect alpha * (1, e) / 2 with unit direction e.
struct Effect {
    double alpha = 0.0;
    Eigen::Vector3d e = Eigen::Vector3d::UnitZ();
};

// Rank-1 POVM: 2 effects (projective pair) or 4 effects (extremal POVM),
// normalized so the effects sum to the identity, i.e. the four-vectors sum
// to (2, 0).
struct Povm {
    std::vector<Effect> effects;

    int outcomes() const { return static_cast<int>(effects.size()); }
};

// Density operator (1/4) sum_ij Lambda_ij sigma_i (x) sigma_j of the
// Bell-diagonal state; Hermitian with unit trace.
Eigen::Matrix4cd reconstruct_density(const BellDiagonalState& state);

// True iff the reconstructed density operator is positive semidefinite
// (smallest eigenvalue >= -1e-10 to absorb floating-point noise).
bool is_physical(const CorrelationMatrix& t);

// Bob's conditional state (alpha/2) * (1, T e) after Alice's effect fires.
FourVector conditional_state(const BellDiagonalState& state, const Effect& effect);

// Checks all POVM invariants; returns one message per violated constraint
// (empty means valid).  Checked: outcome count in {2, 4}, alpha in [0, 1],
// unit directions, sum alpha = 2, sum alpha*e = 0, and for 2 outcomes the
// projective form alpha = (1, 1), e2 = -e1.
std::vector<std::string> validate_povm(const Povm& povm);

// Convenience: throws validation_error listing all violations.
void require_valid_povm(const Povm& povm);

}  // namespace bellsteer
