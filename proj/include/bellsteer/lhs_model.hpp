#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "bellsteer/bloch.hpp"
#include "bellsteer/critical_radius.hpp"
#include "bellsteer/sphere_quad.hpp"

namespace bellsteer {

// Response function for a projective effect direction e: the Heaviside step
// of e^T T^-1 n, with the boundary value 1/2.
double pvm_response(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                    const Eigen::Vector3d& n);

// Softened response (1/2)(1 + e^T T^-1 n / |T^-1 n|) * step(e^T T^-1 n).
// The linear softener guarantees that the weighted responses of any valid
// POVM stay subnormalized, which is what makes the additive correction in
// the full response function nonnegative.
double softened_response(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                         const Eigen::Vector3d& n);

// Ensemble average c = integral dS p(n) * softened_response(n).  The jump of
// the integrand lies on the great circle orthogonal to T^-1 e, so the grid
// is rebuilt with its pole rotated there.  Always in [0, 1/2] up to
// quadrature noise; values outside [-1e-8, 1/2 + 1e-8] raise
// numerical_error, smaller overshoots are clamped.
double softened_response_mean(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                              const SphereGrid& grid);

// Full response functions G_i for a 4-outcome rank-1 POVM:
//   G_i(n) = alpha_i g_i(n) + gamma_i [1 - sum_j alpha_j g_j(n)],
//   gamma_i = alpha_i (1/2 - c_i) / (1 - sum_k alpha_k c_k).
// Valid by construction: G_i >= 0 and sum_i G_i = 1 pointwise.
class PovmResponse {
  public:
    PovmResponse(CorrelationMatrix t, Povm povm, std::vector<double> c,
                 std::vector<double> gamma, double n_t);

    // G_i(n); zero-weight outcomes give identically zero.
    double evaluate(int outcome, const Eigen::Vector3d& n) const;

    // All four responses at once (shares the inner sum).
    Eigen::Vector4d evaluate_all(const Eigen::Vector3d& n) const;

    const CorrelationMatrix& t() const { return t_; }
    const Povm& povm() const { return povm_; }
    const std::vector<double>& c() const { return c_; }
    const std::vector<double>& gamma() const { return gamma_; }
    double n_t() const { return n_t_; }

  private:
    CorrelationMatrix t_;
    Povm povm_;
    std::vector<double> c_;
    std::vector<double> gamma_;
    double n_t_;
};

// Computes the c_i and gamma_i for a valid 4-outcome POVM.  Throws
// validation_error for invalid POVMs and numerical_error if the gamma
// denominator 1 - sum alpha_k c_k is not positive (impossible for valid
// inputs away from degenerate limits).
PovmResponse build_povm_response(const CorrelationMatrix& t, const Povm& povm,
                                 const SphereGrid& grid);

// Bob's simulated conditional states integral dS p(n) G_i(n) (1, n), one per
// outcome.  Each additive term of G_i is integrated on a grid whose pole is
// rotated to that term's discontinuity normal, then the terms are summed;
// this keeps every individual quadrature spectrally accurate.
std::vector<FourVector> simulate_conditional(const PovmResponse& response,
                                             const SphereGrid& grid);

// Same for a projective pair along +/-e using the step response; returns the
// two outcomes' simulated states.
std::array<FourVector, 2> simulate_conditional_pvm(const CorrelationMatrix& t,
                                                   const Eigen::Vector3d& e,
                                                   const SphereGrid& grid);

// Closed forms for the first moments of the softened response under the
// ensemble, split into the step part and the linear-softener part:
//   step    = |det T| (pi N_T / 2) T e
//   linear  = |det T| (pi N_T / 3) T e
//   total   = step + linear = |det T| (5 pi N_T / 6) T e
struct ResponseMoments {
    Eigen::Vector3d step;
    Eigen::Vector3d linear;
    Eigen::Vector3d total;
};

ResponseMoments closed_form_moments(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                                    double n_t);

// Quadrature counterparts of the closed forms (step and linear first
// moments on a pole-rotated grid); used to cross-check the closed forms.
ResponseMoments quadrature_moments(const CorrelationMatrix& t, const Eigen::Vector3d& e,
                                   double n_t, const SphereGrid& grid);

struct OutcomeComparison {
    FourVector simulated;
    FourVector target;
    double residual = 0.0;  // Euclidean distance between the four-vectors
};

// Comparison of the simulated conditional states against the model's
// algebraic target: (alpha_i/2)(1, (5 R_T/6) T e_i) for 4-outcome POVMs,
// (1/2)(1, R_T T e_i) for projective pairs.  When the scale factor reaches
// 1 (R_T >= 6/5 resp. R_T >= 1) the model can reproduce the actual
// conditional states; physical_match_residual reports how well the rescaled
// simulation matches them.
struct SimulationReport {
    std::vector<OutcomeComparison> outcomes;
    double max_residual = 0.0;
    double r_t = 0.0;
    double target_factor = 0.0;  // 5 R_T / 6 for POVMs, R_T for PVMs
    std::optional<double> physical_match_residual;
};

SimulationReport verify_simulation(const CorrelationMatrix& t, const Povm& povm,
                                   const SphereGrid& grid);

}  // namespace bellsteer
