#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>

#include "bellsteer/bloch.hpp"
#include "bellsteer/rng.hpp"

namespace bellsteer {

// Weights alpha solving sum alpha_i = 2, sum alpha_i e_i = 0 for four unit
// directions.  Returns nullopt when the direction matrix is near-singular
// (condition number > 1e8) or any weight falls outside [0, 1].
std::optional<std::array<double, 4>> solve_povm_weights(
    const std::array<Eigen::Vector3d, 4>& directions);

// Draws extremal-form 4-outcome rank-1 POVMs: directions uniform on the
// sphere, weights from the normalization constraints, rejection on weight
// feasibility.  Deterministic stream for a fixed seed.
class PovmSampler {
  public:
    explicit PovmSampler(std::uint64_t seed, int max_retries = 1000);

    // Throws numerical_error when the retry budget is exhausted.
    Povm sample();

    std::uint64_t attempts() const { return attempts_; }
    std::uint64_t accepted() const { return accepted_; }

  private:
    CounterRng rng_;
    int max_retries_;
    std::uint64_t attempts_ = 0;
    std::uint64_t accepted_ = 0;
};

// The symmetric informationally complete POVM: equal weights 1/2 along the
// regular tetrahedron directions.
Povm sic_povm();

// A projective measurement along e as a 2-effect POVM: (1, e), (1, -e).
Povm embed_pvm(const Eigen::Vector3d& e);

}  // namespace bellsteer
