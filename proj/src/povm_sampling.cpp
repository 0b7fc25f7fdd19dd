#include "bellsteer/povm_sampling.hpp"

#include <cmath>

#include "bellsteer/errors.hpp"

namespace bellsteer {

std::optional<std::array<double, 4>> solve_povm_weights(
    const std::array<Eigen::Vector3d, 4>& directions) {
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        m(0, i) = 1.0;
        m.block<3, 1>(1, i) = directions[i];
    }
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(3) <= 0.0 || sv(0) / sv(3) > 1e8) return std::nullopt;
    const Eigen::Vector4d alpha = svd.solve(Eigen::Vector4d(2.0, 0.0, 0.0, 0.0));
    for (int i = 0; i < 4; ++i) {
        if (alpha[i] < 0.0 || alpha[i] > 1.0) return std::nullopt;
    }
    return std::array<double, 4>{alpha[0], alpha[1], alpha[2], alpha[3]};
}

PovmSampler::PovmSampler(std::uint64_t seed, int max_retries)
    : rng_(seed), max_retries_(max_retries) {
    if (max_retries < 1) throw validation_error("sampler retry budget must be positive");
}

Povm PovmSampler::sample() {
    for (int attempt = 0; attempt < max_retries_; ++attempt) {
        ++attempts_;
        std::array<Eigen::Vector3d, 4> dirs;
        for (auto& d : dirs) d = rng_.next_direction();
        const auto weights = solve_povm_weights(dirs);
        if (!weights) continue;
        Povm povm;
        for (int i = 0; i < 4; ++i) povm.effects.push_back({(*weights)[i], dirs[i]});
        ++accepted_;
        return povm;
    }
    throw numerical_error("POVM sampler retry budget exhausted");
}

Povm sic_povm() {
    const double a = 1.0 / std::sqrt(3.0);
    Povm povm;
    povm.effects = {
        {0.5, {a, a, a}},
        {0.5, {a, -a, -a}},
        {0.5, {-a, a, -a}},
        {0.5, {-a, -a, a}},
    };
    return povm;
}

Povm embed_pvm(const Eigen::Vector3d& e) {
    if (std::abs(e.norm() - 1.0) > 1e-12) {
        throw validation_error("projective direction must be a unit vector");
    }
    Povm povm;
    povm.effects = {{1.0, e}, {1.0, -e}};
    return povm;
}

}  // namespace bellsteer
