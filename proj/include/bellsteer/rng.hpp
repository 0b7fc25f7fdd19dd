#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace bellsteer {

// Counter-based pseudo-random stream (splitmix64 finalizer over an
// incrementing counter).  Output depends only on (seed, counter), so a
// fixed seed reproduces the identical sequence on every platform.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : base_(finalize(seed ^ 0x6a09e667f3bcc909ULL)) {}

    std::uint64_t next_u64() { return finalize(base_ + (++counter_) * kGamma); }

    // Uniform in the open interval (0, 1).
    double next_unit() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // Standard Gaussian pair via Box-Muller.
    void next_gaussian_pair(double& g0, double& g1);

    // Uniform direction on the unit sphere (normalized Gaussian triple).
    Eigen::Vector3d next_direction();

    std::uint64_t counter() const { return counter_; }

  private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t finalize(std::uint64_t x) {
        x += kGamma;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

}  // namespace bellsteer
