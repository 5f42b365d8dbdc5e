#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace n905 {

/// Deterministic RNG wrapper. Derives uniform doubles directly from the
/// mt19937_64 bit stream so sampled values are identical across platforms
/// and standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Index into an unnormalized nonnegative weight vector.
    int sample_index(const Eigen::VectorXd& weights) {
        double total = weights.sum();
        double u = uniform01() * total;
        double acc = 0.0;
        for (int i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return static_cast<int>(weights.size()) - 1;
    }

    int uniform_int(int n) {  // in [0, n)
        return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
    }

    double normal() {
        // Box-Muller on the deterministic uniform stream.
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace n905
