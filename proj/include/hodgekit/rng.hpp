#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace hodgekit {

/// Seeded sampler for property tests and the CLI. Uniform doubles are mapped
/// straight from engine output so identical seeds give identical streams on
/// every platform (distribution classes are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi).
    double uniform(double lo = -1.0, double hi = 1.0) {
        double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    Eigen::VectorXd vector(Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform();
        return v;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace hodgekit
