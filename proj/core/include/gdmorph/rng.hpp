#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gdmorph {

/// Seeded random source with a fixed, self-contained draw order.
///
/// The engine is std::mt19937_64 (bit-exact across platforms); all
/// distribution transforms are implemented here rather than with
/// std:: distributions, whose output is implementation-defined.
/// One Rng instance per annealing run, never shared.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1). One engine draw.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive. One engine draw.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    /// Standard normal via Box-Muller. Two engine draws per call; the
    /// second variate is discarded to keep the draw order flat.
    double normal() {
        double u1 = uniform();
        const double u2 = uniform();
        if (u1 <= 0.0) {
            u1 = 0x1.0p-53;
        }
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace gdmorph
