#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "diar/embedding.hpp"

namespace diar {

// Deterministic random source. std::mt19937_64 has a standard-specified
// output sequence, but the standard distributions do not, so the
// transformations below are written out explicitly to keep generated
// corpora identical across platforms and library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi] via rejection sampling.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) {
            throw std::invalid_argument("uniform_int: empty range");
        }
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) {
            return static_cast<std::int64_t>(engine_());
        }
        const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
        std::uint64_t draw = engine_();
        while (draw >= limit) {
            draw = engine_();
        }
        return lo + static_cast<std::int64_t>(draw % span);
    }

    // Standard normal via the Box-Muller transform.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform();
        while (u == 0.0) {
            u = uniform();
        }
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double theta = 2.0 * kPi * v;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Exponential with the given mean, via inverse CDF.
    double exponential(double mean) {
        if (!(mean > 0.0)) {
            throw std::invalid_argument("exponential: mean must be positive");
        }
        double u = uniform();
        while (u == 0.0) {
            u = uniform();
        }
        return -mean * std::log(u);
    }

    // Uniformly distributed point on the unit sphere in d dimensions.
    EmbeddingVector unit_vector(std::size_t dim) {
        EmbeddingVector v(dim);
        double norm = 0.0;
        while (norm == 0.0) {
            for (double& x : v) {
                x = normal();
            }
            norm = l2_norm(v);
        }
        for (double& x : v) {
            x /= norm;
        }
        return v;
    }

private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace diar
