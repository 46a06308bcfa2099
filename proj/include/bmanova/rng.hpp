#pragma once

// Seeded, stream-splittable random variates. All distributions are generated
// from explicit uniform bits so that a (seed, stream_id) pair reproduces the
// same sequence on any platform.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bmanova {

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id),
                          static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
        eng_.seed(seq);
    }

    // uniform on (0,1), 53-bit resolution, never exactly 0 or 1
    double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    // standard normal, Marsaglia polar method with cached spare
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Gamma(shape, scale 1) by Marsaglia-Tsang, with the U^{1/a} boost for shape < 1.
    double gamma(double shape) { return std::exp(log_gamma(shape)); }

    // ln of a Gamma(shape, scale 1) variate. For small shapes the variate
    // itself underflows double range (mass below 1e-308 is not negligible),
    // so the boost factor U^{1/a} is applied in log space.
    double log_gamma(double shape) {
        if (!(shape > 0.0)) throw std::invalid_argument("RngStream::gamma: shape must be > 0");
        if (shape < 1.0)
            return log_gamma(shape + 1.0) + std::log(uniform()) / shape;
        return std::log(gamma_at_least_one(shape));
    }

private:
    // Marsaglia-Tsang core, valid for shape >= 1.
    double gamma_at_least_one(double shape) {
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

public:
    // chi variate with real dof > 0: sqrt of Gamma(dof/2, scale 2), computed
    // in log space so tiny-dof draws stay positive instead of underflowing.
    double chi(double dof) {
        if (!(dof > 0.0)) throw std::invalid_argument("RngStream::chi: dof must be > 0");
        return std::exp(0.5 * (std::numbers::ln2 + log_gamma(0.5 * dof)));
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline double chi_sample(double dof, RngStream& rng) { return rng.chi(dof); }

}  // namespace bmanova
