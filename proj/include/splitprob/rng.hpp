#pragma once

#include <array>
#include <cmath>
#include <cstdint>

// Seedable, splittable RNG stack for the simulators: xoshiro256++ streams
// derived per trial from (seed, trial index) through splitmix64, so results
// are bit-identical no matter how trials are partitioned across workers.
namespace splitprob::mc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Xoshiro256pp {
public:
    Xoshiro256pp() : Xoshiro256pp(0x853C49E6748FEA9BULL) {}

    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    // Independent substream for one trial.
    static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t trial_index) {
        std::uint64_t sm = trial_index;
        return Xoshiro256pp(seed ^ splitmix64(sm));
    }

    std::uint64_t operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

    // uniform in (-1, 1)
    double uniform_sym() { return double(std::int64_t((*this)()) >> 10) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> s_{};
};

// 128-layer ziggurat for the standard normal (Marsaglia-Tsang layout with a
// float-comparison wedge test and the classic exponential tail sampler).
class ZigguratNormal {
public:
    ZigguratNormal() {
        // x_[0] = R down to x_[127] ~ 0; the (R, V) pair closes the
        // equal-area recurrence after exactly 128 entries.
        x_[0] = kR;
        f_[0] = pdf(kR);
        for (int i = 1; i < 128; ++i) {
            x_[i] = std::sqrt(-2.0 * std::log(kV / x_[i - 1] + pdf(x_[i - 1])));
            f_[i] = pdf(x_[i]);
        }
        base_width_ = kV / f_[0];  // base layer: rectangle [0, R] plus the tail
        ratio_[0] = kR / base_width_;
        for (int i = 1; i < 128; ++i) ratio_[i] = x_[i] / x_[i - 1];
    }

    template <class Rng>
    double operator()(Rng& rng) const {
        for (;;) {
            const std::uint64_t bits = rng();
            const int layer = int((bits >> 3) & 127);
            const double u = double(std::int64_t(bits) >> 10) * 0x1.0p-53;  // (-1, 1)
            if (layer == 0) {
                if (std::fabs(u) < ratio_[0]) return u * base_width_;
                return tail(rng, u > 0.0);
            }
            // strip `layer`: width x_[layer-1], heights [f_[layer-1], f_[layer]]
            const double x = u * x_[layer - 1];
            if (std::fabs(u) < ratio_[layer]) return x;  // inside the inner rectangle
            const double f = f_[layer - 1] + rng.uniform() * (f_[layer] - f_[layer - 1]);
            if (f < pdf(x)) return x;
        }
    }

private:
    static constexpr double kR = 3.442619855899;
    static constexpr double kV = 9.91256303526217e-3;

    static double pdf(double x) { return std::exp(-0.5 * x * x); }

    template <class Rng>
    static double tail(Rng& rng, bool positive) {
        double x, y;
        do {
            x = -std::log(1.0 - rng.uniform()) / kR;
            y = -std::log(1.0 - rng.uniform());
        } while (2.0 * y < x * x);
        return positive ? kR + x : -(kR + x);
    }

    std::array<double, 128> x_;
    std::array<double, 128> f_;
    std::array<double, 128> ratio_;
    double base_width_ = 0.0;
};

// Process-wide immutable tables.
inline const ZigguratNormal& ziggurat() {
    static const ZigguratNormal z;
    return z;
}

}  // namespace splitprob::mc
