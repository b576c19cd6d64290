#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace gazeaug {

// Seeded random source with portable derived distributions. The standard
// distributions are implementation-defined, so sampling is done by hand to
// keep outputs bit-stable across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t nextU64() { return engine_(); }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % n;
    }

    int intIn(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform double in [0, 1) with 53-bit resolution.
    double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double realIn(double lo, double hi) { return lo + (hi - lo) * real01(); }

    // Box-Muller, spare value cached.
    double gaussian(double mean = 0.0, double stddev = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = 1.0 - real01(); // avoid log(0)
        double u2 = real01();
        double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        has_spare_ = true;
        return mean + stddev * mag * std::cos(2.0 * M_PI * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// FNV-1a, used to derive per-snippet seeds from string ids.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace gazeaug
