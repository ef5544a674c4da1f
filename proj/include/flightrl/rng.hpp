#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace flightrl {

// FNV-1a, used to derive child seeds and to fingerprint configs.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Deterministic random stream. All randomness in the library flows from a
/// master seed through named substreams so runs are reproducible end to end.
/// Uniform/normal draws are built from raw 64-bit output rather than the
/// standard-library distributions, whose sequences vary between library
/// implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Child stream for (name, index), independent of draws made on this one.
    static Rng substream(std::uint64_t master_seed, std::string_view name, std::uint64_t index = 0) {
        std::uint64_t h = fnv1a(name);
        h ^= master_seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= index * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull;
        return Rng(h);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Symmetric uniform in [-half_span, half_span].
    double uniform_symmetric(double half_span) { return uniform(-half_span, half_span); }

    /// Standard normal via Box-Muller (pairwise, cached spare).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace flightrl
