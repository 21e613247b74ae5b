#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace heispam {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic RNG wrapper.  Substreams are derived as
/// substream(seed, worker) -> mt19937_64 seeded by splitmix64 applied to
/// seed XOR (worker+1)*phi, so worker streams are independent and the
/// mapping (seed, worker) -> stream is reproducible everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(mix(seed, 0)) {}
    Rng(std::uint64_t seed, std::uint64_t worker) : eng_(mix(seed, worker)) {}

    double uniform() {
        // 53-bit mantissa uniform in [0,1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via the polar method (implementation-independent,
    /// unlike std::normal_distribution).
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

    std::uint64_t raw() { return eng_(); }

  private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t worker) {
        std::uint64_t s = seed ^ ((worker + 1) * 0x9e3779b97f4a7c15ULL);
        return splitmix64(s);
    }
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace heispam
