#ifndef HOIP_RNG_HPP
#define HOIP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace hoip {

// Derive an independent stream seed from (master, index). splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled draws. std::uniform_*_distribution is
// implementation-defined, which would break byte-identical outputs across
// standard libraries; these primitives are pinned.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, n). Lemire multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        while (true) {
            std::uint64_t x = eng_();
            __uint128_t m = static_cast<__uint128_t>(x) * n;
            std::uint64_t lo = static_cast<std::uint64_t>(m);
            if (lo >= n) return static_cast<std::uint64_t>(m >> 64);
            std::uint64_t threshold = (0 - n) % n;
            if (lo >= threshold) return static_cast<std::uint64_t>(m >> 64);
        }
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Standard normal via Box-Muller, caching the paired draw.
    double normal() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        cache_ = r * std::sin(theta);
        has_cache_ = true;
        return r * std::cos(theta);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
    double cache_ = 0.0;
    bool has_cache_ = false;
};

}  // namespace hoip

#endif
