#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace dfp {

/// Deterministic RNG with named sub-streams.
///
/// All randomness in a run flows from one root seed; independent
/// components (threshold tie-breaking, random projections, CV shuffles)
/// draw from sub-streams keyed by name so that adding draws to one
/// component never perturbs another. Sampling helpers avoid
/// std::uniform_int_distribution, whose output is implementation
/// defined; mt19937_64 itself is fully specified by the standard.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    Rng(std::uint64_t seed, std::string_view stream)
        : engine_(mix(seed, fnv1a(stream))) {}

    Rng(std::uint64_t seed, std::string_view stream, std::uint64_t index)
        : engine_(mix(mix(seed, fnv1a(stream)), index)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform draw from [0, bound) by rejection; bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform double in [0, 1).
    double unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    /// k distinct values from [0, n), in selection order.
    std::vector<std::uint32_t> sample_without_replacement(std::uint64_t n,
                                                          std::uint64_t k);

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }

  private:
    // splitmix64 finalizer; decorrelates (seed, stream, index) triples.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

inline std::vector<std::uint32_t> Rng::sample_without_replacement(
    std::uint64_t n, std::uint64_t k) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> out;
    out.reserve(k);
    for (std::uint64_t i = 0; i < k && i < n; ++i) {
        const std::uint64_t j = i + below(n - i);
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

}  // namespace dfp
