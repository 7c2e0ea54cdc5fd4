#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace autocd {

// Deterministic random source. All randomness in the library flows through
// this class so that a fixed seed reproduces identical results on every
// platform: the generator is std::mt19937_64 (bit-exact by the standard) and
// every transform below is written out explicitly instead of relying on
// implementation-defined std::*_distribution behavior.
//
// Draw-order contract:
//   uniform01    consumes 1 engine value
//   uniform_int  consumes 1 engine value
//   normal       consumes 2 engine values per generated pair (Box-Muller);
//                pairs are cached, so draws 1,3,5,... consume, 2,4,6,... do not
//   shuffle      consumes size-1 uniform_int draws (Fisher-Yates, back to front)
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    // Independent stream for a named pipeline stage ("afs", "oct", ...).
    static uint64_t substream(uint64_t seed, std::string_view name) {
        uint64_t h = 0xcbf29ce484222325ull; // FNV-1a
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return mix(seed ^ h);
    }

    // SplitMix64 finalizer; also used to derive per-unit seeds (per tree,
    // per bootstrap replicate) from a stream seed and an index.
    static uint64_t mix(uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform on {0,...,n-1}. Modulo reduction; bias < n / 2^64.
    uint64_t uniform_int(uint64_t n) { return engine_() % n; }

    // Standard normal, Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace autocd
