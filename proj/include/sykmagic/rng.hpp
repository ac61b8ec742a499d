#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sykmagic {

// Identifier for the generator + transform stack below. Stored in model
// metadata so disorder ensembles can be reproduced bit-for-bit elsewhere.
inline constexpr const char* kPrngId = "mt19937_64+splitmix64+boxmuller/v1";

// SplitMix64 mixing step (Steele, Lea, Flood 2014). Used both as a stream
// hash for seed derivation and to expand a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives a child seed from a master seed and up to three salts. Independent
// of evaluation order and worker count: the result depends only on the
// arguments.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(master ^ 0x8f1bbcdcbfa53e0bULL);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    s = splitmix64(s ^ c);
    return s;
}

// Seeded generator with a fully documented output stream. mt19937_64 is
// specified exactly by the standard; the uniform and Gaussian transforms are
// written out here instead of using std::*_distribution, whose streams are
// implementation-defined and would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1), 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Rejection-free modulo is fine here: n is
    // always tiny (site counts, operator sets) so the bias is < 2^-59.
    std::uint64_t uniform_int(std::uint64_t n) { return engine_() % n; }

    // Standard normal via Box-Muller, cosine branch only. Consumes exactly
    // two engine outputs per call; no cached state. u1 lands in (0, 1] so
    // the log is always finite.
    double gaussian() {
        double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace sykmagic
