#pragma once

#include <cstdint>
#include <random>

namespace enthash {

// Deterministic RNG wrapper. mt19937_64 has a standard-mandated output
// sequence, so seeded runs reproduce byte-identically across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1): top 53 bits of one engine draw.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound); bound must be nonzero. The modulo bias
    // is below 2^-53 for every bound used here and keeps draws-per-call
    // constant, which the reproducibility tests rely on.
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t raw() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

// Derive an independent stream seed from a master seed (splitmix64 step).
// Per-trial seeds make results independent of thread count and schedule.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace enthash
