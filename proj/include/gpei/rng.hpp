#ifndef GPEI_RNG_HPP
#define GPEI_RNG_HPP

#include <cstdint>
#include <random>

namespace gpei {

/// SplitMix64 finaliser; used to derive substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of substream `index` of a base seed: base ^ splitmix64(index).
std::uint64_t substream_seed(std::uint64_t base, std::uint64_t index);

/// Reproducible generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the uniform and normal transforms are
/// implemented here because the standard distributions are not portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer on [0, n), rejection-sampled (no modulo bias).
    std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal via the Marsaglia polar method.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace gpei

#endif  // GPEI_RNG_HPP
