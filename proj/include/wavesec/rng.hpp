// rng.hpp - seeded random streams for reproducible Monte Carlo runs
//
// Every trial gets its own stream derived from (master seed, stream id,
// trial index) so results do not depend on execution order or thread
// count. Gaussian variates come from Box-Muller over the raw mt19937_64
// output (the standard distributions are implementation-defined and would
// break cross-platform reproducibility).

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wavesec/core_math.hpp"

namespace wavesec {

// splitmix64-based mixing; (master, stream, substream) -> engine seed
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t substream = 0);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // unbiased integer in [0, bound)
    std::uint64_t uniform_index(std::uint64_t bound);

    // standard normal, Box-Muller (consumes two uniforms per pair)
    double gaussian();

    // circular complex Gaussian CN(0, variance)
    Complex complex_gaussian(double variance);

    // equiprobable 0/1 bits
    std::vector<std::uint8_t> bits(std::size_t count);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace wavesec
