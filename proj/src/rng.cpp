#include "wavesec/rng.hpp"

#include <cmath>
#include <numbers>

namespace wavesec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t substream) {
    std::uint64_t x = splitmix64(master);
    x = splitmix64(x ^ (0x9E3779B97F4A7C15ull * (stream + 1)));
    x = splitmix64(x ^ (0xC2B2AE3D27D4EB4Full * (substream + 1)));
    return x;
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
    if (bound == 0) return 0;
    // rejection sampling over the top multiple of bound
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] so the log is finite
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Complex Rng::complex_gaussian(double variance) {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1) * variance);
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

std::vector<std::uint8_t> Rng::bits(std::size_t count) {
    std::vector<std::uint8_t> out(count);
    std::uint64_t word = 0;
    std::size_t left = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (left == 0) {
            word = next_u64();
            left = 64;
        }
        out[i] = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
        --left;
    }
    return out;
}

} // namespace wavesec
