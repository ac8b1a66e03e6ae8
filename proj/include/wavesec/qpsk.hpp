// qpsk.hpp - Gray-mapped unit-power QPSK
//
// (b0, b1) -> ((1-2*b0) + j*(1-2*b1)) / sqrt(2); hard decisions take
// nonnegative real/imag as bit 0 (ties included).

#pragma once

#include <cstdint>
#include <vector>

#include "wavesec/core_math.hpp"

namespace wavesec {

ComplexVector qpsk_map(const std::vector<std::uint8_t>& bits); // rejects odd length
std::vector<std::uint8_t> qpsk_demap(const ComplexVector& symbols);

std::size_t count_bit_errors(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

} // namespace wavesec
