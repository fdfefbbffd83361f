// GF(2^8) arithmetic over the reduction polynomial 0x11D, table-backed.
#pragma once

#include <cstdint>

namespace bufcode {

inline constexpr unsigned kGfReductionPoly = 0x11D;  // x^8+x^4+x^3+x^2+1

std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) noexcept;
std::uint8_t gf_inv(std::uint8_t a);                   // throws on a == 0
std::uint8_t gf_div(std::uint8_t a, std::uint8_t b);   // throws on b == 0

// 256-entry row of products a*x for the row operations in the decoder.
const std::uint8_t* gf_mul_row(std::uint8_t a) noexcept;

}  // namespace bufcode
