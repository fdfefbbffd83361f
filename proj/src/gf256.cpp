#include "bufcode/gf256.hpp"

#include <array>
#include <stdexcept>

namespace bufcode {

namespace {

struct Tables {
    std::array<std::uint8_t, 256> log{};
    std::array<std::uint8_t, 512> alog{};  // doubled so log sums need no modulo
    std::array<std::array<std::uint8_t, 256>, 256> mul{};

    Tables() {
        unsigned b = 1;
        for (unsigned i = 0; i < 255; ++i) {
            alog[i] = static_cast<std::uint8_t>(b);
            log[b] = static_cast<std::uint8_t>(i);
            b <<= 1;
            if (b & 0x100) b ^= kGfReductionPoly;
        }
        for (unsigned i = 255; i < 512; ++i) alog[i] = alog[i - 255];

        for (unsigned x = 1; x < 256; ++x) {
            for (unsigned y = 1; y < 256; ++y) {
                mul[x][y] = alog[log[x] + log[y]];
            }
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) noexcept {
    return tables().mul[a][b];
}

std::uint8_t gf_inv(std::uint8_t a) {
    if (a == 0) throw std::domain_error("gf_inv: zero has no inverse");
    const Tables& t = tables();
    return t.alog[255 - t.log[a]];
}

std::uint8_t gf_div(std::uint8_t a, std::uint8_t b) {
    if (b == 0) throw std::domain_error("gf_div: division by zero");
    if (a == 0) return 0;
    const Tables& t = tables();
    return t.alog[t.log[a] + 255 - t.log[b]];
}

const std::uint8_t* gf_mul_row(std::uint8_t a) noexcept {
    return tables().mul[a].data();
}

}  // namespace bufcode
