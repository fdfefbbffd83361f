// Deterministic splitmix64 streams. A trial's stream depends only on
// (seed, index), so work can be scheduled in any order, on any number of
// threads, and still reproduce byte-identical results.
#pragma once

#include <cstdint>

#include "bufcode/special_functions.hpp"

namespace bufcode {

class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Strictly inside (0,1): 53-bit mantissa offset by half an ulp.
    double uniform01() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Inverse-CDF transform; exact distribution, identical on every platform.
    double standard_normal() { return q_inv(uniform01()); }

    std::uint8_t next_byte() noexcept {
        if (byte_count_ == 0) {
            byte_buf_ = next();
            byte_count_ = 8;
        }
        const std::uint8_t b = static_cast<std::uint8_t>(byte_buf_);
        byte_buf_ >>= 8;
        --byte_count_;
        return b;
    }

   private:
    std::uint64_t state_;
    std::uint64_t byte_buf_ = 0;
    int byte_count_ = 0;
};

// splitmix64 finalizer over the (seed, index) pair.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace bufcode
