// Random linear code over GF(2^8): every coded packet carries a fresh random
// coefficient vector; decoding is Gaussian elimination over the received set.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bufcode/rng.hpp"

namespace bufcode {

struct MessageBlock {
    int k = 0;
    std::size_t payload_len = 0;
    std::vector<std::vector<std::uint8_t>> messages;  // k rows of payload_len
};

struct CodedPacket {
    std::vector<std::uint8_t> coefficients;  // k entries
    std::vector<std::uint8_t> payload;       // payload_len entries
};

enum class DecodeStatus { ok, insufficient_packets, rank_deficient };

struct DecodeResult {
    DecodeStatus status;
    MessageBlock block;  // valid only when status == ok
};

MessageBlock random_message_block(int k, std::size_t payload_len, SplitMix64& rng);

// n coded packets with coefficients drawn uniformly from GF(2^8)^k.
// Throws std::invalid_argument when n < k.
std::vector<CodedPacket> encode(const MessageBlock& block, int n, SplitMix64& rng);

// Succeeds iff the received coefficient matrix has rank k; recovered
// messages are byte-exact.
DecodeResult decode(std::span<const CodedPacket> received, int k);

// Rank of the received coefficient matrix (<= k).
int coefficient_rank(std::span<const CodedPacket> received, int k);

}  // namespace bufcode
