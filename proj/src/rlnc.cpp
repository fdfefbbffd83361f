#include "bufcode/rlnc.hpp"

#include <stdexcept>

#include "bufcode/gf256.hpp"

namespace bufcode {

namespace {

void check_block(const MessageBlock& block) {
    if (block.k < 1 || block.messages.size() != static_cast<std::size_t>(block.k)) {
        throw std::invalid_argument("MessageBlock: need k >= 1 messages");
    }
    for (const auto& m : block.messages) {
        if (m.size() != block.payload_len) {
            throw std::invalid_argument("MessageBlock: unequal payload lengths");
        }
    }
}

// Rows are [coefficients | payload]; elimination runs over the coefficient
// columns only, the payload tags along.
struct EliminationWorkspace {
    std::vector<std::vector<std::uint8_t>> rows;
    int k = 0;
    std::size_t payload_len = 0;

    EliminationWorkspace(std::span<const CodedPacket> received, int k_) : k(k_) {
        rows.reserve(received.size());
        for (const CodedPacket& p : received) {
            if (p.coefficients.size() != static_cast<std::size_t>(k)) {
                throw std::invalid_argument("decode: coefficient dimension mismatch");
            }
            if (rows.empty()) {
                payload_len = p.payload.size();
            } else if (p.payload.size() != payload_len) {
                throw std::invalid_argument("decode: unequal payload lengths");
            }
            std::vector<std::uint8_t> row;
            row.reserve(k + p.payload.size());
            row.insert(row.end(), p.coefficients.begin(), p.coefficients.end());
            row.insert(row.end(), p.payload.begin(), p.payload.end());
            rows.push_back(std::move(row));
        }
    }

    // Gauss-Jordan; returns the rank. On full rank, row i holds
    // [e_i | message_i].
    int reduce() {
        const std::size_t width = k + payload_len;
        int rank = 0;
        for (int col = 0; col < k && rank < static_cast<int>(rows.size()); ++col) {
            int pivot = -1;
            for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
                if (rows[r][col] != 0) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) continue;
            rows[pivot].swap(rows[rank]);

            std::uint8_t* prow = rows[rank].data();
            const std::uint8_t inv = gf_inv(prow[col]);
            const std::uint8_t* inv_row = gf_mul_row(inv);
            for (std::size_t j = col; j < width; ++j) prow[j] = inv_row[prow[j]];

            for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
                if (r == rank || rows[r][col] == 0) continue;
                const std::uint8_t* factor_row = gf_mul_row(rows[r][col]);
                std::uint8_t* target = rows[r].data();
                for (std::size_t j = col; j < width; ++j) {
                    target[j] ^= factor_row[prow[j]];
                }
            }
            ++rank;
        }
        return rank;
    }
};

}  // namespace

MessageBlock random_message_block(int k, std::size_t payload_len, SplitMix64& rng) {
    if (k < 1) throw std::invalid_argument("random_message_block: k >= 1");
    MessageBlock block;
    block.k = k;
    block.payload_len = payload_len;
    block.messages.resize(k);
    for (auto& m : block.messages) {
        m.resize(payload_len);
        for (auto& byte : m) byte = rng.next_byte();
    }
    return block;
}

std::vector<CodedPacket> encode(const MessageBlock& block, int n, SplitMix64& rng) {
    check_block(block);
    if (n < block.k) {
        throw std::invalid_argument("encode: n must be at least k");
    }
    std::vector<CodedPacket> packets(n);
    for (CodedPacket& p : packets) {
        p.coefficients.resize(block.k);
        for (auto& c : p.coefficients) c = rng.next_byte();
        p.payload.assign(block.payload_len, 0);
        for (int i = 0; i < block.k; ++i) {
            const std::uint8_t c = p.coefficients[i];
            if (c == 0) continue;
            const std::uint8_t* row = gf_mul_row(c);
            const std::uint8_t* msg = block.messages[i].data();
            std::uint8_t* out = p.payload.data();
            for (std::size_t j = 0; j < block.payload_len; ++j) out[j] ^= row[msg[j]];
        }
    }
    return packets;
}

DecodeResult decode(std::span<const CodedPacket> received, int k) {
    if (k < 1) throw std::invalid_argument("decode: k >= 1");
    if (received.size() < static_cast<std::size_t>(k)) {
        return DecodeResult{DecodeStatus::insufficient_packets, {}};
    }
    EliminationWorkspace ws(received, k);
    if (ws.reduce() < k) {
        return DecodeResult{DecodeStatus::rank_deficient, {}};
    }
    MessageBlock block;
    block.k = k;
    block.payload_len = ws.payload_len;
    block.messages.resize(k);
    for (int i = 0; i < k; ++i) {
        block.messages[i].assign(ws.rows[i].begin() + k, ws.rows[i].end());
    }
    return DecodeResult{DecodeStatus::ok, std::move(block)};
}

int coefficient_rank(std::span<const CodedPacket> received, int k) {
    if (k < 1) throw std::invalid_argument("coefficient_rank: k >= 1");
    if (received.empty()) return 0;
    EliminationWorkspace ws(received, k);
    return ws.reduce();
}

}  // namespace bufcode
