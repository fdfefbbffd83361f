#include "bufcode/simulator.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "bufcode/delay_model.hpp"
#include "bufcode/finite_blocklength.hpp"
#include "bufcode/rlnc.hpp"

namespace bufcode {

int SimConfig::n() const {
    const double exact = static_cast<double>(k) / rate;
    const int rounded = static_cast<int>(std::lround(exact));
    if (std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact)) {
        throw std::invalid_argument("SimConfig: k/rate must be an integer");
    }
    return rounded;
}

void SimConfig::validate() const {
    if (!(sigma > 0.0)) throw std::domain_error("SimConfig: sigma must be positive");
    if (!(rate > 0.0 && rate < 1.0)) {
        throw std::domain_error("SimConfig: rate must lie in (0,1)");
    }
    if (k < 1) throw std::invalid_argument("SimConfig: k >= 1");
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::domain_error("SimConfig: rho must lie in [0,1]");
    }
    if (trials < 1) throw std::invalid_argument("SimConfig: trials >= 1");
    if (payload_len < 1) throw std::invalid_argument("SimConfig: payload_len >= 1");
    (void)n();
}

ConfidenceInterval wilson_interval(std::int64_t failures, std::int64_t trials) {
    if (trials < 1 || failures < 0 || failures > trials) {
        throw std::invalid_argument("wilson_interval: need 0 <= failures <= trials");
    }
    constexpr double z = 1.959963984540054;  // 97.5th standard-normal percentile
    const double nt = static_cast<double>(trials);
    const double ph = static_cast<double>(failures) / nt;
    const double z2n = z * z / nt;
    const double denom = 1.0 + z2n;
    const double center = (ph + z2n / 2.0) / denom;
    const double half =
        z * std::sqrt(ph * (1.0 - ph) / nt + z2n / (4.0 * nt)) / denom;
    return ConfidenceInterval{center - half, center + half};
}

std::vector<double> sample_delays(int n, double sigma, double rho, SplitMix64& rng) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::domain_error("sample_delays: rho must lie in [0,1]");
    }
    if (!(sigma > 0.0)) throw std::domain_error("sample_delays: sigma must be positive");
    const double common = std::sqrt(rho) * rng.standard_normal();
    const double own_scale = std::sqrt(1.0 - rho);
    std::vector<double> delays(n);
    for (double& d : delays) {
        d = sigma * (common + own_scale * rng.standard_normal());
    }
    return delays;
}

TrialOutcome run_trial(const SimConfig& cfg, SplitMix64& rng) {
    const int n = cfg.n();
    const MessageBlock block = random_message_block(cfg.k, cfg.payload_len, rng);
    const std::vector<CodedPacket> packets = encode(block, n, rng);
    const std::vector<double> delays = sample_delays(n, cfg.sigma, cfg.rho, rng);

    std::vector<CodedPacket> survivors;
    survivors.reserve(n);
    for (int j = 0; j < n; ++j) {
        if (delays[j] <= cfg.t_delta_norm) survivors.push_back(packets[j]);
    }
    if (survivors.size() < static_cast<std::size_t>(cfg.k)) {
        return TrialOutcome::erasure_failure;
    }
    const DecodeResult dec = decode(survivors, cfg.k);
    if (dec.status != DecodeStatus::ok) return TrialOutcome::rank_failure;
    for (int i = 0; i < cfg.k; ++i) {
        if (std::memcmp(dec.block.messages[i].data(), block.messages[i].data(),
                        cfg.payload_len) != 0) {
            throw std::logic_error("run_trial: decoded payload mismatch");
        }
    }
    return TrialOutcome::success;
}

namespace {

SimResult tally(const SimConfig& cfg, std::int64_t erasure, std::int64_t rank) {
    const std::int64_t failures = erasure + rank;
    const ConfidenceInterval ci = wilson_interval(failures, cfg.trials);
    return SimResult{static_cast<double>(failures) / static_cast<double>(cfg.trials),
                     ci.low, ci.high, erasure, rank, cfg.trials};
}

}  // namespace

SimResult estimate_delta(const SimConfig& cfg) {
    cfg.validate();
    std::int64_t erasure = 0, rank = 0;
    bool corrupt = false;

#pragma omp parallel for reduction(+ : erasure, rank) reduction(|| : corrupt) \
    schedule(static)
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        SplitMix64 rng(derive_stream(cfg.seed, static_cast<std::uint64_t>(t)));
        try {
            switch (run_trial(cfg, rng)) {
                case TrialOutcome::erasure_failure: ++erasure; break;
                case TrialOutcome::rank_failure: ++rank; break;
                case TrialOutcome::success: break;
            }
        } catch (const std::logic_error&) {
            corrupt = true;
        }
    }
    if (corrupt) throw std::logic_error("estimate_delta: decoded payload mismatch");
    return tally(cfg, erasure, rank);
}

SimResult estimate_delta_serial(const SimConfig& cfg) {
    cfg.validate();
    std::int64_t erasure = 0, rank = 0;
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        SplitMix64 rng(derive_stream(cfg.seed, static_cast<std::uint64_t>(t)));
        switch (run_trial(cfg, rng)) {
            case TrialOutcome::erasure_failure: ++erasure; break;
            case TrialOutcome::rank_failure: ++rank; break;
            case TrialOutcome::success: break;
        }
    }
    return tally(cfg, erasure, rank);
}

std::vector<RhoSweepPoint> sweep_rho(const SimConfig& cfg,
                                     std::span<const double> rho_grid) {
    cfg.validate();
    const double epsilon = epsilon_from_deadline(cfg.t_delta_norm, cfg.sigma);
    const double analytic =
        delta_from_code(static_cast<double>(cfg.n()), static_cast<double>(cfg.k),
                        epsilon);
    std::vector<RhoSweepPoint> table;
    table.reserve(rho_grid.size());
    for (double rho : rho_grid) {
        SimConfig point = cfg;
        point.rho = rho;
        table.push_back(RhoSweepPoint{rho, estimate_delta(point), analytic});
    }
    return table;
}

}  // namespace bufcode
