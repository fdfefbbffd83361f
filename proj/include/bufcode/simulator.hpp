// Monte-Carlo estimation of the decoder error probability under correlated
// Gaussian packet delays with deadline-based erasures.
//
// estimate_delta runs the trials in parallel (OpenMP); estimate_delta_serial
// is the plain-loop reference. Both produce bit-identical results for a given
// config because every trial draws from its own (seed, index)-derived stream
// and the outcome counters are plain integer sums.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bufcode/rng.hpp"

namespace bufcode {

struct SimConfig {
    double sigma = 12.0;        // delay std, message intervals
    double t_delta_norm = 8.0;  // common deadline, message intervals
    double rate = 0.5;          // k/n; k/rate must be an integer
    int k = 5;
    double rho = 0.0;  // pairwise delay correlation, [0,1]
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    std::size_t payload_len = 32;

    int n() const;          // k/rate
    void validate() const;  // throws std::invalid_argument / std::domain_error
};

enum class TrialOutcome { success, erasure_failure, rank_failure };

struct SimResult {
    double delta_hat;  // (failures_erasure + failures_rank) / trials
    double ci_low;     // Wilson 95%
    double ci_high;
    std::int64_t failures_erasure;
    std::int64_t failures_rank;
    std::int64_t trials;
};

struct ConfidenceInterval {
    double low;
    double high;
};

// Wilson score interval at 95% for a binomial proportion.
ConfidenceInterval wilson_interval(std::int64_t failures, std::int64_t trials);

// n jointly Gaussian delays with mean 0, Var = sigma^2, Cov(i!=j) = rho*sigma^2,
// via the compound-symmetry construction sigma*(sqrt(rho)*Z0 + sqrt(1-rho)*Zj).
std::vector<double> sample_delays(int n, double sigma, double rho, SplitMix64& rng);

// One codeword: random block -> encode -> delays -> erase every packet whose
// delay exceeds the common deadline -> decode from the survivors.
TrialOutcome run_trial(const SimConfig& cfg, SplitMix64& rng);

SimResult estimate_delta(const SimConfig& cfg);
SimResult estimate_delta_serial(const SimConfig& cfg);

struct RhoSweepPoint {
    double rho;
    SimResult result;
    double delta_analytic;  // Gaussian-approximation delta; independent of rho
};

std::vector<RhoSweepPoint> sweep_rho(const SimConfig& cfg,
                                     std::span<const double> rho_grid);

}  // namespace bufcode
