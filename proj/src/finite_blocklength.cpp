#include "bufcode/finite_blocklength.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bufcode/special_functions.hpp"

namespace bufcode {

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::domain_error("epsilon must lie in (0,1)");
    }
}

void check_delta(double delta) {
    // delta = 0.5 is allowed and yields k = 0 (Qinv(0.5) = 0); delta > 0.5
    // would ask for a code worse than guessing.
    if (!(delta > 0.0 && delta <= 0.5)) {
        throw std::domain_error("delta must lie in (0, 0.5]");
    }
}

}  // namespace

double block_size_k(double rate, double epsilon, double delta) {
    check_epsilon(epsilon);
    check_delta(delta);
    if (!(rate > 0.0 && rate < 1.0)) {
        throw std::domain_error("rate must lie in (0,1)");
    }
    const double headroom = 1.0 - epsilon - rate;
    if (!(headroom > 0.0)) {
        throw std::domain_error(
            "infeasible rate: R >= 1 - epsilon (capacity exceeded)");
    }
    const double t = std::sqrt(epsilon * (1.0 - epsilon)) * q_inv(delta) / headroom;
    return rate * t * t;
}

double delta_from_code(double n, double k, double epsilon) {
    if (!(n > 0.0)) {
        throw std::domain_error("delta_from_code: n must be positive");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::domain_error("delta_from_code: degenerate channel (epsilon in {0,1})");
    }
    return q((n * (1.0 - epsilon) - k) / std::sqrt(n * epsilon * (1.0 - epsilon)));
}

double delta_exact_binomial(int n, int k, double epsilon) {
    if (k < 1 || k > n) {
        throw std::invalid_argument("delta_exact_binomial: requires 1 <= k <= n");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::domain_error("delta_exact_binomial: epsilon must lie in [0,1]");
    }
    if (epsilon == 0.0) return 0.0;
    if (epsilon == 1.0) return 1.0;

    // P[X > n-k] = sum_{i=n-k+1}^{n} C(n,i) eps^i (1-eps)^(n-i), accumulated
    // as exp(log-term - max) to keep the sum stable for large n.
    const double log_eps = std::log(epsilon);
    const double log_1m = std::log1p(-epsilon);
    const double lg_n = std::lgamma(n + 1.0);

    const int lo = n - k + 1;
    double max_log = -HUGE_VAL;
    for (int i = lo; i <= n; ++i) {
        const double lt = lg_n - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                          i * log_eps + (n - i) * log_1m;
        max_log = std::max(max_log, lt);
    }
    if (max_log == -HUGE_VAL) return 0.0;
    double acc = 0.0;
    for (int i = lo; i <= n; ++i) {
        const double lt = lg_n - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                          i * log_eps + (n - i) * log_1m;
        acc += std::exp(lt - max_log);
    }
    return std::min(1.0, std::exp(max_log) * acc);
}

CodePlan make_code_plan(double rate, double epsilon, double delta) {
    const double k = block_size_k(rate, epsilon, delta);
    return CodePlan{rate, delta, k, k / rate};
}

}  // namespace bufcode
