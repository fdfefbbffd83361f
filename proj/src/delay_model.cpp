#include "bufcode/delay_model.hpp"

#include <stdexcept>

#include "bufcode/finite_blocklength.hpp"

namespace bufcode {

namespace {

void check_sigma(double sigma) {
    if (!(sigma > 0.0)) {
        throw std::domain_error("sigma must be positive");
    }
}

}  // namespace

double epsilon_from_deadline(double t_delta_norm, double sigma) {
    check_sigma(sigma);
    return q(t_delta_norm / sigma);
}

double deadline_from_epsilon(double epsilon, double sigma) {
    check_sigma(sigma);
    return sigma * q_inv(epsilon);
}

double gamma_exact(double epsilon, double rate, double delta, double sigma) {
    check_sigma(sigma);
    return sigma * q_inv(epsilon) + block_size_k(rate, epsilon, delta);
}

double gamma_approx(double epsilon, double rate, double delta, double sigma,
                    ApproxConfig cfg) {
    check_sigma(sigma);
    return sigma * q_inv_approx(epsilon, cfg) + block_size_k(rate, epsilon, delta);
}

OperatingPoint operating_point(double epsilon, double rate, double delta,
                               double sigma) {
    const double t = deadline_from_epsilon(epsilon, sigma);
    const double k = block_size_k(rate, epsilon, delta);
    return OperatingPoint{epsilon, t, k, t + k};
}

DelaySplit split_contributions(const OperatingPoint& p) noexcept {
    return DelaySplit{p.t_delta_norm, p.k};
}

}  // namespace bufcode
