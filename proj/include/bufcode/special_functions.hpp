// Standard-normal tail function Q, its exact inverse, and the tanh-based
// closed-form approximation of the inverse used by the delay optimizer.
#pragma once

namespace bufcode {

// Scale constant of the tanh-based inverse. The default balances accuracy
// against range of validity; with u = 1.2028 the absolute error against the
// exact inverse stays below 0.05 for p in [0.067, 0.933] (measured).
struct ApproxConfig {
    double u = 1.2028;
};

// Complementary standard-normal CDF. Saturates to 0 for x > ~37.7 and to 1
// for x < ~-37.7 (erfc underflow); strictly decreasing elsewhere.
double q(double x) noexcept;

// Exact inverse of q on (0,1): q(q_inv(p)) == p to better than 1e-10
// relative. Throws std::domain_error outside (0,1).
double q_inv(double p);

// sqrt(2) * atanh(1 - 2p) / u. Antisymmetric about p = 0.5.
// Throws std::domain_error for p outside (0,1) and std::invalid_argument
// for non-positive u.
double q_inv_approx(double p, ApproxConfig cfg = {});

}  // namespace bufcode
