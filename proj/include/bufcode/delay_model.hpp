// Gaussian packet-delay model: deadline <-> erasure probability mapping and
// the exact / approximated total-delay objectives. All delays here are in
// message-interval units; conversion to seconds lives in the CLI.
#pragma once

#include "bufcode/special_functions.hpp"

namespace bufcode {

struct NetworkModel {
    double mu = 0.0;     // mean network delay, seconds (adds a constant; never enters gamma)
    double sigma = 12.0; // delay standard deviation in message intervals
    double t_s = 1.0;    // message interval, seconds
};

// A buffer/code split chosen through epsilon. gamma = t_delta_norm + k.
struct OperatingPoint {
    double epsilon;       // per-packet erasure probability
    double t_delta_norm;  // relative deadline over t_s (buffer contribution)
    double k;             // block size (code contribution)
    double gamma;         // total normalized system delay
};

struct DelaySplit {
    double buffer;
    double code;
};

// epsilon = Q(t_delta_norm / sigma)
double epsilon_from_deadline(double t_delta_norm, double sigma);

// t_delta_norm = sigma * Qinv(epsilon); negative when epsilon > 0.5.
double deadline_from_epsilon(double epsilon, double sigma);

// gamma(eps) = sigma*Qinv(eps) + k(R, eps, delta)
double gamma_exact(double epsilon, double rate, double delta, double sigma);

// Same objective with the tanh-based inverse in the buffer term.
double gamma_approx(double epsilon, double rate, double delta, double sigma,
                    ApproxConfig cfg = {});

OperatingPoint operating_point(double epsilon, double rate, double delta,
                               double sigma);

DelaySplit split_contributions(const OperatingPoint& p) noexcept;

}  // namespace bufcode
