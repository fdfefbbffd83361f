// Finite-blocklength relations for a packet erasure code: block size needed
// for a target decoder error probability, the inverse map, and an exact
// binomial-tail oracle for cross-checking the Gaussian approximation.
#pragma once

namespace bufcode {

// Rate-R erasure code plan. k is real-valued in the analysis; rounding to
// whole packets happens only at the simulator boundary.
struct CodePlan {
    double rate;   // k/n, in (0,1)
    double delta;  // decoder error probability target, in (0,1)
    double k;      // block size in messages
    double n;      // codeword length, k/rate
};

// Block size k such that a rate-R code reaches decoder error probability
// delta on an erasure channel with per-packet erasure probability epsilon:
//   k = R * (sqrt(eps(1-eps)) * Qinv(delta) / (1 - eps - R))^2.
// Requires 0 < R < 1-epsilon (capacity), 0 < epsilon < 1, 0 < delta <= 0.5.
double block_size_k(double rate, double epsilon, double delta);

// Decoder error probability of an (n,k) code under the Gaussian
// approximation of the erasure count:
//   delta = Q((n(1-eps) - k) / sqrt(n eps (1-eps))).
double delta_from_code(double n, double k, double epsilon);

// Exact P[#erasures > n-k] for i.i.d. Bernoulli(epsilon) erasures, summed in
// log space (stable up to n ~ 1e4 and delta down to ~1e-300).
double delta_exact_binomial(int n, int k, double epsilon);

CodePlan make_code_plan(double rate, double epsilon, double delta);

}  // namespace bufcode
