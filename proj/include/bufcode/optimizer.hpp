// Delay-optimal erasure probability: closed form through the cubic
// stationarity condition of the approximated objective, and a derivative-free
// Nelder-Mead minimizer of the exact objective as the cross-check.
#pragma once

#include <stdexcept>
#include <vector>

#include "bufcode/delay_model.hpp"

namespace bufcode {

// Coefficients of a*eps^3 + b*eps^2 + c*eps + d = 0.
struct CubicCoefficients {
    double a, b, c, d;
};

enum class OptimizeMethod { closed_form, numeric };

struct OptimumResult {
    double epsilon_star;
    double gamma_star;  // approximated objective for closed_form, exact for numeric
    OperatingPoint point;
    OptimizeMethod method;
};

// The in-interval root count disagrees with the single-minimum guarantee;
// signals numerical pathology in the inputs.
struct RootSelectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, OptimumResult best_so_far)
        : std::runtime_error(what), best(best_so_far) {}
    OptimumResult best;
};

// Stationarity cubic of the approximated objective. Valid for
// 0 < R <= 0.5, 0 < delta < 0.5, sigma > 0, u > 0.
CubicCoefficients cubic_coefficients(double rate, double delta, double sigma,
                                     ApproxConfig cfg = {});

// All real roots, ascending. Trigonometric branch for three real roots,
// Cardano otherwise; quadratic/linear fallback when the leading coefficient
// degenerates.
std::vector<double> cubic_real_roots(const CubicCoefficients& c);

// The unique real root in [lo, hi]; near-duplicate roots are collapsed to
// the one with the smallest polynomial residual. Throws RootSelectionError
// when zero or several distinct roots lie inside.
double solve_cubic_in_interval(const CubicCoefficients& c, double lo, double hi);

// First and second derivatives of the approximated objective in epsilon.
// Both blow up toward the interval boundaries; defined on 0 < eps < 1-R.
double gamma_approx_derivative(double epsilon, double rate, double delta,
                               double sigma, ApproxConfig cfg = {});
double gamma_approx_second_derivative(double epsilon, double rate, double delta,
                                      double sigma, ApproxConfig cfg = {});

// Minimizer of the approximated objective via the cubic, Newton-polished on
// the derivative. Requires 0 < R <= 0.5, 0 < delta < 0.5.
OptimumResult optimal_epsilon_closed_form(double rate, double delta, double sigma,
                                          ApproxConfig cfg = {});

// Nelder-Mead on the exact objective over (1e-9, 1-R-1e-9). Deterministic.
// R > 0.5 is accepted here (the convexity guarantees only cover R <= 0.5;
// callers that care should warn).
OptimumResult optimal_epsilon_numeric(double rate, double delta, double sigma);

}  // namespace bufcode
