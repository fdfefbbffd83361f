#include "bufcode/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace bufcode {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

double phi(double x) noexcept {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// Acklam's rational approximation of the standard-normal quantile,
// relative error < 1.15e-9 over (0,1). Used as the seed for Newton.
double norm_quantile_acklam(double p) {
    static constexpr double a[6] = {
        -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
        1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {
        -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
        6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[6] = {
        -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
        -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {
        7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
        3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double r = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
               ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double r = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
               ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
    }
    const double t = p - 0.5;
    const double r = t * t;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * t /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double q(double x) noexcept {
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double q_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("q_inv: p must lie in (0,1)");
    }
    // Q(x) = p  <=>  x = -Phi^{-1}(p); no complement is formed, so the lower
    // tail keeps full relative precision.
    double x = -norm_quantile_acklam(p);
    for (int i = 0; i < 2; ++i) {
        const double dens = phi(x);
        if (dens <= 0.0) break;  // |x| > ~38, seed is already at double limits
        x += (q(x) - p) / dens;
    }
    return x;
}

double q_inv_approx(double p, ApproxConfig cfg) {
    if (!(cfg.u > 0.0)) {
        throw std::invalid_argument("q_inv_approx: u must be positive");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("q_inv_approx: p must lie in (0,1)");
    }
    return std::sqrt(2.0) * std::atanh(1.0 - 2.0 * p) / cfg.u;
}

}  // namespace bufcode
