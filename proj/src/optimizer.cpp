#include "bufcode/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bufcode/finite_blocklength.hpp"

namespace bufcode {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kEpsMin = 1e-9;

double poly_eval(const CubicCoefficients& c, double x) {
    return ((c.a * x + c.b) * x + c.c) * x + c.d;
}

double poly_deriv(const CubicCoefficients& c, double x) {
    return (3.0 * c.a * x + 2.0 * c.b) * x + c.c;
}

// A couple of Newton steps to tighten a root estimate; bails out when the
// local derivative vanishes (multiple root).
double polish_root(const CubicCoefficients& c, double x) {
    for (int i = 0; i < 3; ++i) {
        const double d = poly_deriv(c, x);
        if (d == 0.0) break;
        const double step = poly_eval(c, x) / d;
        x -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

void check_optimizer_inputs(double rate, double delta, double sigma, double u,
                            bool closed_form) {
    if (closed_form) {
        if (!(rate > 0.0 && rate <= 0.5)) {
            throw std::domain_error("closed form requires 0 < R <= 0.5");
        }
        if (!(delta > 0.0 && delta < 0.5)) {
            throw std::domain_error("closed form requires 0 < delta < 0.5");
        }
    } else {
        if (!(rate > 0.0 && rate < 1.0)) {
            throw std::domain_error("rate must lie in (0,1)");
        }
        if (!(delta > 0.0 && delta <= 0.5)) {
            throw std::domain_error("delta must lie in (0, 0.5]");
        }
    }
    if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");
    if (!(u > 0.0)) throw std::invalid_argument("u must be positive");
}

}  // namespace

CubicCoefficients cubic_coefficients(double rate, double delta, double sigma,
                                     ApproxConfig cfg) {
    check_optimizer_inputs(rate, delta, sigma, cfg.u, /*closed_form=*/true);
    const double R = rate;
    const double u = cfg.u;
    const double qd = q_inv(delta);
    const double Q2 = qd * qd;
    const double s2s = kSqrt2 * sigma;

    CubicCoefficients c;
    c.a = -2.0 * R * Q2 * u * (2.0 * R - 1.0) + s2s;
    c.b = 2.0 * R * Q2 * u * (2.0 * R - 1.0) - 2.0 * R * Q2 * u * (1.0 - R) +
          s2s * (3.0 * R - 3.0);
    c.c = 2.0 * R * Q2 * u * (1.0 - R) +
          s2s * ((R - 1.0) * (2.0 * R - 2.0) + (R - 1.0) * (R - 1.0));
    c.d = s2s * (R - 1.0) * (R - 1.0) * (R - 1.0);
    return c;
}

std::vector<double> cubic_real_roots(const CubicCoefficients& c) {
    const double scale =
        std::max({std::abs(c.a), std::abs(c.b), std::abs(c.c), std::abs(c.d)});
    std::vector<double> roots;

    if (scale == 0.0) return roots;  // identically zero; no isolated roots

    if (std::abs(c.a) < 1e-14 * scale) {
        if (std::abs(c.b) < 1e-14 * scale) {
            if (std::abs(c.c) >= 1e-14 * scale) roots.push_back(-c.d / c.c);
            return roots;
        }
        // quadratic, stable form
        const double disc = c.c * c.c - 4.0 * c.b * c.d;
        if (disc < 0.0) return roots;
        const double sq = std::sqrt(disc);
        const double w = -0.5 * (c.c + std::copysign(sq, c.c));
        if (w != 0.0) {
            roots.push_back(w / c.b);
            roots.push_back(c.d / w);
        } else {
            roots.push_back(0.0);
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    // depressed form t^3 + pt + q with eps = t - b/(3a)
    const double b = c.b / c.a, cc = c.c / c.a, d = c.d / c.a;
    const double shift = b / 3.0;
    const double p = cc - b * b / 3.0;
    const double qq = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
    const double disc = qq * qq / 4.0 + p * p * p / 27.0;

    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double t = std::cbrt(-qq / 2.0 + sq) + std::cbrt(-qq / 2.0 - sq);
        roots.push_back(t - shift);
    } else if (p == 0.0) {
        roots.push_back(std::cbrt(-qq) - shift);  // triple root
    } else {
        // three real roots
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * qq / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) -
                            shift);
        }
    }
    for (double& r : roots) r = polish_root(c, r);
    std::sort(roots.begin(), roots.end());
    return roots;
}

double solve_cubic_in_interval(const CubicCoefficients& c, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("solve_cubic_in_interval: lo >= hi");

    const double span = hi - lo;
    const double edge_tol = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    std::vector<double> inside;
    for (double r : cubic_real_roots(c)) {
        if (r >= lo - edge_tol && r <= hi + edge_tol) {
            inside.push_back(std::clamp(r, lo, hi));
        }
    }
    if (inside.empty()) {
        throw RootSelectionError("no real root in the requested interval");
    }

    // Collapse near-duplicates (numerical splitting of one analytic root),
    // keeping the representative with the smallest residual.
    std::vector<double> distinct;
    const double cluster_tol = 1e-7 * span;
    for (double r : inside) {
        if (!distinct.empty() && std::abs(r - distinct.back()) <= cluster_tol) {
            if (std::abs(poly_eval(c, r)) < std::abs(poly_eval(c, distinct.back()))) {
                distinct.back() = r;
            }
        } else {
            distinct.push_back(r);
        }
    }
    if (distinct.size() > 1) {
        throw RootSelectionError("multiple distinct roots in the requested interval");
    }
    return distinct.front();
}

double gamma_approx_derivative(double epsilon, double rate, double delta,
                               double sigma, ApproxConfig cfg) {
    check_optimizer_inputs(rate, delta, sigma, cfg.u, /*closed_form=*/false);
    if (!(epsilon > 0.0 && epsilon < 1.0 - rate)) {
        throw std::domain_error("derivative defined on 0 < eps < 1-R");
    }
    const double qd = q_inv(delta);
    const double Q2 = qd * qd;
    const double R = rate, e = epsilon;
    return sigma / (kSqrt2 * cfg.u * (e - 1.0) * e) -
           Q2 * R * (R * (2.0 * e - 1.0) - e + 1.0) /
               ((R + e - 1.0) * (R + e - 1.0) * (R + e - 1.0));
}

double gamma_approx_second_derivative(double epsilon, double rate, double delta,
                                      double sigma, ApproxConfig cfg) {
    check_optimizer_inputs(rate, delta, sigma, cfg.u, /*closed_form=*/false);
    if (!(epsilon > 0.0 && epsilon < 1.0 - rate)) {
        throw std::domain_error("second derivative defined on 0 < eps < 1-R");
    }
    const double qd = q_inv(delta);
    const double Q2 = qd * qd;
    const double R = rate, e = epsilon;
    const double w = R + e - 1.0;
    const double em1 = e - 1.0;
    return 2.0 * Q2 * R * ((2.0 * R - 1.0) * e - R * R + 1.0) / (w * w * w * w) +
           sigma * (1.0 - 2.0 * e) / (kSqrt2 * cfg.u * em1 * em1 * e * e);
}

OptimumResult optimal_epsilon_closed_form(double rate, double delta, double sigma,
                                          ApproxConfig cfg) {
    const CubicCoefficients c = cubic_coefficients(rate, delta, sigma, cfg);
    double e = solve_cubic_in_interval(c, 0.0, 1.0 - rate);
    e = std::clamp(e, kEpsMin, 1.0 - rate - kEpsMin);

    // Newton on the stationarity condition itself removes the residual the
    // cubic's scaling leaves behind near the interval edges.
    for (int i = 0; i < 4; ++i) {
        const double g1 = gamma_approx_derivative(e, rate, delta, sigma, cfg);
        const double g2 = gamma_approx_second_derivative(e, rate, delta, sigma, cfg);
        if (g2 <= 0.0) break;
        const double next = std::clamp(e - g1 / g2, kEpsMin, 1.0 - rate - kEpsMin);
        if (next == e) break;
        e = next;
    }

    return OptimumResult{e, gamma_approx(e, rate, delta, sigma, cfg),
                         operating_point(e, rate, delta, sigma),
                         OptimizeMethod::closed_form};
}

OptimumResult optimal_epsilon_numeric(double rate, double delta, double sigma) {
    check_optimizer_inputs(rate, delta, sigma, 1.0, /*closed_form=*/false);

    const double lo = kEpsMin;
    const double hi = 1.0 - rate - kEpsMin;
    const auto f = [&](double e) { return gamma_exact(e, rate, delta, sigma); };
    const auto clamp = [&](double e) { return std::clamp(e, lo, hi); };

    // 1-D Nelder-Mead: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
    double xb = clamp(std::min(0.1, (1.0 - rate) / 2.0));
    double xw = clamp(xb + (1.0 - rate) / 4.0);
    double fb = f(xb), fw = f(xw);
    if (fw < fb) {
        std::swap(xb, xw);
        std::swap(fb, fw);
    }

    constexpr int kMaxIter = 1000;
    bool converged = false;
    for (int it = 0; it < kMaxIter; ++it) {
        if (std::abs(xb - xw) < 1e-9) {
            converged = true;
            break;
        }
        const double xr = clamp(xb + (xb - xw));
        const double fr = f(xr);
        if (fr < fb) {
            const double xe = clamp(xb + 2.0 * (xb - xw));
            const double fe = f(xe);
            xw = xb;
            fw = fb;
            if (fe < fr) {
                xb = xe;
                fb = fe;
            } else {
                xb = xr;
                fb = fr;
            }
        } else if (fr < fw) {
            xw = xr;
            fw = fr;
        } else {
            const double xc = xb + 0.5 * (xw - xb);  // contraction toward best
            const double fc = f(xc);
            if (fc < fw) {
                xw = xc;
                fw = fc;
            } else {
                xw = xb + 0.5 * (xw - xb);  // shrink
                fw = f(xw);
            }
        }
        if (fw < fb) {
            std::swap(xb, xw);
            std::swap(fb, fw);
        }
    }

    OptimumResult result{xb, fb, operating_point(xb, rate, delta, sigma),
                         OptimizeMethod::numeric};
    if (!converged) {
        throw ConvergenceError("Nelder-Mead did not converge", result);
    }
    return result;
}

}  // namespace bufcode
