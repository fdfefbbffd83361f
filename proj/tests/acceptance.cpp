// Acceptance suite: one check per release criterion, each printing a single
// [PASS]/[FAIL] line with the measured numbers. Criteria can be selected by
// number on the command line; --cli <path> points at the built CLI binary
// (needed by criterion 10).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "bufcode/delay_model.hpp"
#include "bufcode/finite_blocklength.hpp"
#include "bufcode/gf256.hpp"
#include "bufcode/optimizer.hpp"
#include "bufcode/rlnc.hpp"
#include "bufcode/rng.hpp"
#include "bufcode/simulator.hpp"
#include "bufcode/special_functions.hpp"

using namespace bufcode;

namespace {

const std::vector<double> kRates{0.1, 0.25, 1.0 / 3.0, 0.5};
const std::vector<double> kDeltas{1e-2, 1e-3, 1e-4};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

bool report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    return pass;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- 1: closed form vs numeric across the parameter grid --------------------

bool criterion1() {
    Timer timer;
    double worst_deps = 0.0, worst_dgamma = 0.0;
    std::string arg_deps, arg_dgamma;
    int eps_violations = 0, gamma_violations = 0, total = 0;

    for (double rate : kRates) {
        for (double delta : kDeltas) {
            for (int s = 1; s <= 40; ++s) {
                const double sigma = s;
                const OptimumResult cf = optimal_epsilon_closed_form(rate, delta, sigma);
                const OptimumResult num = optimal_epsilon_numeric(rate, delta, sigma);
                ++total;
                const double deps = std::abs(cf.epsilon_star - num.epsilon_star);
                const double dgamma =
                    std::abs(cf.gamma_star - num.gamma_star) / sigma;
                eps_violations += deps > 1e-3;
                gamma_violations += dgamma > 0.05;
                if (deps > worst_deps) {
                    worst_deps = deps;
                    arg_deps = "(R=" + fmt(rate) + ",delta=" + fmt(delta) +
                               ",sigma=" + fmt(sigma) + ")";
                }
                if (dgamma > worst_dgamma) {
                    worst_dgamma = dgamma;
                    arg_dgamma = "(R=" + fmt(rate) + ",delta=" + fmt(delta) +
                                 ",sigma=" + fmt(sigma) + ")";
                }
            }
        }
    }
    const double elapsed = timer.seconds();
    const bool pass = eps_violations == 0 && gamma_violations == 0 && elapsed < 10.0;
    return report(
        1, pass,
        "closed form vs numeric: max|d_eps|=" + fmt(worst_deps) + " at " + arg_deps +
            " (<=1e-3 violated at " + std::to_string(eps_violations) + "/" +
            std::to_string(total) + " points), max|d_gamma|/sigma=" +
            fmt(worst_dgamma) + " at " + arg_dgamma + " (<=0.05 violated at " +
            std::to_string(gamma_violations) + " points), runtime=" + fmt(elapsed) +
            "s");
}

// --- 2: unique in-interval root, first-order condition ----------------------

bool criterion2() {
    Timer timer;
    int bad_counts = 0;
    double worst_deriv = 0.0;
    for (double rate : kRates) {
        for (double delta : kDeltas) {
            for (int s = 1; s <= 40; ++s) {
                const double sigma = s;
                const CubicCoefficients c = cubic_coefficients(rate, delta, sigma);
                int inside = 0;
                for (double r : cubic_real_roots(c)) {
                    if (r > 0.0 && r < 1.0 - rate) ++inside;
                }
                bad_counts += inside != 1;
                const OptimumResult cf = optimal_epsilon_closed_form(rate, delta, sigma);
                worst_deriv = std::max(
                    worst_deriv, std::abs(gamma_approx_derivative(cf.epsilon_star, rate,
                                                                  delta, sigma)));
            }
        }
    }
    const double elapsed = timer.seconds();
    const bool pass = bad_counts == 0 && worst_deriv <= 1e-6 && elapsed < 5.0;
    return report(2, pass,
                  "root validity: non-unique at " + std::to_string(bad_counts) +
                      " points, max|gamma~'(eps*)|=" + fmt(worst_deriv) +
                      " (<=1e-6), runtime=" + fmt(elapsed) + "s");
}

// --- 3: convexity and finite-difference agreement ---------------------------

bool criterion3() {
    SplitMix64 rng(0xACC3);
    int negatives = 0;
    double worst_rel = 0.0, worst_neg = 0.0;
    std::string arg_neg;
    for (int i = 0; i < 1000; ++i) {
        const double rate = 0.05 + 0.45 * rng.uniform01();
        const double delta = std::pow(10.0, -4.0 + 3.4 * rng.uniform01());
        const double sigma = 0.5 + 39.5 * rng.uniform01();
        double eps = (0.05 + 0.9 * rng.uniform01()) * (1.0 - rate);
        eps = std::clamp(eps, 1e-4, 1.0 - rate - 1e-4);

        const double analytic = gamma_approx_second_derivative(eps, rate, delta, sigma);
        if (!(analytic > 0.0)) {
            ++negatives;
            if (analytic < worst_neg) {
                worst_neg = analytic;
                arg_neg = " (worst " + fmt(analytic) + " at eps=" + fmt(eps) +
                          ",R=" + fmt(rate) + ",delta=" + fmt(delta) +
                          ",sigma=" + fmt(sigma) + ")";
            }
        }

        const double h = std::min(1e-4, 0.05 * std::min(eps, 1.0 - rate - eps));
        const auto f = [&](double e) { return gamma_approx(e, rate, delta, sigma); };
        const double mid = f(eps);
        const double d_h = (f(eps + h) - 2.0 * mid + f(eps - h)) / (h * h);
        const double d_h2 =
            (f(eps + h / 2) - 2.0 * mid + f(eps - h / 2)) / (h * h / 4.0);
        const double fd = (4.0 * d_h2 - d_h) / 3.0;  // Richardson
        worst_rel = std::max(worst_rel, std::abs(fd - analytic) / std::abs(analytic));
    }
    const bool pass = negatives == 0 && worst_rel <= 1e-4;
    return report(3, pass,
                  "second derivative positive at " + std::to_string(1000 - negatives) +
                      "/1000 random points" + arg_neg + "; max rel FD err=" +
                      fmt(worst_rel) + " (<=1e-4)");
}

// --- 4 and 5: sigma sweep shape --------------------------------------------

std::vector<OptimumResult> numeric_sweep() {
    std::vector<OptimumResult> out;
    for (int s = 1; s <= 40; ++s) {
        out.push_back(optimal_epsilon_numeric(1.0 / 3.0, 1e-3, s));
    }
    return out;
}

bool criterion4() {
    const auto sweep = numeric_sweep();
    int violations = 0;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        violations += sweep[i].gamma_star < sweep[i - 1].gamma_star - 1e-9;
    }
    return report(4, violations == 0,
                  "gamma* nondecreasing over sigma=1..40 (R=1/3, delta=1e-3): " +
                      std::to_string(violations) + " violations, gamma*(1)=" +
                      fmt(sweep.front().gamma_star) + " gamma*(40)=" +
                      fmt(sweep.back().gamma_star));
}

bool criterion5() {
    constexpr int kFrozenCrossover = 25;  // regression value, sigma grid 1..40
    const auto sweep = numeric_sweep();

    int first_cross = -1;
    bool stays_crossed = true;
    for (int s = 1; s <= 40; ++s) {
        const DelaySplit split = split_contributions(sweep[s - 1].point);
        const bool crossed = split.code > split.buffer;
        if (crossed && first_cross < 0) first_cross = s;
        if (first_cross > 0 && !crossed) stays_crossed = false;
    }

    bool fd_monotone = true;
    double prev_fd = HUGE_VAL;
    for (int s = 21; s <= 39; ++s) {
        const double fd = sweep[s].point.t_delta_norm - sweep[s - 1].point.t_delta_norm;
        if (fd > prev_fd + 1e-6) fd_monotone = false;
        prev_fd = fd;
    }

    const bool pass = first_cross == kFrozenCrossover && stays_crossed && fd_monotone;
    return report(5, pass,
                  "code exceeds buffer from sigma=" + std::to_string(first_cross) +
                      " on (frozen 25), persists=" + (stays_crossed ? "yes" : "no") +
                      ", buffer forward differences non-increasing on top half=" +
                      (fd_monotone ? "yes" : "no"));
}

// --- 6 and 7: Monte-Carlo vs oracles ----------------------------------------

SimConfig fig5_config(int k, double rho) {
    SimConfig cfg;
    cfg.sigma = 12.0;
    cfg.t_delta_norm = 8.0;
    cfg.rate = 0.5;
    cfg.k = k;
    cfg.rho = rho;
    cfg.trials = 100000;
    cfg.seed = 1;
    return cfg;
}

bool criterion6() {
    Timer timer;
    const double eps = q(2.0 / 3.0);
    bool pass = true;
    std::string detail = "rho=0, 1e5 trials:";
    for (int k : {5, 10, 15}) {
        const SimResult r = estimate_delta(fig5_config(k, 0.0));
        const double exact = delta_exact_binomial(2 * k, k, eps);
        const bool inside = r.ci_low <= exact && exact <= r.ci_high;
        pass = pass && inside;
        detail += " k=" + std::to_string(k) + " delta_hat=" + fmt(r.delta_hat) +
                  " exact=" + fmt(exact) + (inside ? " in" : " OUTSIDE") + " [" +
                  fmt(r.ci_low) + "," + fmt(r.ci_high) + "];";
    }
    const double elapsed = timer.seconds();
    pass = pass && elapsed < 60.0;
    return report(6, pass, detail + " runtime=" + fmt(elapsed) + "s (<60s)");
}

bool criterion7() {
    const double eps = q(2.0 / 3.0);

    const SimResult r5 = estimate_delta(fig5_config(5, 0.0));
    const SimResult r15 = estimate_delta(fig5_config(15, 0.0));
    const double gap5 = std::abs(r5.delta_hat - delta_from_code(10, 5, eps));
    const double gap15 = std::abs(r15.delta_hat - delta_from_code(30, 15, eps));
    const bool tightens = gap15 < gap5;

    const SimResult rc = estimate_delta(fig5_config(15, 0.8));
    const double analytic = delta_from_code(30, 15, eps);
    const double se =
        std::sqrt(std::max(rc.delta_hat * (1.0 - rc.delta_hat), 1e-12) / rc.trials);
    const double deviation = std::abs(rc.delta_hat - analytic) / se;
    const bool breaks_down = deviation > 3.0;

    return report(7, tightens && breaks_down,
                  "analysis gap |delta_hat-analytic| k=5: " + fmt(gap5) +
                      " -> k=15: " + fmt(gap15) +
                      (tightens ? " (tightens)" : " (DOES NOT TIGHTEN)") +
                      "; rho=0.8,k=15 deviates by " + fmt(deviation) +
                      " SEs (>3 required)");
}

// --- 8: field axioms, round trip, singularity rate ---------------------------

std::uint8_t slow_mul(std::uint8_t a, std::uint8_t b) {
    unsigned acc = 0, aa = a;
    for (unsigned bb = b; bb; bb >>= 1) {
        if (bb & 1) acc ^= aa;
        aa <<= 1;
        if (aa & 0x100) aa ^= kGfReductionPoly;
    }
    return static_cast<std::uint8_t>(acc);
}

bool criterion8() {
    // exhaustive field axioms
    long long axiom_failures = 0;
    for (unsigned a = 0; a < 256; ++a) {
        const std::uint8_t ua = static_cast<std::uint8_t>(a);
        axiom_failures += gf_mul(ua, 1) != a;
        axiom_failures += gf_mul(ua, 0) != 0;
        if (a != 0) axiom_failures += gf_mul(ua, gf_inv(ua)) != 1;
        for (unsigned b = 0; b < 256; ++b) {
            const std::uint8_t ub = static_cast<std::uint8_t>(b);
            axiom_failures += gf_mul(ua, ub) != slow_mul(ua, ub);
            axiom_failures += gf_mul(ua, ub) != gf_mul(ub, ua);
            for (unsigned c = 0; c < 256; c += 37) {  // strided third operand
                const std::uint8_t uc = static_cast<std::uint8_t>(c);
                axiom_failures += gf_mul(gf_mul(ua, ub), uc) != gf_mul(ua, gf_mul(ub, uc));
                axiom_failures +=
                    gf_mul(ua, static_cast<std::uint8_t>(ub ^ uc)) !=
                    (gf_mul(ua, ub) ^ gf_mul(ua, uc));
            }
        }
    }

    // randomized round trips at exactly k received packets
    const int k = 5, n = 10, trials = 10000;
    SplitMix64 rng(0x8F);
    int rank_failures = 0, byte_mismatches = 0;
    std::vector<int> index(n);
    for (int t = 0; t < trials; ++t) {
        const MessageBlock block = random_message_block(k, 16, rng);
        const auto packets = encode(block, n, rng);
        std::iota(index.begin(), index.end(), 0);
        for (int i = n - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.next() % (i + 1));
            std::swap(index[i], index[j]);
        }
        std::vector<CodedPacket> subset;
        for (int i = 0; i < k; ++i) subset.push_back(packets[index[i]]);
        const DecodeResult dec = decode(subset, k);
        if (dec.status == DecodeStatus::ok) {
            byte_mismatches += dec.block.messages != block.messages;
        } else {
            ++rank_failures;
        }
    }
    double p_full = 1.0;
    for (int i = 1; i <= k; ++i) p_full *= 1.0 - std::pow(256.0, -i);
    const double expected = 1.0 - p_full;
    const double se = std::sqrt(expected * (1.0 - expected) / trials);
    const double rate = double(rank_failures) / trials;
    const bool rate_ok = std::abs(rate - expected) <= 3.0 * se;

    const bool pass = axiom_failures == 0 && byte_mismatches == 0 && rate_ok;
    return report(8, pass,
                  "field axioms exhaustive: " + std::to_string(axiom_failures) +
                      " failures; round trip mismatches: " +
                      std::to_string(byte_mismatches) + "/" + std::to_string(trials) +
                      "; singular rate=" + fmt(rate) + " vs " + fmt(expected) +
                      " +-" + fmt(3.0 * se));
}

// --- 9: blocklength identity residual ----------------------------------------

bool criterion9() {
    SplitMix64 rng(0x99);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double rate = 0.02 + 0.93 * rng.uniform01();
        const double margin = 0.02;
        const double eps = (1.0 - rate - margin) * rng.uniform01();
        if (eps <= 0.0) continue;
        const double delta = std::pow(10.0, -6.0 + 5.7 * rng.uniform01()) * 0.49;
        const double k = block_size_k(rate, eps, delta);
        const double n = k / rate;
        const double residual =
            n * (1.0 - eps) - std::sqrt(n * eps * (1.0 - eps)) * q_inv(delta) - k;
        worst = std::max(worst, std::abs(residual));
    }
    return report(9, worst <= 1e-9,
                  "max residual of the blocklength identity over 1000 feasible "
                  "draws: " + fmt(worst) + " (<=1e-9)");
}

// --- 10: CLI determinism ------------------------------------------------------

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion10(const std::string& cli) {
    if (cli.empty()) {
        return report(10, false, "no --cli <path> given; cannot run the binary");
    }
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / ("bufcode_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path out1 = dir / "run1.csv", out2 = dir / "run2.csv";
    const std::string args =
        " simulate --k 5,10 --trials 2000 --rho-grid 0:0.8:0.4 --seed 99 --out ";
    const int rc1 = std::system((cli + args + out1.string()).c_str());
    const int rc2 = std::system((cli + args + out2.string()).c_str());

    bool pass = rc1 == 0 && rc2 == 0;
    std::string detail;
    if (!pass) {
        detail = "CLI exited nonzero (" + std::to_string(rc1) + ", " +
                 std::to_string(rc2) + ")";
    } else {
        const std::string a = read_file(out1), b = read_file(out2);
        const bool identical = !a.empty() && a == b;
        const bool manifests = fs::exists(out1.string() + ".manifest") &&
                               fs::exists(out2.string() + ".manifest");
        pass = identical && manifests;
        detail = "repeated runs byte-identical=" +
                 std::string(identical ? "yes" : "NO") + " (" +
                 std::to_string(a.size()) + " bytes), manifests present=" +
                 (manifests ? "yes" : "NO");
    }
    fs::remove_all(dir);
    return report(10, pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) {
            cli = argv[++i];
        } else {
            selected.insert(std::atoi(arg.c_str()));
        }
    }
    if (selected.empty()) {
        for (int i = 1; i <= 10; ++i) selected.insert(i);
    }

    bool all_pass = true;
    for (int c : selected) {
        bool pass = false;
        switch (c) {
            case 1: pass = criterion1(); break;
            case 2: pass = criterion2(); break;
            case 3: pass = criterion3(); break;
            case 4: pass = criterion4(); break;
            case 5: pass = criterion5(); break;
            case 6: pass = criterion6(); break;
            case 7: pass = criterion7(); break;
            case 8: pass = criterion8(); break;
            case 9: pass = criterion9(); break;
            case 10: pass = criterion10(cli); break;
            default:
                std::fprintf(stderr, "unknown criterion %d\n", c);
                return 2;
        }
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}
