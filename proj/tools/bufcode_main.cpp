// bufcode CLI: single-point optimization reports plus CSV sweeps for the
// sigma curves and the Monte-Carlo correlation study.
//
// Exit codes: 0 success, 2 parameter error, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bufcode/delay_model.hpp"
#include "bufcode/finite_blocklength.hpp"
#include "bufcode/optimizer.hpp"
#include "bufcode/simulator.hpp"
#include "bufcode/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitNumerical = 3;

// 12 significant digits, '.' decimal point, no locale surprises.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(std::int64_t v) { return std::to_string(v); }

struct Grid {
    double lo = 0.0, hi = 0.0, step = 0.0;

    std::vector<double> points() const {
        std::vector<double> p;
        // index form avoids cumulative drift; half-step slack keeps hi in
        for (long i = 0;; ++i) {
            const double v = lo + static_cast<double>(i) * step;
            if (v > hi + step * 0.5) break;
            p.push_back(v);
        }
        return p;
    }
};

Grid parse_grid(const std::string& text) {
    Grid g;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.step) || colon1 != ':' ||
        colon2 != ':' || !(in >> std::ws).eof()) {
        throw CLI::ValidationError("grid", "expected lo:hi:step, got '" + text + "'");
    }
    if (!(g.step > 0.0) || g.hi < g.lo) {
        throw CLI::ValidationError("grid", "need step > 0 and hi >= lo");
    }
    return g;
}

std::string timestamp_utc() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Sidecar manifest: everything needed to reproduce the paired output file.
void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const std::vector<std::pair<std::string, std::string>>& params,
                    const std::string& command_line) {
    std::ofstream m(out_path + ".manifest");
    if (!m) throw std::runtime_error("cannot write manifest for " + out_path);
    m << "tool: bufcode " << bufcode::kVersion << "\n";
    m << "subcommand: " << subcommand << "\n";
    m << "timestamp: " << timestamp_utc() << "\n";
    for (const auto& [key, value] : params) m << key << ": " << value << "\n";
    m << "command: " << command_line << "\n";
}

struct OptimizeOptions {
    double rate = 1.0 / 3.0;
    double delta = 1e-3;
    double sigma = 12.0;
    double u = 1.2028;
    double t_s = 0.0;  // seconds; 0 = report normalized units only
    double mu = 0.0;   // seconds
};

void print_point(std::ostream& os, const char* label, double eps, double t_delta,
                 double k, double gamma) {
    os << label << ": eps_star=" << fmt(eps) << " t_delta_norm=" << fmt(t_delta)
       << " k=" << fmt(k) << " gamma=" << fmt(gamma) << "\n";
}

int cmd_optimize(const OptimizeOptions& opt) {
    using namespace bufcode;
    std::ostream& os = std::cout;

    if (opt.delta == 0.5) {
        // Degenerate reliability target: the code term vanishes for any
        // epsilon, so the whole budget goes to the buffer and the erasure
        // probability runs to the feasibility edge.
        const double eps = 1.0 - opt.rate;
        const double t_delta = deadline_from_epsilon(eps, opt.sigma);
        os << "pure-buffer solution (delta = 0.5 makes the code term vanish)\n";
        print_point(os, "closed_form", eps, t_delta, 0.0, t_delta);
        return kExitOk;
    }

    std::optional<OptimumResult> closed;
    if (opt.rate <= 0.5) {
        closed = optimal_epsilon_closed_form(opt.rate, opt.delta, opt.sigma,
                                             ApproxConfig{opt.u});
    } else {
        std::cerr << "warning: R > 0.5 is outside the closed-form guarantees; "
                     "reporting the numeric result only\n";
    }
    const OptimumResult numeric =
        optimal_epsilon_numeric(opt.rate, opt.delta, opt.sigma);

    if (closed) {
        print_point(os, "closed_form", closed->epsilon_star,
                    closed->point.t_delta_norm, closed->point.k, closed->gamma_star);
    }
    print_point(os, "numeric", numeric.epsilon_star, numeric.point.t_delta_norm,
                numeric.point.k, numeric.gamma_star);
    if (closed) {
        os << "discrepancy: d_eps=" << fmt(std::abs(closed->epsilon_star -
                                                    numeric.epsilon_star))
           << " d_gamma=" << fmt(std::abs(closed->gamma_star - numeric.gamma_star))
           << "\n";
    }
    if (opt.t_s > 0.0) {
        const NetworkModel net{opt.mu, opt.sigma, opt.t_s};
        const double total_s = net.mu + numeric.point.gamma * net.t_s;
        const double deadline_s = net.mu + numeric.point.t_delta_norm * net.t_s;
        os << "seconds: deadline_t_d=" << fmt(deadline_s)
           << " total_delay=" << fmt(total_s) << "\n";
    }
    return kExitOk;
}

struct SweepOptions {
    double rate = 1.0 / 3.0;
    double delta = 1e-3;
    double u = 1.2028;
    Grid sigma_grid{1.0, 40.0, 1.0};
    std::string out;
};

int cmd_sweep_sigma(const SweepOptions& opt, const std::string& command_line) {
    using namespace bufcode;
    const std::vector<double> sigmas = opt.sigma_grid.points();

    struct Row {
        double sigma = 0.0;
        std::optional<OptimumResult> cf, num;
        std::string error;
    };
    std::vector<Row> rows(sigmas.size());

#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        Row& row = rows[i];
        row.sigma = sigmas[i];
        try {
            if (opt.rate <= 0.5) {
                row.cf = optimal_epsilon_closed_form(opt.rate, opt.delta, row.sigma,
                                                     ApproxConfig{opt.u});
            }
            row.num = optimal_epsilon_numeric(opt.rate, opt.delta, row.sigma);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    }

    std::ofstream csv(opt.out, std::ios::binary);
    if (!csv) {
        std::cerr << "error: cannot open " << opt.out << "\n";
        return kExitParameter;
    }
    csv << "sigma,eps_cf,eps_num,gamma_cf,gamma_num,buffer,code\n";
    for (const Row& row : rows) {
        if (!row.error.empty()) {
            std::cerr << "warning: sigma=" << fmt(row.sigma) << " failed: "
                      << row.error << "\n";
        }
        csv << fmt(row.sigma) << ",";
        csv << (row.cf ? fmt(row.cf->epsilon_star) : "") << ",";
        csv << (row.num ? fmt(row.num->epsilon_star) : "") << ",";
        csv << (row.cf ? fmt(row.cf->gamma_star) : "") << ",";
        csv << (row.num ? fmt(row.num->gamma_star) : "") << ",";
        if (row.num) {
            const DelaySplit split = split_contributions(row.num->point);
            csv << fmt(split.buffer) << "," << fmt(split.code);
        } else {
            csv << ",";
        }
        csv << "\n";
    }
    csv.close();

    write_manifest(opt.out, "sweep-sigma",
                   {{"rate", fmt(opt.rate)},
                    {"delta", fmt(opt.delta)},
                    {"u", fmt(opt.u)},
                    {"sigma_grid", fmt(opt.sigma_grid.lo) + ":" + fmt(opt.sigma_grid.hi) +
                                       ":" + fmt(opt.sigma_grid.step)},
                    {"csv_schema", "sigma,eps_cf,eps_num,gamma_cf,gamma_num,buffer,code"}},
                   command_line);
    return kExitOk;
}

struct SimulateOptions {
    std::vector<int> k_list{5, 10, 15};
    double rate = 0.5;
    double sigma = 12.0;
    double t_delta = 8.0;
    Grid rho_grid{0.0, 1.0, 0.1};
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    std::size_t payload_len = 32;
    std::string out;
};

int cmd_simulate(const SimulateOptions& opt, const std::string& command_line) {
    using namespace bufcode;
    const std::vector<double> rhos = opt.rho_grid.points();

    std::ofstream csv(opt.out, std::ios::binary);
    if (!csv) {
        std::cerr << "error: cannot open " << opt.out << "\n";
        return kExitParameter;
    }
    csv << "k,rho,delta_hat,ci_low,ci_high,delta_analytic,rank_failures\n";
    for (int k : opt.k_list) {
        SimConfig cfg;
        cfg.sigma = opt.sigma;
        cfg.t_delta_norm = opt.t_delta;
        cfg.rate = opt.rate;
        cfg.k = k;
        cfg.trials = opt.trials;
        cfg.seed = opt.seed;
        cfg.payload_len = opt.payload_len;
        cfg.validate();
        for (const RhoSweepPoint& pt : sweep_rho(cfg, rhos)) {
            csv << k << "," << fmt(pt.rho) << "," << fmt(pt.result.delta_hat) << ","
                << fmt(pt.result.ci_low) << "," << fmt(pt.result.ci_high) << ","
                << fmt(pt.delta_analytic) << "," << fmt(pt.result.failures_rank)
                << "\n";
        }
    }
    csv.close();

    std::string k_csv;
    for (std::size_t i = 0; i < opt.k_list.size(); ++i) {
        if (i) k_csv += ",";
        k_csv += std::to_string(opt.k_list[i]);
    }
    write_manifest(opt.out, "simulate",
                   {{"k", k_csv},
                    {"rate", fmt(opt.rate)},
                    {"sigma", fmt(opt.sigma)},
                    {"t_delta", fmt(opt.t_delta)},
                    {"rho_grid", fmt(opt.rho_grid.lo) + ":" + fmt(opt.rho_grid.hi) + ":" +
                                     fmt(opt.rho_grid.step)},
                    {"trials", fmt(static_cast<std::int64_t>(opt.trials))},
                    {"seed", std::to_string(opt.seed)},
                    {"payload_len", std::to_string(opt.payload_len)},
                    {"deadline_semantics", "single-threshold"},
                    {"csv_schema",
                     "k,rho,delta_hat,ci_low,ci_high,delta_analytic,rank_failures"}},
                   command_line);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint jitter-buffer / erasure-code delay optimizer"};
    app.set_version_flag("--version", std::string("bufcode ") + bufcode::kVersion);
    app.require_subcommand(1);

    OptimizeOptions opt_opt;
    CLI::App* optimize = app.add_subcommand(
        "optimize", "Delay-optimal erasure probability for one parameter set");
    optimize->add_option("--rate", opt_opt.rate, "Code rate R = k/n")
        ->capture_default_str();
    optimize->add_option("--delta", opt_opt.delta, "Decoder error probability target")
        ->capture_default_str();
    optimize->add_option("--sigma", opt_opt.sigma, "Delay std in message intervals")
        ->capture_default_str();
    optimize->add_option("--u", opt_opt.u, "Inverse-approximation scale constant")
        ->capture_default_str();
    optimize->add_option("--t-s", opt_opt.t_s, "Message interval in seconds");
    optimize->add_option("--mu", opt_opt.mu, "Mean network delay in seconds");

    SweepOptions sweep_opt;
    std::string sweep_grid_text = "1:40:1";
    CLI::App* sweep = app.add_subcommand(
        "sweep-sigma", "CSV sweep of both optima across a sigma grid");
    sweep->add_option("--rate", sweep_opt.rate, "Code rate R = k/n")
        ->capture_default_str();
    sweep->add_option("--delta", sweep_opt.delta, "Decoder error probability target")
        ->capture_default_str();
    sweep->add_option("--u", sweep_opt.u, "Inverse-approximation scale constant")
        ->capture_default_str();
    sweep->add_option("--sigma-grid", sweep_grid_text, "Grid as lo:hi:step")
        ->capture_default_str();
    sweep->add_option("--out", sweep_opt.out, "Output CSV path")->required();

    SimulateOptions sim_opt;
    std::string rho_grid_text = "0:1:0.1";
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte-Carlo decoder error probability vs correlation");
    simulate->add_option("--k", sim_opt.k_list, "Block sizes (k/R must be integer)")
        ->delimiter(',')
        ->capture_default_str();
    simulate->add_option("--rate", sim_opt.rate, "Code rate R = k/n")
        ->capture_default_str();
    simulate->add_option("--sigma", sim_opt.sigma, "Delay std in message intervals")
        ->capture_default_str();
    simulate->add_option("--t-delta", sim_opt.t_delta,
                         "Normalized deadline t_delta/t_s")
        ->capture_default_str();
    simulate->add_option("--rho-grid", rho_grid_text, "Correlation grid as lo:hi:step")
        ->capture_default_str();
    simulate->add_option("--trials", sim_opt.trials, "Trials per grid point")
        ->capture_default_str();
    simulate->add_option("--seed", sim_opt.seed, "Base RNG seed")
        ->capture_default_str();
    simulate->add_option("--payload-len", sim_opt.payload_len,
                         "Payload bytes per message")
        ->capture_default_str();
    simulate->add_option("--out", sim_opt.out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitParameter;
    }

    std::string command_line;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) command_line += " ";
        command_line += argv[i];
    }
    command_line = "bufcode " + command_line;

    try {
        if (*optimize) return cmd_optimize(opt_opt);
        if (*sweep) {
            sweep_opt.sigma_grid = parse_grid(sweep_grid_text);
            return cmd_sweep_sigma(sweep_opt, command_line);
        }
        if (*simulate) {
            sim_opt.rho_grid = parse_grid(rho_grid_text);
            return cmd_simulate(sim_opt, command_line);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
