// Throughput comparison of the OpenMP trial loop against the serial
// reference, plus a consistency check that they produce the same counts.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bufcode/simulator.hpp"

using namespace bufcode;

namespace {

template <typename F>
double time_seconds(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial code\n");
#endif
    std::printf("%4s %8s %10s %12s %12s %8s\n", "k", "rho", "trials", "serial[s]",
                "parallel[s]", "speedup");

    for (int k : {5, 10, 15}) {
        for (double rho : {0.0, 0.8}) {
            SimConfig cfg;
            cfg.k = k;
            cfg.rho = rho;
            cfg.trials = 20000;
            cfg.seed = 12345;

            SimResult serial{}, parallel{};
            const double t_serial =
                time_seconds([&] { serial = estimate_delta_serial(cfg); });
            const double t_parallel =
                time_seconds([&] { parallel = estimate_delta(cfg); });

            const bool same = serial.failures_erasure == parallel.failures_erasure &&
                              serial.failures_rank == parallel.failures_rank;
            std::printf("%4d %8.1f %10lld %12.4f %12.4f %7.2fx%s\n", k, rho,
                        static_cast<long long>(cfg.trials), t_serial, t_parallel,
                        t_serial / t_parallel, same ? "" : "  COUNTS DIFFER");
        }
    }
    return 0;
}
