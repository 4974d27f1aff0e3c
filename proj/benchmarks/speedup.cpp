// Compares the OpenMP trial engine against the serial reference and checks
// that both produce identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "expord/bench.hpp"
#include "expord/signal_model.hpp"

using namespace expord;

namespace {

double seconds_for(const BenchResult& r) { return r.wall_seconds; }

bool same_results(const BenchResult& a, const BenchResult& b) {
    return a.cor == b.cor && a.histograms == b.histograms;
}

} // namespace

int main(int argc, char** argv) {
    const int trials = argc > 1 ? std::atoi(argv[1]) : 100;

    BenchConfig config;
    config.spec = preset(1);
    config.snr_db = {10.0, 25.0};
    config.trials = trials;
    config.rules = {default_rule_config(Rule::Threshold),
                    default_rule_config(Rule::Samos),
                    default_rule_config(Rule::Constrained)};
    config.master_seed = 42;

    std::printf("preset 1, %zu SNR points, %d trials/point\n",
                config.snr_db.size(), config.trials);

    const BenchResult serial = run_trials_serial(config);
    std::printf("%-22s %8.2f s\n", "serial reference", seconds_for(serial));

#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    for (int threads = 1; threads <= max_threads; threads *= 2) {
        const BenchResult parallel = run_trials(config, threads);
        if (!same_results(serial, parallel)) {
            std::printf("MISMATCH at %d threads\n", threads);
            return 1;
        }
        std::printf("openmp %2d thread(s)     %8.2f s   speedup %.2fx\n", threads,
                    seconds_for(parallel),
                    seconds_for(serial) / seconds_for(parallel));
    }
    std::printf("all thread counts reproduce the serial result\n");
    return 0;
}
