#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "expord/rng.hpp"
#include "expord/thresholds.hpp"
#include "expord/types.hpp"

namespace expord {

struct RuleConfig {
    Rule rule = Rule::Samos;
    TauKind tau_kind = TauKind::ComplexHankelT1;  // threshold / constrained
    CriterionKind criterion = CriterionKind::Samos;  // constrained only

    std::string name() const { return to_string(rule); }
};

RuleConfig default_rule_config(Rule rule);
RuleConfig parse_rule(const std::string& text);

struct BenchConfig {
    SignalSpec spec;
    std::vector<double> snr_db;
    int trials = 500;
    std::vector<RuleConfig> rules;
    std::uint64_t master_seed = 0;
    NoiseKind noise_kind = NoiseKind::Complex;
    double beta = 0.9;
    int hankel_rows = 0;  // 0 = square
    int s_max = 0;        // 0 = floor((m-1)/2)

    HankelShape shape() const;
    int effective_s_max() const;
};

void validate(const BenchConfig& config);

/// Order histograms per (rule, snr); key -1 is the "failed" bucket for
/// trials where a rule raised instead of producing an estimate.
struct BenchResult {
    std::vector<std::vector<std::map<int, int>>> histograms;  // [rule][snr]
    std::vector<std::vector<double>> cor;                     // [rule][snr]
    BenchConfig config;
    double wall_seconds = 0.0;
};

/// Monte Carlo engine. Trials are independent work items scheduled with
/// OpenMP; each (snr, trial) cell owns a derived seed and a result slot, so
/// the outcome is identical for any thread count. threads = 0 uses the
/// OpenMP default.
BenchResult run_trials(const BenchConfig& config, int threads = 0);

/// Serial reference implementation; must produce results identical to
/// run_trials (asserted in tests, compared in benchmarks/).
BenchResult run_trials_serial(const BenchConfig& config);

std::string render_cor_csv(const BenchResult& result);
std::string render_hist_csv(const BenchResult& result);
nlohmann::json bench_manifest(const BenchResult& result, int threads);

/// SNR grids in JSON use "inf" for the noiseless point.
nlohmann::json snr_grid_to_json(const std::vector<double>& snr_db);
std::vector<double> snr_grid_from_json(const nlohmann::json& grid);

struct NormBoundRow {
    int n = 0;
    double eta = 0.0;
    double norm_min = 0.0, norm_mean = 0.0, norm_max = 0.0;
    double tau2 = 0.0, tau3 = 0.0;
};

/// Real square Hankel noise: spectral-norm spread vs τ₂ and τ₃.
std::vector<NormBoundRow> norm_bound_sweep(const std::vector<int>& n_grid,
                                           const std::vector<double>& eta_grid,
                                           int trials, double beta,
                                           std::uint64_t master_seed,
                                           int threads = 0);
std::string render_norm_bound_csv(const std::vector<NormBoundRow>& rows);

/// Noiseless random-mode signal: r frequencies evenly spread over (0,1]
/// with a random circular offset, amplitudes uniform in [1,1.5].
SignalSpec random_mode_spec(int r, int length, GaussianRng& rng);

struct TightnessRow {
    int r = 0, s = 0;
    double ester_cost_mean = 0.0;
    double ester_diff_mean = 0.0, ester_diff_max = 0.0;
    double samos_cost_mean = 0.0;
    double samos_diff_mean = 0.0, samos_diff_max = 0.0;
};

/// |cost − bound-derived quantity| per (r, s) on noiseless random-mode
/// signals: ester vs the gap ρ(s), samos vs (√2/s)·Σ sin(θ_i/2).
std::vector<TightnessRow> bound_tightness_sweep(const std::vector<int>& r_grid,
                                                int s_max, int trials,
                                                std::uint64_t master_seed,
                                                int length = 129,
                                                int threads = 0);
std::string render_tightness_csv(const std::vector<TightnessRow>& rows);

enum class SpectrumKind { Iid, Hankel };

struct SpectrumRow {
    double bin_lo = 0.0, bin_hi = 0.0;
    long count = 0;
    double density = 0.0;
    double mp = 0.0;
};

struct SpectrumResult {
    std::vector<SpectrumRow> bins;
    double frac_outside_support = 0.0;   // beyond [1−√c−0.05, 1+√c+0.05], η-normalized
    double frac_draws_max_above = 0.0;   // draws with max σ/(η√m) > 1+√c
    int draws = 0;
    long values = 0;
};

/// Pooled singular values of W/√m (i.i.d. entries) or H_w/√m (Hankel),
/// binned, with the Marchenko-Pastur density sampled on the same grid.
SpectrumResult spectrum_histogram(SpectrumKind kind, int m, int n, double eta,
                                  int bins, int draws,
                                  std::uint64_t master_seed, int threads = 0);
std::string render_spectrum_csv(const SpectrumResult& result);

} // namespace expord
