#include "expord/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "expord/criteria.hpp"
#include "expord/hankel_linalg.hpp"
#include "expord/io.hpp"
#include "expord/selectors.hpp"
#include "expord/signal_model.hpp"

namespace expord {

namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

double wall_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

RuleConfig default_rule_config(Rule rule) {
    RuleConfig config;
    config.rule = rule;
    switch (rule) {
        case Rule::Threshold:
            config.tau_kind = TauKind::GavishT3;
            break;
        case Rule::Constrained:
            config.tau_kind = TauKind::ComplexHankelT1;
            config.criterion = CriterionKind::Samos;
            break;
        default:
            break;
    }
    return config;
}

RuleConfig parse_rule(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    if (!std::getline(in, token, ':') || token.empty())
        throw std::invalid_argument("rule: empty name");
    RuleConfig config;
    if (token == "threshold") config = default_rule_config(Rule::Threshold);
    else if (token == "ester") config = default_rule_config(Rule::Ester);
    else if (token == "samos") config = default_rule_config(Rule::Samos);
    else if (token == "constrained") config = default_rule_config(Rule::Constrained);
    else throw std::invalid_argument("rule: unknown name '" + token + "'");
    while (std::getline(in, token, ':')) {
        if (token == "ester") config.criterion = CriterionKind::Ester;
        else if (token == "samos") config.criterion = CriterionKind::Samos;
        else if (token == "t1") config.tau_kind = TauKind::ComplexHankelT1;
        else if (token == "t2") config.tau_kind = TauKind::RealHankelT2;
        else if (token == "t3") config.tau_kind = TauKind::GavishT3;
        else throw std::invalid_argument("rule: unknown modifier '" + token + "'");
    }
    return config;
}

HankelShape BenchConfig::shape() const {
    if (hankel_rows > 0) {
        const int n = spec.length + 1 - hankel_rows;
        if (hankel_rows < 2 || n < 1)
            throw std::invalid_argument("BenchConfig: hankel_rows out of range");
        return {hankel_rows, n};
    }
    return default_shape(spec.length);
}

int BenchConfig::effective_s_max() const {
    return s_max > 0 ? s_max : default_s_max(shape().m);
}

void validate(const BenchConfig& config) {
    validate(config.spec);
    if (config.spec.length < 2 * config.spec.order() + 1)
        throw std::invalid_argument(
            "BenchConfig: length must be >= 2r+1 for identifiability");
    if (config.trials < 1)
        throw std::invalid_argument("BenchConfig: trials must be >= 1");
    if (config.snr_db.empty())
        throw std::invalid_argument("BenchConfig: empty snr grid");
    for (double snr : config.snr_db)
        if (std::isnan(snr) || (std::isinf(snr) && snr < 0.0))
            throw std::invalid_argument("BenchConfig: snr values must be finite or +inf");
    if (config.rules.empty())
        throw std::invalid_argument("BenchConfig: no rules configured");
    if (!(config.beta > 0.0 && config.beta < 1.0))
        throw std::invalid_argument("BenchConfig: beta must be in (0,1)");
    const HankelShape shape = config.shape();
    const int s_max = config.effective_s_max();
    if (s_max < 1 || s_max > shape.min_dim())
        throw std::invalid_argument("BenchConfig: s_max out of range");
    for (const RuleConfig& rule : config.rules) {
        const bool samos_ranged = rule.rule == Rule::Samos ||
                                  (rule.rule == Rule::Constrained &&
                                   rule.criterion == CriterionKind::Samos);
        if (samos_ranged && 2 * s_max > shape.m - 1)
            throw std::invalid_argument("BenchConfig: s_max exceeds the SAMOS range 2s <= m-1");
    }
}

namespace {

struct TrialOutcome {
    std::vector<int> orders;  // per rule; -1 = failed
};

TrialOutcome run_one_trial(const BenchConfig& config, const CVector& x,
                           HankelShape shape, int s_max, double snr_db,
                           std::uint64_t seed) {
    GaussianRng rng(seed);
    const NoisySignal noisy = add_noise(x, snr_db, config.noise_kind, rng);
    const SvdSubspaces subspaces = svd_subspaces(hankel(noisy.samples, shape));

    bool need_ester = false, need_samos = false;
    for (const RuleConfig& rule : config.rules) {
        if (rule.rule == Rule::Ester) need_ester = true;
        if (rule.rule == Rule::Samos) need_samos = true;
        if (rule.rule == Rule::Constrained) {
            if (rule.criterion == CriterionKind::Ester) need_ester = true;
            else need_samos = true;
        }
    }
    CriterionTrace ester_trace, samos_trace;
    if (need_ester)
        ester_trace = criterion_trace(subspaces, CriterionKind::Ester, s_max);
    if (need_samos)
        samos_trace = criterion_trace(subspaces, CriterionKind::Samos, s_max);

    TrialOutcome outcome;
    outcome.orders.reserve(config.rules.size());
    for (const RuleConfig& rule : config.rules) {
        int order = -1;
        try {
            switch (rule.rule) {
                case Rule::Threshold: {
                    const double cut = tau(rule.tau_kind, shape.m, shape.n,
                                           noisy.eta, config.beta);
                    order = select_threshold(subspaces.singular_values, cut).r_hat;
                    break;
                }
                case Rule::Ester:
                    order = select_from_trace(ester_trace).r_hat;
                    break;
                case Rule::Samos:
                    order = select_from_trace(samos_trace).r_hat;
                    break;
                case Rule::Constrained: {
                    const double cut = tau(rule.tau_kind, shape.m, shape.n,
                                           noisy.eta, config.beta);
                    const CriterionTrace& trace =
                        rule.criterion == CriterionKind::Ester ? ester_trace
                                                               : samos_trace;
                    order = select_constrained_from_trace(
                                subspaces.singular_values, cut, trace)
                                .r_hat;
                    break;
                }
            }
        } catch (const std::exception&) {
            order = -1;  // tallied in the "failed" bucket
        }
        outcome.orders.push_back(order);
    }
    return outcome;
}

BenchResult tally(const BenchConfig& config,
                  const std::vector<std::vector<TrialOutcome>>& slots,
                  double wall_seconds) {
    BenchResult result;
    result.config = config;
    result.wall_seconds = wall_seconds;
    const int n_rules = static_cast<int>(config.rules.size());
    const int n_snr = static_cast<int>(config.snr_db.size());
    const int r_true = config.spec.order();
    result.histograms.assign(n_rules, std::vector<std::map<int, int>>(n_snr));
    result.cor.assign(n_rules, std::vector<double>(n_snr, 0.0));
    for (int si = 0; si < n_snr; ++si)
        for (int t = 0; t < config.trials; ++t)
            for (int ri = 0; ri < n_rules; ++ri)
                result.histograms[ri][si][slots[si][t].orders[ri]] += 1;
    for (int ri = 0; ri < n_rules; ++ri)
        for (int si = 0; si < n_snr; ++si) {
            const auto& hist = result.histograms[ri][si];
            const auto hit = hist.find(r_true);
            result.cor[ri][si] =
                hit == hist.end() ? 0.0
                                  : static_cast<double>(hit->second) / config.trials;
        }
    return result;
}

BenchResult run_trials_impl(const BenchConfig& config, int threads,
                            bool parallel) {
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();
    const CVector x = synthesize(config.spec);
    const HankelShape shape = config.shape();
    const int s_max = config.effective_s_max();
    const int n_snr = static_cast<int>(config.snr_db.size());

    std::vector<std::vector<TrialOutcome>> slots(
        n_snr, std::vector<TrialOutcome>(config.trials));
    const long total = static_cast<long>(n_snr) * config.trials;
    const int nt = resolve_threads(threads);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt) if (parallel)
#endif
    for (long idx = 0; idx < total; ++idx) {
        const int si = static_cast<int>(idx / config.trials);
        const int t = static_cast<int>(idx % config.trials);
        const std::uint64_t seed = derive_seed(config.master_seed, si, t);
        slots[si][t] = run_one_trial(config, x, shape, s_max,
                                     config.snr_db[si], seed);
    }
    (void)nt;
    return tally(config, slots, wall_since(t0));
}

} // namespace

BenchResult run_trials(const BenchConfig& config, int threads) {
    return run_trials_impl(config, threads, true);
}

BenchResult run_trials_serial(const BenchConfig& config) {
    return run_trials_impl(config, 1, false);
}

std::string render_cor_csv(const BenchResult& result) {
    std::string out = "rule,snr_db,cor\n";
    for (std::size_t ri = 0; ri < result.config.rules.size(); ++ri)
        for (std::size_t si = 0; si < result.config.snr_db.size(); ++si) {
            out += result.config.rules[ri].name();
            out += ',';
            out += format_double(result.config.snr_db[si]);
            out += ',';
            out += format_double(result.cor[ri][si]);
            out += '\n';
        }
    return out;
}

std::string render_hist_csv(const BenchResult& result) {
    std::string out = "rule,snr_db,order,count\n";
    for (std::size_t ri = 0; ri < result.config.rules.size(); ++ri)
        for (std::size_t si = 0; si < result.config.snr_db.size(); ++si)
            for (const auto& [order, count] : result.histograms[ri][si]) {
                out += result.config.rules[ri].name();
                out += ',';
                out += format_double(result.config.snr_db[si]);
                out += ',';
                out += std::to_string(order);
                out += ',';
                out += std::to_string(count);
                out += '\n';
            }
    return out;
}

nlohmann::json snr_grid_to_json(const std::vector<double>& snr_db) {
    // JSON has no infinity; the noiseless point is encoded as "inf".
    nlohmann::json grid = nlohmann::json::array();
    for (double snr : snr_db) {
        if (std::isinf(snr)) grid.push_back("inf");
        else grid.push_back(snr);
    }
    return grid;
}

std::vector<double> snr_grid_from_json(const nlohmann::json& grid) {
    std::vector<double> snr_db;
    for (const auto& v : grid) {
        if (v.is_string()) {
            if (v.get<std::string>() != "inf")
                throw std::invalid_argument("snr_db: unknown value " + v.dump());
            snr_db.push_back(std::numeric_limits<double>::infinity());
        } else {
            snr_db.push_back(v.get<double>());
        }
    }
    return snr_db;
}

nlohmann::json bench_manifest(const BenchResult& result, int threads) {
    const BenchConfig& config = result.config;
    const HankelShape shape = config.shape();
    nlohmann::json rules = nlohmann::json::array();
    for (const RuleConfig& rule : config.rules) {
        nlohmann::json jr{{"rule", rule.name()}};
        if (rule.rule == Rule::Threshold || rule.rule == Rule::Constrained)
            jr["tau"] = to_string(rule.tau_kind);
        if (rule.rule == Rule::Constrained)
            jr["criterion"] = to_string(rule.criterion);
        rules.push_back(jr);
    }
    return nlohmann::json{
        {"signal", spec_to_json(config.spec)},
        {"hankel", {{"m", shape.m}, {"n", shape.n}}},
        {"s_max", config.effective_s_max()},
        {"snr_db", snr_grid_to_json(config.snr_db)},
        {"trials", config.trials},
        {"rules", rules},
        {"master_seed", config.master_seed},
        {"noise_kind", to_string(config.noise_kind)},
        {"beta", config.beta},
        {"threads", threads},
        {"wall_seconds", result.wall_seconds},
    };
}

std::vector<NormBoundRow> norm_bound_sweep(const std::vector<int>& n_grid,
                                           const std::vector<double>& eta_grid,
                                           int trials, double beta,
                                           std::uint64_t master_seed,
                                           int threads) {
    if (trials < 1)
        throw std::invalid_argument("norm_bound_sweep: trials must be >= 1");
    for (double eta : eta_grid)
        if (!(eta > 0.0))
            throw std::invalid_argument("norm_bound_sweep: eta must be > 0");
    const int nt = resolve_threads(threads);
    std::vector<NormBoundRow> rows;
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
        const int n = n_grid[ni];
        if (n < 2)
            throw std::invalid_argument("norm_bound_sweep: n must be >= 2");
        // ‖H_{ηw}‖ = η·‖H_w‖: draw at unit noise level, scale per eta row.
        std::vector<double> norms(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
        for (int t = 0; t < trials; ++t) {
            GaussianRng rng(derive_seed(master_seed, ni, t));
            Eigen::MatrixXd h(n, n);
            Eigen::VectorXd w(2 * n - 1);
            for (int k = 0; k < 2 * n - 1; ++k) w(k) = rng.normal();
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) h(i, j) = w(i + j);
            norms[t] = spectral_norm_real(h);
        }
        for (double eta : eta_grid) {
            NormBoundRow row;
            row.n = n;
            row.eta = eta;
            row.norm_min = *std::min_element(norms.begin(), norms.end()) * eta;
            row.norm_max = *std::max_element(norms.begin(), norms.end()) * eta;
            double acc = 0.0;
            for (double v : norms) acc += v;
            row.norm_mean = acc / trials * eta;
            row.tau2 = tau_real(n, n, eta, beta);
            row.tau3 = tau_gavish(n, n, eta);
            rows.push_back(row);
        }
    }
    (void)nt;
    return rows;
}

std::string render_norm_bound_csv(const std::vector<NormBoundRow>& rows) {
    std::string out = "n,eta,norm_min,norm_mean,norm_max,tau2,tau3\n";
    for (const NormBoundRow& row : rows) {
        out += std::to_string(row.n);
        out += ',';
        out += format_double(row.eta);
        out += ',';
        out += format_double(row.norm_min);
        out += ',';
        out += format_double(row.norm_mean);
        out += ',';
        out += format_double(row.norm_max);
        out += ',';
        out += format_double(row.tau2);
        out += ',';
        out += format_double(row.tau3);
        out += '\n';
    }
    return out;
}

SignalSpec random_mode_spec(int r, int length, GaussianRng& rng) {
    if (r < 1)
        throw std::invalid_argument("random_mode_spec: r must be >= 1");
    SignalSpec spec;
    spec.length = length;
    spec.dt = 1.0;
    const double offset = rng.uniform01();
    for (int i = 1; i <= r; ++i) {
        Mode mode;
        double f = (i + offset) / r;
        f -= std::floor(f);           // (0,1] spacing preserved: gaps are 1/r
        mode.nu = f == 0.0 ? 1.0 : f; // undamped unit-circle poles
        mode.gamma = 0.0;
        mode.amp_mag = 1.0 + 0.5 * rng.uniform01();
        mode.amp_phase = 0.0;
        spec.modes.push_back(mode);
    }
    return spec;
}

std::vector<TightnessRow> bound_tightness_sweep(const std::vector<int>& r_grid,
                                                int s_max, int trials,
                                                std::uint64_t master_seed,
                                                int length, int threads) {
    if (trials < 1 || s_max < 1)
        throw std::invalid_argument("bound_tightness_sweep: bad trials/s_max");
    const int nt = resolve_threads(threads);
    std::vector<TightnessRow> rows;
    for (std::size_t gi = 0; gi < r_grid.size(); ++gi) {
        const int r = r_grid[gi];
        // [trial][s-1] -> (ester diff, samos diff, ester cost, samos cost)
        std::vector<std::array<double, 4>> cells(
            static_cast<std::size_t>(trials) * s_max);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
        for (int t = 0; t < trials; ++t) {
            GaussianRng rng(derive_seed(master_seed, gi, t));
            const SignalSpec spec = random_mode_spec(r, length, rng);
            const SvdSubspaces subspaces =
                svd_subspaces(hankel(synthesize(spec), default_shape(length)));
            for (int s = 1; s <= s_max; ++s) {
                const ShiftPair pair = shift_pair(subspaces, s);
                const double ec = ester_cost(subspaces, s);
                const double sc = samos_cost(subspaces, s);
                const double gap = gap_distance(pair.top_removed, pair.bottom_removed);
                const RVector angles =
                    principal_angles(pair.top_removed, pair.bottom_removed);
                double half_sum = 0.0;
                for (Eigen::Index i = 0; i < angles.size(); ++i)
                    half_sum += std::sin(angles(i) / 2.0);
                half_sum *= std::sqrt(2.0) / s;
                cells[static_cast<std::size_t>(t) * s_max + (s - 1)] = {
                    std::abs(ec - gap), std::abs(sc - half_sum), ec, sc};
            }
        }
        for (int s = 1; s <= s_max; ++s) {
            TightnessRow row;
            row.r = r;
            row.s = s;
            row.ester_diff_max = 0.0;
            row.samos_diff_max = 0.0;
            for (int t = 0; t < trials; ++t) {
                const auto& cell = cells[static_cast<std::size_t>(t) * s_max + (s - 1)];
                row.ester_diff_mean += cell[0];
                row.samos_diff_mean += cell[1];
                row.ester_cost_mean += cell[2];
                row.samos_cost_mean += cell[3];
                row.ester_diff_max = std::max(row.ester_diff_max, cell[0]);
                row.samos_diff_max = std::max(row.samos_diff_max, cell[1]);
            }
            row.ester_diff_mean /= trials;
            row.samos_diff_mean /= trials;
            row.ester_cost_mean /= trials;
            row.samos_cost_mean /= trials;
            rows.push_back(row);
        }
    }
    (void)nt;
    return rows;
}

std::string render_tightness_csv(const std::vector<TightnessRow>& rows) {
    std::string out =
        "r,s,ester_cost_mean,ester_diff_mean,ester_diff_max,"
        "samos_cost_mean,samos_diff_mean,samos_diff_max\n";
    for (const TightnessRow& row : rows) {
        out += std::to_string(row.r);
        out += ',';
        out += std::to_string(row.s);
        out += ',';
        out += format_double(row.ester_cost_mean);
        out += ',';
        out += format_double(row.ester_diff_mean);
        out += ',';
        out += format_double(row.ester_diff_max);
        out += ',';
        out += format_double(row.samos_cost_mean);
        out += ',';
        out += format_double(row.samos_diff_mean);
        out += ',';
        out += format_double(row.samos_diff_max);
        out += '\n';
    }
    return out;
}

SpectrumResult spectrum_histogram(SpectrumKind kind, int m, int n, double eta,
                                  int bins, int draws,
                                  std::uint64_t master_seed, int threads) {
    if (m < 2 || n < 1 || bins < 1 || draws < 1)
        throw std::invalid_argument("spectrum_histogram: bad dimensions/bins/draws");
    if (!(eta > 0.0))
        throw std::invalid_argument("spectrum_histogram: eta must be > 0");
    const double c = m >= n ? static_cast<double>(n) / m
                            : static_cast<double>(m) / n;
    const double sqrt_m = std::sqrt(static_cast<double>(m));
    const double sigma = eta / std::sqrt(2.0);
    const int nt = resolve_threads(threads);

    std::vector<RVector> per_draw(draws);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (int d = 0; d < draws; ++d) {
        GaussianRng rng(derive_seed(master_seed, static_cast<int>(kind), d));
        CMatrix mat;
        if (kind == SpectrumKind::Iid) {
            mat.resize(m, n);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < m; ++i)
                    mat(i, j) = cplx(sigma * rng.normal(), sigma * rng.normal());
        } else {
            CVector w(m + n - 1);
            for (int k = 0; k < m + n - 1; ++k)
                w(k) = cplx(sigma * rng.normal(), sigma * rng.normal());
            mat = hankel(w, {m, n});
        }
        Eigen::BDCSVD<CMatrix> svd(mat, 0);
        if (svd.info() != Eigen::Success)
            throw std::runtime_error("spectrum_histogram: SVD failed");
        per_draw[d] = svd.singularValues() / sqrt_m;
    }
    (void)nt;

    SpectrumResult result;
    result.draws = draws;
    const double support_hi = 1.0 + std::sqrt(c);
    const double support_lo = 1.0 - std::sqrt(c);
    long outside = 0;
    int draws_above = 0;
    double max_value = 0.0;
    for (const RVector& values : per_draw) {
        result.values += values.size();
        if (values(0) / eta > support_hi) ++draws_above;
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            const double v = values(i) / eta;
            max_value = std::max(max_value, values(i));
            if (v < support_lo - 0.05 || v > support_hi + 0.05) ++outside;
        }
    }
    result.frac_outside_support = static_cast<double>(outside) / result.values;
    result.frac_draws_max_above = static_cast<double>(draws_above) / draws;

    const double hi = std::max(max_value, support_hi * eta) * 1.02;
    const double width = hi / bins;
    result.bins.resize(bins);
    for (int b = 0; b < bins; ++b) {
        result.bins[b].bin_lo = b * width;
        result.bins[b].bin_hi = (b + 1) * width;
    }
    for (const RVector& values : per_draw)
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            int b = static_cast<int>(values(i) / width);
            b = std::min(std::max(b, 0), bins - 1);
            result.bins[b].count += 1;
        }
    for (int b = 0; b < bins; ++b) {
        result.bins[b].density =
            static_cast<double>(result.bins[b].count) / (result.values * width);
        const double center = (result.bins[b].bin_lo + result.bins[b].bin_hi) / 2.0;
        result.bins[b].mp = mp_density(center / eta, c) / eta;
    }
    return result;
}

std::string render_spectrum_csv(const SpectrumResult& result) {
    std::string out = "bin_lo,bin_hi,count,density,mp_density\n";
    for (const SpectrumRow& row : result.bins) {
        out += format_double(row.bin_lo);
        out += ',';
        out += format_double(row.bin_hi);
        out += ',';
        out += std::to_string(row.count);
        out += ',';
        out += format_double(row.density);
        out += ',';
        out += format_double(row.mp);
        out += '\n';
    }
    return out;
}

} // namespace expord
