// expord: model order estimation for sums of damped complex exponentials.
//
// Subcommands: synth, estimate, bench, bounds, spectrum, tightness.
// Exit codes: 0 success, 2 usage error, 1 runtime failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "expord/bench.hpp"
#include "expord/criteria.hpp"
#include "expord/hankel_linalg.hpp"
#include "expord/io.hpp"
#include "expord/selectors.hpp"
#include "expord/signal_model.hpp"
#include "expord/thresholds.hpp"

namespace {

using nlohmann::json;
using namespace expord;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> values;
    auto parse_one = [](const std::string& tok) -> double {
        if (tok == "inf" || tok == "+inf" || tok == "Inf")
            return std::numeric_limits<double>::infinity();
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw UsageError("bad number '" + tok + "'");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        // start:step:stop, inclusive
        std::istringstream in(text);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') ||
            !std::getline(in, c))
            throw UsageError("grid must be start:step:stop");
        const double start = parse_one(a), step = parse_one(b), stop = parse_one(c);
        if (!(step > 0.0)) throw UsageError("grid step must be > 0");
        for (double v = start; v <= stop + 1e-9 * std::abs(step); v += step)
            values.push_back(v);
    } else {
        std::istringstream in(text);
        std::string tok;
        while (std::getline(in, tok, ','))
            if (!tok.empty()) values.push_back(parse_one(tok));
    }
    if (values.empty()) throw UsageError("empty grid '" + text + "'");
    return values;
}

std::vector<int> parse_int_grid(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_grid(text)) {
        if (!(std::abs(v - std::round(v)) < 1e-9))
            throw UsageError("expected integers in grid '" + text + "'");
        out.push_back(static_cast<int>(std::round(v)));
    }
    return out;
}

NoiseKind parse_noise(const std::string& text) {
    if (text == "complex") return NoiseKind::Complex;
    if (text == "real") return NoiseKind::Real;
    throw UsageError("noise kind must be complex or real");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

// Flags shared by the subcommands that synthesize a signal.
struct SignalArgs {
    int preset_id = 0;
    std::string spec_path;
    double dt = 0.0;       // 0 = preset/spec default
    int length = 0;        // 0 = preset/spec default
    double snr_db = std::numeric_limits<double>::infinity();
    std::string noise = "complex";
    std::uint64_t seed = 0;

    void add_to(CLI::App* cmd, bool with_noise) {
        cmd->add_option("--preset", preset_id, "preset signal id (1..4)");
        cmd->add_option("--spec", spec_path, "signal spec JSON file");
        cmd->add_option("--dt", dt, "sample spacing override");
        cmd->add_option("--length", length, "sample count override");
        if (with_noise) {
            cmd->add_option("--snr", snr_db,
                            "SNR in dB (inf = noiseless)")
                ->default_str("inf");
            cmd->add_option("--noise", noise, "noise kind: complex|real")
                ->default_str("complex");
            cmd->add_option("--seed", seed, "RNG master seed")->default_str("0");
        }
    }

    SignalSpec resolve() const {
        if ((preset_id != 0) == !spec_path.empty())
            throw UsageError("give exactly one of --preset or --spec");
        SignalSpec spec = preset_id != 0
                              ? preset(preset_id)
                              : spec_from_json(load_json_file(spec_path));
        if (dt > 0.0) spec.dt = dt;
        if (length > 0) spec.length = length;
        validate(spec);
        return spec;
    }
};

void write_manifest(const std::string& path, json manifest) {
    write_text_file(path, manifest.dump(2) + "\n");
}

int cmd_synth(const SignalArgs& args, const std::string& out_path,
              const std::string& spec_out) {
    const SignalSpec spec = args.resolve();
    const CVector x = synthesize(spec);
    GaussianRng rng(derive_seed(args.seed, 0, 0));
    const NoisySignal noisy =
        add_noise(x, args.snr_db, parse_noise(args.noise), rng);
    write_complex_csv(out_path, noisy.samples);
    if (!spec_out.empty())
        write_text_file(spec_out, spec_to_json(spec).dump(2) + "\n");
    write_manifest(out_path + ".manifest.json",
                   {{"command", "synth"},
                    {"signal", spec_to_json(spec)},
                    {"snr_db", args.snr_db},
                    {"noise_kind", args.noise},
                    {"seed", args.seed},
                    {"eta", noisy.eta},
                    {"out", out_path}});
    std::printf("wrote %ld samples to %s (eta=%s)\n",
                static_cast<long>(noisy.samples.size()), out_path.c_str(),
                format_double(noisy.eta).c_str());
    return 0;
}

json selection_to_json(const SelectionResult& result) {
    json j{{"rule", to_string(result.rule)}, {"r_hat", result.r_hat}};
    if (result.s_star) j["s_star"] = *result.s_star;
    if (result.tau_used) j["tau"] = *result.tau_used;
    if (result.trace) {
        j["trace"] = {{"kind", to_string(result.trace->kind)},
                      {"costs", result.trace->costs}};
    }
    return j;
}

int cmd_estimate(const SignalArgs& args, const std::string& in_path,
                 const std::string& rule_text, const std::string& criterion,
                 const std::string& tau_kind, double beta, double eta_flag,
                 int hankel_rows, int s_max_flag) {
    RuleConfig rule = parse_rule(rule_text);
    if (!criterion.empty())
        rule.criterion = criterion == "ester" ? CriterionKind::Ester
                                              : CriterionKind::Samos;
    if (!tau_kind.empty()) {
        if (tau_kind == "t1") rule.tau_kind = TauKind::ComplexHankelT1;
        else if (tau_kind == "t2") rule.tau_kind = TauKind::RealHankelT2;
        else if (tau_kind == "t3") rule.tau_kind = TauKind::GavishT3;
        else throw UsageError("--tau must be t1, t2 or t3");
    }

    CVector samples;
    double eta = eta_flag;
    json signal_desc;
    if (!in_path.empty()) {
        if (args.preset_id != 0 || !args.spec_path.empty())
            throw UsageError("--in conflicts with --preset/--spec");
        samples = read_complex_csv(in_path);
        signal_desc = {{"file", in_path}};
    } else {
        const SignalSpec spec = args.resolve();
        GaussianRng rng(derive_seed(args.seed, 0, 0));
        const NoisySignal noisy = add_noise(synthesize(spec), args.snr_db,
                                            parse_noise(args.noise), rng);
        samples = noisy.samples;
        if (eta < 0.0) eta = noisy.eta;  // true generator value
        signal_desc = spec_to_json(spec);
        signal_desc["snr_db"] = args.snr_db;
        signal_desc["seed"] = args.seed;
    }

    const bool needs_eta =
        rule.rule == Rule::Threshold || rule.rule == Rule::Constrained;
    if (needs_eta && eta < 0.0)
        throw UsageError("--eta is required for threshold/constrained rules");

    const int length = static_cast<int>(samples.size());
    HankelShape shape = hankel_rows > 0
                            ? HankelShape{hankel_rows, length + 1 - hankel_rows}
                            : default_shape(length);
    const SvdSubspaces subspaces = svd_subspaces(hankel(samples, shape));
    const int s_max = s_max_flag > 0 ? s_max_flag : default_s_max(shape.m);

    SelectionResult result;
    switch (rule.rule) {
        case Rule::Threshold:
            result = select_threshold(
                subspaces.singular_values,
                tau(rule.tau_kind, shape.m, shape.n, eta, beta));
            break;
        case Rule::Ester:
            result = select_ester(subspaces, s_max);
            break;
        case Rule::Samos:
            result = select_samos(subspaces, s_max);
            break;
        case Rule::Constrained:
            result = select_constrained(
                subspaces, tau(rule.tau_kind, shape.m, shape.n, eta, beta),
                rule.criterion, s_max);
            break;
    }

    json out = selection_to_json(result);
    out["signal"] = signal_desc;
    out["hankel"] = {{"m", shape.m}, {"n", shape.n}};
    out["s_max"] = s_max;
    if (needs_eta) {
        out["eta"] = eta;
        out["beta"] = beta;
        out["tau_kind"] = to_string(rule.tau_kind);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

BenchConfig bench_config_from_json(const json& j) {
    BenchConfig config;
    config.spec = spec_from_json(j.at("signal"));
    config.snr_db = snr_grid_from_json(j.at("snr_db"));
    config.trials = j.at("trials").get<int>();
    for (const auto& jr : j.at("rules")) {
        RuleConfig rule = parse_rule(jr.at("rule").get<std::string>());
        if (jr.contains("criterion"))
            rule.criterion = jr.at("criterion").get<std::string>() == "ester"
                                 ? CriterionKind::Ester
                                 : CriterionKind::Samos;
        if (jr.contains("tau")) {
            const std::string t = jr.at("tau").get<std::string>();
            rule.tau_kind = t == "t1"   ? TauKind::ComplexHankelT1
                            : t == "t2" ? TauKind::RealHankelT2
                                        : TauKind::GavishT3;
        }
        config.rules.push_back(rule);
    }
    config.master_seed = j.value("master_seed", std::uint64_t{0});
    config.noise_kind = parse_noise(j.value("noise_kind", "complex"));
    config.beta = j.value("beta", 0.9);
    config.hankel_rows = j.value("hankel_rows", 0);
    config.s_max = j.value("s_max", 0);
    return config;
}

int cmd_bench(const BenchConfig& config, const std::string& out_dir,
              int threads) {
    const BenchResult result = run_trials(config, threads);
    const std::string base = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(base);
    write_text_file(base + "/cor.csv", render_cor_csv(result));
    write_text_file(base + "/hist.csv", render_hist_csv(result));
    json manifest = bench_manifest(result, threads);
    manifest["outputs"] = {{"cor", base + "/cor.csv"},
                           {"hist", base + "/hist.csv"}};
    write_manifest(base + "/manifest.json", manifest);
    for (std::size_t ri = 0; ri < config.rules.size(); ++ri)
        for (std::size_t si = 0; si < config.snr_db.size(); ++si)
            std::printf("%-12s snr=%-6s cor=%.4f\n",
                        config.rules[ri].name().c_str(),
                        format_double(config.snr_db[si]).c_str(),
                        result.cor[ri][si]);
    std::printf("done in %.1fs -> %s/{cor.csv,hist.csv,manifest.json}\n",
                result.wall_seconds, base.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"model order estimation for sums of damped complex exponentials"};
    app.require_subcommand(1);

    // --- synth ---
    auto* synth_cmd = app.add_subcommand("synth", "synthesize a signal to CSV");
    SignalArgs synth_args;
    synth_args.add_to(synth_cmd, true);
    std::string synth_out = "signal.csv", synth_spec_out;
    synth_cmd->add_option("--out", synth_out, "output CSV (re,im per line)");
    synth_cmd->add_option("--spec-out", synth_spec_out, "also export the spec JSON");

    // --- estimate ---
    auto* est_cmd = app.add_subcommand("estimate", "estimate the model order");
    SignalArgs est_args;
    est_args.add_to(est_cmd, true);
    std::string est_in, est_rule = "constrained", est_criterion, est_tau;
    double est_beta = 0.9, est_eta = -1.0;
    int est_rows = 0, est_s_max = 0;
    est_cmd->add_option("--in", est_in, "input CSV of complex samples (re,im)");
    est_cmd->add_option("--rule", est_rule,
                        "threshold|ester|samos|constrained")
        ->default_str("constrained");
    est_cmd->add_option("--criterion", est_criterion,
                        "constrained criterion: ester|samos");
    est_cmd->add_option("--tau", est_tau, "threshold kind: t1|t2|t3");
    est_cmd->add_option("--beta", est_beta, "confidence for t1/t2")
        ->default_str("0.9");
    est_cmd->add_option("--eta", est_eta, "noise level (required for file input "
                                          "with threshold/constrained)");
    est_cmd->add_option("--m", est_rows, "Hankel rows (default: square)");
    est_cmd->add_option("--s-max", est_s_max, "search range cap");

    // --- bench ---
    auto* bench_cmd = app.add_subcommand("bench", "Monte Carlo COR benchmark");
    SignalArgs bench_args;
    bench_args.add_to(bench_cmd, false);
    std::string bench_snr = "0:5:30", bench_rules = "threshold,ester,samos,constrained";
    std::string bench_noise = "complex", bench_out = ".", bench_config_path;
    int bench_trials = 500, bench_rows = 0, bench_s_max = 0, bench_threads = 0;
    double bench_beta = 0.9;
    std::uint64_t bench_seed = 0;
    auto* opt_snr = bench_cmd->add_option("--snr", bench_snr, "SNR grid: list or start:step:stop");
    auto* opt_trials = bench_cmd->add_option("--trials", bench_trials, "trials per SNR point");
    auto* opt_rules = bench_cmd->add_option("--rules", bench_rules,
                                            "comma list; modifiers like constrained:ester:t2");
    auto* opt_seed = bench_cmd->add_option("--seed", bench_seed, "master seed");
    auto* opt_noise = bench_cmd->add_option("--noise", bench_noise, "complex|real");
    auto* opt_beta = bench_cmd->add_option("--beta", bench_beta, "confidence for t1/t2");
    auto* opt_rows = bench_cmd->add_option("--m", bench_rows, "Hankel rows (default: square)");
    auto* opt_smax = bench_cmd->add_option("--s-max", bench_s_max, "search range cap");
    bench_cmd->add_option("--threads", bench_threads, "worker cap (0 = all)");
    bench_cmd->add_option("--out-dir", bench_out, "output directory");
    auto* opt_config = bench_cmd->add_option("--config", bench_config_path,
                                             "BenchConfig JSON (exclusive with config flags)");
    for (CLI::Option* opt : {opt_snr, opt_trials, opt_rules, opt_seed, opt_noise,
                             opt_beta, opt_rows, opt_smax})
        opt_config->excludes(opt);
    opt_config->excludes(bench_cmd->get_option("--preset"));
    opt_config->excludes(bench_cmd->get_option("--spec"));
    opt_config->excludes(bench_cmd->get_option("--dt"));
    opt_config->excludes(bench_cmd->get_option("--length"));

    // --- bounds ---
    auto* bounds_cmd = app.add_subcommand("bounds", "real Hankel norm vs tau2/tau3");
    std::string bounds_n = "64,128,256,512", bounds_eta = "0.25:0.25:2";
    std::string bounds_out = "bounds.csv";
    int bounds_trials = 200, bounds_threads = 0;
    double bounds_beta = 0.9;
    std::uint64_t bounds_seed = 0;
    bounds_cmd->add_option("--n", bounds_n, "square sizes");
    bounds_cmd->add_option("--eta", bounds_eta, "noise levels");
    bounds_cmd->add_option("--trials", bounds_trials, "draws per size");
    bounds_cmd->add_option("--beta", bounds_beta, "confidence for tau2");
    bounds_cmd->add_option("--seed", bounds_seed, "master seed");
    bounds_cmd->add_option("--threads", bounds_threads, "worker cap");
    bounds_cmd->add_option("--out", bounds_out, "output CSV");

    // --- spectrum ---
    auto* spec_cmd = app.add_subcommand("spectrum", "singular value histogram vs MP density");
    std::string spectrum_kind = "hankel", spectrum_out = "spectrum.csv";
    int spectrum_m = 1024, spectrum_n = 512, spectrum_bins = 60, spectrum_draws = 10,
        spectrum_threads = 0;
    double spectrum_eta = 1.0;
    std::uint64_t spectrum_seed = 0;
    spec_cmd->add_option("--kind", spectrum_kind, "iid|hankel");
    spec_cmd->add_option("--m", spectrum_m, "rows");
    spec_cmd->add_option("--n", spectrum_n, "cols");
    spec_cmd->add_option("--eta", spectrum_eta, "noise level");
    spec_cmd->add_option("--bins", spectrum_bins, "histogram bins");
    spec_cmd->add_option("--draws", spectrum_draws, "matrix draws");
    spec_cmd->add_option("--seed", spectrum_seed, "master seed");
    spec_cmd->add_option("--threads", spectrum_threads, "worker cap");
    spec_cmd->add_option("--out", spectrum_out, "output CSV");

    // --- tightness ---
    auto* tight_cmd = app.add_subcommand("tightness", "criterion vs bound discrepancies");
    std::string tight_r = "2:1:8", tight_out = "tightness.csv";
    int tight_s_max = 0, tight_trials = 25, tight_length = 129, tight_threads = 0;
    std::uint64_t tight_seed = 0;
    tight_cmd->add_option("--r", tight_r, "true orders");
    tight_cmd->add_option("--s-max", tight_s_max, "search range (0 = default)");
    tight_cmd->add_option("--trials", tight_trials, "signals per order");
    tight_cmd->add_option("--length", tight_length, "record length");
    tight_cmd->add_option("--seed", tight_seed, "master seed");
    tight_cmd->add_option("--threads", tight_threads, "worker cap");
    tight_cmd->add_option("--out", tight_out, "output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    }

    try {
        if (synth_cmd->parsed())
            return cmd_synth(synth_args, synth_out, synth_spec_out);
        if (est_cmd->parsed())
            return cmd_estimate(est_args, est_in, est_rule, est_criterion,
                                est_tau, est_beta, est_eta, est_rows, est_s_max);
        if (bench_cmd->parsed()) {
            BenchConfig config;
            if (!bench_config_path.empty()) {
                config = bench_config_from_json(load_json_file(bench_config_path));
            } else {
                config.spec = bench_args.resolve();
                config.snr_db = parse_grid(bench_snr);
                config.trials = bench_trials;
                std::istringstream in(bench_rules);
                std::string tok;
                while (std::getline(in, tok, ','))
                    if (!tok.empty()) config.rules.push_back(parse_rule(tok));
                config.master_seed = bench_seed;
                config.noise_kind = parse_noise(bench_noise);
                config.beta = bench_beta;
                config.hankel_rows = bench_rows;
                config.s_max = bench_s_max;
            }
            validate(config);
            return cmd_bench(config, bench_out, bench_threads);
        }
        if (bounds_cmd->parsed()) {
            const auto rows = norm_bound_sweep(parse_int_grid(bounds_n),
                                               parse_grid(bounds_eta),
                                               bounds_trials, bounds_beta,
                                               bounds_seed, bounds_threads);
            write_text_file(bounds_out, render_norm_bound_csv(rows));
            write_manifest(bounds_out + ".manifest.json",
                           {{"command", "bounds"},
                            {"n", parse_int_grid(bounds_n)},
                            {"eta", parse_grid(bounds_eta)},
                            {"trials", bounds_trials},
                            {"beta", bounds_beta},
                            {"master_seed", bounds_seed},
                            {"out", bounds_out}});
            std::printf("wrote %zu rows to %s\n", rows.size(), bounds_out.c_str());
            return 0;
        }
        if (spec_cmd->parsed()) {
            const SpectrumKind kind = spectrum_kind == "iid" ? SpectrumKind::Iid
                                      : spectrum_kind == "hankel"
                                          ? SpectrumKind::Hankel
                                          : throw UsageError("--kind must be iid|hankel");
            const SpectrumResult result =
                spectrum_histogram(kind, spectrum_m, spectrum_n, spectrum_eta,
                                   spectrum_bins, spectrum_draws, spectrum_seed,
                                   spectrum_threads);
            write_text_file(spectrum_out, render_spectrum_csv(result));
            write_manifest(spectrum_out + ".manifest.json",
                           {{"command", "spectrum"},
                            {"kind", spectrum_kind},
                            {"m", spectrum_m},
                            {"n", spectrum_n},
                            {"eta", spectrum_eta},
                            {"bins", spectrum_bins},
                            {"draws", spectrum_draws},
                            {"master_seed", spectrum_seed},
                            {"out", spectrum_out},
                            {"frac_outside_support", result.frac_outside_support},
                            {"frac_draws_max_above", result.frac_draws_max_above}});
            std::printf("pooled %ld singular values over %d draws; "
                        "%.2f%% outside MP support (+/-0.05), "
                        "max above support in %.0f%% of draws\n",
                        result.values, result.draws,
                        100.0 * result.frac_outside_support,
                        100.0 * result.frac_draws_max_above);
            return 0;
        }
        if (tight_cmd->parsed()) {
            const int s_max = tight_s_max > 0
                                  ? tight_s_max
                                  : default_s_max(default_shape(tight_length).m);
            const auto rows = bound_tightness_sweep(parse_int_grid(tight_r), s_max,
                                                    tight_trials, tight_seed,
                                                    tight_length, tight_threads);
            write_text_file(tight_out, render_tightness_csv(rows));
            write_manifest(tight_out + ".manifest.json",
                           {{"command", "tightness"},
                            {"r", parse_int_grid(tight_r)},
                            {"s_max", s_max},
                            {"trials", tight_trials},
                            {"length", tight_length},
                            {"master_seed", tight_seed},
                            {"out", tight_out}});
            std::printf("wrote %zu rows to %s\n", rows.size(), tight_out.c_str());
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
