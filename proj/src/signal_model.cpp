#include "expord/signal_model.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace expord {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

cplx pole(const Mode& mode, double dt) {
    // e^{2π(γ + jν)·dt}
    return std::exp(cplx(kTwoPi * mode.gamma * dt, kTwoPi * mode.nu * dt));
}

} // namespace

void validate(const SignalSpec& spec) {
    if (!(spec.dt > 0.0) || !std::isfinite(spec.dt))
        throw std::invalid_argument("SignalSpec: dt must be positive and finite");
    const int r = spec.order();
    if (spec.length < 1)
        throw std::invalid_argument("SignalSpec: length must be >= 1");
    for (const Mode& m : spec.modes) {
        if (!std::isfinite(m.nu) || !std::isfinite(m.gamma) ||
            !std::isfinite(m.amp_mag) || !std::isfinite(m.amp_phase))
            throw std::invalid_argument("SignalSpec: non-finite mode parameter");
        if (m.amp_mag < 0.0)
            throw std::invalid_argument("SignalSpec: amp_mag must be >= 0");
    }
    // Distinct poles keep rank(H_x) = r.
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            const cplx zi = pole(spec.modes[i], spec.dt);
            const cplx zj = pole(spec.modes[j], spec.dt);
            const double scale = std::max(std::abs(zi), std::abs(zj));
            if (std::abs(zi - zj) <= 1e-12 * std::max(scale, 1.0))
                throw std::invalid_argument("SignalSpec: modes collide as complex poles");
        }
    }
}

CVector synthesize(const SignalSpec& spec) {
    validate(spec);
    CVector x = CVector::Zero(spec.length);
    for (const Mode& m : spec.modes) {
        const cplx amp = std::polar(m.amp_mag, m.amp_phase);
        const cplx z = pole(m, spec.dt);
        cplx zk(1.0, 0.0);
        for (int k = 0; k < spec.length; ++k) {
            x(k) += amp * zk;
            zk *= z;
        }
    }
    return x;
}

NoisySignal add_noise(const CVector& x, double snr_db, NoiseKind kind,
                      GaussianRng& rng) {
    NoisySignal out;
    out.clean = x;
    if (std::isinf(snr_db) && snr_db > 0.0) {
        out.samples = x;
        out.eta = 0.0;
        return out;
    }
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("add_noise: snr_db must be finite or +inf");
    const double power = x.squaredNorm() / std::max<Eigen::Index>(x.size(), 1);
    if (!(power > 0.0))
        throw std::invalid_argument("add_noise: zero signal power with finite SNR");
    const double eta = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
    out.eta = eta;
    out.samples = x;
    if (kind == NoiseKind::Complex) {
        const double sigma = eta / std::sqrt(2.0);  // per real component
        for (Eigen::Index k = 0; k < x.size(); ++k)
            out.samples(k) += cplx(sigma * rng.normal(), sigma * rng.normal());
    } else {
        for (Eigen::Index k = 0; k < x.size(); ++k)
            out.samples(k) += cplx(eta * rng.normal(), 0.0);
    }
    return out;
}

SignalSpec preset(int example_id) {
    SignalSpec spec;
    spec.example_id = example_id;
    spec.length = 129;
    switch (example_id) {
        case 1:
            // Two close modes plus two well-separated ones.
            spec.dt = 4e-3;
            spec.modes = {
                {-7.68, -0.274, 0.4, -0.93},
                {39.68, -0.150, 1.2, -1.55},
                {40.96, 0.133, 1.0, -0.83},
                {99.84, -0.221, 0.9, 0.07},
            };
            break;
        case 2:
            spec.dt = 4e-3;
            spec.modes = {
                {-92.16, 0.177, 1.0, 0.42},
                {-7.68, -0.274, 1.5, -0.95},
                {3.71, -0.097, 0.7, 0.40},
                {11.90, -0.116, 0.6, 0.02},
                {14.98, -0.026, 1.2, -1.55},
                {19.20, -0.327, 0.4, -0.93},
                {39.68, -0.150, 1.0, -0.83},
                {40.96, 0.133, 0.9, 0.009},
                {99.84, -0.221, 0.9, 0.007},
            };
            break;
        case 3:
            spec.dt = 0.15;
            spec.modes = {
                {0.2, -0.01, 1.0, 0.0},
                {0.3, -0.02, 1.0, 0.0},
                {-0.2, -0.1, 2.0, 0.0},
                {0.4, -0.05, 1.0, 0.0},
                {0.35, 0.03, 1.0, 0.0},
            };
            break;
        case 4:
            // Single large cluster of modes.
            spec.dt = 1.0;
            spec.modes = {
                {-0.22, -0.01, 0.97, -1.78},
                {-0.17, -0.0037, 1.58, 2.89},
                {-0.026, -0.0058, 1.14, -2.46},
                {0.0037, -0.012, 0.96, -1.15},
                {0.15, -0.0089, 1.12, -0.32},
                {0.27, -0.011, 1.62, 0.53},
            };
            break;
        default:
            throw std::invalid_argument("preset: example_id must be in {1,2,3,4}");
    }
    return spec;
}

nlohmann::json spec_to_json(const SignalSpec& spec) {
    nlohmann::json j;
    if (spec.example_id) j["example_id"] = *spec.example_id;
    j["dt"] = spec.dt;
    j["length"] = spec.length;
    j["modes"] = nlohmann::json::array();
    for (const Mode& m : spec.modes)
        j["modes"].push_back({{"nu", m.nu},
                              {"gamma", m.gamma},
                              {"amp_mag", m.amp_mag},
                              {"amp_phase", m.amp_phase}});
    return j;
}

SignalSpec spec_from_json(const nlohmann::json& j) {
    SignalSpec spec;
    if (j.contains("example_id")) spec.example_id = j.at("example_id").get<int>();
    spec.dt = j.at("dt").get<double>();
    spec.length = j.at("length").get<int>();
    for (const auto& jm : j.at("modes"))
        spec.modes.push_back({jm.at("nu").get<double>(), jm.at("gamma").get<double>(),
                              jm.at("amp_mag").get<double>(),
                              jm.at("amp_phase").get<double>()});
    validate(spec);
    return spec;
}

std::string to_string(Rule rule) {
    switch (rule) {
        case Rule::Threshold: return "threshold";
        case Rule::Ester: return "ester";
        case Rule::Samos: return "samos";
        case Rule::Constrained: return "constrained";
    }
    return "?";
}

std::string to_string(CriterionKind kind) {
    return kind == CriterionKind::Ester ? "ester" : "samos";
}

std::string to_string(NoiseKind kind) {
    return kind == NoiseKind::Complex ? "complex" : "real";
}

HankelShape default_shape(int length) {
    if (length < 3)
        throw std::invalid_argument("default_shape: length must be >= 3");
    const int m = (length + 1) / 2;
    return {m, length + 1 - m};
}

} // namespace expord
