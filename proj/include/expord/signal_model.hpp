#pragma once

#include <nlohmann/json_fwd.hpp>

#include "expord/rng.hpp"
#include "expord/types.hpp"

namespace expord {

/// Validates invariants: finite parameters, amp_mag >= 0, dt > 0,
/// length >= max(1, 2r+1), pairwise-distinct poles e^{2π(γ+jν)dt}.
/// Throws std::invalid_argument naming the violation.
void validate(const SignalSpec& spec);

/// x_k = Σ_i |a_i| e^{j∠a_i} · e^{2π(γ_i + jν_i)·k·dt}, k = 0..L-1.
CVector synthesize(const SignalSpec& spec);

/// Adds calibrated Gaussian noise: η² = mean(|x_k|²) / 10^(snr_db/10).
/// Complex noise draws w_k ~ CN(0, η²); real noise w_k ~ N(0, η²).
/// snr_db = +inf returns y = x with eta = 0.
NoisySignal add_noise(const CVector& x, double snr_db, NoiseKind kind,
                      GaussianRng& rng);

/// The four benchmark signal presets (parameter tables of the
/// damped-exponential examples). r = 4, 9, 5, 6 respectively.
SignalSpec preset(int example_id);

nlohmann::json spec_to_json(const SignalSpec& spec);
SignalSpec spec_from_json(const nlohmann::json& j);

} // namespace expord
