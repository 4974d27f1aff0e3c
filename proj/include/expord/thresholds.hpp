#pragma once

#include "expord/types.hpp"

namespace expord {

enum class TauKind { ComplexHankelT1, RealHankelT2, GavishT3 };

std::string to_string(TauKind kind);

/// τ₁ = sqrt(−(m+n−1)·η²·log(1 − β^{1/(m+n−1)})): P[‖H_w‖₂ ≤ τ₁] ≥ β for
/// complex Gaussian Hankel noise. β in (0,1); η = 0 gives 0 (noiseless limit).
double tau_complex(int m, int n, double eta, double beta);

/// τ₂ = sqrt(−2·max(m,n)·η²·log((1−β)/(m+n))): concentration bound for real
/// Gaussian Hankel noise.
double tau_real(int m, int n, double eta, double beta);

/// κ(c) = sqrt(2(c+1)·8c/(c+1+sqrt(c²+14c+1))), c = n/m in (0,1].
double kappa(double c);

/// τ₃ = κ(n/m)·sqrt(m)·η, the i.i.d.-optimal hard threshold. Dimensions are
/// swapped internally when m < n.
double tau_gavish(int m, int n, double eta);

double tau(TauKind kind, int m, int n, double eta, double beta);

/// Marchenko-Pastur density, supported on [1−√c, 1+√c]; total function.
double mp_density(double x, double c);

/// max_k |(Fw)_k| over the unnormalized DFT of w; upper bound on ‖hankel(w)‖₂.
double circulant_norm_bound(const CVector& w, int m, int n);

/// [1 − e^{−τ²/((m+n−1)η²)}]^{m+n−1}; lower bound on P[‖H_w‖₂ ≤ τ] for
/// complex Gaussian generating vectors.
double hankel_norm_cdf_lower(double tau, int m, int n, double eta);

} // namespace expord
