#include "expord/thresholds.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

#include "expord/hankel_linalg.hpp"

namespace expord {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

void check_dims(int m, int n) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("threshold: dimensions must be >= 1");
}

void check_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("threshold: beta must be in (0,1)");
}

void check_eta(double eta) {
    if (!(eta >= 0.0) || !std::isfinite(eta))
        throw std::invalid_argument("threshold: eta must be finite and >= 0");
}

} // namespace

std::string to_string(TauKind kind) {
    switch (kind) {
        case TauKind::ComplexHankelT1: return "t1";
        case TauKind::RealHankelT2: return "t2";
        case TauKind::GavishT3: return "t3";
    }
    return "?";
}

double tau_complex(int m, int n, double eta, double beta) {
    check_dims(m, n);
    check_beta(beta);
    check_eta(eta);
    const double len = m + n - 1;
    // 1 - beta^{1/L} via expm1/log1p keeps precision for large L.
    const double one_minus_root = -std::expm1(std::log(beta) / len);
    return std::sqrt(-len * eta * eta * std::log(one_minus_root));
}

double tau_real(int m, int n, double eta, double beta) {
    check_dims(m, n);
    check_beta(beta);
    check_eta(eta);
    const double maxdim = std::max(m, n);
    return std::sqrt(-2.0 * maxdim * eta * eta *
                     std::log((1.0 - beta) / (m + n)));
}

double kappa(double c) {
    if (!(c > 0.0 && c <= 1.0))
        throw std::invalid_argument("kappa: c must be in (0,1]");
    return std::sqrt(2.0 * (c + 1.0) * 8.0 * c /
                     (c + 1.0 + std::sqrt(c * c + 14.0 * c + 1.0)));
}

double tau_gavish(int m, int n, double eta) {
    check_dims(m, n);
    check_eta(eta);
    if (m < n) std::swap(m, n);  // aspect ratio <= 1
    return kappa(static_cast<double>(n) / m) * std::sqrt(static_cast<double>(m)) * eta;
}

double tau(TauKind kind, int m, int n, double eta, double beta) {
    if (eta == 0.0 && kind != TauKind::GavishT3) return 0.0;  // noiseless limit
    switch (kind) {
        case TauKind::ComplexHankelT1: return tau_complex(m, n, eta, beta);
        case TauKind::RealHankelT2: return tau_real(m, n, eta, beta);
        case TauKind::GavishT3: return tau_gavish(m, n, eta);
    }
    throw std::invalid_argument("tau: unknown kind");
}

double mp_density(double x, double c) {
    if (!(c > 0.0 && c <= 1.0))
        throw std::invalid_argument("mp_density: c must be in (0,1]");
    const double sqrt_c = std::sqrt(c);
    if (x < 1.0 - sqrt_c || x > 1.0 + sqrt_c || x <= 0.0) return 0.0;
    const double quad = 4.0 * c - (x * x - 1.0 - c) * (x * x - 1.0 - c);
    if (quad <= 0.0) return 0.0;
    return std::sqrt(quad) / (kPi * c * x);
}

double circulant_norm_bound(const CVector& w, int m, int n) {
    check_dims(m, n);
    if (w.size() != m + n - 1)
        throw std::invalid_argument("circulant_norm_bound: |w| must equal m + n - 1");
    // Unnormalized forward DFT; the circulant eigenvalues.
    Eigen::FFT<double> fft;
    std::vector<cplx> in(w.data(), w.data() + w.size());
    std::vector<cplx> out(in.size());
    fft.fwd(out, in);
    double best = 0.0;
    for (const cplx& v : out) best = std::max(best, std::abs(v));
    return best;
}

double hankel_norm_cdf_lower(double tau, int m, int n, double eta) {
    check_dims(m, n);
    if (!(eta > 0.0))
        throw std::invalid_argument("hankel_norm_cdf_lower: eta must be > 0");
    if (tau < 0.0) return 0.0;
    const double len = m + n - 1;
    const double base = -std::expm1(-tau * tau / (len * eta * eta));
    return std::pow(base, len);
}

} // namespace expord
