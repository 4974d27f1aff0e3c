#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace expord {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One complex exponential term a·e^{2π(γ+jν)·k·dt}.
struct Mode {
    double nu = 0.0;         // frequency (cycles per unit time)
    double gamma = 0.0;      // damping (per unit time, negative = decay)
    double amp_mag = 0.0;    // |a| >= 0
    double amp_phase = 0.0;  // arg(a), radians
};

/// Parametric signal: ordered mode list, sample count, sample spacing.
struct SignalSpec {
    std::vector<Mode> modes;
    int length = 129;
    double dt = 1.0;
    std::optional<int> example_id;  // set when built from a preset

    int order() const { return static_cast<int>(modes.size()); }
};

enum class NoiseKind { Complex, Real };

struct NoisySignal {
    CVector samples;  // y = x + w
    double eta = 0.0; // per-sample total noise std dev (E|w|^2 = eta^2)
    CVector clean;    // x, retained for metrics
};

/// Hankel dimensions; m + n - 1 must equal the signal length.
struct HankelShape {
    int m = 0;
    int n = 0;

    int signal_length() const { return m + n - 1; }
    int min_dim() const { return m < n ? m : n; }
};

/// Square-by-default shape for a length-L signal: m = ceil(L+1)/2.
HankelShape default_shape(int length);

/// Left singular basis and singular values of a Hankel matrix.
struct SvdSubspaces {
    CMatrix left_basis;              // m x min(m,n), orthonormal columns
    RVector singular_values;         // non-increasing, >= 0
    std::optional<CMatrix> right_basis;

    int rows() const { return static_cast<int>(left_basis.rows()); }
    int count() const { return static_cast<int>(singular_values.size()); }
};

/// Shift submatrices of the leading s columns of a basis.
struct ShiftPair {
    CMatrix top_removed;     // rows 2..m (U_f / Q_f)
    CMatrix bottom_removed;  // rows 1..m-1 (U_l / Q_l)
};

enum class CriterionKind { Ester, Samos };

struct CriterionTrace {
    std::vector<double> costs;  // indexed by s = 1..s_max
    CriterionKind kind = CriterionKind::Ester;

    int s_max() const { return static_cast<int>(costs.size()); }
};

enum class Rule { Threshold, Ester, Samos, Constrained };

struct SelectionResult {
    int r_hat = 0;
    Rule rule = Rule::Threshold;
    std::optional<CriterionTrace> trace;
    std::optional<int> s_star;
    std::optional<double> tau_used;
};

std::string to_string(Rule rule);
std::string to_string(CriterionKind kind);
std::string to_string(NoiseKind kind);

} // namespace expord
