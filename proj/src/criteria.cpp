#include "expord/criteria.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "expord/hankel_linalg.hpp"

namespace expord {

int default_s_max(int m) {
    if (m < 3)
        throw std::invalid_argument("default_s_max: need m >= 3");
    return (m - 1) / 2;
}

namespace {

void check_s(const SvdSubspaces& subspaces, int s) {
    if (s < 1 || s > subspaces.count())
        throw std::invalid_argument("criterion: s out of range");
    if (subspaces.rows() < 2)
        throw std::invalid_argument("criterion: need m >= 2");
}

} // namespace

double ester_cost(const SvdSubspaces& subspaces, int s) {
    check_s(subspaces, s);
    const ShiftPair pair = shift_pair(subspaces, s);
    Eigen::BDCSVD<CMatrix> svd(pair.bottom_removed, Eigen::ComputeThinU);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("ester_cost: SVD failed");
    const RVector& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-10 * sv(0)))
        return kInf;  // degenerate: s past the identifiable range
    // Q_l Q_l† = A A^H with A the orthonormal column basis of Q_l.
    const CMatrix& basis = svd.matrixU();
    const CMatrix residual =
        pair.top_removed - basis * (basis.adjoint() * pair.top_removed);
    return spectral_norm(residual);
}

double samos_cost(const SvdSubspaces& subspaces, int s) {
    check_s(subspaces, s);
    const int m = subspaces.rows();
    if (2 * s > m - 1)
        throw std::invalid_argument("samos_cost: need 2s <= m - 1");
    const ShiftPair pair = shift_pair(subspaces, s);
    CMatrix augmented(m - 1, 2 * s);
    augmented << pair.top_removed, pair.bottom_removed;
    Eigen::BDCSVD<CMatrix> svd(augmented, 0);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("samos_cost: SVD failed");
    const RVector& sv = svd.singularValues();
    double tail = 0.0;
    for (int i = s; i < 2 * s; ++i) tail += sv(i);
    return tail / s;
}

double ester_bound(const SvdSubspaces& subspaces, int s) {
    check_s(subspaces, s);
    const ShiftPair pair = shift_pair(subspaces, s);
    const RVector angles = principal_angles(pair.top_removed, pair.bottom_removed);
    return std::sin(angles(0));
}

double samos_bound(const SvdSubspaces& subspaces, int s) {
    check_s(subspaces, s);
    const ShiftPair pair = shift_pair(subspaces, s);
    const RVector angles = principal_angles(pair.top_removed, pair.bottom_removed);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < angles.size(); ++i) acc += std::sin(angles(i) / 2.0);
    return std::sqrt(2.0) * (1.0 + acc / s);
}

CriterionTrace criterion_trace(const SvdSubspaces& subspaces, CriterionKind kind,
                               int s_max) {
    if (s_max < 1)
        throw std::invalid_argument("criterion_trace: s_max must be >= 1");
    if (kind == CriterionKind::Samos && 2 * s_max > subspaces.rows() - 1)
        throw std::invalid_argument("criterion_trace: s_max exceeds SAMOS range");
    if (s_max > subspaces.count())
        throw std::invalid_argument("criterion_trace: s_max exceeds basis size");
    CriterionTrace trace;
    trace.kind = kind;
    trace.costs.resize(s_max);
    for (int s = 1; s <= s_max; ++s)
        trace.costs[s - 1] = kind == CriterionKind::Ester
                                 ? ester_cost(subspaces, s)
                                 : samos_cost(subspaces, s);
    return trace;
}

} // namespace expord
