#include "expord/hankel_linalg.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace expord {

namespace {

Eigen::BDCSVD<CMatrix> checked_svd(const CMatrix& a, unsigned options) {
    Eigen::BDCSVD<CMatrix> svd(a, options);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("SVD failed to converge");
    return svd;
}

/// Orthonormal basis of the column space; throws when rank < columns.
CMatrix orthonormal_basis_full_rank(const CMatrix& a, const char* who) {
    auto svd = checked_svd(a, Eigen::ComputeThinU);
    const RVector& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(sv.size() - 1) > 1e-10 * sv(0)))
        throw std::invalid_argument(std::string(who) + ": rank-deficient input");
    return svd.matrixU();
}

} // namespace

CMatrix hankel(const CVector& v, HankelShape shape) {
    if (shape.m < 2 || shape.n < 1)
        throw std::invalid_argument("hankel: need m >= 2 and n >= 1");
    if (v.size() != shape.signal_length())
        throw std::invalid_argument("hankel: |v| must equal m + n - 1");
    CMatrix h(shape.m, shape.n);
    for (int j = 0; j < shape.n; ++j)
        for (int i = 0; i < shape.m; ++i)
            h(i, j) = v(i + j);
    return h;
}

double spectral_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    return checked_svd(a, 0).singularValues()(0);
}

double spectral_norm_real(const Eigen::MatrixXd& a) {
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, 0);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("SVD failed to converge");
    return svd.singularValues()(0);
}

SvdSubspaces svd_subspaces(const CMatrix& h, bool want_right) {
    if (h.size() == 0)
        throw std::invalid_argument("svd_subspaces: empty matrix");
    auto svd = checked_svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdSubspaces out;
    out.left_basis = svd.matrixU();
    out.singular_values = svd.singularValues();
    CMatrix right = svd.matrixV();
    // Phase convention: largest-magnitude entry of each left vector made
    // real positive; the right vector absorbs the same factor.
    for (Eigen::Index j = 0; j < out.left_basis.cols(); ++j) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < out.left_basis.rows(); ++i) {
            const double mag = std::abs(out.left_basis(i, j));
            if (mag > best) {
                best = mag;
                imax = i;
            }
        }
        if (best <= 0.0) continue;
        const cplx d = std::conj(out.left_basis(imax, j)) / best;
        out.left_basis.col(j) *= d;
        right.col(j) *= d;
    }
    if (want_right) out.right_basis = std::move(right);
    return out;
}

ShiftPair shift_pair(const SvdSubspaces& subspaces, int s) {
    const int m = subspaces.rows();
    if (m < 2)
        throw std::invalid_argument("shift_pair: need m >= 2");
    if (s < 1 || s > subspaces.count())
        throw std::invalid_argument("shift_pair: s out of range");
    ShiftPair pair;
    pair.top_removed = subspaces.left_basis.block(1, 0, m - 1, s);
    pair.bottom_removed = subspaces.left_basis.block(0, 0, m - 1, s);
    return pair;
}

RVector principal_angles(const CMatrix& x, const CMatrix& y) {
    if (x.cols() != y.cols() || x.cols() == 0)
        throw std::invalid_argument("principal_angles: column counts must match and be > 0");
    if (x.rows() != y.rows())
        throw std::invalid_argument("principal_angles: row counts must match");
    const CMatrix qx = orthonormal_basis_full_rank(x, "principal_angles");
    const CMatrix qy = orthonormal_basis_full_rank(y, "principal_angles");
    const CMatrix overlap = qx.adjoint() * qy;
    RVector cosines = checked_svd(overlap, 0).singularValues();
    const Eigen::Index s = cosines.size();
    RVector angles(s);
    for (Eigen::Index k = 0; k < s; ++k) {
        const double c = std::min(1.0, std::max(0.0, cosines(k)));
        // cosines are non-increasing, so reversing gives θ₁ >= ... >= θ_s
        angles(s - 1 - k) = std::acos(c);
    }
    return angles;
}

double gap_distance(const CMatrix& x, const CMatrix& y) {
    const CMatrix qx = orthonormal_basis_full_rank(x, "gap_distance");
    const CMatrix qy = orthonormal_basis_full_rank(y, "gap_distance");
    const CMatrix diff = qx * qx.adjoint() - qy * qy.adjoint();
    return spectral_norm(diff);
}

CMatrix nearest_orthonormal(const CMatrix& a) {
    if (a.size() == 0)
        throw std::invalid_argument("nearest_orthonormal: empty matrix");
    auto svd = checked_svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-10 * sv(0)))
        throw std::invalid_argument("nearest_orthonormal: rank-deficient input");
    return svd.matrixU() * svd.matrixV().adjoint();
}

int numerical_rank(const CMatrix& a, double rel_tol) {
    if (a.size() == 0) return 0;
    const RVector sv = checked_svd(a, 0).singularValues();
    if (!(sv(0) > 0.0)) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++rank;
    return rank;
}

} // namespace expord
