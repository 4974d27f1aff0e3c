#pragma once

#include "expord/types.hpp"

namespace expord {

/// H[i,j] = v[i+j] (constant anti-diagonals); requires |v| = m + n - 1.
CMatrix hankel(const CVector& v, HankelShape shape);

/// Largest singular value.
double spectral_norm(const CMatrix& a);
double spectral_norm_real(const Eigen::MatrixXd& a);

/// Economy SVD with a fixed phase convention: the largest-magnitude entry of
/// each left singular vector is made real positive (right basis rotated to
/// match, so H = QΣP^H still holds). Throws on SVD failure.
SvdSubspaces svd_subspaces(const CMatrix& h, bool want_right = false);

/// Rows 2..m and rows 1..m-1 of the leading s columns; 1 <= s <= min(m,n).
ShiftPair shift_pair(const SvdSubspaces& subspaces, int s);

/// Principal angles between the column spaces of X and Y (equal column
/// count, full column rank), sorted non-increasing; each in [0, π/2].
RVector principal_angles(const CMatrix& x, const CMatrix& y);

/// ‖P_X − P_Y‖₂ between the orthogonal projectors. Equals sin of the largest
/// principal angle; computed from the projectors, not from the angles.
double gap_distance(const CMatrix& x, const CMatrix& y);

/// Unitary polar factor (nearest matrix with orthonormal columns).
CMatrix nearest_orthonormal(const CMatrix& a);

/// #{σ_i > tol·σ₁}; test helper for Kronecker-rank checks.
int numerical_rank(const CMatrix& a, double rel_tol = 1e-8);

} // namespace expord
