#pragma once

#include "expord/types.hpp"

namespace expord {

/// #{i : σ_i > τ}, the hard-threshold order estimate. Input must be sorted
/// non-increasing. Sub-roundoff singular values (below σ₁·ε·(m+n), with
/// m+n−1 inferred from the count as 2·|σ|−1 unless dims given) never count:
/// the exact-arithmetic reading of τ = 0 on rank-deficient matrices.
SelectionResult select_threshold(const RVector& singular_values, double tau);

/// argmin of the criterion over s = 1..s_max; ties toward smaller s.
SelectionResult select_ester(const SvdSubspaces& subspaces, int s_max);
SelectionResult select_samos(const SvdSubspaces& subspaces, int s_max);
SelectionResult select_from_trace(const CriterionTrace& trace);

/// Constrained rule: s* = #{σ_i > τ}; returns 0 when s* = 0 (no singular
/// value above the noise bound); otherwise argmin of the criterion over
/// s in [max(s*,1), s_max]. Throws when s* > s_max.
SelectionResult select_constrained(const SvdSubspaces& subspaces, double tau,
                                   CriterionKind criterion, int s_max);

/// Same, reusing a precomputed full trace (bench hot path).
SelectionResult select_constrained_from_trace(const RVector& singular_values,
                                              double tau,
                                              const CriterionTrace& trace);

} // namespace expord
