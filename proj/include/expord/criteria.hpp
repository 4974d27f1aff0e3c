#pragma once

#include "expord/types.hpp"

namespace expord {

/// Default shared search range: SAMOS needs 2s <= m-1.
int default_s_max(int m);

/// ‖Q_f(s) − Q_l(s)·Q_l(s)†·Q_f(s)‖₂. Returns +inf when Q_l(s) is
/// rank-deficient (pseudo-inverse tolerance 1e-10·σ₁).
double ester_cost(const SvdSubspaces& subspaces, int s);

/// (1/s)·Σ_{i=s+1}^{2s} ς_i over the singular values of [Q_f(s) Q_l(s)].
/// Requires 2s <= m-1.
double samos_cost(const SvdSubspaces& subspaces, int s);

/// sin θ₁(s), the largest principal angle between the shift blocks.
double ester_bound(const SvdSubspaces& subspaces, int s);

/// √2·[1 + (1/s)·Σ_i sin(θ_i(s)/2)].
double samos_bound(const SvdSubspaces& subspaces, int s);

/// Costs for s = 1..s_max. Order-deterministic regardless of threading.
CriterionTrace criterion_trace(const SvdSubspaces& subspaces,
                               CriterionKind kind, int s_max);

} // namespace expord
