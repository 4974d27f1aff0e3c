#include "expord/selectors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "expord/criteria.hpp"

namespace expord {

namespace {

/// Comparisons against τ ignore sub-roundoff singular values: a computed σ
/// below σ₁·ε·(8·count) is indistinguishable from zero, and τ = 0 (the
/// noiseless limit) must count exactly the numerically nonzero ones.
double effective_tau(const RVector& sv, double tau) {
    if (sv.size() == 0) return tau;
    const double floor = sv(0) * std::numeric_limits<double>::epsilon() *
                         8.0 * static_cast<double>(sv.size());
    return std::max(tau, floor);
}

int count_above(const RVector& sv, double tau) {
    const double cut = effective_tau(sv, tau);
    int count = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++count;
    return count;
}

void check_sorted(const RVector& sv) {
    for (Eigen::Index i = 1; i < sv.size(); ++i)
        if (sv(i) > sv(i - 1))
            throw std::invalid_argument("select: singular values must be non-increasing");
}

/// argmin over s in [lo, s_max], 1-based; +inf entries excluded.
int argmin_cost(const CriterionTrace& trace, int lo) {
    int best_s = 0;
    double best = kInf;
    for (int s = lo; s <= trace.s_max(); ++s) {
        const double cost = trace.costs[s - 1];
        if (std::isfinite(cost) && cost < best) {
            best = cost;
            best_s = s;
        }
    }
    if (best_s == 0)
        throw std::runtime_error("select: all criterion costs degenerate");
    return best_s;
}

} // namespace

SelectionResult select_threshold(const RVector& singular_values, double tau) {
    check_sorted(singular_values);
    if (!(tau >= 0.0))
        throw std::invalid_argument("select_threshold: tau must be >= 0");
    SelectionResult result;
    result.rule = Rule::Threshold;
    result.r_hat = count_above(singular_values, tau);
    result.tau_used = tau;
    return result;
}

SelectionResult select_from_trace(const CriterionTrace& trace) {
    SelectionResult result;
    result.rule = trace.kind == CriterionKind::Ester ? Rule::Ester : Rule::Samos;
    result.r_hat = argmin_cost(trace, 1);
    result.trace = trace;
    return result;
}

SelectionResult select_ester(const SvdSubspaces& subspaces, int s_max) {
    return select_from_trace(criterion_trace(subspaces, CriterionKind::Ester, s_max));
}

SelectionResult select_samos(const SvdSubspaces& subspaces, int s_max) {
    return select_from_trace(criterion_trace(subspaces, CriterionKind::Samos, s_max));
}

SelectionResult select_constrained_from_trace(const RVector& singular_values,
                                              double tau,
                                              const CriterionTrace& trace) {
    check_sorted(singular_values);
    if (!(tau >= 0.0))
        throw std::invalid_argument("select_constrained: tau must be >= 0");
    const int s_star = count_above(singular_values, tau);
    if (s_star > trace.s_max())
        throw std::runtime_error("select_constrained: s* exceeds s_max; enlarge the search range");
    SelectionResult result;
    result.rule = Rule::Constrained;
    result.s_star = s_star;
    result.tau_used = tau;
    if (s_star == 0) {
        result.r_hat = 0;  // nothing above the noise bound
        return result;
    }
    result.r_hat = argmin_cost(trace, std::max(s_star, 1));
    result.trace = trace;
    return result;
}

SelectionResult select_constrained(const SvdSubspaces& subspaces, double tau,
                                   CriterionKind criterion, int s_max) {
    check_sorted(subspaces.singular_values);
    if (!(tau >= 0.0))
        throw std::invalid_argument("select_constrained: tau must be >= 0");
    const int s_star = count_above(subspaces.singular_values, tau);
    if (s_star > s_max)
        throw std::runtime_error("select_constrained: s* exceeds s_max; enlarge the search range");
    if (s_star == 0) {
        SelectionResult result;
        result.rule = Rule::Constrained;
        result.s_star = 0;
        result.tau_used = tau;
        result.r_hat = 0;
        return result;
    }
    return select_constrained_from_trace(subspaces.singular_values, tau,
                                         criterion_trace(subspaces, criterion, s_max));
}

} // namespace expord
