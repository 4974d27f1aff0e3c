#include "doctest.h"

#include <cmath>

#include "expord/criteria.hpp"
#include "expord/hankel_linalg.hpp"
#include "expord/rng.hpp"
#include "expord/signal_model.hpp"

using namespace expord;

namespace {

SvdSubspaces noisy_subspaces(int preset_id, double snr_db, std::uint64_t seed) {
    const SignalSpec spec = preset(preset_id);
    GaussianRng rng(seed);
    const NoisySignal noisy =
        add_noise(synthesize(spec), snr_db, NoiseKind::Complex, rng);
    return svd_subspaces(hankel(noisy.samples, default_shape(spec.length)));
}

SvdSubspaces basis_only(const CMatrix& u) {
    SvdSubspaces sub;
    sub.left_basis = u;
    sub.singular_values = RVector::Ones(u.cols());
    return sub;
}

} // namespace

TEST_SUITE_BEGIN("criteria");

TEST_CASE("both criteria vanish at the true order on noiseless presets") {
    for (int id : {3, 4}) {
        const SignalSpec spec = preset(id);
        const SvdSubspaces sub =
            svd_subspaces(hankel(synthesize(spec), default_shape(spec.length)));
        CHECK(ester_cost(sub, spec.order()) < 1e-8);
        CHECK(samos_cost(sub, spec.order()) < 1e-8);
    }
}

TEST_CASE("scalar case matches the closed form") {
    // s = 1: cost = ||u_f - u_l (u_l^† u_f)||, the rejection of u_f from u_l
    const SvdSubspaces sub = noisy_subspaces(3, 10.0, 7);
    const ShiftPair pair = shift_pair(sub, 1);
    const CVector uf = pair.top_removed.col(0);
    const CVector ul = pair.bottom_removed.col(0);
    const cplx coef = ul.dot(uf) / ul.squaredNorm();  // u_l^† u_f
    const double expected = (uf - coef * ul).norm();
    CHECK(ester_cost(sub, 1) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("orthonormal orthogonal shift blocks") {
    // u = e2 in C^3: U_f = e1, U_l = e2 in C^2 - orthonormal and orthogonal
    CMatrix u = CMatrix::Zero(3, 1);
    u(1, 0) = cplx(1, 0);
    const SvdSubspaces sub = basis_only(u);
    CHECK(samos_cost(sub, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ester_cost(sub, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ester_bound(sub, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(samos_bound(sub, 1) ==
          doctest::Approx(2.414213562373095049).epsilon(1e-12));
}

TEST_CASE("identical shift blocks") {
    CMatrix u(3, 1);
    u << cplx(1, 0), cplx(1, 0), cplx(1, 0);
    u /= std::sqrt(3.0);
    const SvdSubspaces sub = basis_only(u);
    CHECK(ester_cost(sub, 1) < 1e-12);
    CHECK(ester_bound(sub, 1) < 1e-7);
    CHECK(samos_bound(sub, 1) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
}

TEST_CASE("costs are invariant to column phases") {
    const SvdSubspaces sub = noisy_subspaces(1, 15.0, 11);
    SvdSubspaces phased = sub;
    GaussianRng rng(12);
    for (Eigen::Index j = 0; j < phased.left_basis.cols(); ++j)
        phased.left_basis.col(j) *=
            std::polar(1.0, 6.283185307179586 * rng.uniform01());
    for (int s : {1, 3, 7, 12}) {
        CHECK(ester_cost(sub, s) ==
              doctest::Approx(ester_cost(phased, s)).epsilon(1e-9));
        CHECK(samos_cost(sub, s) ==
              doctest::Approx(samos_cost(phased, s)).epsilon(1e-9));
    }
}

TEST_CASE("theorem bounds dominate the costs on noisy draws") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const SvdSubspaces sub = noisy_subspaces(1, 10.0, 100 + seed);
        const int s_max = default_s_max(sub.rows());
        for (int s = 1; s <= s_max; ++s) {
            const double ec = ester_cost(sub, s);
            if (std::isfinite(ec)) CHECK(ec <= ester_bound(sub, s) + 1e-9);
            CHECK(samos_cost(sub, s) <= samos_bound(sub, s) + 1e-9);
            CHECK(samos_cost(sub, s) >= 0.0);
        }
    }
}

TEST_CASE("samos range precondition") {
    const SvdSubspaces sub = noisy_subspaces(3, 20.0, 5);
    const int m = sub.rows();
    CHECK_THROWS_AS(samos_cost(sub, (m - 1) / 2 + 1), std::invalid_argument);
    CHECK_NOTHROW(samos_cost(sub, (m - 1) / 2));
}

TEST_CASE("rank-deficient bottom block yields the +inf sentinel") {
    // columns e4 and e1: rows 1..3 of the pair are [0 e1], rank 1
    CMatrix u = CMatrix::Zero(4, 2);
    u(3, 0) = cplx(1, 0);
    u(0, 1) = cplx(1, 0);
    const SvdSubspaces sub = basis_only(u);
    CHECK(std::isinf(ester_cost(sub, 2)));
}

TEST_CASE("criterion_trace is deterministic and validated") {
    const SvdSubspaces sub = noisy_subspaces(4, 12.0, 9);
    const int s_max = default_s_max(sub.rows());
    const CriterionTrace a = criterion_trace(sub, CriterionKind::Samos, s_max);
    const CriterionTrace b = criterion_trace(sub, CriterionKind::Samos, s_max);
    REQUIRE(a.s_max() == s_max);
    CHECK(a.costs == b.costs);
    for (double cost : a.costs) {
        CHECK(cost >= 0.0);
        CHECK(std::isfinite(cost));
    }
    CHECK_THROWS_AS(criterion_trace(sub, CriterionKind::Samos, s_max + 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(criterion_trace(sub, CriterionKind::Ester, 0),
                    std::invalid_argument);
}

TEST_CASE("default_s_max honors the SAMOS range") {
    CHECK(default_s_max(65) == 32);
    CHECK(default_s_max(13) == 6);
    CHECK_THROWS_AS(default_s_max(2), std::invalid_argument);
}

TEST_SUITE_END();
