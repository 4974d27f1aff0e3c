#include "doctest.h"

#include <cmath>

#include "expord/hankel_linalg.hpp"
#include "expord/rng.hpp"
#include "expord/thresholds.hpp"

using namespace expord;

namespace {

CVector gaussian_complex_vector(int len, double eta, std::uint64_t seed) {
    GaussianRng rng(seed);
    const double sigma = eta / std::sqrt(2.0);
    CVector v(len);
    for (int i = 0; i < len; ++i)
        v(i) = cplx(sigma * rng.normal(), sigma * rng.normal());
    return v;
}

// Simpson oracle for the density integral.
double integrate(double (*f)(double, double), double c, double lo, double hi,
                 int panels) {
    const double h = (hi - lo) / panels;
    double acc = f(lo, c) + f(hi, c);
    for (int i = 1; i < panels; ++i)
        acc += f(lo + i * h, c) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace

TEST_SUITE_BEGIN("thresholds");

TEST_CASE("tau_complex matches the high-precision evaluation") {
    CHECK(tau_complex(64, 64, 1.0, 0.9) ==
          doctest::Approx(30.017679576621895743).epsilon(1e-12));
    // linear in eta (exact homogeneity of the formula)
    CHECK(tau_complex(64, 64, 2.0, 0.9) ==
          doctest::Approx(2.0 * tau_complex(64, 64, 1.0, 0.9)).epsilon(1e-14));
}

TEST_CASE("tau_real matches the high-precision evaluation") {
    CHECK(tau_real(64, 64, 1.0, 0.9) ==
          doctest::Approx(30.262035055246182911).epsilon(1e-12));
    CHECK(tau_real(64, 64, 0.5, 0.9) ==
          doctest::Approx(0.5 * tau_real(64, 64, 1.0, 0.9)).epsilon(1e-14));
}

TEST_CASE("tau functions are strictly increasing in beta") {
    double prev_c = 0.0, prev_r = 0.0;
    for (double beta : {0.05, 0.3, 0.5, 0.7, 0.9, 0.99, 0.9999}) {
        const double tc = tau_complex(32, 32, 1.0, beta);
        const double tr = tau_real(32, 32, 1.0, beta);
        CHECK(tc > prev_c);
        CHECK(tr > prev_r);
        prev_c = tc;
        prev_r = tr;
    }
}

TEST_CASE("invalid beta and eta are rejected") {
    CHECK_THROWS_AS(tau_complex(8, 8, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(tau_complex(8, 8, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tau_real(8, 8, 1.0, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(tau_complex(8, 8, -1.0, 0.9), std::invalid_argument);
}

TEST_CASE("kappa values") {
    CHECK(kappa(1.0) == doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-13));
    CHECK(kappa(0.5) == doctest::Approx(1.656672160247171130).epsilon(1e-13));
    CHECK_THROWS_AS(kappa(0.0), std::invalid_argument);
    CHECK_THROWS_AS(kappa(1.5), std::invalid_argument);
}

TEST_CASE("tau_gavish square case and dimension swap") {
    CHECK(tau_gavish(64, 64, 1.0) ==
          doctest::Approx(18.475208614068024464).epsilon(1e-12));
    CHECK(tau_gavish(32, 64, 0.7) ==
          doctest::Approx(tau_gavish(64, 32, 0.7)).epsilon(1e-14));
}

TEST_CASE("tau dispatch and the noiseless limit") {
    CHECK(tau(TauKind::ComplexHankelT1, 64, 64, 0.0, 0.9) == 0.0);
    CHECK(tau(TauKind::RealHankelT2, 64, 64, 0.0, 0.9) == 0.0);
    CHECK(tau(TauKind::GavishT3, 64, 64, 0.0, 0.9) == 0.0);
    CHECK(tau(TauKind::ComplexHankelT1, 64, 64, 1.0, 0.9) ==
          tau_complex(64, 64, 1.0, 0.9));
}

TEST_CASE("Marchenko-Pastur density values and support") {
    CHECK(mp_density(0.2, 0.25) == 0.0);   // below support
    CHECK(mp_density(1.8, 0.25) == 0.0);   // above support
    CHECK(mp_density(std::sqrt(2.0), 1.0) ==
          doctest::Approx(0.450158158078553035).epsilon(1e-12));
    CHECK_THROWS_AS(mp_density(1.0, 1.2), std::invalid_argument);
}

TEST_CASE("Marchenko-Pastur density integrates to one") {
    for (double c : {0.25, 0.5, 1.0}) {
        const double lo = 1.0 - std::sqrt(c);
        const double hi = 1.0 + std::sqrt(c);
        const double total = integrate(mp_density, c, lo, hi, 200000);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("circulant bound on an impulse is tight") {
    CVector w = CVector::Zero(5);
    w(0) = cplx(1, 0);
    CHECK(circulant_norm_bound(w, 3, 3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_norm(hankel(w, {3, 3})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("circulant bound on all-ones") {
    const int n = 4;
    const CVector w = CVector::Ones(2 * n - 1);
    CHECK(circulant_norm_bound(w, n, n) ==
          doctest::Approx(2.0 * n - 1.0).epsilon(1e-12));
    CHECK(spectral_norm(hankel(w, {n, n})) ==
          doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
}

TEST_CASE("circulant bound dominates the Hankel norm on random draws") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const CVector w = gaussian_complex_vector(31, 1.0, 500 + seed);
        CHECK(spectral_norm(hankel(w, {16, 16})) <=
              circulant_norm_bound(w, 16, 16) + 1e-12);
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const CVector w = gaussian_complex_vector(16, 0.7, 900 + seed);
        CHECK(spectral_norm(hankel(w, {12, 5})) <=
              circulant_norm_bound(w, 12, 5) + 1e-12);
    }
    CHECK_THROWS_AS(circulant_norm_bound(CVector::Ones(4), 3, 3),
                    std::invalid_argument);
}

TEST_CASE("hankel_norm_cdf_lower endpoints and inversion") {
    CHECK(hankel_norm_cdf_lower(0.0, 16, 16, 1.0) == 0.0);
    CHECK(hankel_norm_cdf_lower(-1.0, 16, 16, 1.0) == 0.0);
    CHECK(hankel_norm_cdf_lower(1e9, 16, 16, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (double beta : {0.5, 0.9, 0.99}) {
        for (double eta : {0.3, 1.0, 2.5}) {
            const double t = tau_complex(24, 18, eta, beta);
            CHECK(hankel_norm_cdf_lower(t, 24, 18, eta) ==
                  doctest::Approx(beta).epsilon(1e-10));
        }
    }
}

TEST_CASE("empirical coverage of tau_complex at small scale") {
    const int m = 24, n = 24, draws = 400;
    const double beta = 0.9;
    const double cut = tau_complex(m, n, 1.0, beta);
    int covered = 0;
    for (std::uint64_t seed = 0; seed < draws; ++seed) {
        const CVector w = gaussian_complex_vector(m + n - 1, 1.0, 7000 + seed);
        if (spectral_norm(hankel(w, {m, n})) <= cut) ++covered;
    }
    const double margin = 3.0 * std::sqrt(beta * (1 - beta) / draws);
    CHECK(static_cast<double>(covered) / draws >= beta - margin);
}

TEST_SUITE_END();
