#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tricap/energetics.hpp"

#include <cmath>

using namespace tricap;

namespace {
const double kSqrt3 = std::sqrt(3.0);

EnergyModel lens_model() {
    EnergyModel m;
    m.sigma0 = 4.0;
    m.beta_pair = {1.0 / 24.0, 1.0 / (8.0 * (4.0 - kSqrt3)), 1.0 / 16.0};
    m.beta_bulk = {1.0, 1.0, 1.0};
    return m;
}
} // namespace

TEST_CASE("densities are the linear inverses of the quadratic energies") {
    EnergyModel m;
    m.beta_pair = {4.0, 1.0, 0.2};
    CHECK(surface_density(m, 0, 0.5) == doctest::Approx(0.125));
    CHECK(surface_density(m, 1, 0.0) == doctest::Approx(0.0));
    CHECK(surface_density(m, 2, 0.5) == doctest::Approx(2.5));
    CHECK(bulk_density(m, 0, 0.5) == doctest::Approx(0.5)); // beta_i = 1
    CHECK(bulk_density(m, 1, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("surface tensions at the lens parameters") {
    const EnergyModel m = lens_model();
    CHECK(surface_tension(m, 0, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(surface_tension(m, 1, 0.5) == doctest::Approx(kSqrt3).epsilon(1e-12));
    CHECK(surface_tension(m, 2, 0.5) == doctest::Approx(2.0).epsilon(1e-13));
    for (int p = 0; p < 3; ++p) CHECK(surface_tension(m, p, 0.0) == doctest::Approx(4.0));
}

TEST_CASE("bulk grand potential of the quadratic energy") {
    EnergyModel m;
    CHECK(bulk_grand_potential(m, 0, 0.5) == doctest::Approx(-0.125));
    CHECK(bulk_grand_potential(m, 1, 0.0) == doctest::Approx(0.0));
    CHECK(bulk_grand_potential(m, 2, 1.0) == doctest::Approx(-0.5));
}

TEST_CASE("conserved susceptibilities are 1/beta, independent of q") {
    EnergyModel m;
    m.beta_pair = {4.0, 1.0, 2.0};
    CHECK(surface_susceptibility(m, 0) == doctest::Approx(0.25));
    CHECK(surface_susceptibility(m, 1) == doctest::Approx(1.0));
    CHECK(bulk_susceptibility(m, 0) == doctest::Approx(1.0));
}

TEST_CASE("spreading coefficients and the averaged coefficient") {
    EnergyModel m;
    m.sigma0 = 4.0;
    SUBCASE("equal tensions give S_k = sigma0") {
        const SpreadingCoefficients sc = spreading_coefficients(m, 0.0);
        for (double s : sc.s) CHECK(s == doctest::Approx(4.0));
        CHECK(!sc.spreading);
        CHECK(sc.sbar == doctest::Approx(4.0)); // harmonic mean of equal values
    }
    SUBCASE("mixed tensions") {
        TensionTriple t;
        t.sigma = {1.0, kSqrt3, 2.0};
        const SpreadingCoefficients sc = spreading_from_tensions(t);
        CHECK(sc.s[0] == doctest::Approx(kSqrt3 - 1.0)); // 1 + sqrt3 - 2
        CHECK(!sc.spreading);
    }
    SUBCASE("triangle inequality violation flags spreading") {
        TensionTriple t;
        t.sigma = {3.0, 1.0, 1.0};
        const SpreadingCoefficients sc = spreading_from_tensions(t);
        CHECK(sc.spreading);
        CHECK(sc.s[2] == doctest::Approx(-1.0));
    }
    SUBCASE("literal mode uses the displayed sum") {
        TensionTriple t;
        t.sigma = {1.0, 1.0, 1.0};
        const SpreadingCoefficients harm = spreading_from_tensions(t, SbarMode::Harmonic);
        const SpreadingCoefficients lit = spreading_from_tensions(t, SbarMode::Literal);
        CHECK(harm.sbar == doctest::Approx(1.0));
        CHECK(lit.sbar == doctest::Approx(9.0)); // sum of 3/S_i
    }
}

TEST_CASE("Gibbs duality: grand potentials strictly decrease in |q|") {
    const EnergyModel m = lens_model();
    double prev_sig = surface_tension(m, 0, 0.0);
    double prev_lam = bulk_grand_potential(m, 0, 0.0);
    for (double q = 0.1; q < 1.0; q += 0.1) {
        const double sig = surface_tension(m, 0, q);
        const double lam = bulk_grand_potential(m, 0, q);
        CHECK(sig < prev_sig);
        CHECK(lam < prev_lam);
        prev_sig = sig;
        prev_lam = lam;
    }
}

TEST_CASE("tension identity sigt + q c = gamma(c(q))") {
    const EnergyModel m = lens_model();
    for (double q : {-0.7, -0.2, 0.0, 0.3, 0.5, 1.1}) {
        for (int p = 0; p < 3; ++p) {
            const double c = surface_density(m, p, q);
            const double gamma = m.sigma0 + 0.5 * m.beta_pair[p] * c * c;
            CHECK(surface_tension(m, p, q) + q * c == doctest::Approx(gamma).epsilon(1e-12));
            CHECK(surface_energy(m, p, q) == doctest::Approx(gamma).epsilon(1e-12));
        }
    }
}

TEST_CASE("law of sines holds for the lens tension triangle") {
    // tensions (1, sqrt(3), 2) pair with angles (pi/2, 2pi/3, 5pi/6)
    const double sigma[3] = {1.0, kSqrt3, 2.0};
    const double psi[3] = {M_PI / 2.0, 2.0 * M_PI / 3.0, 5.0 * M_PI / 6.0};
    // sigma_ij / sin(psi_k) with psi_k opposite the (i,j) tension
    const double r0 = sigma[0] / std::sin(psi[2]);
    const double r1 = sigma[1] / std::sin(psi[1]);
    const double r2 = sigma[2] / std::sin(psi[0]);
    CHECK(r0 == doctest::Approx(r1).epsilon(1e-12));
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
}

TEST_CASE("model validation rejects non-convex parameters") {
    EnergyModel m;
    m.beta_pair[1] = 0.0;
    CHECK_THROWS(m.validate());
    EnergyModel m2;
    m2.sigma0 = -1.0;
    CHECK_THROWS(m2.validate());
    CHECK_THROWS(pair_index(1, 1));
    CHECK(pair_index(1, 0) == 0);
    CHECK(pair_index(2, 0) == 1);
}
