#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tricap/potentials.hpp"
#include "tricap/sharp.hpp"

#include <cmath>
#include <random>

using namespace tricap;

namespace {

// Independent monomial-by-monomial evaluation of the pair potential,
// transcribed literally: w_ij = 12(pi^2 pj^2 + pj pk pi^2 + pi pk pj^2
// - pi pj pk^2) + 4 L pi^2 pj^2 pk^2.
double w_pair_oracle(const Phi3& phi, int pair, double lambda) {
    const double pi = phi[kPairI[pair]], pj = phi[kPairJ[pair]], pk = phi[kPairOther[pair]];
    double acc = 0.0;
    acc += 12.0 * pi * pi * pj * pj;
    acc += 12.0 * pj * pk * pi * pi;
    acc += 12.0 * pi * pk * pj * pj;
    acc -= 12.0 * pi * pj * pk * pk;
    acc += 4.0 * lambda * pi * pi * pj * pj * pk * pk;
    return acc;
}

Phi3 random_simplex(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    return {a, b - a, 1.0 - b};
}

} // namespace

TEST_CASE("w_pair values") {
    for (int p = 0; p < 3; ++p) {
        for (int corner = 0; corner < 3; ++corner) {
            Phi3 e{0.0, 0.0, 0.0};
            e[corner] = 1.0;
            CHECK(blm::w_pair(e, p, 0.7) == doctest::Approx(0.0));
        }
    }
    CHECK(blm::w_pair({0.5, 0.5, 0.0}, 0, 0.0) == doctest::Approx(0.75));
    CHECK(blm::w_pair({0.5, 0.5, 0.0}, 0, 13.0) == doctest::Approx(0.75)); // Lambda inert here
    // simplex center, frozen from the monomial oracle: 12 * 2/81
    const Phi3 center{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    CHECK(w_pair_oracle(center, 0, 0.0) == doctest::Approx(24.0 / 81.0).epsilon(1e-14));
    CHECK(blm::w_pair(center, 0, 0.0) == doctest::Approx(24.0 / 81.0).epsilon(1e-14));

    std::mt19937 rng(42);
    for (int k = 0; k < 50; ++k) {
        const Phi3 phi = random_simplex(rng);
        for (int p = 0; p < 3; ++p)
            CHECK(blm::w_pair(phi, p, 0.3) ==
                  doctest::Approx(w_pair_oracle(phi, p, 0.3)).epsilon(1e-13));
    }
}

TEST_CASE("w_pair_grad: corners, hand value, and central differences") {
    for (int p = 0; p < 3; ++p) {
        Phi3 e{0.0, 0.0, 0.0};
        e[p] = 1.0;
        const Phi3 g = blm::w_pair_grad(e, p, 0.5);
        for (double v : g) CHECK(v == doctest::Approx(0.0));
    }
    // phi = (1/2, 1/2, 0), pair (1,2), Lambda = 0: d/dphi1 = 12 * 2 * (1/2) * (1/4) = 3
    CHECK(blm::w_pair_grad({0.5, 0.5, 0.0}, 0, 0.0)[0] == doctest::Approx(3.0));

    std::mt19937 rng(7);
    const double step = 1e-6;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Phi3 phi = random_simplex(rng);
        for (int p = 0; p < 3; ++p) {
            const Phi3 g = blm::w_pair_grad(phi, p, 0.4);
            double scale = 1.0;
            for (double v : g) scale = std::max(scale, std::fabs(v));
            for (int comp = 0; comp < 3; ++comp) {
                Phi3 lo = phi, hi = phi;
                lo[comp] -= step;
                hi[comp] += step;
                const double fd =
                    (blm::w_pair(hi, p, 0.4) - blm::w_pair(lo, p, 0.4)) / (2.0 * step);
                worst = std::max(worst, std::fabs(fd - g[comp]) / scale);
            }
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("a_pair of prescribed gradients") {
    Grad3 g{Vec2{1.0, 0.0}, Vec2{-1.0, 0.0}, Vec2{0.0, 0.0}};
    CHECK(blm::a_pair(g, 0) == doctest::Approx(0.75));
    CHECK(blm::a_pair(g, 1) == doctest::Approx(0.0)); // (3/8)(1 + 0 - 1)
    Grad3 zero{Vec2{0, 0}, Vec2{0, 0}, Vec2{0, 0}};
    for (int p = 0; p < 3; ++p) CHECK(blm::a_pair(zero, p) == doctest::Approx(0.0));
}

TEST_CASE("tanh profile identities: equipartition and unit delta mass") {
    const double eps = 0.08;
    const TanhProfile chi{eps, 0.0};
    // pointwise equipartition eps*a = w/eps along the profile
    for (double z = -4.0 * eps; z <= 4.0 * eps; z += eps / 7.0) {
        const double phi1 = chi(z);
        const Phi3 phi{phi1, 1.0 - phi1, 0.0};
        const double d = chi.derivative(z);
        const Grad3 grads{Vec2{d, 0.0}, Vec2{-d, 0.0}, Vec2{0.0, 0.0}};
        const double a = blm::a_pair(grads, 0);
        const double w = blm::w_pair(phi, 0, 0.0);
        CHECK(eps * a == doctest::Approx(w / eps).epsilon(1e-12));
    }
    // trapezoid quadrature of delta across the layer
    const double zmax = 12.0 * eps, hz = eps / 400.0;
    double mass = 0.0;
    for (double z = -zmax; z < zmax; z += hz) {
        auto delta_at = [&](double zz) {
            const double phi1 = chi(zz);
            const double d = chi.derivative(zz);
            const Phi3 phi{phi1, 1.0 - phi1, 0.0};
            const Grad3 grads{Vec2{d, 0.0}, Vec2{-d, 0.0}, Vec2{0.0, 0.0}};
            return blm::delta_pair(phi, grads, 0, eps, 0.0);
        };
        mass += 0.5 * hz * (delta_at(z) + delta_at(z + hz));
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("delta at bulk points and regularization floor") {
    Phi3 corner{1.0, 0.0, 0.0};
    Grad3 zero{Vec2{0, 0}, Vec2{0, 0}, Vec2{0, 0}};
    for (int p = 0; p < 3; ++p) CHECK(blm::delta_pair(corner, zero, p, 0.1, 0.1) == 0.0);

    CHECK(blm::delta_regularized(0.5, 0.1, 0.001) == doctest::Approx(0.5));
    CHECK(blm::delta_regularized(0.0, 0.1, 0.001) == doctest::Approx(1e-5));
    CHECK(blm::delta_regularized(-1e-9, 0.1, 0.001) == doctest::Approx(1e-5));
    // large negative excursions are floored too (ellipticity)
    CHECK(blm::delta_regularized(-3.0, 0.1, 0.001) == doctest::Approx(1e-5));
}

TEST_CASE("xi interpolant") {
    CHECK(blm::xi(0.0) == 0.0);
    CHECK(blm::xi(1.0) == 1.0);
    CHECK(blm::xi(-0.3) == 0.0);
    CHECK(blm::xi(1.7) == 1.0);
    CHECK(blm::xi(0.5) == doctest::Approx(0.5));
    CHECK(blm::xi_prime(0.0) == 0.0);
    CHECK(blm::xi_prime(1.0) == 0.0);
    CHECK(blm::xi_prime(0.5) == doctest::Approx(1.5));
    for (double d : {1e-3, 1e-4, 1e-5}) {
        CHECK(std::fabs(blm::xi(d)) <= 3.0 * d * d);
        CHECK(std::fabs(blm::xi(1.0 - d) - 1.0) <= 3.0 * d * d);
    }
    // two-phase partition of unity, used by the capillary force cancellation
    for (double p = 0.0; p <= 1.0; p += 0.05)
        CHECK(blm::xi(p) + blm::xi(1.0 - p) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("di_w: corners, antisymmetry, and the simplex identity") {
    EnergyModel model;
    model.sigma0 = 1.0;

    for (int corner = 0; corner < 3; ++corner) {
        Phi3 e{0.0, 0.0, 0.0};
        e[corner] = 1.0;
        const Phi3 d = blm::di_w(e, 0.2, model, 0.1);
        for (double v : d) CHECK(v == doctest::Approx(0.0));
    }

    // symmetric tensions, phi = (1/2, 1/2, 0): D_1 w = -D_2 w
    const Phi3 d = blm::di_w({0.5, 0.5, 0.0}, 0.0, model, 0.0);
    CHECK(d[0] == doctest::Approx(-d[1]).epsilon(1e-13));

    std::mt19937 rng(11);
    EnergyModel lens;
    lens.sigma0 = 4.0;
    lens.beta_pair = {1.0 / 24.0, 1.0 / (8.0 * (4.0 - std::sqrt(3.0))), 1.0 / 16.0};
    for (int k = 0; k < 100; ++k) {
        const Phi3 phi = random_simplex(rng);
        const double q = 0.5 * (k % 11) / 10.0;
        const SpreadingCoefficients sc = spreading_coefficients(lens, q);
        const Phi3 dv = blm::di_w(phi, q, lens, 0.1);
        double sum = 0.0, scale = 0.0;
        for (int i = 0; i < 3; ++i) {
            sum += dv[i] / sc.s[i];
            scale = std::max(scale, std::fabs(dv[i]));
        }
        CHECK(std::fabs(sum) <= 1e-12 * std::max(1.0, scale));
    }

    // spreading state degenerates the mobility construction
    EnergyModel bad;
    bad.sigma0 = 1.0;
    bad.beta_pair = {0.04, 1.0, 1.0}; // sigt_12 goes negative fast
    CHECK_THROWS(blm::di_w({0.3, 0.3, 0.4}, 0.5, bad, 0.1));
}

TEST_CASE("weighted well is nonnegative on the simplex for equal tensions") {
    const std::array<double, 3> gamma{1.0, 1.0, 1.0};
    for (int a = 0; a <= 50; ++a) {
        for (int b = 0; b <= 50 - a; ++b) {
            const Phi3 phi{a / 50.0, b / 50.0, 1.0 - (a + b) / 50.0};
            CHECK(blm::w_total(phi, gamma, 0.0) >= -1e-13);
        }
    }
}

TEST_CASE("two-phase reduction on the phi_3 = 0 edge") {
    for (double t = 0.0; t <= 1.0; t += 0.02) {
        const Phi3 phi{t, 1.0 - t, 0.0};
        CHECK(blm::w_pair(phi, 0, 0.7) == doctest::Approx(12.0 * t * t * (1 - t) * (1 - t)));
        CHECK(blm::w_pair(phi, 1, 0.7) == doctest::Approx(0.0));
        CHECK(blm::w_pair(phi, 2, 0.7) == doctest::Approx(0.0));
    }
}
