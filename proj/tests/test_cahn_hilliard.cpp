#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tricap/cahn_hilliard.hpp"
#include "tricap/diagnostics.hpp"
#include "tricap/experiments.hpp"
#include "tricap/operators.hpp"
#include "tricap/sharp.hpp"

#include <cmath>
#include <random>

using namespace tricap;

namespace {

const double kPi = 3.14159265358979323846;

EnergyModel unit_model() {
    EnergyModel m;
    m.sigma0 = 1.0;
    return m;
}

// Pseudo-1D vertical interface between phases 1 and 2 at x = x0.
CHState tanh_strip(std::shared_ptr<const Domain> dom, double eps, double x0) {
    CHState st = CHState::zeros(dom);
    const Grid2D& g = dom->grid();
    const TanhProfile chi{eps, x0};
    for (int c : dom->cells()) {
        const double p = chi(g.xc(c % g.nx));
        st.phi[0][c] = p;
        st.phi[1][c] = 1.0 - p;
    }
    return st;
}

CHState corner_state(std::shared_ptr<const Domain> dom, int k) {
    CHState st = CHState::zeros(dom);
    for (int c : dom->cells()) st.phi[k][c] = 1.0;
    return st;
}

} // namespace

TEST_CASE("compute_mu vanishes at a uniform corner state") {
    auto dom = Domain::rectangle(0, 0, 1, 1, 0.05);
    PotentialParams params;
    params.epsilon = 0.1;
    const auto mu = compute_mu(corner_state(dom, 1), ScalarField(dom), unit_model(), params);
    for (int i = 0; i < 3; ++i) CHECK(max_abs(mu[i]) < 1e-12);
}

TEST_CASE("compute_mu residual on the tanh profile vanishes under refinement") {
    // the planar profile is the leading-order stationary solution; the
    // discrete residual away from the boundary must shrink at second order
    const double eps = 0.2;
    double prev = 0.0;
    for (int level = 0; level < 3; ++level) {
        const double h = eps / (4 << level);
        auto dom = Domain::rectangle(0, 0, 1, 4 * h, h);
        const CHState st = tanh_strip(dom, eps, 0.5);
        PotentialParams params;
        params.epsilon = eps;
        const auto mu = compute_mu(st, ScalarField(dom), unit_model(), params);
        double res = 0.0;
        const Grid2D& g = dom->grid();
        for (int c : dom->cells()) {
            const double x = g.xc(c % g.nx);
            if (x < 0.15 || x > 0.85) continue; // skip the wall-truncation zone
            res = std::max(res, std::fabs(mu[0][c]));
        }
        if (level > 0) CHECK(prev / res > 3.0);
        prev = res;
    }
}

TEST_CASE("sum of mu_i / S_i vanishes pointwise") {
    auto dom = Domain::rectangle(0, 0, 1, 1, 0.05);
    const Grid2D& g = dom->grid();
    CHState st = CHState::zeros(dom);
    ScalarField q(dom);
    for (int c : dom->cells()) {
        const double x = g.xc(c % g.nx), y = g.yc(c / g.nx);
        const double a = 0.5 + 0.3 * std::sin(3 * x) * std::cos(2 * y);
        const double b = 0.4 * (1.0 - a) * (0.6 + 0.4 * std::sin(x + y));
        st.phi[0][c] = a;
        st.phi[1][c] = b;
        st.phi[2][c] = 1.0 - a - b;
        q[c] = 0.4 * std::sin(2 * x) * std::sin(y);
    }
    EnergyModel model;
    model.sigma0 = 4.0;
    model.beta_pair = {1.0 / 24.0, 1.0 / (8.0 * (4.0 - std::sqrt(3.0))), 1.0 / 16.0};
    PotentialParams params;
    params.epsilon = 0.1;
    const auto mu = compute_mu(st, q, model, params);
    double worst = 0.0;
    for (int c : dom->cells()) {
        const auto sc = spreading_coefficients(model, q[c]);
        double sum = 0.0, scale = 1.0;
        for (int i = 0; i < 3; ++i) {
            sum += mu[i][c] / sc.s[i];
            scale = std::max(scale, std::fabs(mu[i][c]));
        }
        worst = std::max(worst, std::fabs(sum) / scale);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("step_ch: uniform corner state is a fixed point") {
    auto dom = Domain::rectangle(0, 0, 1, 1, 0.05);
    PotentialParams params;
    params.epsilon = 0.1;
    params.m_c = 0.1;
    CHConfig cfg;
    CHState st = corner_state(dom, 0);
    ScalarField q(dom, 0.3);
    for (int s = 0; s < 5; ++s) {
        const CHState next = step_ch(st, q, nullptr, unit_model(), params, cfg);
        for (int i = 0; i < 3; ++i)
            for (int c : dom->cells())
                CHECK(std::fabs(next.phi[i][c] - st.phi[i][c]) < 1e-12);
        st = next;
    }
}

TEST_CASE("step_ch conservation and structure on a two-phase strip") {
    const double eps = 0.1;
    auto dom = Domain::rectangle(0, 0, 1, 0.1, eps / 4.0);
    CHState st = tanh_strip(dom, eps, 0.5);
    PotentialParams params;
    params.epsilon = eps;
    params.m_c = 0.1;
    CHConfig cfg;
    const ScalarField q(dom);
    const EnergyModel model = unit_model();

    const double mass0[3] = {integrate(st.phi[0]), integrate(st.phi[1]), integrate(st.phi[2])};
    double energy = gl_energy(st, q, model, params);
    const double e_scale = std::max(1.0, energy);

    double worst_mass = 0.0, worst_simplex = 0.0, worst_phi3 = 0.0, worst_energy_rise = 0.0;
    for (int s = 0; s < 200; ++s) {
        st = step_ch(st, q, nullptr, model, params, cfg);
        for (int i = 0; i < 3; ++i)
            worst_mass = std::max(worst_mass, std::fabs(integrate(st.phi[i]) - mass0[i]));
        worst_simplex = std::max(worst_simplex, st.max_simplex_defect());
        if (s < 100) worst_phi3 = std::max(worst_phi3, max_abs(st.phi[2]));
        const double e_new = gl_energy(st, q, model, params);
        worst_energy_rise = std::max(worst_energy_rise, e_new - energy);
        energy = e_new;
    }
    CHECK(worst_mass < 1e-12);            // per-step drift bound, integrated
    CHECK(worst_simplex < 1e-10);
    CHECK(worst_phi3 < 1e-8);             // third-phase consistency
    CHECK(worst_energy_rise < 1e-9 * e_scale); // decay up to solver tolerance
}

TEST_CASE("relaxation: stationary state returns immediately") {
    auto dom = Domain::rectangle(0, 0, 1, 1, 0.05);
    PotentialParams params;
    params.epsilon = 0.1;
    params.m_c = 0.1;
    CHConfig cfg;
    cfg.stationarity_tol = 1e-4;
    const RelaxResult r =
        relax_to_equilibrium(corner_state(dom, 2), ScalarField(dom), unit_model(), params, cfg);
    CHECK(r.converged);
    CHECK(r.steps == 1);
}

TEST_CASE("relaxation cap returns converged = false") {
    const double eps = 0.12;
    auto dom = Domain::hexagon(1.0, eps / 3.0);
    PotentialParams params;
    params.epsilon = eps;
    params.m_c = 0.1;
    CHConfig cfg;
    cfg.stationarity_tol = 1e-12; // unreachable in two steps
    cfg.max_relax_steps = 2;
    const RelaxResult r = relax_to_equilibrium(hexagon_sector_state(dom, eps), ScalarField(dom),
                                               unit_model(), params, cfg);
    CHECK(!r.converged);
    CHECK(r.steps == 2);
}

TEST_CASE("hexagon sectors relax to a 120-degree junction") {
    const double eps = 0.12;
    auto dom = Domain::hexagon(1.0, eps / 4.0);
    PotentialParams params;
    params.epsilon = eps;
    params.m_c = 0.1;
    CHConfig cfg;
    cfg.dt = 20.0 * 0.1 * eps * dom->grid().hx; // relaxation: accuracy is irrelevant
    cfg.stationarity_tol = 1e-4;
    const RelaxResult r = relax_to_equilibrium(hexagon_sector_state(dom, eps), ScalarField(dom),
                                               unit_model(), params, cfg);
    CHECK(r.converged);
    CHECK(r.energy.back() < r.energy.front()); // net decay at the relaxation step size

    // at the accuracy step size the energy sequence is non-increasing up to
    // solver tolerance (the large relaxation step trades monotonicity for
    // speed, so it is checked separately here)
    CHConfig acc = cfg;
    acc.dt = 0.0;
    CHState st_acc = r.state;
    double energy = gl_energy(st_acc, ScalarField(dom), unit_model(), params);
    for (int s = 0; s < 50; ++s) {
        st_acc = step_ch(st_acc, ScalarField(dom), nullptr, unit_model(), params, acc);
        const double e = gl_energy(st_acc, ScalarField(dom), unit_model(), params);
        CHECK(e <= energy + 1e-9 * std::fabs(energy));
        energy = e;
    }

    const AngleMeasurement am = measure_angles(r.state);
    CHECK(std::fabs(am.junction[0]) < dom->grid().hx);
    CHECK(std::fabs(am.junction[1]) < dom->grid().hy);
    for (int k = 0; k < 3; ++k) {
        CHECK(am.psi_anchored[k] == doctest::Approx(2.0 * kPi / 3.0).epsilon(0.05 / 2.0));
        CHECK(am.psi_unanchored[k] == doctest::Approx(2.0 * kPi / 3.0).epsilon(0.05 / 2.0));
    }
}

TEST_CASE("gl_energy: corner state and the tension of a planar profile") {
    auto dom = Domain::rectangle(0, 0, 1, 0.1, 0.02);
    PotentialParams params;
    params.epsilon = 0.08;
    CHECK(gl_energy(corner_state(dom, 0), ScalarField(dom), unit_model(), params) ==
          doctest::Approx(0.0));

    // a two-phase profile carries energy ~ sigma per unit interface length
    EnergyModel model;
    model.sigma0 = 2.5;
    const CHState st = tanh_strip(dom, params.epsilon, 0.5);
    const double e = gl_energy(st, ScalarField(dom), model, params);
    CHECK(e == doctest::Approx(2.5 * 0.1).epsilon(0.01));
}

TEST_CASE("half-lens relaxes to 120-degree angles by t=1 at equal tensions") {
    const double eps = 0.2;
    auto dom = Domain::rectangle(0, -2, 2, 2, eps / 4.0);
    EnergyModel model;
    model.sigma0 = 4.0;
    PotentialParams params;
    params.epsilon = eps;
    params.m_c = 0.1;
    CHConfig cfg;
    CHState st = half_lens_state(dom, eps, std::sqrt(3.0 / kPi));
    const ScalarField q(dom);
    const double dt = cfg.resolve_dt(dom->grid(), eps);
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    for (int s = 0; s < steps; ++s) st = step_ch(st, q, nullptr, model, params, cfg);

    Point hint{std::sqrt(3.0 / kPi), 0.0};
    const AngleMeasurement am = measure_angles(st, &hint);
    for (int k = 0; k < 3; ++k)
        CHECK(am.psi_anchored[k] == doctest::Approx(2.0 * kPi / 3.0).epsilon(0.05 / 2.0));
}

TEST_CASE("upwind convection of a linear field is exact away from walls") {
    auto dom = Domain::rectangle(0, 0, 1, 1, 0.05);
    MacVelocity vel(dom);
    vel.fill(0.7, -0.3);
    const Grid2D& g = dom->grid();
    ScalarField f(dom);
    for (int c : dom->cells()) f[c] = 2.0 * g.xc(c % g.nx) - 1.5 * g.yc(c / g.nx);
    const ScalarField adv = upwind_convection(f, vel);
    for (int c : dom->cells()) {
        const int i = c % g.nx, j = c / g.nx;
        if (i < 2 || i >= g.nx - 2 || j < 2 || j >= g.ny - 2) continue;
        CHECK(adv[c] == doctest::Approx(0.7 * 2.0 + (-0.3) * (-1.5)).epsilon(1e-12));
    }
}
