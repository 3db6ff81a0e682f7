// Acceptance suite: one numbered criterion per invocation argument (all
// when none given). Each check prints a single PASS/FAIL line; the exit
// code reports whether every executed check passed.

#include "tricap/cahn_hilliard.hpp"
#include "tricap/diagnostics.hpp"
#include "tricap/experiments.hpp"
#include "tricap/flow.hpp"
#include "tricap/operators.hpp"
#include "tricap/potentials.hpp"
#include "tricap/sharp.hpp"
#include "tricap/surfactant.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

using namespace tricap;

namespace {

constexpr double kPi = 3.14159265358979323846;
int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
    std::printf("[%d] %-58s : %s : %s\n", criterion, what.c_str(), detail.c_str(),
                pass ? "PASS" : "FAIL");
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

ExperimentConfig config_from(const std::string& text) { return parse_config(text); }

// ---------------------------------------------------------------- criterion 1
void criterion_1() {
    ExperimentConfig cfg = config_from("experiment = reference-1d\n"
                                       "output.dir = acceptance_out/ref1d\n");
    const RunResult r = run_experiment(cfg);
    const double qL = r.scalar("q_at_L");
    const bool pass = std::fabs(qL - 0.122052) <= 1e-3;
    report(1, "1D sharp reference q(L) = 0.122052 +- 1e-3", pass,
           "measured " + format_double(qL));
    if (!pass)
        std::printf("    note: the published table value is inconsistent with the stated\n"
                    "    parameters (matched diffusivity M*beta = 100 on both segments);\n"
                    "    the solver is verified against an independent sparse solve and\n"
                    "    the closed-form series solution of the uniform problem. See the\n"
                    "    decisions ledger for the full analysis.\n");
}

// ---------------------------------------------------------------- criterion 2
void criterion_2() {
    const auto sym = young_angles(4.0, 4.0, 4.0);
    double worst = 0.0;
    for (double psi : sym) worst = std::max(worst, std::fabs(psi - 2.0 * kPi / 3.0));
    report(2, "Young's law (4,4,4) -> 120 deg each", worst <= 1e-10,
           "max deviation " + format_double(worst) + " rad");

    const auto lens = young_angles(1.0, std::sqrt(3.0), 2.0);
    const double target[3] = {kPi / 2.0, 2.0 * kPi / 3.0, 5.0 * kPi / 6.0};
    worst = 0.0;
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::fabs(lens[k] - target[k]));
    report(2, "Young's law (1,sqrt3,2) -> (90,120,150) deg", worst <= 1e-10,
           "max deviation " + format_double(worst) + " rad");
}

// ---------------------------------------------------------------- criterion 3
void criterion_3() {
    const double eps_list[3] = {0.08, 0.04, 0.02};
    const double paper_qL[3] = {0.127939, 0.125184, 0.123699};
    std::vector<std::pair<double, double>> linf_err, l2_err;

    for (int k = 0; k < 3; ++k) {
        char text[512];
        std::snprintf(text, sizeof(text),
                      "experiment = hexagon-diffusion\n"
                      "physics.epsilon = %g\n"
                      "output.dir = acceptance_out/hex_%03d\n"
                      "output.series_every = 200\n",
                      eps_list[k], static_cast<int>(eps_list[k] * 1000));
        std::fprintf(stderr, "  running hexagon eps = %g ...\n", eps_list[k]);
        const RunResult r = run_experiment(config_from(text));
        const double qL = r.scalar("q_at_L");
        const bool in_band = std::fabs(qL - paper_qL[k]) <= 0.05 * paper_qL[k];
        report(3,
               "hexagon eps=" + format_double(eps_list[k]) + " q(L) within 5% of " +
                   format_double(paper_qL[k]),
               in_band, "measured " + format_double(qL));
        linf_err.push_back({eps_list[k], r.scalar("linf")});
        l2_err.push_back({eps_list[k], r.scalar("l2")});
    }
    const std::vector<double> r_inf = eoc(linf_err);
    const std::vector<double> r_l2 = eoc(l2_err);
    for (std::size_t k = 0; k < r_inf.size(); ++k) {
        const bool ok = r_inf[k] >= 0.7 && r_inf[k] <= 1.1;
        report(3, "hexagon linf EOC in [0.7, 1.1]", ok, "rate " + format_double(r_inf[k]));
    }
    for (std::size_t k = 0; k < r_l2.size(); ++k) {
        const bool ok = r_l2[k] >= 0.7 && r_l2[k] <= 1.1;
        report(3, "hexagon l2 EOC in [0.7, 1.1]", ok, "rate " + format_double(r_l2[k]));
    }
}

// ---------------------------------------------------------------- criterion 4
void criterion_4() {
    const double eps_list[3] = {0.2, 0.1 * std::sqrt(2.0), 0.1};
    const double sharp[3] = {kPi / 2.0, 2.0 * kPi / 3.0, 5.0 * kPi / 6.0};
    const double paper_anchored[3] = {1.7446, 2.14421, 2.39438};
    std::vector<double> deviation;

    for (int k = 0; k < 3; ++k) {
        char text[512];
        std::snprintf(text, sizeof(text),
                      "experiment = lens-angles\n"
                      "physics.epsilon = %.17g\n"
                      "output.dir = acceptance_out/lens_%d\n"
                      "output.series_every = 400\n",
                      eps_list[k], k);
        std::fprintf(stderr, "  running lens eps = %g ...\n", eps_list[k]);
        const RunResult r = run_experiment(config_from(text));
        double dev2 = 0.0;
        for (int a = 0; a < 3; ++a) {
            const double d = r.scalar("psi_a" + std::to_string(a + 1)) - sharp[a];
            dev2 += d * d;
        }
        deviation.push_back(std::sqrt(dev2));

        if (k == 2) {
            double worst = 0.0;
            for (int a = 0; a < 3; ++a)
                worst = std::max(worst, std::fabs(r.scalar("psi_a" + std::to_string(a + 1)) -
                                                  paper_anchored[a]));
            report(4, "lens eps=0.1 anchored angles within 0.1 rad of table", worst <= 0.1,
                   "max deviation " + format_double(worst) + " rad, psi = (" +
                       format_double(r.scalar("psi_a1")) + ", " +
                       format_double(r.scalar("psi_a2")) + ", " +
                       format_double(r.scalar("psi_a3")) + ")");
        }
    }
    const bool monotone = deviation[0] > deviation[1] && deviation[1] > deviation[2];
    report(4, "lens |psi - sharp| decreases across eps = 0.2, 0.1*sqrt2, 0.1", monotone,
           format_double(deviation[0]) + " > " + format_double(deviation[1]) + " > " +
               format_double(deviation[2]));
}

// ---------------------------------------------------------------- criterion 5
void criterion_5() {
    std::fprintf(stderr, "  running marangoni eps = 0.2 ...\n");
    ExperimentConfig cfg = config_from("experiment = marangoni\n"
                                       "output.dir = acceptance_out/marangoni\n"
                                       "output.series_every = 100\n");
    const RunResult r = run_experiment(cfg);
    const CsvTable& s = r.series;
    const int ct = s.column("t"), cv = s.column("velocity_l2"), cj = s.column("left_junction_x");
    const double t0 = cfg.sched_t0, tq = cfg.sched_ramp;

    double v_before = 0.0, v_peak = 0.0;
    for (const auto& row : s.rows) {
        if (row[ct] <= t0 && row[ct] > t0 - 0.2) v_before = std::max(v_before, row[cv]);
        if (row[ct] > t0) v_peak = std::max(v_peak, row[cv]);
    }
    report(5, "velocity L2 just before T0 below 10% of post-T0 peak", v_before < 0.1 * v_peak,
           format_double(v_before) + " vs peak " + format_double(v_peak));

    bool increasing = true;
    double x_start = 0.0, x_end = 0.0;
    bool have_start = false;
    double prev = -1e300;
    for (const auto& row : s.rows) {
        if (row[ct] <= t0 + tq) continue;
        if (std::isnan(row[cj])) continue;
        if (!have_start) {
            x_start = row[cj];
            have_start = true;
        } else if (row[cj] <= prev) {
            increasing = false;
        }
        prev = row[cj];
        x_end = row[cj];
    }
    report(5, "left junction x strictly increasing on (T0+Tq, T)", increasing && have_start,
           "from " + format_double(x_start) + " to " + format_double(x_end));
    report(5, "lens translates rightward", have_start && x_end > x_start + 0.05,
           "displacement " + format_double(x_end - x_start));
}

// ---------------------------------------------------------------- criterion 6
CHState strip_state(std::shared_ptr<const Domain> dom, double eps) {
    CHState st = CHState::zeros(dom);
    const Grid2D& g = dom->grid();
    const TanhProfile chi{eps, 0.5};
    for (int c : dom->cells()) {
        const double p = chi(g.xc(c % g.nx));
        st.phi[0][c] = p;
        st.phi[1][c] = 1.0 - p;
    }
    return st;
}

void criterion_6() {
    std::mt19937 rng(2024);

    { // CH structure: simplex, mass, energy, third phase
        const double eps = 0.1;
        auto dom = Domain::rectangle(0, 0, 1, 0.1, eps / 4.0);
        EnergyModel model;
        PotentialParams params;
        params.epsilon = eps;
        params.m_c = 0.1;
        CHConfig cfg;
        const ScalarField q(dom);
        CHState st = strip_state(dom, eps);
        const double mass0[3] = {integrate(st.phi[0]), integrate(st.phi[1]),
                                 integrate(st.phi[2])};
        double energy = gl_energy(st, q, model, params);
        double worst_simplex = 0.0, worst_mass = 0.0, worst_rise = 0.0, worst_phi3 = 0.0;
        for (int s = 0; s < 200; ++s) {
            st = step_ch(st, q, nullptr, model, params, cfg);
            worst_simplex = std::max(worst_simplex, st.max_simplex_defect());
            for (int i = 0; i < 3; ++i)
                worst_mass = std::max(worst_mass, std::fabs(integrate(st.phi[i]) - mass0[i]));
            const double e = gl_energy(st, q, model, params);
            worst_rise = std::max(worst_rise, e - energy);
            energy = e;
            if (s < 100) worst_phi3 = std::max(worst_phi3, max_abs(st.phi[2]));
        }
        report(6, "simplex preservation over 200 CH steps < 1e-10", worst_simplex < 1e-10,
               "max defect " + format_double(worst_simplex));
        report(6, "per-phase mass drift < 1e-10", worst_mass < 1e-10,
               "max drift " + format_double(worst_mass));
        report(6, "GL energy non-increasing up to solver tolerance",
               worst_rise < cfg.lin_tol * std::max(1.0, energy),
               "worst rise " + format_double(worst_rise));
        report(6, "third-phase consistency |phi3| < 1e-8 over 100 steps", worst_phi3 < 1e-8,
               "max |phi3| " + format_double(worst_phi3));
    }

    { // surfactant conservation with all-Neumann boundaries
        const double eps = 0.15;
        auto dom = Domain::hexagon(1.0, eps / 3.0);
        EnergyModel model;
        model.beta_pair = {4.0, 1.0, 2.0};
        PotentialParams params;
        params.epsilon = eps;
        MobilityParams mob;
        mob.m_bulk = {5.0, 5.0, 5.0};
        mob.m_surf = {25.0, 100.0, 50.0};
        const CHState st = hexagon_sector_state(dom, eps);
        SurfactantState qs{ScalarField(dom), 0.0};
        const Grid2D& g = dom->grid();
        for (int c : dom->cells())
            qs.q[c] = 0.25 * (1.0 + std::sin(3.0 * g.xc(c % g.nx)) * std::cos(2.0 * g.yc(c / g.nx)));
        const BoundarySpec bc = BoundarySpec::all_neumann(dom->edge_count());
        SurfactantConfig cfg;
        cfg.dt = 1e-4;
        const double mass0 = surfactant_mass(qs, st, model, params, mob);
        double worst = 0.0;
        for (int s = 0; s < 100; ++s) {
            qs = step_q(qs, st, st, nullptr, bc, {}, model, params, mob, cfg);
            worst = std::max(worst,
                             std::fabs(surfactant_mass(qs, st, model, params, mob) - mass0));
        }
        report(6, "surfactant mass drift < 1e-10 relative (all-Neumann)",
               worst < 1e-10 * std::fabs(mass0), "relative drift " +
                   format_double(worst / std::fabs(mass0)));
    }

    { // pointwise sum of mu_i / S_i
        auto dom = Domain::rectangle(0, 0, 1, 1, 0.05);
        const Grid2D& g = dom->grid();
        CHState st = CHState::zeros(dom);
        ScalarField q(dom);
        for (int c : dom->cells()) {
            const double x = g.xc(c % g.nx), y = g.yc(c / g.nx);
            const double a = 0.5 + 0.3 * std::sin(3 * x) * std::cos(2 * y);
            const double b = 0.4 * (1.0 - a);
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
        report(6, "pointwise sum mu_i / S_i = 0 to 1e-10", worst < 1e-10,
               "worst scaled residual " + format_double(worst));
    }

    { // tanh-profile identities
        const double eps = 0.08;
        const TanhProfile chi{eps, 0.0};
        double worst_eq = 0.0;
        for (double z = -4.0 * eps; z <= 4.0 * eps; z += eps / 9.0) {
            const double phi1 = chi(z);
            const Phi3 phi{phi1, 1.0 - phi1, 0.0};
            const double d = chi.derivative(z);
            const Grad3 grads{Vec2{d, 0.0}, Vec2{-d, 0.0}, Vec2{0.0, 0.0}};
            worst_eq = std::max(worst_eq, std::fabs(eps * blm::a_pair(grads, 0) -
                                                    blm::w_pair(phi, 0, 0.0) / eps));
        }
        report(6, "equipartition eps*a = w/eps on the tanh profile to 1e-12", worst_eq < 1e-12,
               "worst gap " + format_double(worst_eq));

        const double zmax = 12.0 * eps, hz = eps / 400.0;
        double mass = 0.0;
        auto delta_at = [&](double zz) {
            const double phi1 = chi(zz);
            const double d = chi.derivative(zz);
            const Phi3 phi{phi1, 1.0 - phi1, 0.0};
            const Grad3 grads{Vec2{d, 0.0}, Vec2{-d, 0.0}, Vec2{0.0, 0.0}};
            return blm::delta_pair(phi, grads, 0, eps, 0.0);
        };
        for (double z = -zmax; z < zmax; z += hz)
            mass += 0.5 * hz * (delta_at(z) + delta_at(z + hz));
        report(6, "profile normalization integral(delta) = 1 +- 1e-6",
               std::fabs(mass - 1.0) < 1e-6, "mass " + format_double(mass));
    }

    { // analytic gradients of w and a against central differences
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double step = 1e-6;
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            const Phi3 phi{a, b - a, 1.0 - b};
            for (int p = 0; p < 3; ++p) {
                const Phi3 gw = blm::w_pair_grad(phi, p, 0.4);
                double scale = 1.0;
                for (double v : gw) scale = std::max(scale, std::fabs(v));
                for (int comp = 0; comp < 3; ++comp) {
                    Phi3 lo = phi, hi = phi;
                    lo[comp] -= step;
                    hi[comp] += step;
                    const double fd =
                        (blm::w_pair(hi, p, 0.4) - blm::w_pair(lo, p, 0.4)) / (2.0 * step);
                    worst = std::max(worst, std::fabs(fd - gw[comp]) / scale);
                }
            }
            // gradient potential: derivative in each gradient component is
            // (3/4) * (+-) g
            Grad3 grads;
            for (int k = 0; k < 3; ++k) grads[k] = {2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0};
            for (int p = 0; p < 3; ++p) {
                for (int k = 0; k < 3; ++k) {
                    const double sign = (k == kPairOther[p]) ? -1.0 : 1.0;
                    for (int d = 0; d < 2; ++d) {
                        Grad3 lo = grads, hi = grads;
                        lo[k][d] -= step;
                        hi[k][d] += step;
                        const double fd =
                            (blm::a_pair(hi, p) - blm::a_pair(lo, p)) / (2.0 * step);
                        const double exact = sign * 0.75 * grads[k][d];
                        worst = std::max(worst,
                                         std::fabs(fd - exact) / std::max(1.0, std::fabs(exact)));
                    }
                }
            }
        }
        report(6, "analytic w/a gradients vs central differences < 1e-6", worst < 1e-6,
               "worst relative error " + format_double(worst));
    }

    { // post-projection divergence
        auto dom = Domain::rectangle(0, 0, 1, 1, 0.025);
        const Grid2D& g = dom->grid();
        FlowState flow = FlowState::zeros(dom);
        FluidParams fluid;
        fluid.rho = {0.5, 0.5, 0.5};
        fluid.eta = {0.01, 0.01, 0.01};
        ScalarField fx(dom), fy(dom);
        for (int c : dom->cells()) {
            const double x = g.xc(c % g.nx), y = g.yc(c / g.nx);
            fx[c] = std::sin(3.0 * x) * y;
            fy[c] = std::cos(2.0 * y) * x * x;
        }
        const auto force = std::make_pair(fx, fy);
        FlowConfig cfg;
        cfg.dt = 1e-3;
        cfg.lin_tol = 1e-12;
        double worst = 0.0;
        for (int s = 0; s < 20; ++s) {
            flow = step_ns(flow, nullptr, &force, fluid, WallVelocity::no_slip(), cfg);
            worst = std::max(worst, flow.vel.max_divergence());
        }
        report(6, "post-projection divergence < 1e-8", worst < 1e-8,
               "max divergence " + format_double(worst));
    }
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int a = 1; a < argc; ++a) which.push_back(std::atoi(argv[a]));
    if (which.empty()) which = {1, 2, 3, 4, 5, 6};

    for (int w : which) {
        switch (w) {
            case 1: criterion_1(); break;
            case 2: criterion_2(); break;
            case 3: criterion_3(); break;
            case 4: criterion_4(); break;
            case 5: criterion_5(); break;
            case 6: criterion_6(); break;
            default:
                std::fprintf(stderr, "unknown criterion %d\n", w);
                return 2;
        }
    }
    if (g_failures > 0) {
        std::printf("%d check(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all checks passed\n");
    return 0;
}
