#include "tricap/experiments.hpp"

#include "tricap/contour.hpp"
#include "tricap/flow.hpp"
#include "tricap/operators.hpp"
#include "tricap/parallel.hpp"
#include "tricap/surfactant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tricap {

namespace {

constexpr double kPi = 3.14159265358979323846;

double profile01(double d, double eps) { return 0.5 * (1.0 + std::tanh(2.0 * d / eps)); }

std::shared_ptr<const Domain> make_domain(const ExperimentConfig& c) {
    const double h = c.resolve_h();
    if (c.geometry_kind == "hexagon") return Domain::hexagon(c.hex_side, h);
    return Domain::rectangle(c.rect[0], c.rect[1], c.rect[2], c.rect[3], h);
}

void write_snapshot(const std::filesystem::path& dir, const std::string& name, const CHState& st,
                    const ScalarField* q, const MacVelocity* vel, const ScalarField* p) {
    std::vector<std::pair<std::string, const ScalarField*>> fields = {
        {"phi1", &st.phi[0]}, {"phi2", &st.phi[1]}, {"phi3", &st.phi[2]}};
    if (q) fields.push_back({"q", q});
    if (p) fields.push_back({"pressure", p});
    write_vtk(fields, vel, dir / name);
}

struct SeriesWriter {
    CsvTable table;
    std::filesystem::path path;

    explicit SeriesWriter(std::filesystem::path p, std::vector<std::string> header)
        : path(std::move(p)) {
        table.header = std::move(header);
    }
    void row(const std::vector<double>& vals) { table.rows.push_back(vals); }
    void flush() const { write_csv(table, path); }
};

DirichletSchedule config_schedule(const ExperimentConfig& c) {
    return DirichletSchedule::ramp(c.sched_t0, c.sched_ramp, c.sched_value);
}

RunResult make_result(const ExperimentConfig& c) {
    RunResult r;
    r.experiment = c.experiment;
    r.out_dir = c.out_dir;
    std::filesystem::create_directories(r.out_dir);
    write_manifest(c.resolved, r.out_dir / "manifest");
    if (c.threads > 0) set_thread_count(c.threads);
    return r;
}

RunResult run_young(const ExperimentConfig& c) {
    RunResult result = make_result(c);
    const auto psi = young_angles(c.young_sigma[0], c.young_sigma[1], c.young_sigma[2]);
    const double deg = 180.0 / kPi;
    std::printf("psi_1 = %.3f deg\npsi_2 = %.3f deg\npsi_3 = %.3f deg\n", psi[0] * deg,
                psi[1] * deg, psi[2] * deg);
    CsvTable t;
    t.header = {"sigma12", "sigma13", "sigma23", "psi1_rad", "psi2_rad", "psi3_rad",
                "psi1_deg", "psi2_deg", "psi3_deg"};
    t.add_row({c.young_sigma[0], c.young_sigma[1], c.young_sigma[2], psi[0], psi[1], psi[2],
               psi[0] * deg, psi[1] * deg, psi[2] * deg});
    write_csv(t, result.out_dir / "angles.csv");
    for (int k = 0; k < 3; ++k) {
        result.scalars["psi" + std::to_string(k + 1)] = psi[k];
        result.scalars["psi" + std::to_string(k + 1) + "_deg"] = psi[k] * deg;
    }
    return result;
}

RunResult run_reference_1d(const ExperimentConfig& c) {
    RunResult result = make_result(c);
    const Junction1DConfig jc = reference_config(c);
    const Junction1DSolution sol = solve_junction_1d(jc, c.t_end);

    CsvTable t;
    t.header = {"s", "q"};
    for (std::size_t k = 0; k < sol.s.size(); ++k) t.add_row({sol.s[k], sol.q[k]});
    write_csv(t, result.out_dir / "profile.csv");

    result.profile.s = sol.s;
    result.profile.q = sol.q;
    result.scalars["q_at_L"] = sol.q_right_end;
    result.scalars["q_junction"] = sol.q_junction;
    result.scalars["flux_residual"] = sol.flux_residual;
    result.scalars["mass"] = sol.mass;
    result.series = t;
    return result;
}

RunResult run_hexagon(const ExperimentConfig& c) {
    RunResult result = make_result(c);
    auto dom = make_domain(c);
    const EnergyModel model = c.energy_model();
    const PotentialParams params = c.potential_params();
    const MobilityParams mobility = c.mobility_params();
    const ScalarField q0(dom);

    // Stage 1: relax the sector network to a stationary diffuse junction.
    CHState st = hexagon_sector_state(dom, params.epsilon);
    CHConfig chc;
    chc.dt = c.relax_dt_factor *
             (c.dt > 0.0 ? c.dt
                         : 0.1 * params.epsilon * std::min(dom->grid().hx, dom->grid().hy));
    chc.lin_tol = c.lin_tol;
    chc.fp_iters = c.fp_iters;
    chc.stationarity_tol = c.stationarity_tol;
    chc.max_relax_steps = c.max_steps;
    chc.sbar = c.sbar;
    const RelaxResult relax = relax_to_equilibrium(std::move(st), q0, model, params, chc);

    SeriesWriter energy_series(result.out_dir / "relaxation.csv", {"step", "energy"});
    for (std::size_t k = 0; k < relax.energy.size(); ++k)
        energy_series.row({static_cast<double>(k + 1), relax.energy[k]});
    energy_series.flush();
    write_snapshot(result.out_dir, "phi_relaxed.vtk", relax.state, nullptr, nullptr, nullptr);
    result.scalars["relax_steps"] = relax.steps;
    result.scalars["relax_converged"] = relax.converged ? 1.0 : 0.0;

    // Stage 2: freeze phi, evolve the surfactant potential only.
    BoundarySpec bc = BoundarySpec::all_neumann(dom->edge_count());
    bc.edges[2] = {BcKind::Dirichlet, 0}; // left hexagon edge holds the source
    const std::vector<DirichletSchedule> schedules{config_schedule(c)};

    SurfactantConfig sc;
    sc.dt = c.dt_q > 0.0 ? c.dt_q : 1e-5;
    sc.lin_tol = std::min(c.lin_tol, 1e-12);
    SurfactantState qs{q0, 0.0};

    const int steps = static_cast<int>(std::llround(c.t_end / sc.dt));
    SeriesWriter series(result.out_dir / "series.csv",
                        {"t", "q_junction", "surfactant_mass", "q_min", "q_max"});
    double run_qmin = 0.0, run_qmax = 0.0;
    for (int step = 1; step <= steps; ++step) {
        qs = step_q(qs, relax.state, relax.state, nullptr, bc, schedules, model, params, mobility,
                    sc);
        run_qmin = std::min(run_qmin, qs.q.min_interior());
        run_qmax = std::max(run_qmax, qs.q.max_interior());
        if (step % c.series_every == 0 || step == steps) {
            series.row({qs.time, bilinear_sample(qs.q, 0.0, 0.0),
                        surfactant_mass(qs, relax.state, model, params, mobility),
                        qs.q.min_interior(), qs.q.max_interior()});
        }
        if (c.snapshot_every > 0 && step % c.snapshot_every == 0) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "state_%06d.vtk", step);
            write_snapshot(result.out_dir, buf, relax.state, &qs.q, nullptr, nullptr);
        }
    }
    series.flush();
    write_snapshot(result.out_dir, "state_final.vtk", relax.state, &qs.q, nullptr, nullptr);

    // Sample along the two surfactant-carrying interfaces, junction at s=0.
    const double arm = std::sqrt(3.0) / 2.0 * c.hex_side;
    const std::vector<Point> polyline{{-arm, 0.0},
                                      {0.0, 0.0},
                                      {arm * 0.5, arm * std::sqrt(3.0) / 2.0}};
    result.profile = sample_q_along_segments(qs.q, polyline, c.samples, -arm);

    const Junction1DSolution ref = solve_junction_1d(reference_config(c), c.t_end);
    std::vector<double> ref_q(result.profile.s.size());
    for (std::size_t k = 0; k < ref_q.size(); ++k) ref_q[k] = ref.sample(result.profile.s[k]);
    const auto [linf, l2] = lp_errors(result.profile.q, ref_q);

    CsvTable prof;
    prof.header = {"s", "q_eps", "q_ref"};
    for (std::size_t k = 0; k < result.profile.s.size(); ++k)
        prof.add_row({result.profile.s[k], result.profile.q[k], ref_q[k]});
    write_csv(prof, result.out_dir / "profile.csv");

    CsvTable errs;
    errs.header = {"epsilon", "q_at_L", "linf", "l2"};
    errs.add_row({params.epsilon, result.profile.q.back(), linf, l2});
    write_csv(errs, result.out_dir / "errors.csv");

    result.scalars["epsilon"] = params.epsilon;
    result.scalars["q_at_L"] = result.profile.q.back();
    result.scalars["q_ref_at_L"] = ref.q_right_end;
    result.scalars["linf"] = linf;
    result.scalars["l2"] = l2;
    result.scalars["q_min"] = run_qmin;
    result.scalars["q_max"] = run_qmax;
    result.series = series.table;
    return result;
}

RunResult run_lens(const ExperimentConfig& c) {
    RunResult result = make_result(c);
    auto dom = make_domain(c);
    const EnergyModel model = c.energy_model();
    const PotentialParams params = c.potential_params();
    const MobilityParams mobility = c.mobility_params();
    const double radius = std::sqrt(3.0 / kPi);

    CHState st = half_lens_state(dom, params.epsilon, radius);
    CHConfig chc;
    chc.dt = c.dt;
    chc.lin_tol = c.lin_tol;
    chc.fp_iters = c.fp_iters;
    chc.sbar = c.sbar;
    const double dt = chc.resolve_dt(dom->grid(), params.epsilon);

    BoundarySpec bc = BoundarySpec::all_neumann(dom->edge_count());
    bc.edges[static_cast<int>(Face::XP)] = {BcKind::Dirichlet, 0};
    const std::vector<DirichletSchedule> schedules{config_schedule(c)};
    SurfactantConfig sc;
    sc.dt = dt;
    sc.lin_tol = std::min(c.lin_tol, 1e-11);
    SurfactantState qs{ScalarField(dom), 0.0};

    SeriesWriter series(
        result.out_dir / "series.csv",
        {"t",      "energy", "mass1",  "mass2",  "mass3",  "junction_x", "junction_y",
         "psi_a1", "psi_a2", "psi_a3", "psi_u1", "psi_u2", "psi_u3",     "surfactant_mass"});

    Point hint{radius, 0.0};
    const int steps = static_cast<int>(std::llround(c.t_end / dt));
    const int cap = std::min(steps, c.max_steps);
    for (int step = 1; step <= cap; ++step) {
        CHState st_new = step_ch(st, qs.q, nullptr, model, params, chc);
        qs = step_q(qs, st, st_new, nullptr, bc, schedules, model, params, mobility, sc);
        st = std::move(st_new);

        if (step % c.series_every == 0 || step == cap) {
            std::vector<double> row{st.time,
                                    gl_energy(st, qs.q, model, params),
                                    integrate(st.phi[0]),
                                    integrate(st.phi[1]),
                                    integrate(st.phi[2])};
            try {
                const AngleMeasurement am = measure_angles(st, &hint);
                hint = am.junction;
                row.insert(row.end(), {am.junction[0], am.junction[1], am.psi_anchored[0],
                                       am.psi_anchored[1], am.psi_anchored[2], am.psi_unanchored[0],
                                       am.psi_unanchored[1], am.psi_unanchored[2]});
            } catch (const std::runtime_error&) {
                row.insert(row.end(), 8, std::nan(""));
            }
            row.push_back(surfactant_mass(qs, st, model, params, mobility));
            series.row(row);
        }
        if (c.snapshot_every > 0 && step % c.snapshot_every == 0) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "state_%06d.vtk", step);
            write_snapshot(result.out_dir, buf, st, &qs.q, nullptr, nullptr);
        }
    }
    series.flush();
    write_snapshot(result.out_dir, "state_final.vtk", st, &qs.q, nullptr, nullptr);

    const AngleMeasurement final_angles = measure_angles(st, &hint);
    result.angles = final_angles;
    CsvTable t;
    t.header = {"epsilon", "psi_a1", "psi_a2", "psi_a3", "psi_u1", "psi_u2", "psi_u3",
                "junction_x", "junction_y"};
    t.add_row({params.epsilon, final_angles.psi_anchored[0], final_angles.psi_anchored[1],
               final_angles.psi_anchored[2], final_angles.psi_unanchored[0],
               final_angles.psi_unanchored[1], final_angles.psi_unanchored[2],
               final_angles.junction[0], final_angles.junction[1]});
    write_csv(t, result.out_dir / "angles.csv");

    result.scalars["epsilon"] = params.epsilon;
    for (int k = 0; k < 3; ++k) {
        result.scalars["psi_a" + std::to_string(k + 1)] = final_angles.psi_anchored[k];
        result.scalars["psi_u" + std::to_string(k + 1)] = final_angles.psi_unanchored[k];
    }
    result.scalars["junction_x"] = final_angles.junction[0];
    result.series = series.table;
    return result;
}

RunResult run_marangoni(const ExperimentConfig& c) {
    RunResult result = make_result(c);
    auto dom = make_domain(c);
    const EnergyModel model = c.energy_model();
    const PotentialParams params = c.potential_params();
    const MobilityParams mobility = c.mobility_params();
    const FluidParams fluid = c.fluid_params();
    const WallVelocity walls = WallVelocity::no_slip();

    CHState st = full_lens_state(dom, params.epsilon, 1.0);
    FlowState flow = FlowState::zeros(dom);
    SurfactantState qs{ScalarField(dom), 0.0};

    BoundarySpec bc = BoundarySpec::all_neumann(dom->edge_count());
    bc.edges[static_cast<int>(Face::XM)] = {BcKind::Dirichlet, 0};
    bc.edges[static_cast<int>(Face::XP)] = {BcKind::Dirichlet, 1};
    const std::vector<DirichletSchedule> schedules{config_schedule(c),
                                                   DirichletSchedule::constant(0.0)};

    CHConfig chc;
    chc.lin_tol = c.lin_tol;
    chc.fp_iters = c.fp_iters;
    chc.sbar = c.sbar;
    FlowConfig fc;
    fc.implicit_viscosity = c.implicit_viscosity;
    fc.lin_tol = std::min(c.lin_tol, 1e-10);
    const double dt_base =
        c.dt > 0.0 ? c.dt : 0.1 * params.epsilon * std::min(dom->grid().hx, dom->grid().hy);

    SeriesWriter series(result.out_dir / "series.csv",
                        {"t", "kinetic_energy", "velocity_l2", "left_junction_x", "mass3",
                         "surfactant_mass", "max_divergence"});

    Point hint{-1.0, 0.0};
    double t = 0.0;
    int step = 0;
    CHStepReport report;
    while (t < c.t_end - 1e-12 && step < c.max_steps) {
        ++step;
        fc.dt = std::min(dt_base, flow_dt_limit(flow, fluid, model, params, fc));
        if (t + fc.dt > c.t_end) fc.dt = c.t_end - t;
        chc.dt = fc.dt;

        CHState st_new = step_ch(st, qs.q, &flow.vel, model, params, chc, &report);
        SurfactantConfig sc;
        sc.dt = fc.dt;
        sc.lin_tol = std::min(c.lin_tol, 1e-11);
        qs = step_q(qs, st, st_new, &flow.vel, bc, schedules, model, params, mobility, sc);

        const auto mu = compute_mu(st_new, qs.q, model, params, c.sbar);
        const auto force = capillary_force(st_new, mu, qs.q, model, params);

        std::pair<std::vector<double>, std::vector<double>> jbar;
        const std::pair<std::vector<double>, std::vector<double>>* jbar_ptr = nullptr;
        if (!fluid.matched_density()) {
            jbar.first.assign(report.flux_x[0].size(), 0.0);
            jbar.second.assign(report.flux_y[0].size(), 0.0);
            for (int k = 0; k < 3; ++k) {
                for (std::size_t f = 0; f < jbar.first.size(); ++f)
                    jbar.first[f] -= fluid.rho[k] * report.flux_x[k][f];
                for (std::size_t f = 0; f < jbar.second.size(); ++f)
                    jbar.second[f] -= fluid.rho[k] * report.flux_y[k][f];
            }
            jbar_ptr = &jbar;
        }
        flow = step_ns(flow, &st_new, &force, fluid, walls, fc, jbar_ptr);
        st = std::move(st_new);
        t = flow.time;

        if (step % c.series_every == 0 || t >= c.t_end - 1e-12) {
            double jx = std::nan("");
            try {
                const Point junction = locate_triple_junction(st, &hint);
                hint = junction;
                jx = junction[0];
            } catch (const std::runtime_error&) {
            }
            series.row({t, kinetic_energy(flow, &st, fluid), velocity_l2(flow), jx,
                        integrate(st.phi[2]), surfactant_mass(qs, st, model, params, mobility),
                        flow.vel.max_divergence()});
        }
        if (c.snapshot_every > 0 && step % c.snapshot_every == 0) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "state_%06d.vtk", step);
            write_snapshot(result.out_dir, buf, st, &qs.q, &flow.vel, &flow.p);
        }
    }
    series.flush();
    write_snapshot(result.out_dir, "state_final.vtk", st, &qs.q, &flow.vel, &flow.p);

    result.scalars["epsilon"] = params.epsilon;
    result.scalars["final_left_junction_x"] = series.table.rows.back()[3];
    result.scalars["final_velocity_l2"] = series.table.rows.back()[2];
    result.scalars["steps"] = step;
    result.series = series.table;
    return result;
}

} // namespace

double RunResult::scalar(const std::string& name) const {
    const auto it = scalars.find(name);
    if (it == scalars.end()) throw std::out_of_range("RunResult: no scalar '" + name + "'");
    return it->second;
}

CHState hexagon_sector_state(std::shared_ptr<const Domain> dom, double epsilon) {
    // Three 120-degree sectors; interfaces along 60, 180, and 300 degrees
    // ((1,2), (1,3), and (2,3) respectively), junction at the origin.
    CHState st = CHState::zeros(dom);
    const Grid2D& g = dom->grid();
    const double bounds[3][2] = {{kPi / 3.0, kPi}, {-kPi / 3.0, kPi / 3.0}, {kPi, 5.0 * kPi / 3.0}};
    for (int c : dom->cells()) {
        const int i = c % g.nx, j = c / g.nx;
        const double x = g.xc(i), y = g.yc(j);
        double hat[3], sum = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double ta = bounds[k][0], tb = bounds[k][1];
            // signed distances to the two bounding rays (positive inside)
            const double da = -std::sin(ta) * x + std::cos(ta) * y;
            const double db = std::sin(tb) * x - std::cos(tb) * y;
            hat[k] = profile01(std::min(da, db), epsilon);
            sum += hat[k];
        }
        for (int k = 0; k < 3; ++k) st.phi[k][c] = hat[k] / sum;
    }
    return st;
}

CHState half_lens_state(std::shared_ptr<const Domain> dom, double epsilon, double radius) {
    CHState st = CHState::zeros(dom);
    const Grid2D& g = dom->grid();
    for (int c : dom->cells()) {
        const int i = c % g.nx, j = c / g.nx;
        const double x = g.xc(i), y = g.yc(j);
        const double rho = std::hypot(x, y);
        double p1, p2;
        if (x > radius) {
            p1 = profile01(y, epsilon);
            p2 = profile01(-y, epsilon);
        } else {
            p1 = y > 0.0 ? profile01(rho - radius, epsilon) : 0.0;
            p2 = y < 0.0 ? profile01(rho - radius, epsilon) : 0.0;
        }
        st.phi[0][c] = p1;
        st.phi[1][c] = p2;
        st.phi[2][c] = 1.0 - p1 - p2;
    }
    return st;
}

CHState full_lens_state(std::shared_ptr<const Domain> dom, double epsilon, double radius) {
    CHState st = CHState::zeros(dom);
    const Grid2D& g = dom->grid();
    for (int c : dom->cells()) {
        const int i = c % g.nx, j = c / g.nx;
        const double x = g.xc(i), y = g.yc(j);
        const double p3 = profile01(radius - std::hypot(x, y), epsilon);
        const double p1 = (1.0 - p3) * profile01(y, epsilon);
        st.phi[2][c] = p3;
        st.phi[0][c] = p1;
        st.phi[1][c] = 1.0 - p3 - p1;
    }
    return st;
}

Junction1DConfig reference_config(const ExperimentConfig& c) {
    Junction1DConfig jc;
    jc.half_length = std::sqrt(3.0) / 2.0 * c.hex_side;
    jc.beta_left = c.beta_pair[1];  // (1,3) arm carries the source
    jc.beta_right = c.beta_pair[0]; // (1,2) arm, Neumann far end
    jc.m_left = c.m_surf[1];
    jc.m_right = c.m_surf[0];
    jc.n = c.ref1d_n;
    jc.dt = c.ref1d_dt;
    jc.schedule = config_schedule(c);
    return jc;
}

RunResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    switch (config.experiment) {
        case ExperimentKind::Young: return run_young(config);
        case ExperimentKind::Reference1D: return run_reference_1d(config);
        case ExperimentKind::HexagonDiffusion: return run_hexagon(config);
        case ExperimentKind::LensAngles: return run_lens(config);
        case ExperimentKind::Marangoni: return run_marangoni(config);
        default:
            throw std::invalid_argument(
                "run_experiment: 'custom' has no driver; use the library API");
    }
}

} // namespace tricap
