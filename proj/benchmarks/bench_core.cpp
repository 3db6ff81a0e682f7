#include <benchmark/benchmark.h>

#include "tricap/cahn_hilliard.hpp"
#include "tricap/experiments.hpp"
#include "tricap/operators.hpp"
#include "tricap/sharp.hpp"
#include "tricap/surfactant.hpp"

#include <cmath>

using namespace tricap;

namespace {

ScalarField wave(std::shared_ptr<const Domain> dom) {
    ScalarField f(dom);
    const Grid2D& g = dom->grid();
    for (int c : dom->cells())
        f[c] = std::sin(3.0 * g.xc(c % g.nx)) * std::cos(2.0 * g.yc(c / g.nx));
    return f;
}

} // namespace

static void BM_laplacian(benchmark::State& state) {
    auto dom = Domain::rectangle(0, 0, 1, 1, 1.0 / state.range(0));
    const ScalarField f = wave(dom);
    ScalarField out(dom);
    const BoundarySpec bc = BoundarySpec::all_neumann(4);
    for (auto _ : state) {
        laplacian_into(f, bc, {}, out);
        benchmark::DoNotOptimize(out.values().data());
    }
    state.SetItemsProcessed(state.iterations() * dom->interior_count());
}
BENCHMARK(BM_laplacian)->Arg(64)->Arg(128)->Arg(256);

static void BM_div_mgrad(benchmark::State& state) {
    auto dom = Domain::rectangle(0, 0, 1, 1, 1.0 / state.range(0));
    const ScalarField f = wave(dom);
    ScalarField m(dom, 1.5), out(dom);
    const BoundarySpec bc = BoundarySpec::all_neumann(4);
    for (auto _ : state) {
        div_mgrad_into(f, m, bc, {}, out);
        benchmark::DoNotOptimize(out.values().data());
    }
    state.SetItemsProcessed(state.iterations() * dom->interior_count());
}
BENCHMARK(BM_div_mgrad)->Arg(64)->Arg(256);

static void BM_well_terms(benchmark::State& state) {
    EnergyModel model;
    PotentialParams params;
    Phi3 phi{0.3, 0.45, 0.25};
    for (auto _ : state) {
        const Phi3 d = blm::di_w(phi, 0.2, model, 0.1);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_well_terms);

static void BM_step_ch(benchmark::State& state) {
    const double eps = 0.1;
    auto dom = Domain::rectangle(0, 0, 1, 1, 1.0 / state.range(0));
    EnergyModel model;
    PotentialParams params;
    params.epsilon = eps;
    params.m_c = 0.1;
    CHConfig cfg;
    CHState st = CHState::zeros(dom);
    const Grid2D& g = dom->grid();
    const TanhProfile chi{eps, 0.5};
    for (int c : dom->cells()) {
        st.phi[0][c] = chi(g.xc(c % g.nx));
        st.phi[1][c] = 1.0 - st.phi[0][c];
    }
    const ScalarField q(dom);
    for (auto _ : state) {
        st = step_ch(st, q, nullptr, model, params, cfg);
        benchmark::DoNotOptimize(st.phi[0].values().data());
    }
    state.SetItemsProcessed(state.iterations() * dom->interior_count());
}
BENCHMARK(BM_step_ch)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_step_q(benchmark::State& state) {
    const double eps = 0.1;
    auto dom = Domain::rectangle(0, 0, 1, 1, 1.0 / state.range(0));
    EnergyModel model;
    model.beta_pair = {4.0, 1.0, 1.0};
    PotentialParams params;
    params.epsilon = eps;
    MobilityParams mob;
    mob.m_bulk = {10.0, 10.0, 10.0};
    mob.m_surf = {25.0, 100.0, 50.0};
    CHState st = CHState::zeros(dom);
    const Grid2D& g = dom->grid();
    const TanhProfile chi{eps, 0.5};
    for (int c : dom->cells()) {
        st.phi[0][c] = chi(g.xc(c % g.nx));
        st.phi[1][c] = 1.0 - st.phi[0][c];
    }
    SurfactantState qs{ScalarField(dom, 0.1), 0.0};
    const BoundarySpec bc = BoundarySpec::all_neumann(4);
    SurfactantConfig cfg;
    cfg.dt = 1e-4;
    for (auto _ : state) {
        qs = step_q(qs, st, st, nullptr, bc, {}, model, params, mob, cfg);
        benchmark::DoNotOptimize(qs.q.values().data());
    }
    state.SetItemsProcessed(state.iterations() * dom->interior_count());
}
BENCHMARK(BM_step_q)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_junction_1d(benchmark::State& state) {
    Junction1DConfig cfg;
    cfg.n = static_cast<int>(state.range(0));
    cfg.dt = 1e-6;
    cfg.schedule = DirichletSchedule::ramp(0.0, 1e-4, 0.5);
    for (auto _ : state) {
        Junction1DSolver solver(cfg);
        for (int s = 0; s < 100; ++s) solver.step();
        benchmark::DoNotOptimize(solver.mass());
    }
    state.SetItemsProcessed(state.iterations() * 100 * 2 * cfg.n);
}
BENCHMARK(BM_junction_1d)->Arg(500)->Arg(2000);

static void BM_measure_angles(benchmark::State& state) {
    const double eps = 0.1;
    auto dom = Domain::rectangle(-1, -1, 1, 1, 1.0 / state.range(0));
    const CHState st = hexagon_sector_state(dom, eps);
    for (auto _ : state) {
        const AngleMeasurement am = measure_angles(st);
        benchmark::DoNotOptimize(am.psi_anchored);
    }
}
BENCHMARK(BM_measure_angles)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
