#include "tricap/surfactant.hpp"

#include "tricap/linear.hpp"
#include "tricap/operators.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace tricap {

void MobilityParams::validate() const {
    for (double m : m_bulk)
        if (m < 0.0) throw std::invalid_argument("MobilityParams: bulk mobilities must be >= 0");
    for (double m : m_surf)
        if (m < 0.0) throw std::invalid_argument("MobilityParams: surface mobilities must be >= 0");
}

namespace {

// Regularized interface deltas of the current phase state.
std::array<ScalarField, 3> delta_fields(const CHState& phi, const PotentialParams& params,
                                        const MobilityParams& mobility) {
    auto dom = phi.phi[0].domain_ptr();
    std::array<ScalarField, 3> gx, gy;
    for (int i = 0; i < 3; ++i) {
        auto [dx, dy] = gradient(phi.phi[i]);
        gx[i] = std::move(dx);
        gy[i] = std::move(dy);
    }
    std::array<ScalarField, 3> out{ScalarField(dom), ScalarField(dom), ScalarField(dom)};
    for (int c : dom->cells()) {
        const Phi3 p{phi.phi[0][c], phi.phi[1][c], phi.phi[2][c]};
        const Grad3 grads{Vec2{gx[0][c], gy[0][c]}, Vec2{gx[1][c], gy[1][c]},
                          Vec2{gx[2][c], gy[2][c]}};
        for (int pr = 0; pr < 3; ++pr) {
            if (!mobility.use_pair[pr]) continue;
            const double d = blm::delta_pair(p, grads, pr, params.epsilon, params.lambda_cap);
            out[pr][c] = blm::delta_regularized(d, params.epsilon, params.c_reg);
        }
    }
    return out;
}

// Conservative face-flux divergence of v C with linear-upwind reconstruction.
ScalarField advection_divergence(const ScalarField& cfield, const MacVelocity& vel) {
    const Domain& dom = cfield.domain();
    const Grid2D& g = dom.grid();
    const double* cv = cfield.values().data();

    auto face_value = [&](int c_up, int c_upup, bool have_upup) {
        // second-order upwind: extrapolate from the two upstream cells
        if (have_upup) return 1.5 * cv[c_up] - 0.5 * cv[c_upup];
        return cv[c_up];
    };

    std::vector<double> fx(static_cast<std::size_t>(g.nx + 1) * g.ny, 0.0);
    std::vector<double> fy(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i) {
            if (!dom.interior(i - 1, j) || !dom.interior(i, j)) continue;
            const double uf = vel.u_at(i, j);
            if (uf == 0.0) continue;
            double val;
            if (uf > 0.0)
                val = face_value(g.idx(i - 1, j), g.idx(i - 2, j), dom.interior(i - 2, j));
            else
                val = face_value(g.idx(i, j), g.idx(i + 1, j), dom.interior(i + 1, j));
            fx[j * (g.nx + 1) + i] = uf * val;
        }
    }
    for (int j = 1; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!dom.interior(i, j - 1) || !dom.interior(i, j)) continue;
            const double vf = vel.v_at(i, j);
            if (vf == 0.0) continue;
            double val;
            if (vf > 0.0)
                val = face_value(g.idx(i, j - 1), g.idx(i, j - 2), dom.interior(i, j - 2));
            else
                val = face_value(g.idx(i, j), g.idx(i, j + 1), dom.interior(i, j + 1));
            fy[j * g.nx + i] = vf * val;
        }
    }
    ScalarField out(cfield.domain_ptr());
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int c = g.idx(i, j);
            if (!dom.interior_idx(c)) continue;
            out[c] = (fx[j * (g.nx + 1) + i + 1] - fx[j * (g.nx + 1) + i]) / g.hx +
                     (fy[(j + 1) * g.nx + i] - fy[j * g.nx + i]) / g.hy;
        }
    }
    return out;
}

} // namespace

ScalarField capacity_field(const CHState& phi, const EnergyModel& model,
                           const PotentialParams& params, const MobilityParams& mobility) {
    auto dom = phi.phi[0].domain_ptr();
    const std::array<ScalarField, 3> deltas = delta_fields(phi, params, mobility);
    ScalarField kappa(dom);
    for (int c : dom->cells()) {
        double k = 0.0;
        if (mobility.use_bulk)
            for (int i = 0; i < 3; ++i)
                k += blm::xi(phi.phi[i][c]) * bulk_susceptibility(model, i);
        for (int pr = 0; pr < 3; ++pr)
            if (mobility.use_pair[pr]) k += deltas[pr][c] * surface_susceptibility(model, pr);
        kappa[c] = k;
    }
    return kappa;
}

ScalarField conserved_density(const ScalarField& q, const CHState& phi, const EnergyModel& model,
                              const PotentialParams& params, const MobilityParams& mobility) {
    ScalarField c = capacity_field(phi, model, params, mobility);
    for (int cell : q.domain().cells()) c[cell] *= q[cell];
    return c;
}

ScalarField total_mobility(const CHState& phi, const MobilityParams& mobility,
                           const PotentialParams& params) {
    mobility.validate();
    auto dom = phi.phi[0].domain_ptr();
    const std::array<ScalarField, 3> deltas = delta_fields(phi, params, mobility);
    ScalarField m(dom);
    double mn = std::numeric_limits<double>::infinity();
    for (int c : dom->cells()) {
        double v = 0.0;
        if (mobility.use_bulk)
            for (int i = 0; i < 3; ++i) v += blm::xi(phi.phi[i][c]) * mobility.m_bulk[i];
        for (int pr = 0; pr < 3; ++pr)
            if (mobility.use_pair[pr]) v += deltas[pr][c] * mobility.m_surf[pr];
        m[c] = v;
        mn = std::min(mn, v);
    }
    if (!(mn > 0.0))
        throw std::runtime_error("total_mobility: mobility field not strictly positive (min = " +
                                 std::to_string(mn) + "); the surfactant operator degenerates");
    return m;
}

SurfactantState step_q(const SurfactantState& state, const CHState& phi_old,
                       const CHState& phi_new, const MacVelocity* velocity,
                       const BoundarySpec& bc, const std::vector<DirichletSchedule>& schedules,
                       const EnergyModel& model, const PotentialParams& params,
                       const MobilityParams& mobility, const SurfactantConfig& config) {
    model.validate();
    params.validate();
    mobility.validate();
    state.q.require_finite("step_q");
    if (!(config.dt > 0.0)) throw std::invalid_argument("step_q: dt must be positive");

    auto dom = state.q.domain_ptr();
    bc.require_edges(dom->edge_count());
    for (const auto& e : bc.edges)
        if (e.kind == BcKind::Dirichlet &&
            (e.schedule < 0 || e.schedule >= static_cast<int>(schedules.size())))
            throw std::invalid_argument("step_q: Dirichlet edge without a schedule");

    const double dt = config.dt;
    const double t_new = state.time + dt;

    const ScalarField kappa_old = capacity_field(phi_old, model, params, mobility);
    const ScalarField kappa_new = capacity_field(phi_new, model, params, mobility);
    const ScalarField mob = total_mobility(phi_new, mobility, params);

    std::vector<double> edge_vals(bc.edges.size(), 0.0);
    for (std::size_t e = 0; e < bc.edges.size(); ++e)
        if (bc.edges[e].kind == BcKind::Dirichlet)
            edge_vals[e] = schedules[bc.edges[e].schedule](t_new);
    const BoundaryValueFn values = uniform_edge_values(edge_vals);

    // rhs = kappa_old q_old - dt div(v C_old) + dt * (Dirichlet boundary part)
    ScalarField rhs(dom);
    for (int c : dom->cells()) rhs[c] = kappa_old[c] * state.q[c];
    if (velocity) {
        ScalarField cold = rhs; // kappa_old * q_old is exactly C_old
        const ScalarField advdiv = advection_divergence(cold, *velocity);
        for (int c : dom->cells()) rhs[c] -= dt * advdiv[c];
    }
    if (bc.has_dirichlet()) {
        ScalarField zero(dom), bterm(dom);
        div_mgrad_into(zero, mob, bc, values, bterm); // affine boundary source
        for (int c : dom->cells()) rhs[c] += dt * bterm[c];
    }

    // SPD operator kappa_new q - dt * div(M grad q) with homogeneous
    // Dirichlet data (the affine part moved to the rhs).
    ScalarField work1(dom), work2(dom);
    const BoundaryValueFn zero_values = uniform_edge_values(std::vector<double>(bc.edges.size(), 0.0));
    auto op = [&](std::span<const double> x, std::span<double> y) {
        std::memcpy(work1.values().data(), x.data(), x.size() * sizeof(double));
        div_mgrad_into(work1, mob, bc, zero_values, work2);
        const double* w = work2.values().data();
        const double* kn = kappa_new.values().data();
        for (std::size_t k = 0; k < y.size(); ++k) y[k] = kn[k] * x[k] - dt * w[k];
    };

    // Jacobi preconditioner: the capacity/mobility contrast between the
    // interfacial layers and the regularization floor is severe.
    ScalarField inv_diag(dom);
    div_mgrad_diagonal_into(mob, bc, inv_diag);
    for (int c : dom->cells()) inv_diag[c] = 1.0 / (kappa_new[c] + dt * inv_diag[c]);

    SurfactantState next;
    next.q = state.q; // warm start
    next.time = t_new;
    const SolveReport rep = conjugate_gradient(op, rhs.values(), next.q.values(), config.lin_tol,
                                               config.max_lin_iters, inv_diag.values());
    if (!rep.converged)
        throw std::runtime_error("step_q: CG stalled after " + std::to_string(rep.iterations) +
                                 " iterations, relative residual " +
                                 std::to_string(rep.residual));
    next.q.require_finite("step_q output");
    return next;
}

double surfactant_mass(const SurfactantState& state, const CHState& phi, const EnergyModel& model,
                       const PotentialParams& params, const MobilityParams& mobility) {
    return integrate(conserved_density(state.q, phi, model, params, mobility));
}

} // namespace tricap
