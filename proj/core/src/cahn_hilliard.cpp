#include "tricap/cahn_hilliard.hpp"

#include "tricap/linear.hpp"
#include "tricap/operators.hpp"
#include "tricap/parallel.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace tricap {

namespace {

// Per-face mobility coefficients, harmonic means of the cell values;
// boundary and exterior faces carry zero (no-flux).
struct FaceCoeffs {
    std::vector<double> x; // (nx+1) * ny, face between cells (i-1,j) and (i,j)
    std::vector<double> y; // nx * (ny+1)

    void build(const ScalarField& m) {
        const Domain& dom = m.domain();
        const Grid2D& g = dom.grid();
        x.assign(static_cast<std::size_t>(g.nx + 1) * g.ny, 0.0);
        y.assign(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0);
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 1; i < g.nx; ++i) {
                if (!dom.interior(i - 1, j) || !dom.interior(i, j)) continue;
                const double a = m.at(i - 1, j), b = m.at(i, j);
                const double s = a + b;
                x[j * (g.nx + 1) + i] = s > 0.0 ? 2.0 * a * b / s : 0.0;
            }
        }
        for (int j = 1; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                if (!dom.interior(i, j - 1) || !dom.interior(i, j)) continue;
                const double a = m.at(i, j - 1), b = m.at(i, j);
                const double s = a + b;
                y[j * g.nx + i] = s > 0.0 ? 2.0 * a * b / s : 0.0;
            }
        }
    }
};

// out = div(mf grad u) with precomputed face coefficients.
void apply_div_faces(const ScalarField& u, const FaceCoeffs& mf, ScalarField& out) {
    const Domain& dom = u.domain();
    const Grid2D& g = dom.grid();
    const double ihx2 = 1.0 / (g.hx * g.hx), ihy2 = 1.0 / (g.hy * g.hy);
    const double* uv = u.values().data();
    double* o = out.values().data();
    parallel_for(0, g.ny, [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int c = g.idx(i, j);
                if (!dom.interior_idx(c)) {
                    o[c] = 0.0;
                    continue;
                }
                const double uc = uv[c];
                double acc = 0.0;
                const double ml = mf.x[j * (g.nx + 1) + i];
                const double mr = mf.x[j * (g.nx + 1) + i + 1];
                if (ml != 0.0) acc += ml * (uv[c - 1] - uc) * ihx2;
                if (mr != 0.0) acc += mr * (uv[c + 1] - uc) * ihx2;
                const double mb = mf.y[j * g.nx + i];
                const double mt = mf.y[(j + 1) * g.nx + i];
                if (mb != 0.0) acc += mb * (uv[c - g.nx] - uc) * ihy2;
                if (mt != 0.0) acc += mt * (uv[c + g.nx] - uc) * ihy2;
                o[c] = acc;
            }
        }
    });
}

struct PointwiseQ {
    std::array<ScalarField, 3> s;     // S_i(q)
    ScalarField sbar;                 // averaged spreading coefficient
    std::array<ScalarField, 3> gamma; // surface energies gamma_ij(q)
    std::array<ScalarField, 3> mob;   // M_c / S_i
    ScalarField stab;                 // well-term stabilization coefficient
};

// Stabilization strength: dominates the Lipschitz scale of the lagged well
// term (Sbar/(3 eps)) D_i w, which otherwise limits dt to O(eps^3 / M_c).
constexpr double kStabCoef = 8.0;

PointwiseQ pointwise_coeffs(const ScalarField& q, const EnergyModel& model,
                            const PotentialParams& params, SbarMode mode) {
    PointwiseQ out;
    auto dom = q.domain_ptr();
    for (int i = 0; i < 3; ++i) {
        out.s[i] = ScalarField(dom);
        out.gamma[i] = ScalarField(dom);
        out.mob[i] = ScalarField(dom);
    }
    out.sbar = ScalarField(dom);
    out.stab = ScalarField(dom);
    for (int c : dom->cells()) {
        const double qc = q[c];
        const SpreadingCoefficients sc = spreading_coefficients(model, qc, mode);
        if (sc.spreading)
            throw std::runtime_error("cahn_hilliard: spreading state (S_k <= 0) at q = " +
                                     std::to_string(qc));
        out.sbar[c] = sc.sbar;
        double gmax = 0.0, smin = sc.s[0];
        for (int i = 0; i < 3; ++i) {
            out.s[i][c] = sc.s[i];
            out.gamma[i][c] = surface_energy(model, i, qc);
            out.mob[i][c] = params.m_c / sc.s[i];
            gmax = std::max(gmax, out.gamma[i][c]);
            smin = std::min(smin, sc.s[i]);
        }
        out.stab[c] = kStabCoef * sc.sbar * gmax / (params.epsilon * smin);
    }
    return out;
}

// Lagged well term (Sbar / (3 eps)) D_i w at every cell.
void well_term(const std::array<ScalarField, 3>& phi, const PointwiseQ& pw,
               const PotentialParams& params, std::array<ScalarField, 3>& out) {
    const Domain& dom = phi[0].domain();
    const double coef = 1.0 / (3.0 * params.epsilon);
    for (int c : dom.cells()) {
        const Phi3 p{phi[0][c], phi[1][c], phi[2][c]};
        const std::array<double, 3> gamma{pw.gamma[0][c], pw.gamma[1][c], pw.gamma[2][c]};
        const std::array<double, 3> s{pw.s[0][c], pw.s[1][c], pw.s[2][c]};
        const Phi3 d = blm::di_w_from(blm::w_total_grad(p, gamma, params.lambda_cap), s);
        const double k = coef * pw.sbar[c];
        for (int i = 0; i < 3; ++i) out[i][c] = k * d[i];
    }
}

} // namespace

CHState CHState::zeros(std::shared_ptr<const Domain> dom) {
    CHState st;
    for (int i = 0; i < 3; ++i) {
        st.phi[i] = ScalarField(dom);
        st.mu[i] = ScalarField(dom);
    }
    return st;
}

double CHState::max_simplex_defect() const {
    double m = 0.0;
    for (int c : domain().cells())
        m = std::max(m, std::fabs(phi[0][c] + phi[1][c] + phi[2][c] - 1.0));
    return m;
}

void CHState::validate(double simplex_tol) const {
    for (int i = 0; i < 3; ++i) phi[i].require_finite("CHState.phi");
    const double defect = max_simplex_defect();
    if (defect > simplex_tol)
        throw std::runtime_error("CHState: simplex constraint violated, max|sum phi - 1| = " +
                                 std::to_string(defect));
}

double CHConfig::resolve_dt(const Grid2D& g, double epsilon) const {
    if (dt > 0.0) return dt;
    return 0.1 * epsilon * std::min(g.hx, g.hy);
}

std::array<ScalarField, 3> compute_mu(const CHState& state, const ScalarField& q,
                                      const EnergyModel& model, const PotentialParams& params,
                                      SbarMode sbar) {
    model.validate();
    params.validate();
    require_same_domain(state.phi[0], q, "compute_mu");
    const PointwiseQ pw = pointwise_coeffs(q, model, params, sbar);

    auto dom = q.domain_ptr();
    const BoundarySpec neumann = BoundarySpec::all_neumann(dom->edge_count());
    std::array<ScalarField, 3> mu{ScalarField(dom), ScalarField(dom), ScalarField(dom)};
    well_term(state.phi, pw, params, mu);

    ScalarField lap(dom);
    const double kgrad = 0.75 * params.epsilon;
    for (int i = 0; i < 3; ++i) {
        laplacian_into(state.phi[i], neumann, {}, lap);
        for (int c : dom->cells()) mu[i][c] -= kgrad * pw.s[i][c] * lap[c];
    }
    return mu;
}

ScalarField upwind_convection(const ScalarField& f, const MacVelocity& vel) {
    const Domain& dom = f.domain();
    const Grid2D& g = dom.grid();
    ScalarField out(f.domain_ptr());

    auto deriv = [&](int c, int stride, Face minus, Face plus, double h, bool upstream_minus) {
        // one-sided difference against the flow direction
        const Face dir = upstream_minus ? minus : plus;
        const int s = upstream_minus ? -stride : stride;
        const double sign = upstream_minus ? 1.0 : -1.0;
        if (dom.face_edge(c, dir) >= 0) return 0.0; // no upstream neighbour
        const double* v = f.values().data();
        if (dom.face_edge(c + s, dir) < 0)
            return sign * (3.0 * v[c] - 4.0 * v[c + s] + v[c + 2 * s]) * 0.5 / h;
        return sign * (v[c] - v[c + s]) / h;
    };

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int c = g.idx(i, j);
            if (!dom.interior_idx(c)) continue;
            const double uc = vel.u_cell(i, j);
            const double vc = vel.v_cell(i, j);
            double acc = 0.0;
            if (uc != 0.0) acc += uc * deriv(c, 1, Face::XM, Face::XP, g.hx, uc > 0.0);
            if (vc != 0.0) acc += vc * deriv(c, g.nx, Face::YM, Face::YP, g.hy, vc > 0.0);
            out[c] = acc;
        }
    }
    return out;
}

CHState step_ch(const CHState& state, const ScalarField& q, const MacVelocity* velocity,
                const EnergyModel& model, const PotentialParams& params, const CHConfig& config,
                CHStepReport* report) {
    model.validate();
    params.validate();
    state.validate();
    q.require_finite("step_ch q");
    require_same_domain(state.phi[0], q, "step_ch");

    auto dom = q.domain_ptr();
    const Grid2D& g = dom->grid();
    const double dt = config.resolve_dt(g, params.epsilon);
    const double kgrad = 0.75 * params.epsilon;
    const BoundarySpec neumann = BoundarySpec::all_neumann(dom->edge_count());

    const PointwiseQ pw = pointwise_coeffs(q, model, params, config.sbar);
    std::array<FaceCoeffs, 3> mf;
    for (int i = 0; i < 3; ++i) mf[i].build(pw.mob[i]);

    std::array<ScalarField, 3> adv;
    if (velocity) {
        for (int i = 0; i < 3; ++i) adv[i] = upwind_convection(state.phi[i], *velocity);
    }

    // Fixed-point passes: well term lagged, fourth-order part implicit.
    std::array<ScalarField, 3> iterate = state.phi;
    std::array<ScalarField, 3> sol = state.phi;
    std::array<ScalarField, 3> well{ScalarField(dom), ScalarField(dom), ScalarField(dom)};
    ScalarField work1(dom), work2(dom), rhs(dom);

    int total_iters = 0;
    double worst_res = 0.0;
    const int passes = std::max(1, config.fp_iters);
    for (int pass = 0; pass < passes; ++pass) {
        // Lagged explicit part with the stabilization shift: the implicit
        // potential is -(3/4) eps S_i lap(x) + stab * x, the explicit one
        // well_i(phi*) - stab * phi*_i; their sum is consistent and the
        // shift removes the O(eps^3 / M_c) step-size restriction of the
        // plain lagged well term.
        well_term(iterate, pw, params, well);
        for (int i = 0; i < 3; ++i) {
            for (int c : dom->cells()) well[i][c] -= pw.stab[c] * iterate[i][c];

            // rhs = phi^n + dt div(m grad (well_i - stab phi*_i)) - dt adv_i
            apply_div_faces(well[i], mf[i], work1);
            for (int c : dom->cells())
                rhs[c] = state.phi[i][c] + dt * work1[c] - (velocity ? dt * adv[i][c] : 0.0);

            auto op = [&](std::span<const double> x, std::span<double> y) {
                std::memcpy(work1.values().data(), x.data(), x.size() * sizeof(double));
                laplacian_into(work1, neumann, {}, work2);
                for (int c : dom->cells())
                    work2[c] = kgrad * pw.s[i][c] * work2[c] - pw.stab[c] * work1[c];
                // reuse work1 as output of the divergence
                apply_div_faces(work2, mf[i], work1);
                const double* w = work1.values().data();
                for (std::size_t k = 0; k < y.size(); ++k) y[k] = x[k] + dt * w[k];
            };
            // intermediate passes only seed the next well-term evaluation;
            // solve them loosely and tighten on the final pass
            const double tol =
                pass + 1 < passes ? std::max(config.lin_tol, 1e-5) : config.lin_tol;
            SolveReport rep = bicgstab(op, rhs.values(), sol[i].values(), tol,
                                       config.max_lin_iters);
            if (!rep.converged)
                throw std::runtime_error("step_ch: linear solver stalled, relative residual " +
                                         std::to_string(rep.residual));
            total_iters += rep.iterations;
            worst_res = std::max(worst_res, rep.residual);
        }
        iterate = sol;
    }

    // Chemical potentials of the accepted iterate (well term and
    // stabilization residual as used in the last solve).
    std::array<ScalarField, 3> mu = well;
    for (int i = 0; i < 3; ++i) {
        laplacian_into(sol[i], neumann, {}, work1);
        for (int c : dom->cells())
            mu[i][c] += pw.stab[c] * sol[i][c] - kgrad * pw.s[i][c] * work1[c];
    }

    // Conservative final update. Face fluxes get a zero-column-sum
    // correction, J_i = m_i G(mu_i) - w_i sum_l m_l G(mu_l) with
    // w_i = m_i / sum m_l per face; for spatially uniform S the correction
    // vanishes since sum_l mu_l / S_l = 0 pointwise.
    const int nfx = (g.nx + 1) * g.ny, nfy = g.nx * (g.ny + 1);
    std::array<std::vector<double>, 3> fx, fy;
    for (int i = 0; i < 3; ++i) {
        fx[i].assign(nfx, 0.0);
        fy[i].assign(nfy, 0.0);
    }
    auto corrected = [&](double m0, double m1, double m2, double g0, double g1, double g2,
                         double out[3]) {
        const double msum = m0 + m1 + m2;
        const double tot = m0 * g0 + m1 * g1 + m2 * g2;
        out[0] = m0 * g0 - (msum > 0.0 ? m0 / msum * tot : 0.0);
        out[1] = m1 * g1 - (msum > 0.0 ? m1 / msum * tot : 0.0);
        out[2] = m2 * g2 - (msum > 0.0 ? m2 / msum * tot : 0.0);
    };
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i) {
            const int f = j * (g.nx + 1) + i;
            if (mf[0].x[f] == 0.0 && mf[1].x[f] == 0.0 && mf[2].x[f] == 0.0) continue;
            const int c = g.idx(i, j);
            double out[3];
            corrected(mf[0].x[f], mf[1].x[f], mf[2].x[f], (mu[0][c] - mu[0][c - 1]) / g.hx,
                      (mu[1][c] - mu[1][c - 1]) / g.hx, (mu[2][c] - mu[2][c - 1]) / g.hx, out);
            for (int k = 0; k < 3; ++k) fx[k][f] = out[k];
        }
    }
    for (int j = 1; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int f = j * g.nx + i;
            if (mf[0].y[f] == 0.0 && mf[1].y[f] == 0.0 && mf[2].y[f] == 0.0) continue;
            const int c = g.idx(i, j);
            double out[3];
            corrected(mf[0].y[f], mf[1].y[f], mf[2].y[f], (mu[0][c] - mu[0][c - g.nx]) / g.hy,
                      (mu[1][c] - mu[1][c - g.nx]) / g.hy, (mu[2][c] - mu[2][c - g.nx]) / g.hy,
                      out);
            for (int k = 0; k < 3; ++k) fy[k][f] = out[k];
        }
    }

    CHState next = CHState::zeros(dom);
    next.time = state.time + dt;
    for (int i = 0; i < 3; ++i) {
        next.mu[i] = mu[i];
        next.phi[i] = state.phi[i];
        for (int j = 0; j < g.ny; ++j) {
            for (int ii = 0; ii < g.nx; ++ii) {
                const int c = g.idx(ii, j);
                if (!dom->interior_idx(c)) continue;
                const double div = (fx[i][j * (g.nx + 1) + ii + 1] - fx[i][j * (g.nx + 1) + ii]) / g.hx +
                                   (fy[i][(j + 1) * g.nx + ii] - fy[i][j * g.nx + ii]) / g.hy;
                next.phi[i][c] += dt * div - (velocity ? dt * adv[i][c] : 0.0);
            }
        }
        next.phi[i].require_finite("step_ch output");
    }

    if (report) {
        report->lin_iters = total_iters;
        report->lin_residual = worst_res;
        report->flux_x = std::move(fx);
        report->flux_y = std::move(fy);
    }
    return next;
}

RelaxResult relax_to_equilibrium(CHState state, const ScalarField& q, const EnergyModel& model,
                                 const PotentialParams& params, const CHConfig& config) {
    RelaxResult out;
    const double dt = config.resolve_dt(state.domain().grid(), params.epsilon);
    for (int step = 0; step < config.max_relax_steps; ++step) {
        CHState next = step_ch(state, q, nullptr, model, params, config);
        double change = 0.0;
        for (int i = 0; i < 3; ++i) {
            double d = 0.0;
            for (int c : state.domain().cells())
                d = std::max(d, std::fabs(next.phi[i][c] - state.phi[i][c]));
            change = std::max(change, d);
        }
        state = std::move(next);
        out.steps = step + 1;
        out.energy.push_back(gl_energy(state, q, model, params));
        if (change / dt < config.stationarity_tol) {
            out.converged = true;
            break;
        }
    }
    out.state = std::move(state);
    return out;
}

double gl_energy(const CHState& state, const ScalarField& q, const EnergyModel& model,
                 const PotentialParams& params) {
    const Domain& dom = state.domain();
    std::array<ScalarField, 3> gx, gy;
    for (int i = 0; i < 3; ++i) {
        auto [dx, dy] = gradient(state.phi[i]);
        gx[i] = std::move(dx);
        gy[i] = std::move(dy);
    }
    double total = 0.0;
    for (int c : dom.cells()) {
        const double qc = q[c];
        const Phi3 p{state.phi[0][c], state.phi[1][c], state.phi[2][c]};
        const Grad3 grads{Vec2{gx[0][c], gy[0][c]}, Vec2{gx[1][c], gy[1][c]},
                          Vec2{gx[2][c], gy[2][c]}};
        double e = 0.0;
        for (int i = 0; i < 3; ++i) e += blm::xi(p[i]) * bulk_energy(model, i, qc);
        for (int pr = 0; pr < 3; ++pr) {
            const double gam = surface_energy(model, pr, qc);
            e += gam * (blm::w_pair(p, pr, params.lambda_cap) / params.epsilon +
                        params.epsilon * blm::a_pair(grads, pr));
        }
        total += e;
    }
    return total * dom.grid().cell_area();
}

} // namespace tricap
