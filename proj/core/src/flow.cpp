#include "tricap/flow.hpp"

#include "tricap/linear.hpp"
#include "tricap/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace tricap {

void FluidParams::validate() const {
    for (double r : rho)
        if (!(r > 0.0)) throw std::invalid_argument("FluidParams: densities must be positive");
    for (double e : eta)
        if (!(e > 0.0)) throw std::invalid_argument("FluidParams: viscosities must be positive");
}

FlowState FlowState::zeros(std::shared_ptr<const Domain> dom) {
    FlowState f;
    f.vel = MacVelocity(dom);
    f.p = ScalarField(std::move(dom));
    return f;
}

namespace {

// Clipped linear interpolation of a per-phase parameter.
ScalarField blend(const CHState* phi, const std::array<double, 3>& val,
                  std::shared_ptr<const Domain> dom) {
    ScalarField out(dom);
    const double lo = std::min({val[0], val[1], val[2]});
    const double hi = std::max({val[0], val[1], val[2]});
    for (int c : dom->cells()) {
        if (!phi) {
            out[c] = val[0];
            continue;
        }
        double v = 0.0;
        for (int i = 0; i < 3; ++i) v += phi->phi[i][c] * val[i];
        out[c] = std::clamp(v, lo, hi);
    }
    return out;
}

struct Ghosted {
    // u with one ghost row below/above, v with one ghost column each side;
    // ghosts realize the tangential wall velocity.
    const MacVelocity& vel;
    const WallVelocity& walls;
    const Grid2D& g;

    double u(int i, int j) const { // i in [0,nx], j in [-1,ny]
        if (j < 0) return 2.0 * walls.tangential[2] - vel.u_at(i, 0);
        if (j >= g.ny) return 2.0 * walls.tangential[3] - vel.u_at(i, g.ny - 1);
        return vel.u_at(i, j);
    }
    double v(int i, int j) const { // i in [-1,nx], j in [0,ny]
        if (i < 0) return 2.0 * walls.tangential[0] - vel.v_at(0, j);
        if (i >= g.nx) return 2.0 * walls.tangential[1] - vel.v_at(g.nx - 1, j);
        return vel.v_at(i, j);
    }
};

} // namespace

std::pair<ScalarField, ScalarField> capillary_force(const CHState& phi,
                                                    const std::array<ScalarField, 3>& mu,
                                                    const ScalarField& q, const EnergyModel& model,
                                                    const PotentialParams& params) {
    auto dom = q.domain_ptr();
    ScalarField fx(dom), fy(dom);

    std::array<ScalarField, 3> gx, gy;
    for (int i = 0; i < 3; ++i) {
        auto [dx, dy] = gradient(phi.phi[i]);
        gx[i] = std::move(dx);
        gy[i] = std::move(dy);
    }
    for (int c : dom->cells())
        for (int i = 0; i < 3; ++i) {
            fx[c] += mu[i][c] * gx[i][c];
            fy[c] += mu[i][c] * gy[i][c];
        }

    // Marangoni part: delta_ij grad(sigt_ij(q)), with the un-regularized delta.
    ScalarField sig(dom);
    for (int p = 0; p < 3; ++p) {
        for (int c : dom->cells()) sig[c] = surface_tension(model, p, q[c]);
        auto [sx, sy] = gradient(sig);
        for (int c : dom->cells()) {
            const Phi3 ph{phi.phi[0][c], phi.phi[1][c], phi.phi[2][c]};
            const Grad3 grads{Vec2{gx[0][c], gy[0][c]}, Vec2{gx[1][c], gy[1][c]},
                              Vec2{gx[2][c], gy[2][c]}};
            const double d = blm::delta_pair(ph, grads, p, params.epsilon, params.lambda_cap);
            fx[c] += d * sx[c];
            fy[c] += d * sy[c];
        }
    }
    return {std::move(fx), std::move(fy)};
}

FlowState step_ns(const FlowState& flow, const CHState* phi,
                  const std::pair<ScalarField, ScalarField>* force, const FluidParams& fluid,
                  const WallVelocity& walls, const FlowConfig& config,
                  const std::pair<std::vector<double>, std::vector<double>>* jbar) {
    fluid.validate();
    if (!(config.dt > 0.0)) throw std::invalid_argument("step_ns: dt must be positive");
    auto dom = flow.vel.dom;
    const Grid2D& g = dom->grid();
    const double dt = config.dt;
    const Ghosted gh{flow.vel, walls, g};

    const ScalarField rho_c = blend(phi, fluid.rho, dom);
    const ScalarField eta_c = blend(phi, fluid.eta, dom);

    auto eta_corner = [&](int i, int j) { // corner (x_i, y_j), 1<=i<=nx-1 interior use
        double s = 0.0;
        int n = 0;
        for (int dj = -1; dj <= 0; ++dj)
            for (int di = -1; di <= 0; ++di) {
                const int ci = i + di, cj = j + dj;
                if (ci >= 0 && ci < g.nx && cj >= 0 && cj < g.ny) {
                    s += eta_c.at(ci, cj);
                    ++n;
                }
            }
        return n > 0 ? s / n : fluid.eta[0];
    };
    auto rho_uface = [&](int i, int j) {
        if (i == 0) return rho_c.at(0, j);
        if (i == g.nx) return rho_c.at(g.nx - 1, j);
        return 0.5 * (rho_c.at(i - 1, j) + rho_c.at(i, j));
    };
    auto rho_vface = [&](int i, int j) {
        if (j == 0) return rho_c.at(i, 0);
        if (j == g.ny) return rho_c.at(i, g.ny - 1);
        return 0.5 * (rho_c.at(i, j - 1) + rho_c.at(i, j));
    };

    FlowState next = flow;
    MacVelocity& star = next.vel;

    // Predictor for u (interior x-faces only; wall-normal faces stay fixed).
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i) {
            // advection, divergence form with centered interpolation
            const double ue = 0.5 * (gh.u(i, j) + gh.u(i + 1, j));
            const double uw = 0.5 * (gh.u(i - 1, j) + gh.u(i, j));
            const double un = 0.5 * (gh.u(i, j) + gh.u(i, j + 1));
            const double us = 0.5 * (gh.u(i, j - 1) + gh.u(i, j));
            const double vn = 0.5 * (gh.v(i - 1, j + 1) + gh.v(i, j + 1));
            const double vs = 0.5 * (gh.v(i - 1, j) + gh.v(i, j));
            const double adv = (ue * ue - uw * uw) / g.hx + (un * vn - us * vs) / g.hy;

            // stress divergence: d/dx(2 eta du/dx) + d/dy(eta (du/dy + dv/dx))
            const double txx_e = 2.0 * eta_c.at(i, j) * (gh.u(i + 1, j) - gh.u(i, j)) / g.hx;
            const double txx_w = 2.0 * eta_c.at(i - 1, j) * (gh.u(i, j) - gh.u(i - 1, j)) / g.hx;
            const double txy_n = eta_corner(i, j + 1) *
                                 ((gh.u(i, j + 1) - gh.u(i, j)) / g.hy +
                                  (gh.v(i, j + 1) - gh.v(i - 1, j + 1)) / g.hx);
            const double txy_s = eta_corner(i, j) * ((gh.u(i, j) - gh.u(i, j - 1)) / g.hy +
                                                     (gh.v(i, j) - gh.v(i - 1, j)) / g.hx);
            const double visc =
                config.implicit_viscosity ? 0.0 : (txx_e - txx_w) / g.hx + (txy_n - txy_s) / g.hy;

            double f = 0.0;
            if (force) f = 0.5 * (force->first.at(i - 1, j) + force->first.at(i, j));

            double jterm = 0.0;
            if (jbar) {
                // -div(u jbar): x-part with jbar_x on x-faces, y-part with
                // jbar_y at corners (averaged from the y faces)
                const auto& jx = jbar->first;
                const auto& jy = jbar->second;
                const double jxe = 0.5 * (jx[j * (g.nx + 1) + i] + jx[j * (g.nx + 1) + i + 1]);
                const double jxw = 0.5 * (jx[j * (g.nx + 1) + i - 1] + jx[j * (g.nx + 1) + i]);
                const double jy_n = 0.5 * (jy[(j + 1) * g.nx + i - 1] + jy[(j + 1) * g.nx + i]);
                const double jy_s = 0.5 * (jy[j * g.nx + i - 1] + jy[j * g.nx + i]);
                jterm = -((ue * jxe - uw * jxw) / g.hx + (un * jy_n - us * jy_s) / g.hy);
            }

            const double r = rho_uface(i, j);
            star.u[star.iu(i, j)] =
                flow.vel.u_at(i, j) + dt * (-adv + (visc + f + jterm) / r);
        }
    }
    for (int j = 0; j < g.ny; ++j) {
        star.u[star.iu(0, j)] = 0.0;
        star.u[star.iu(g.nx, j)] = 0.0;
    }

    // Predictor for v (interior y-faces only).
    for (int j = 1; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double vn = 0.5 * (gh.v(i, j) + gh.v(i, j + 1));
            const double vs = 0.5 * (gh.v(i, j - 1) + gh.v(i, j));
            const double ve = 0.5 * (gh.v(i, j) + gh.v(i + 1, j));
            const double vw = 0.5 * (gh.v(i - 1, j) + gh.v(i, j));
            const double ue = 0.5 * (gh.u(i + 1, j - 1) + gh.u(i + 1, j));
            const double uw = 0.5 * (gh.u(i, j - 1) + gh.u(i, j));
            const double adv = (ue * ve - uw * vw) / g.hx + (vn * vn - vs * vs) / g.hy;

            const double tyy_n = 2.0 * eta_c.at(i, j) * (gh.v(i, j + 1) - gh.v(i, j)) / g.hy;
            const double tyy_s = 2.0 * eta_c.at(i, j - 1) * (gh.v(i, j) - gh.v(i, j - 1)) / g.hy;
            const double txy_e = eta_corner(i + 1, j) *
                                 ((gh.u(i + 1, j) - gh.u(i + 1, j - 1)) / g.hy +
                                  (gh.v(i + 1, j) - gh.v(i, j)) / g.hx);
            const double txy_w = eta_corner(i, j) * ((gh.u(i, j) - gh.u(i, j - 1)) / g.hy +
                                                     (gh.v(i, j) - gh.v(i - 1, j)) / g.hx);
            const double visc =
                config.implicit_viscosity ? 0.0 : (tyy_n - tyy_s) / g.hy + (txy_e - txy_w) / g.hx;

            double f = 0.0;
            if (force) f = 0.5 * (force->second.at(i, j - 1) + force->second.at(i, j));

            double jterm = 0.0;
            if (jbar) {
                const auto& jx = jbar->first;
                const auto& jy = jbar->second;
                const double jyn = 0.5 * (jy[j * g.nx + i] + jy[(j + 1) * g.nx + i]);
                const double jys = 0.5 * (jy[(j - 1) * g.nx + i] + jy[j * g.nx + i]);
                const double jx_e = 0.5 * (jx[(j - 1) * (g.nx + 1) + i + 1] + jx[j * (g.nx + 1) + i + 1]);
                const double jx_w = 0.5 * (jx[(j - 1) * (g.nx + 1) + i] + jx[j * (g.nx + 1) + i]);
                jterm = -((ve * jx_e - vw * jx_w) / g.hx + (vn * jyn - vs * jys) / g.hy);
            }

            const double r = rho_vface(i, j);
            star.v[star.iv(i, j)] =
                flow.vel.v_at(i, j) + dt * (-adv + (visc + f + jterm) / r);
        }
    }
    for (int i = 0; i < g.nx; ++i) {
        star.v[star.iv(i, 0)] = 0.0;
        star.v[star.iv(i, g.ny)] = 0.0;
    }

    if (config.implicit_viscosity) {
        // Backward-Euler viscous solve per component (matched viscosity:
        // the stress divergence reduces to eta lap(u) for solenoidal fields).
        if (!fluid.matched_viscosity())
            throw std::invalid_argument(
                "step_ns: implicit viscosity supports matched viscosities only");
        const double nu_dt = dt * fluid.eta[0];

        // u-component: unknowns at interior x-faces, tangential wall ghosts.
        const int nu_i = g.nx - 1, nu_j = g.ny;
        std::vector<double> bu(static_cast<std::size_t>(nu_i) * nu_j), xu = bu;
        auto uidx = [&](int i, int j) { return j * nu_i + (i - 1); };
        for (int j = 0; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i) {
                double b = star.u[star.iu(i, j)];
                // wall ghost contribution (ghost = 2 U_wall - u)
                if (j == 0) b += nu_dt / rho_uface(i, j) * 2.0 * walls.tangential[2] / (g.hy * g.hy);
                if (j == g.ny - 1)
                    b += nu_dt / rho_uface(i, j) * 2.0 * walls.tangential[3] / (g.hy * g.hy);
                bu[uidx(i, j)] = b;
                xu[uidx(i, j)] = star.u[star.iu(i, j)];
            }
        auto op_u = [&](std::span<const double> x, std::span<double> y) {
            for (int j = 0; j < g.ny; ++j)
                for (int i = 1; i < g.nx; ++i) {
                    const double xc = x[uidx(i, j)];
                    const double xe = i + 1 < g.nx ? x[uidx(i + 1, j)] : 0.0;
                    const double xw = i - 1 >= 1 ? x[uidx(i - 1, j)] : 0.0;
                    const double xn = j + 1 < g.ny ? x[uidx(i, j + 1)] : -xc; // ghost -u
                    const double xs = j - 1 >= 0 ? x[uidx(i, j - 1)] : -xc;
                    const double lap = (xe - 2.0 * xc + xw) / (g.hx * g.hx) +
                                       (xn - 2.0 * xc + xs) / (g.hy * g.hy);
                    y[uidx(i, j)] = xc - nu_dt / rho_uface(i, j) * lap;
                }
        };
        SolveReport ru = bicgstab(op_u, bu, xu, config.lin_tol, config.max_lin_iters);
        if (!ru.converged) throw std::runtime_error("step_ns: implicit viscous solve (u) stalled");
        for (int j = 0; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i) star.u[star.iu(i, j)] = xu[uidx(i, j)];

        // v-component: unknowns at interior y-faces.
        const int nv_i = g.nx, nv_j = g.ny - 1;
        std::vector<double> bv(static_cast<std::size_t>(nv_i) * nv_j), xv = bv;
        auto vidx = [&](int i, int j) { return (j - 1) * nv_i + i; };
        for (int j = 1; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                double b = star.v[star.iv(i, j)];
                if (i == 0) b += nu_dt / rho_vface(i, j) * 2.0 * walls.tangential[0] / (g.hx * g.hx);
                if (i == g.nx - 1)
                    b += nu_dt / rho_vface(i, j) * 2.0 * walls.tangential[1] / (g.hx * g.hx);
                bv[vidx(i, j)] = b;
                xv[vidx(i, j)] = star.v[star.iv(i, j)];
            }
        auto op_v = [&](std::span<const double> x, std::span<double> y) {
            for (int j = 1; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const double xc = x[vidx(i, j)];
                    const double xn = j + 1 < g.ny ? x[vidx(i, j + 1)] : 0.0;
                    const double xs = j - 1 >= 1 ? x[vidx(i, j - 1)] : 0.0;
                    const double xe = i + 1 < g.nx ? x[vidx(i + 1, j)] : -xc;
                    const double xw = i - 1 >= 0 ? x[vidx(i - 1, j)] : -xc;
                    const double lap = (xe - 2.0 * xc + xw) / (g.hx * g.hx) +
                                       (xn - 2.0 * xc + xs) / (g.hy * g.hy);
                    y[vidx(i, j)] = xc - nu_dt / rho_vface(i, j) * lap;
                }
        };
        SolveReport rv = bicgstab(op_v, bv, xv, config.lin_tol, config.max_lin_iters);
        if (!rv.converged) throw std::runtime_error("step_ns: implicit viscous solve (v) stalled");
        for (int j = 1; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) star.v[star.iv(i, j)] = xv[vidx(i, j)];
    }

    // Pressure Poisson: div((1/rho) grad p) = div(u*) / dt, Neumann walls.
    ScalarField rhs(dom);
    double mean = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            rhs.at(i, j) = star.divergence(i, j) / dt;
            mean += rhs.at(i, j);
        }
    mean /= g.size();
    for (int c = 0; c < g.size(); ++c) rhs[c] -= mean;

    ScalarField irho(dom);
    for (int c : dom->cells()) irho[c] = 1.0 / rho_c[c];
    const BoundarySpec neumann = BoundarySpec::all_neumann(dom->edge_count());
    ScalarField w1(dom), w2(dom);
    auto op = [&](std::span<const double> x, std::span<double> y) {
        std::memcpy(w1.values().data(), x.data(), x.size() * sizeof(double));
        div_mgrad_into(w1, irho, neumann, {}, w2);
        // sign flip for positive definiteness
        const double* w = w2.values().data();
        for (std::size_t k = 0; k < y.size(); ++k) y[k] = -w[k];
    };
    ScalarField prhs(dom);
    for (int c = 0; c < g.size(); ++c) prhs[c] = -rhs[c];
    next.p = flow.p; // warm start
    const SolveReport rep =
        conjugate_gradient(op, prhs.values(), next.p.values(), config.lin_tol, config.max_lin_iters);
    if (!rep.converged)
        throw std::runtime_error("step_ns: pressure solve stalled, relative residual " +
                                 std::to_string(rep.residual));
    double pmean = 0.0;
    for (int c = 0; c < g.size(); ++c) pmean += next.p[c];
    pmean /= g.size();
    for (int c = 0; c < g.size(); ++c) next.p[c] -= pmean;

    // Velocity correction on interior faces.
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            const double ir = 0.5 * (irho.at(i - 1, j) + irho.at(i, j));
            star.u[star.iu(i, j)] -= dt * ir * (next.p.at(i, j) - next.p.at(i - 1, j)) / g.hx;
        }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double ir = 0.5 * (irho.at(i, j - 1) + irho.at(i, j));
            star.v[star.iv(i, j)] -= dt * ir * (next.p.at(i, j) - next.p.at(i, j - 1)) / g.hy;
        }

    next.time = flow.time + dt;
    return next;
}

double kinetic_energy(const FlowState& flow, const CHState* phi, const FluidParams& fluid) {
    auto dom = flow.vel.dom;
    const ScalarField rho_c = blend(phi, fluid.rho, dom);
    const Grid2D& g = dom->grid();
    double e = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double uc = flow.vel.u_cell(i, j);
            const double vc = flow.vel.v_cell(i, j);
            e += 0.5 * rho_c.at(i, j) * (uc * uc + vc * vc);
        }
    return e * g.cell_area();
}

double velocity_l2(const FlowState& flow) {
    const Grid2D& g = flow.vel.grid();
    double e = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double uc = flow.vel.u_cell(i, j);
            const double vc = flow.vel.v_cell(i, j);
            e += uc * uc + vc * vc;
        }
    return std::sqrt(e * g.cell_area());
}

double flow_dt_limit(const FlowState& flow, const FluidParams& fluid, const EnergyModel& model,
                     const PotentialParams& params, const FlowConfig& config) {
    const Grid2D& g = flow.vel.grid();
    const double h = std::min(g.hx, g.hy);
    double limit = std::numeric_limits<double>::infinity();
    const double vmax = flow.vel.max_speed();
    if (vmax > 0.0) limit = std::min(limit, config.cfl * h / vmax);
    const double rho_min = std::min({fluid.rho[0], fluid.rho[1], fluid.rho[2]});
    limit = std::min(limit, config.capillary_coef *
                                std::sqrt(rho_min * std::pow(params.epsilon, 3) / model.sigma0));
    if (!config.implicit_viscosity) {
        const double nu_max = std::max({fluid.eta[0] / fluid.rho[0], fluid.eta[1] / fluid.rho[1],
                                        fluid.eta[2] / fluid.rho[2]});
        limit = std::min(limit, 0.25 * h * h / nu_max);
    }
    return limit;
}

} // namespace tricap
