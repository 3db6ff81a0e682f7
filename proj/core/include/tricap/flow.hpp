#pragma once

#include "tricap/cahn_hilliard.hpp"
#include "tricap/energetics.hpp"
#include "tricap/grid.hpp"
#include "tricap/mac.hpp"
#include "tricap/potentials.hpp"

#include <array>
#include <optional>
#include <utility>

namespace tricap {

struct FluidParams {
    std::array<double, 3> rho{1.0, 1.0, 1.0};
    std::array<double, 3> eta{1.0, 1.0, 1.0};

    bool matched_density() const { return rho[0] == rho[1] && rho[1] == rho[2]; }
    bool matched_viscosity() const { return eta[0] == eta[1] && eta[1] == eta[2]; }
    void validate() const;
};

struct FlowConfig {
    double dt = 0.0;
    bool implicit_viscosity = false;
    double lin_tol = 1e-10;
    int max_lin_iters = 20000;
    double cfl = 0.25;           // advective limit dt <= cfl * h / max|v|
    double capillary_coef = 1.0; // dt <= coef * sqrt(rho eps^3 / sigma0)
};

/// Tangential wall velocity per rectangle side (XM, XP, YM, YP); the normal
/// component is always zero (impenetrable walls).
struct WallVelocity {
    std::array<double, 4> tangential{0.0, 0.0, 0.0, 0.0};

    static WallVelocity no_slip() { return {}; }
    static WallVelocity lid(double speed) {
        WallVelocity w;
        w.tangential[3] = speed; // moving top wall
        return w;
    }
};

struct FlowState {
    MacVelocity vel;
    ScalarField p;
    double time = 0.0;

    static FlowState zeros(std::shared_ptr<const Domain> dom);
};

/// Cell-centered capillary + Marangoni force density
/// sum_k mu_k grad(phi_k) + sum_{i<j} delta_ij grad(sigt_ij(q)).
/// (The bulk grand-potential terms of the reformulated forcing cancel
/// exactly against the potentials' xi' parts and are not repeated here.)
std::pair<ScalarField, ScalarField> capillary_force(const CHState& phi,
                                                    const std::array<ScalarField, 3>& mu,
                                                    const ScalarField& q, const EnergyModel& model,
                                                    const PotentialParams& params);

/// One Chorin projection step: explicit advection and body force, explicit
/// (or implicit) viscous stress, pressure Poisson solve, velocity
/// correction. `phi` supplies rho(phi), eta(phi) by clipped linear
/// interpolation; pass nullptr for single-phase runs (rho[0], eta[0]).
/// `jbar` optionally carries the phase mass flux sum(rho_k J_k) on faces;
/// it vanishes identically for matched densities and may be omitted.
FlowState step_ns(const FlowState& flow, const CHState* phi,
                  const std::pair<ScalarField, ScalarField>* force, const FluidParams& fluid,
                  const WallVelocity& walls, const FlowConfig& config,
                  const std::pair<std::vector<double>, std::vector<double>>* jbar = nullptr);

/// integral of rho(phi) |v|^2 / 2 (velocity averaged to cell centers).
double kinetic_energy(const FlowState& flow, const CHState* phi, const FluidParams& fluid);

/// sqrt of the integral of |v|^2 (the L2 norm tracked in the experiments).
double velocity_l2(const FlowState& flow);

/// Largest stable time step: advective CFL, capillary restriction, and the
/// explicit viscous limit when applicable.
double flow_dt_limit(const FlowState& flow, const FluidParams& fluid, const EnergyModel& model,
                     const PotentialParams& params, const FlowConfig& config);

} // namespace tricap
