#pragma once

#include "tricap/energetics.hpp"
#include "tricap/grid.hpp"
#include "tricap/mac.hpp"
#include "tricap/potentials.hpp"

#include <array>
#include <optional>
#include <vector>

namespace tricap {

/// Three phase fields on the Gibbs simplex plus their chemical potentials.
struct CHState {
    std::array<ScalarField, 3> phi;
    std::array<ScalarField, 3> mu;
    double time = 0.0;

    static CHState zeros(std::shared_ptr<const Domain> dom);
    const Domain& domain() const { return phi[0].domain(); }
    /// Throws unless all fields are finite and max|sum phi - 1| <= tol.
    void validate(double simplex_tol = 1e-10) const;
    double max_simplex_defect() const;
};

struct CHConfig {
    double dt = 0.0;             // 0: use 0.1 * eps * min(hx, hy)
    int fp_iters = 2;            // passes of the lagged well term
    double lin_tol = 1e-9;       // relative Krylov tolerance
    int max_lin_iters = 1000;
    double stationarity_tol = 1e-5; // max |dphi|/dt threshold for relaxation
    int max_relax_steps = 200000;
    SbarMode sbar = SbarMode::Harmonic;

    double resolve_dt(const Grid2D& g, double epsilon) const;
};

/// Chemical potentials mu_i = -(3/4) eps S_i(q) lap(phi_i) + well_i(q, phi).
/// The well term is the mobility-projected derivative of the weighted
/// multi-well; its coefficient Sbar/(3 eps) matches the normalized potentials
/// (the planar tanh profile is stationary and carries unit delta-mass).
/// Throws on spreading states (some S_i(q) <= 0).
std::array<ScalarField, 3> compute_mu(const CHState& state, const ScalarField& q,
                                      const EnergyModel& model, const PotentialParams& params,
                                      SbarMode sbar = SbarMode::Harmonic);

struct CHStepReport {
    int lin_iters = 0;          // total Krylov iterations over components/passes
    double lin_residual = 0.0;  // worst relative residual
    /// Phase-volume face fluxes of the accepted update (x faces then y
    /// faces, MAC layout); sum over components vanishes identically.
    std::array<std::vector<double>, 3> flux_x;
    std::array<std::vector<double>, 3> flux_y;
};

/// One IMEX step of d(phi_i)/dt + v . grad(phi_i) = div((M_c/S_i(q)) grad mu_i):
/// fourth-order part implicit per component, well term lagged with
/// `fp_iters` fixed-point passes, advection second-order upwind. The final
/// update applies zero-column-sum face fluxes, so every integral of phi_i and
/// the simplex constraint are preserved to machine precision.
CHState step_ch(const CHState& state, const ScalarField& q, const MacVelocity* velocity,
                const EnergyModel& model, const PotentialParams& params, const CHConfig& config,
                CHStepReport* report = nullptr);

struct RelaxResult {
    CHState state;
    bool converged = false;
    int steps = 0;
    std::vector<double> energy; // gl_energy after each step
};

/// Steps with v = 0 until max_i |phi_i^{n+1} - phi_i^n|_inf / dt falls below
/// config.stationarity_tol (or the step cap is hit; converged=false then).
RelaxResult relax_to_equilibrium(CHState state, const ScalarField& q, const EnergyModel& model,
                                 const PotentialParams& params, const CHConfig& config);

/// Ginzburg-Landau energy: integral of f(q,phi) + w(q,phi)/eps + eps a(q,phi,grad phi).
double gl_energy(const CHState& state, const ScalarField& q, const EnergyModel& model,
                 const PotentialParams& params);

/// v . grad(f) with second-order upwind differences (first order where the
/// stencil leaves the domain).
ScalarField upwind_convection(const ScalarField& f, const MacVelocity& vel);

} // namespace tricap
