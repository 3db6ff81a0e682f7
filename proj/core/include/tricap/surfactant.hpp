#pragma once

#include "tricap/boundary.hpp"
#include "tricap/cahn_hilliard.hpp"
#include "tricap/energetics.hpp"
#include "tricap/grid.hpp"
#include "tricap/mac.hpp"
#include "tricap/potentials.hpp"

#include <array>
#include <vector>

namespace tricap {

struct MobilityParams {
    std::array<double, 3> m_bulk{0.0, 0.0, 0.0}; // M_c^(i) per phase
    std::array<double, 3> m_surf{0.0, 0.0, 0.0}; // M_Gamma^(i,j), pair order (1,2),(1,3),(2,3)
    // Capacity/mobility gates: the hexagon protocol drops the bulk terms
    // (xi_i = 0) and the (2,3) interfacial term (delta_23 = 0).
    bool use_bulk = true;
    std::array<bool, 3> use_pair{true, true, true};

    void validate() const;
};

struct SurfactantState {
    ScalarField q;
    double time = 0.0;
};

struct SurfactantConfig {
    double dt = 0.0;
    double lin_tol = 1e-12;
    int max_lin_iters = 10000;
};

/// Capacity kappa(phi) with C(q, phi) = kappa(phi) * q for the quadratic
/// energies: kappa = sum_i xi(phi_i)/beta_i + sum_p delta~_p / beta_p,
/// gated by the MobilityParams flags.
ScalarField capacity_field(const CHState& phi, const EnergyModel& model,
                           const PotentialParams& params, const MobilityParams& mobility);

/// Conserved surfactant density C = sum_i xi_i c_i(q) + sum_p delta~_p c_p(q).
ScalarField conserved_density(const ScalarField& q, const CHState& phi, const EnergyModel& model,
                              const PotentialParams& params, const MobilityParams& mobility);

/// M(phi) = sum_i xi_i M_c^(i) + sum_p delta~_p M_Gamma^(p). Throws if the
/// field is not strictly positive somewhere (the operator would degenerate).
ScalarField total_mobility(const CHState& phi, const MobilityParams& mobility,
                           const PotentialParams& params);

/// Backward-Euler step of d/dt C(q,phi) + div(v C) = div(M(phi) grad q).
/// phi_old/phi_new bracket the step (pass the same state when phi is
/// frozen); Dirichlet edges take their schedule value at the new time.
SurfactantState step_q(const SurfactantState& state, const CHState& phi_old,
                       const CHState& phi_new, const MacVelocity* velocity,
                       const BoundarySpec& bc, const std::vector<DirichletSchedule>& schedules,
                       const EnergyModel& model, const PotentialParams& params,
                       const MobilityParams& mobility, const SurfactantConfig& config);

/// Total surfactant content, integral of C.
double surfactant_mass(const SurfactantState& state, const CHState& phi, const EnergyModel& model,
                       const PotentialParams& params, const MobilityParams& mobility);

} // namespace tricap
