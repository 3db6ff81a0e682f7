#pragma once

#include "tricap/energetics.hpp"
#include "tricap/flow.hpp"
#include "tricap/potentials.hpp"
#include "tricap/surfactant.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <string>

namespace tricap {

enum class ExperimentKind { HexagonDiffusion, LensAngles, Marangoni, Reference1D, Young, Custom };

std::string to_string(ExperimentKind kind);

/// Fully resolved experiment description. Parsed from flat `key = value`
/// text with `#` comments and dotted namespaces; unknown keys are errors.
/// Every experiment preset fills complete defaults, so a minimal file needs
/// only the `experiment` line plus overrides.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Custom;

    // geometry
    std::string geometry_kind = "rectangle"; // or "hexagon"
    double hex_side = 1.0;
    std::array<double, 4> rect{0.0, 0.0, 1.0, 1.0}; // x0 y0 x1 y1

    // physics
    double epsilon = 0.1;
    double lambda = 0.1;
    double c_reg = 0.001;
    double m_ch = 0.1;
    double sigma0 = 1.0;
    std::array<double, 3> beta_pair{1.0, 1.0, 1.0};
    std::array<double, 3> beta_bulk{1.0, 1.0, 1.0};
    std::array<double, 3> m_bulk{0.0, 0.0, 0.0};
    std::array<double, 3> m_surf{0.0, 0.0, 0.0};
    std::array<double, 3> rho{1.0, 1.0, 1.0};
    std::array<double, 3> eta{1.0, 1.0, 1.0};
    SbarMode sbar = SbarMode::Harmonic;

    bool use_bulk = true;
    std::array<bool, 3> use_pair{true, true, true};

    // boundary schedule (Dirichlet source)
    double sched_t0 = 0.0;
    double sched_ramp = 1e-4;
    double sched_value = 0.5;

    // numerics
    double h = 0.0;    // 0: epsilon / 4
    double dt = 0.0;   // 0: 0.1 eps min(h)
    double dt_q = 0.0; // 0: same as dt
    double t_end = 1.0;
    double lin_tol = 1e-9;
    double stationarity_tol = 1e-5;
    double relax_dt_factor = 1.0; // dt multiplier for stationary relaxation
    int fp_iters = 2;
    int max_steps = 2000000;
    int threads = 0; // 0: CLI flag or TRICAP_THREADS
    bool implicit_viscosity = false;
    int samples = 400;

    // sharp 1D reference
    int ref1d_n = 2000;
    double ref1d_dt = 1e-6;

    // young verb
    std::array<double, 3> young_sigma{0.0, 0.0, 0.0};

    // output
    std::string out_dir = "out";
    int snapshot_every = 0; // steps; 0 = final snapshot only
    int series_every = 20;  // steps between time-series rows

    /// Every key with its resolved value (defaults included), echoed into
    /// the run manifest.
    std::map<std::string, std::string> resolved;

    EnergyModel energy_model() const;
    PotentialParams potential_params() const;
    MobilityParams mobility_params() const;
    FluidParams fluid_params() const;
    double resolve_h() const { return h > 0.0 ? h : epsilon / 4.0; }

    void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

} // namespace tricap
