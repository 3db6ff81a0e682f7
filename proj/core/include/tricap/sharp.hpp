#pragma once

#include "tricap/boundary.hpp"

#include <functional>

#include <array>
#include <vector>

namespace tricap {

/// Interior angles at a triple junction from the three surface tensions
/// (pair order sigma12, sigma13, sigma23), via the law of cosines on the
/// Neumann tension triangle; psi_k = pi - triangle angle. Throws when the
/// strict triangle inequalities fail, naming the spreading phase.
std::array<double, 3> young_angles(double sigma12, double sigma13, double sigma23);

/// Leading-order interface profile z -> (1 + tanh(2(z - offset)/eps)) / 2.
struct TanhProfile {
    double epsilon = 1.0;
    double offset = 0.0;

    double operator()(double z) const;
    double derivative(double z) const;
};

enum class EndCondition { Dirichlet, Neumann };

/// Two-segment junction diffusion problem on [-L, L]:
/// beta^{-1} dq/dt = M q'' per segment, Dirichlet schedule at s = -L,
/// Neumann at s = L, continuity of q and of the flux M q' at s = 0.
struct Junction1DConfig {
    double half_length = 0.8660254037844386; // sqrt(3)/2
    double beta_left = 1.0;                  // beta_13
    double beta_right = 4.0;                 // beta_12
    double m_left = 100.0;                   // M_13
    double m_right = 25.0;                   // M_12
    int n = 2000;                            // cells per segment
    double dt = 1e-6;
    DirichletSchedule schedule;                       // value at s = -L
    EndCondition left_end = EndCondition::Dirichlet;  // Neumann for conservation checks
    std::function<double(double)> initial;            // q(s, 0); zero when empty

    void validate() const;
};

struct Junction1DSolution {
    std::vector<double> s; // 2n+1 nodes, junction at index n (s = 0)
    std::vector<double> q;
    double time = 0.0;
    double q_right_end = 0.0;  // q(L)
    double q_junction = 0.0;   // q(0)
    double flux_residual = 0.0; // |M_l q'(0-) - M_r q'(0+)| at the final time
    double mass = 0.0;          // integral of beta^{-1} q
    /// Linear interpolation of the final profile at arbitrary s in [-L, L].
    double sample(double s_query) const;
};

/// Time-steppable solver; finite-volume cells per segment with the junction
/// value q(0) as a shared unknown eliminated by one-sided second-order flux
/// stencils, so both coupling conditions hold exactly in the discrete system.
class Junction1DSolver {
  public:
    explicit Junction1DSolver(const Junction1DConfig& config);

    void step();
    void advance_to(double t_end);
    double time() const { return time_; }
    double mass() const;
    Junction1DSolution solution() const;

  private:
    void solve_segments(double g_left, std::vector<double>& xl, std::vector<double>& xr,
                        double junction_flux) const;
    double junction_flux_of(const std::vector<double>& xl, const std::vector<double>& xr) const;
    double junction_value(const std::vector<double>& xl, const std::vector<double>& xr) const;

    Junction1DConfig cfg_;
    double h_ = 0.0;
    double time_ = 0.0;
    std::vector<double> left_;  // cell averages, centers -L + (j+1/2)h
    std::vector<double> right_; // cell averages, centers (k+1/2)h
    double flux_gain_ = 0.0;    // d(junction flux)/d(applied unit flux), precomputed
    std::vector<double> resp_l_, resp_r_; // unit-flux responses
};

Junction1DSolution solve_junction_1d(const Junction1DConfig& config, double t_end);

} // namespace tricap
