#include "tricap/sharp.hpp"

#include "tricap/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tricap {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::array<double, 3> young_angles(double sigma12, double sigma13, double sigma23) {
    const double s[3] = {sigma12, sigma13, sigma23};
    for (double v : s)
        if (!(v > 0.0)) throw std::invalid_argument("young_angles: tensions must be positive");

    // S_k <= 0 means the triangle inequality fails and phase k spreads.
    const double spread[3] = {sigma12 + sigma13 - sigma23, sigma12 + sigma23 - sigma13,
                              sigma13 + sigma23 - sigma12};
    for (int k = 0; k < 3; ++k)
        if (spread[k] <= 0.0)
            throw std::runtime_error("young_angles: no junction equilibrium, phase " +
                                     std::to_string(k + 1) + " spreads between the other two");

    auto psi = [](double a, double b, double c) {
        // a, b adjacent to the phase, c opposite; angle = pi - triangle angle
        const double cosv = std::clamp((a * a + b * b - c * c) / (2.0 * a * b), -1.0, 1.0);
        return kPi - std::acos(cosv);
    };
    return {psi(sigma12, sigma13, sigma23), psi(sigma12, sigma23, sigma13),
            psi(sigma13, sigma23, sigma12)};
}

double TanhProfile::operator()(double z) const {
    return 0.5 * (1.0 + std::tanh(2.0 * (z - offset) / epsilon));
}

double TanhProfile::derivative(double z) const {
    const double t = std::tanh(2.0 * (z - offset) / epsilon);
    return (1.0 - t * t) / epsilon;
}

void Junction1DConfig::validate() const {
    if (!(half_length > 0.0)) throw std::invalid_argument("Junction1DConfig: L must be positive");
    if (!(beta_left > 0.0) || !(beta_right > 0.0))
        throw std::invalid_argument("Junction1DConfig: curvatures must be positive");
    if (!(m_left > 0.0) || !(m_right > 0.0))
        throw std::invalid_argument("Junction1DConfig: mobilities must be positive");
    if (n < 50) throw std::invalid_argument("Junction1DConfig: need n >= 50 cells per segment");
    if (!(dt > 0.0)) throw std::invalid_argument("Junction1DConfig: dt must be positive");
    if (left_end == EndCondition::Dirichlet && schedule.empty())
        throw std::invalid_argument("Junction1DConfig: Dirichlet end needs a schedule");
}

Junction1DSolver::Junction1DSolver(const Junction1DConfig& config) : cfg_(config) {
    cfg_.validate();
    h_ = cfg_.half_length / cfg_.n;
    left_.assign(cfg_.n, 0.0);
    right_.assign(cfg_.n, 0.0);
    if (cfg_.initial) {
        for (int j = 0; j < cfg_.n; ++j)
            left_[j] = cfg_.initial(-cfg_.half_length + (j + 0.5) * h_);
        for (int k = 0; k < cfg_.n; ++k) right_[k] = cfg_.initial((k + 0.5) * h_);
    }

    // Unit-flux responses of the two segments; the system matrix is constant
    // so these are computed once and reused every step.
    resp_l_.assign(cfg_.n, 0.0);
    resp_r_.assign(cfg_.n, 0.0);
    solve_segments(0.0, resp_l_, resp_r_, 1.0);
    const double c_flux = cfg_.m_left * cfg_.m_right / ((cfg_.m_left + cfg_.m_right) * 3.0 * h_);
    flux_gain_ = c_flux * (9.0 * (resp_r_[0] - resp_l_[cfg_.n - 1]) -
                           (resp_r_[1] - resp_l_[cfg_.n - 2]));
}

// Backward-Euler solve of the two decoupled segments, with `junction_flux`
// applied at the shared face. On entry xl/xr hold the previous state, on
// exit the new one. `g_left` is the Dirichlet value (ignored for Neumann).
void Junction1DSolver::solve_segments(double g_left, std::vector<double>& xl,
                                      std::vector<double>& xr, double junction_flux) const {
    const int n = cfg_.n;
    const double rl = cfg_.dt * cfg_.beta_left * cfg_.m_left / (h_ * h_);
    const double rr = cfg_.dt * cfg_.beta_right * cfg_.m_right / (h_ * h_);
    const double sl = cfg_.dt * cfg_.beta_left / h_;
    const double sr = cfg_.dt * cfg_.beta_right / h_;

    std::vector<double> lo(n), di(n), up(n);

    // Left segment: Dirichlet (one-sided second-order flux) or Neumann at
    // s=-L, applied flux at the junction face.
    for (int j = 0; j < n; ++j) {
        lo[j] = -rl;
        di[j] = 1.0 + 2.0 * rl;
        up[j] = -rl;
    }
    if (cfg_.left_end == EndCondition::Dirichlet) {
        di[0] = 1.0 + 4.0 * rl;
        up[0] = -(4.0 / 3.0) * rl;
        xl[0] += (8.0 / 3.0) * rl * g_left;
    } else {
        di[0] = 1.0 + rl;
    }
    di[n - 1] = 1.0 + rl;
    xl[n - 1] += sl * junction_flux;
    solve_tridiagonal(lo, di, up, xl);

    // Right segment: applied flux at the junction face, Neumann at s=L.
    for (int k = 0; k < n; ++k) {
        lo[k] = -rr;
        di[k] = 1.0 + 2.0 * rr;
        up[k] = -rr;
    }
    di[0] = 1.0 + rr;
    di[n - 1] = 1.0 + rr;
    xr[0] -= sr * junction_flux;
    solve_tridiagonal(lo, di, up, xr);
}

double Junction1DSolver::junction_flux_of(const std::vector<double>& xl,
                                          const std::vector<double>& xr) const {
    const int n = cfg_.n;
    const double c_flux = cfg_.m_left * cfg_.m_right / ((cfg_.m_left + cfg_.m_right) * 3.0 * h_);
    return c_flux * (9.0 * (xr[0] - xl[n - 1]) - (xr[1] - xl[n - 2]));
}

double Junction1DSolver::junction_value(const std::vector<double>& xl,
                                        const std::vector<double>& xr) const {
    const int n = cfg_.n;
    return (cfg_.m_left * (9.0 * xl[n - 1] - xl[n - 2]) +
            cfg_.m_right * (9.0 * xr[0] - xr[1])) /
           (8.0 * (cfg_.m_left + cfg_.m_right));
}

void Junction1DSolver::step() {
    const double t_new = time_ + cfg_.dt;
    const double g = cfg_.left_end == EndCondition::Dirichlet ? cfg_.schedule(t_new) : 0.0;

    // Superposition: particular solve with zero junction flux, then the
    // affine fixed point lambda = flux(x_p) + lambda * flux_gain.
    std::vector<double> xl = left_, xr = right_;
    solve_segments(g, xl, xr, 0.0);
    const double lambda = junction_flux_of(xl, xr) / (1.0 - flux_gain_);
    for (int j = 0; j < cfg_.n; ++j) {
        xl[j] += lambda * resp_l_[j];
        xr[j] += lambda * resp_r_[j];
    }
    left_ = std::move(xl);
    right_ = std::move(xr);
    time_ = t_new;
}

void Junction1DSolver::advance_to(double t_end) {
    while (time_ + 0.5 * cfg_.dt < t_end) step();
}

double Junction1DSolver::mass() const {
    double ml = 0.0, mr = 0.0;
    for (double v : left_) ml += v;
    for (double v : right_) mr += v;
    return h_ * (ml / cfg_.beta_left + mr / cfg_.beta_right);
}

Junction1DSolution Junction1DSolver::solution() const {
    const int n = cfg_.n;
    Junction1DSolution out;
    out.time = time_;
    out.mass = mass();
    out.q_junction = junction_value(left_, right_);
    out.q_right_end = (9.0 * right_[n - 1] - right_[n - 2]) / 8.0;

    out.s.resize(2 * n + 1);
    out.q.resize(2 * n + 1);
    for (int j = 0; j <= 2 * n; ++j) out.s[j] = -cfg_.half_length + j * h_;
    // Node values: endpoint closures, shared junction value, cell averages
    // averaged to the interior nodes (second order).
    out.q[0] = cfg_.left_end == EndCondition::Dirichlet ? cfg_.schedule(time_)
                                                        : (9.0 * left_[0] - left_[1]) / 8.0;
    for (int j = 1; j < n; ++j) out.q[j] = 0.5 * (left_[j - 1] + left_[j]);
    out.q[n] = out.q_junction;
    for (int k = 1; k < n; ++k) out.q[n + k] = 0.5 * (right_[k - 1] + right_[k]);
    out.q[2 * n] = out.q_right_end;

    const double fl = cfg_.m_left * (8.0 * out.q_junction - 9.0 * left_[n - 1] + left_[n - 2]) /
                      (3.0 * h_);
    const double fr = cfg_.m_right * (-8.0 * out.q_junction + 9.0 * right_[0] - right_[1]) /
                      (3.0 * h_);
    out.flux_residual = std::fabs(fl - fr);
    return out;
}

double Junction1DSolution::sample(double s_query) const {
    if (s.empty()) throw std::runtime_error("Junction1DSolution: empty solution");
    if (s_query <= s.front()) return q.front();
    if (s_query >= s.back()) return q.back();
    const auto it = std::upper_bound(s.begin(), s.end(), s_query);
    const std::size_t k = static_cast<std::size_t>(it - s.begin());
    const double w = (s_query - s[k - 1]) / (s[k] - s[k - 1]);
    return (1.0 - w) * q[k - 1] + w * q[k];
}

Junction1DSolution solve_junction_1d(const Junction1DConfig& config, double t_end) {
    Junction1DSolver solver(config);
    solver.advance_to(t_end);
    return solver.solution();
}

} // namespace tricap
