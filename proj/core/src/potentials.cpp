#include "tricap/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace tricap {

void PotentialParams::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("PotentialParams: epsilon must be positive");
    if (lambda_cap < 0.0) throw std::invalid_argument("PotentialParams: lambda_cap must be >= 0");
    if (c_reg < 0.0) throw std::invalid_argument("PotentialParams: c_reg must be >= 0");
    if (!(m_c > 0.0)) throw std::invalid_argument("PotentialParams: m_c must be positive");
}

namespace blm {

double w_pair(const Phi3& phi, int pair, double lambda_cap) {
    const double pi = phi[kPairI[pair]], pj = phi[kPairJ[pair]], pk = phi[kPairOther[pair]];
    const double well = pi * pi * pj * pj + pj * pk * pi * pi + pi * pk * pj * pj - pi * pj * pk * pk;
    return 12.0 * well + 4.0 * lambda_cap * pi * pi * pj * pj * pk * pk;
}

Phi3 w_pair_grad(const Phi3& phi, int pair, double lambda_cap) {
    const int a = kPairI[pair], b = kPairJ[pair], k = kPairOther[pair];
    const double pi = phi[a], pj = phi[b], pk = phi[k];
    Phi3 g{};
    g[a] = 12.0 * (2.0 * pi * pj * pj + 2.0 * pi * pj * pk + pk * pj * pj - pj * pk * pk) +
           8.0 * lambda_cap * pi * pj * pj * pk * pk;
    g[b] = 12.0 * (2.0 * pi * pi * pj + pi * pi * pk + 2.0 * pi * pj * pk - pi * pk * pk) +
           8.0 * lambda_cap * pi * pi * pj * pk * pk;
    g[k] = 12.0 * (pj * pi * pi + pi * pj * pj - 2.0 * pi * pj * pk) +
           8.0 * lambda_cap * pi * pi * pj * pj * pk;
    return g;
}

double a_pair(const Grad3& grad, int pair) {
    auto n2 = [](const Vec2& v) { return v[0] * v[0] + v[1] * v[1]; };
    return 0.375 * (n2(grad[kPairI[pair]]) + n2(grad[kPairJ[pair]]) - n2(grad[kPairOther[pair]]));
}

double delta_pair(const Phi3& phi, const Grad3& grad, int pair, double epsilon, double lambda_cap) {
    return epsilon * a_pair(grad, pair) + w_pair(phi, pair, lambda_cap) / epsilon;
}

double delta_regularized(double delta, double epsilon, double c_reg) {
    // Negative excursions (a_ij is not sign-definite off the two-phase
    // manifold) are floored as well, keeping the surfactant operator elliptic.
    const double floor = c_reg * epsilon * epsilon;
    return delta > floor ? delta : floor;
}

double xi(double p) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return p * p * (3.0 - 2.0 * p);
}

double xi_prime(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return 6.0 * p * (1.0 - p);
}

double w_total(const Phi3& phi, const std::array<double, 3>& gamma, double lambda_cap) {
    double w = 0.0;
    for (int p = 0; p < 3; ++p) w += gamma[p] * w_pair(phi, p, lambda_cap);
    return w;
}

Phi3 w_total_grad(const Phi3& phi, const std::array<double, 3>& gamma, double lambda_cap) {
    Phi3 g{};
    for (int p = 0; p < 3; ++p) {
        const Phi3 gp = w_pair_grad(phi, p, lambda_cap);
        for (int k = 0; k < 3; ++k) g[k] += gamma[p] * gp[k];
    }
    return g;
}

Phi3 di_w_from(const Phi3& wgrad, const std::array<double, 3>& s) {
    Phi3 d{};
    for (int i = 0; i < 3; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            acc += (wgrad[i] - wgrad[j]) / s[j];
        }
        d[i] = acc;
    }
    return d;
}

Phi3 di_w(const Phi3& phi, double q, const EnergyModel& model, double lambda_cap) {
    const SpreadingCoefficients sc = spreading_coefficients(model, q);
    if (sc.spreading)
        throw std::runtime_error("di_w: spreading state (some S_k <= 0), mobility degenerates");
    std::array<double, 3> gamma;
    for (int p = 0; p < 3; ++p) gamma[p] = surface_energy(model, p, q);
    return di_w_from(w_total_grad(phi, gamma, lambda_cap), sc.s);
}

} // namespace blm

} // namespace tricap
