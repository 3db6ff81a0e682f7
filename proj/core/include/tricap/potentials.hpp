#pragma once

#include "tricap/energetics.hpp"

#include <array>

namespace tricap {

struct PotentialParams {
    double epsilon = 0.1;    // interfacial thickness
    double lambda_cap = 0.1; // sixth-order term weight
    double c_reg = 0.001;    // delta regularization constant C
    double m_c = 1.0;        // Cahn-Hilliard mobility M_c

    void validate() const;
};

using Vec2 = std::array<double, 2>;
using Phi3 = std::array<double, 3>;
using Grad3 = std::array<Vec2, 3>;

namespace blm {

/// Multi-well potential contribution of one pair,
/// w_ij = 12(phi_i^2 phi_j^2 + phi_j phi_k phi_i^2 + phi_i phi_k phi_j^2
///           - phi_i phi_j phi_k^2) + 4 Lambda phi_i^2 phi_j^2 phi_k^2.
double w_pair(const Phi3& phi, int pair, double lambda_cap);
Phi3 w_pair_grad(const Phi3& phi, int pair, double lambda_cap);

/// Gradient potential a_ij = (3/8)(|g_i|^2 + |g_j|^2 - |g_k|^2).
double a_pair(const Grad3& grad, int pair);

/// delta_ij = eps * a_ij + w_ij / eps. May be negative away from the
/// two-phase manifold; consumers regularize.
double delta_pair(const Phi3& phi, const Grad3& grad, int pair, double epsilon, double lambda_cap);

/// delta where it exceeds C eps^2, else the floor C eps^2.
double delta_regularized(double delta, double epsilon, double c_reg);

/// C^1 characteristic-function interpolant: 0 below 0, 1 above 1,
/// p^2(3-2p) in between.
double xi(double p);
double xi_prime(double p);

/// Surface-energy weighted well w(q,phi) = sum_{i<j} gamma_ij(q) w_ij(phi)
/// and its phi-gradient.
double w_total(const Phi3& phi, const std::array<double, 3>& gamma, double lambda_cap);
Phi3 w_total_grad(const Phi3& phi, const std::array<double, 3>& gamma, double lambda_cap);

/// D_i w = sum_{j != i} (1/S_j) (dw/dphi_i - dw/dphi_j); satisfies
/// sum_i D_i w / S_i = 0 identically.
Phi3 di_w_from(const Phi3& wgrad, const std::array<double, 3>& s);

/// Full D_i w at one point; throws when some S_j(q) <= 0 (spreading state,
/// the mobility construction degenerates).
Phi3 di_w(const Phi3& phi, double q, const EnergyModel& model, double lambda_cap);

} // namespace blm

} // namespace tricap
