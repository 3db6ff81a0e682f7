#pragma once

#include <array>

namespace tricap {

// Fixed pair order (1,2),(1,3),(2,3) in 1-based phase labels; 0-based below.
inline constexpr int kPairI[3] = {0, 0, 1};
inline constexpr int kPairJ[3] = {1, 2, 2};
inline constexpr int kPairOther[3] = {2, 1, 0}; // the phase absent from the pair

/// Pair index of the unordered phase pair {a, b}.
int pair_index(int a, int b);
/// The two pairs containing phase k, and the complementary pair is
/// pair_index of the other two phases: see spreading_coefficients.

/// Quadratic surfactant free energies: per-pair surface energies
/// gamma_ij(c) = sigma0 + beta_ij c^2 / 2 and per-phase bulk energies
/// g_i(c) = beta_i c^2 / 2, identified by their curvatures.
struct EnergyModel {
    double sigma0 = 1.0;
    std::array<double, 3> beta_pair{1.0, 1.0, 1.0}; // order (1,2),(1,3),(2,3)
    std::array<double, 3> beta_bulk{1.0, 1.0, 1.0};

    void validate() const; // throws unless all beta > 0 and sigma0 > 0
};

struct TensionTriple {
    std::array<double, 3> sigma{}; // sigt_ij(q), pair order as above
};

enum class SbarMode {
    Harmonic, // 3 / (1/S1 + 1/S2 + 1/S3)
    Literal   // sum_i 3/S_i
};

struct SpreadingCoefficients {
    std::array<double, 3> s{}; // S_k per phase
    double sbar = 0.0;
    bool spreading = false; // some S_k <= 0
};

/// c_ij(q) = q / beta_ij (inverse of the quadratic surface energy).
double surface_density(const EnergyModel& m, int pair, double q);
/// c_i(q) = q / beta_i.
double bulk_density(const EnergyModel& m, int phase, double q);
/// sigt_ij(q) = sigma0 - q^2 / (2 beta_ij).
double surface_tension(const EnergyModel& m, int pair, double q);
/// gamma_ij(c_ij(q)) = sigma0 + q^2 / (2 beta_ij).
double surface_energy(const EnergyModel& m, int pair, double q);
/// lamt_k(q) = g_k(c_k(q)) - q c_k(q) = -q^2 / (2 beta_k).
double bulk_grand_potential(const EnergyModel& m, int phase, double q);
/// g_k(c_k(q)) = q^2 / (2 beta_k).
double bulk_energy(const EnergyModel& m, int phase, double q);

/// d c / d q, constant 1/beta for the quadratic energies.
double surface_susceptibility(const EnergyModel& m, int pair);
double bulk_susceptibility(const EnergyModel& m, int phase);

TensionTriple tensions(const EnergyModel& m, double q);

/// S_k = sigt_ik + sigt_jk - sigt_ij ({i,j} the pair not containing k) and
/// their average S̄. Flags (does not throw) when some S_k <= 0, i.e. phase k
/// would spread between the other two.
SpreadingCoefficients spreading_coefficients(const EnergyModel& m, double q,
                                             SbarMode mode = SbarMode::Harmonic);
SpreadingCoefficients spreading_from_tensions(const TensionTriple& t,
                                              SbarMode mode = SbarMode::Harmonic);

} // namespace tricap
