#include "tricap/energetics.hpp"

#include <stdexcept>

namespace tricap {

int pair_index(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == 0 && b == 1) return 0;
    if (a == 0 && b == 2) return 1;
    if (a == 1 && b == 2) return 2;
    throw std::invalid_argument("pair_index: phases must be distinct in {0,1,2}");
}

void EnergyModel::validate() const {
    if (!(sigma0 > 0.0)) throw std::invalid_argument("EnergyModel: sigma0 must be positive");
    for (double b : beta_pair)
        if (!(b > 0.0)) throw std::invalid_argument("EnergyModel: beta_pair must be positive");
    for (double b : beta_bulk)
        if (!(b > 0.0)) throw std::invalid_argument("EnergyModel: beta_bulk must be positive");
}

static void check_pair(int pair) {
    if (pair < 0 || pair > 2) throw std::invalid_argument("EnergyModel: pair index out of range");
}
static void check_phase(int phase) {
    if (phase < 0 || phase > 2) throw std::invalid_argument("EnergyModel: phase index out of range");
}

double surface_density(const EnergyModel& m, int pair, double q) {
    check_pair(pair);
    return q / m.beta_pair[pair];
}

double bulk_density(const EnergyModel& m, int phase, double q) {
    check_phase(phase);
    return q / m.beta_bulk[phase];
}

double surface_tension(const EnergyModel& m, int pair, double q) {
    check_pair(pair);
    return m.sigma0 - 0.5 * q * q / m.beta_pair[pair];
}

double surface_energy(const EnergyModel& m, int pair, double q) {
    check_pair(pair);
    return m.sigma0 + 0.5 * q * q / m.beta_pair[pair];
}

double bulk_grand_potential(const EnergyModel& m, int phase, double q) {
    check_phase(phase);
    return -0.5 * q * q / m.beta_bulk[phase];
}

double bulk_energy(const EnergyModel& m, int phase, double q) {
    check_phase(phase);
    return 0.5 * q * q / m.beta_bulk[phase];
}

double surface_susceptibility(const EnergyModel& m, int pair) {
    check_pair(pair);
    return 1.0 / m.beta_pair[pair];
}

double bulk_susceptibility(const EnergyModel& m, int phase) {
    check_phase(phase);
    return 1.0 / m.beta_bulk[phase];
}

TensionTriple tensions(const EnergyModel& m, double q) {
    TensionTriple t;
    for (int p = 0; p < 3; ++p) t.sigma[p] = surface_tension(m, p, q);
    return t;
}

SpreadingCoefficients spreading_from_tensions(const TensionTriple& t, SbarMode mode) {
    SpreadingCoefficients out;
    const auto& s = t.sigma;
    out.s[0] = s[0] + s[1] - s[2]; // phase 1: pairs (1,2),(1,3) minus (2,3)
    out.s[1] = s[0] + s[2] - s[1];
    out.s[2] = s[1] + s[2] - s[0];
    out.spreading = out.s[0] <= 0.0 || out.s[1] <= 0.0 || out.s[2] <= 0.0;
    if (!out.spreading) {
        const double inv = 1.0 / out.s[0] + 1.0 / out.s[1] + 1.0 / out.s[2];
        out.sbar = mode == SbarMode::Harmonic ? 3.0 / inv : 3.0 * inv;
    }
    return out;
}

SpreadingCoefficients spreading_coefficients(const EnergyModel& m, double q, SbarMode mode) {
    return spreading_from_tensions(tensions(m, q), mode);
}

} // namespace tricap
