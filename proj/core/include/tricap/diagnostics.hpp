#pragma once

#include "tricap/cahn_hilliard.hpp"
#include "tricap/grid.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace tricap {

using Point = std::array<double, 2>;

/// Bilinear interpolation from cell centers; near the mask boundary the
/// stencil weights renormalize over interior cells. Throws when no interior
/// cell supports the point.
double bilinear_sample(const ScalarField& f, double x, double y);

/// The point where all phi_k = 1/3, found by monitoring sign changes of
/// phi_k - 1/3 over cell-corner squares and refining with bilinear Newton.
/// With several distinct junctions a hint picks the nearest; without one,
/// multiple junctions (or none) raise an error.
Point locate_triple_junction(const CHState& state, const Point* hint = nullptr);

/// Points with phi_i = phi_j = eta (phi_k = 1 - 2 eta) for `count` evenly
/// spaced eta in (9/20, 1/2), ordered by eta; `pair` selects {i,j}. Misses
/// are skipped; fewer than 5 hits raise an error. The optional junction
/// disambiguates between multiple roots of the same eta.
std::vector<Point> eta_junctions(const CHState& state, int pair, const Point* junction = nullptr,
                                 int count = 20, int* misses = nullptr);

struct AngleMeasurement {
    std::array<double, 3> psi_anchored{};   // per phase, radians
    std::array<double, 3> psi_unanchored{};
    Point junction{};
    std::array<std::vector<Point>, 3> eta_points; // per pair
    std::array<int, 3> misses{};
};

/// Triple-junction angles: per pair a line is fitted through its
/// eta-junction points (anchored: constrained through the junction;
/// unanchored: free least squares); psi_k is the angle of the sector
/// occupied by phase k between its two interface directions.
AngleMeasurement measure_angles(const CHState& state, const Point* hint = nullptr);

struct SampleSeries {
    std::vector<double> s;
    std::vector<double> q;
};

/// q sampled at n equidistributed points along a polyline, arclength
/// parameterized starting at s_offset (so a junction vertex can sit at 0).
SampleSeries sample_q_along_segments(const ScalarField& q, const std::vector<Point>& polyline,
                                     int n, double s_offset = 0.0);

/// (l_inf, l2) of y - yref; the l2 is the plain coordinate-vector norm.
std::pair<double, double> lp_errors(std::span<const double> y, std::span<const double> yref);

/// Pairwise convergence rates log(e1/e2)/log(eps1/eps2) for consecutive
/// entries of (eps, error) pairs.
std::vector<double> eoc(const std::vector<std::pair<double, double>>& errors);

} // namespace tricap
