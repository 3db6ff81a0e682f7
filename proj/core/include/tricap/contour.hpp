#pragma once

#include "tricap/grid.hpp"

#include <array>
#include <vector>

namespace tricap {

using Polyline = std::vector<std::array<double, 2>>;

/// Marching-squares extraction of the `level` contour of f over the grid of
/// cell centers, with linear interpolation along edges. Segments are chained
/// into polylines (closed loops repeat their first vertex at the end).
std::vector<Polyline> level_set_polylines(const ScalarField& f, double level);

double polyline_length(const Polyline& p);

} // namespace tricap
