#pragma once

#include "tricap/boundary.hpp"
#include "tricap/grid.hpp"

#include <utility>

namespace tricap {

/// 5-point Laplacian on interior cells. Ghost values come from the boundary
/// condition of the face's edge: mirror for Neumann-zero, linear
/// extrapolation through the face value for Dirichlet.
ScalarField laplacian(const ScalarField& f, const BoundarySpec& bc,
                      const BoundaryValueFn& values = {});

/// Unchecked in-place kernel used by the solvers.
void laplacian_into(const ScalarField& f, const BoundarySpec& bc, const BoundaryValueFn& values,
                    ScalarField& out);

/// Centered differences at interior cells, one-sided (second order where two
/// interior neighbours exist, first order otherwise) at the mask boundary.
std::pair<ScalarField, ScalarField> gradient(const ScalarField& f);
void gradient_into(const ScalarField& f, ScalarField& gx, ScalarField& gy);

/// sum of f over interior cells times the cell area.
double integrate(const ScalarField& f);

double inner(const ScalarField& a, const ScalarField& b);
double max_abs(const ScalarField& a);

/// div(m grad u) with harmonic-mean face coefficients. Neumann-zero faces
/// carry no flux; Dirichlet faces use the ghost-cell extrapolation for u and
/// the interior cell's m.
void div_mgrad_into(const ScalarField& u, const ScalarField& m, const BoundarySpec& bc,
                    const BoundaryValueFn& values, ScalarField& out);
ScalarField div_mgrad(const ScalarField& u, const ScalarField& m, const BoundarySpec& bc,
                      const BoundaryValueFn& values = {});

/// Row diagonal of -div(m grad .), used as a Jacobi preconditioner.
void div_mgrad_diagonal_into(const ScalarField& m, const BoundarySpec& bc, ScalarField& out);

} // namespace tricap
