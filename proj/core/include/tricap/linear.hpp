#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tricap {

/// y = A x for a matrix-free linear operator.
using LinOp = std::function<void(std::span<const double>, std::span<double>)>;

struct SolveReport {
    int iterations = 0;
    double residual = 0.0; // relative to |b|
    bool converged = false;
};

/// CG for SPD operators; x holds the initial guess. `inv_diag`, when
/// non-empty, applies Jacobi preconditioning.
SolveReport conjugate_gradient(const LinOp& a, std::span<const double> b, std::span<double> x,
                               double rel_tol, int max_iter,
                               std::span<const double> inv_diag = {});

/// BiCGSTAB for general operators. x holds the initial guess.
SolveReport bicgstab(const LinOp& a, std::span<const double> b, std::span<double> x, double rel_tol,
                     int max_iter);

/// Tridiagonal solve (Thomas algorithm); diagonals lower/diag/upper of size n
/// (lower[0] and upper[n-1] unused). Overwrites rhs with the solution.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs);

} // namespace tricap
