#pragma once

#include "tricap/grid.hpp"

#include <memory>
#include <vector>

namespace tricap {

/// Face-staggered (MAC) velocity: u on x-faces ((nx+1) x ny), v on y-faces
/// (nx x (ny+1)). Flow runs on unmasked rectangles only.
struct MacVelocity {
    std::shared_ptr<const Domain> dom;
    std::vector<double> u;
    std::vector<double> v;

    MacVelocity() = default;
    explicit MacVelocity(std::shared_ptr<const Domain> d);

    const Grid2D& grid() const { return dom->grid(); }
    int iu(int i, int j) const { return j * (grid().nx + 1) + i; } // 0<=i<=nx
    int iv(int i, int j) const { return j * grid().nx + i; }       // 0<=j<=ny

    double u_at(int i, int j) const { return u[iu(i, j)]; }
    double v_at(int i, int j) const { return v[iv(i, j)]; }

    /// Cell-centered components by face averaging.
    double u_cell(int i, int j) const { return 0.5 * (u[iu(i, j)] + u[iu(i + 1, j)]); }
    double v_cell(int i, int j) const { return 0.5 * (v[iv(i, j)] + v[iv(i, j + 1)]); }

    /// Discrete divergence at cell (i,j).
    double divergence(int i, int j) const {
        const Grid2D& g = grid();
        return (u[iu(i + 1, j)] - u[iu(i, j)]) / g.hx + (v[iv(i, j + 1)] - v[iv(i, j)]) / g.hy;
    }

    double max_speed() const;
    double max_divergence() const;
    void fill(double uval, double vval);
};

} // namespace tricap
