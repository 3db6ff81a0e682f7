#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace tricap {

/// Uniform cell-centered Cartesian grid. Cell (i,j) has center
/// (x0 + (i+1/2)hx, y0 + (j+1/2)hy), 0 <= i < nx, 0 <= j < ny.
struct Grid2D {
    int nx = 0;
    int ny = 0;
    double hx = 0.0;
    double hy = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;

    Grid2D() = default;
    Grid2D(int nx_, int ny_, double hx_, double hy_, double x0_ = 0.0, double y0_ = 0.0);

    int size() const { return nx * ny; }
    int idx(int i, int j) const { return j * nx + i; }
    double xc(int i) const { return x0 + (i + 0.5) * hx; }
    double yc(int j) const { return y0 + (j + 0.5) * hy; }
    double x1() const { return x0 + nx * hx; }
    double y1() const { return y0 + ny * hy; }
    double cell_area() const { return hx * hy; }

    /// Grid over [ax,bx]x[ay,by] with cell size close to h in both directions.
    static Grid2D cover(double ax, double ay, double bx, double by, double h);
};

/// Simple convex polygon, vertices in counter-clockwise order.
struct Polygon {
    std::vector<std::array<double, 2>> vertices;

    int edge_count() const { return static_cast<int>(vertices.size()); }
    bool contains(double x, double y) const;
    /// Index of the edge (segment v[e] -> v[e+1]) closest to (x,y).
    int nearest_edge(double x, double y) const;
    double area() const;

    static Polygon regular_hexagon(double side, double cx = 0.0, double cy = 0.0);
};

enum class Face : std::uint8_t { XM = 0, XP = 1, YM = 2, YP = 3 };

/// A cell face on the domain boundary: the face of interior cell (i,j) in
/// direction `face`, tagged with the id of the polygon edge (or rectangle
/// side) it belongs to.
struct BoundaryFace {
    int i;
    int j;
    Face face;
    int edge;
};

/// Grid plus an optional convex-polygon mask. A cell is interior when its
/// center lies inside the polygon; boundary faces separate interior cells
/// from the exterior (or from the edge of the grid) and inherit the nearest
/// polygon edge's id. Without a polygon the domain is the full rectangle and
/// the four sides are edges 0..3 (XM, XP, YM, YP order: left, right, bottom,
/// top).
class Domain {
  public:
    explicit Domain(const Grid2D& grid);
    Domain(const Grid2D& grid, const Polygon& polygon);

    const Grid2D& grid() const { return grid_; }
    const Polygon& polygon() const { return polygon_; }
    bool has_mask() const { return !polygon_.vertices.empty(); }
    int edge_count() const { return n_edges_; }

    bool interior(int i, int j) const {
        return i >= 0 && i < grid_.nx && j >= 0 && j < grid_.ny && inside_[grid_.idx(i, j)];
    }
    bool interior_idx(int c) const { return inside_[c] != 0; }
    std::span<const std::uint8_t> inside() const { return inside_; }
    int interior_count() const { return n_interior_; }
    std::span<const int> cells() const { return cells_; }
    std::span<const BoundaryFace> boundary_faces() const { return bfaces_; }

    /// Boundary-edge id for the face of cell c in direction d, -1 when the
    /// neighbour in that direction is interior. Only meaningful for interior
    /// cells.
    int face_edge(int c, Face d) const { return face_edge_[4 * c + static_cast<int>(d)]; }

    /// Center coordinates of the face of cell (i,j) in direction d.
    std::array<double, 2> face_center(int i, int j, Face d) const;

    static std::shared_ptr<const Domain> rectangle(double ax, double ay, double bx, double by,
                                                   double h);
    static std::shared_ptr<const Domain> hexagon(double side, double h);

  private:
    void build();

    Grid2D grid_;
    Polygon polygon_;
    int n_edges_ = 4;
    int n_interior_ = 0;
    std::vector<std::uint8_t> inside_;
    std::vector<int> cells_;
    std::vector<BoundaryFace> bfaces_;
    std::vector<std::int32_t> face_edge_;
};

/// Scalar field with one value per grid cell; exterior cells hold zero.
class ScalarField {
  public:
    ScalarField() = default;
    explicit ScalarField(std::shared_ptr<const Domain> dom, double fill = 0.0)
        : dom_(std::move(dom)), v_(static_cast<std::size_t>(dom_->grid().size()), 0.0) {
        if (fill != 0.0)
            for (int c : dom_->cells()) v_[c] = fill;
    }

    const std::shared_ptr<const Domain>& domain_ptr() const { return dom_; }
    const Domain& domain() const { return *dom_; }
    const Grid2D& grid() const { return dom_->grid(); }

    double& operator[](int c) { return v_[c]; }
    double operator[](int c) const { return v_[c]; }
    double& at(int i, int j) { return v_[grid().idx(i, j)]; }
    double at(int i, int j) const { return v_[grid().idx(i, j)]; }

    std::span<double> values() { return v_; }
    std::span<const double> values() const { return v_; }
    int size() const { return static_cast<int>(v_.size()); }

    /// Throws if any interior value is NaN or infinite.
    void require_finite(const char* what) const;

    double min_interior() const;
    double max_interior() const;

  private:
    std::shared_ptr<const Domain> dom_;
    std::vector<double> v_;
};

void require_same_domain(const ScalarField& a, const ScalarField& b, const char* what);

} // namespace tricap
