#include "tricap/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tricap {

Grid2D::Grid2D(int nx_, int ny_, double hx_, double hy_, double x0_, double y0_)
    : nx(nx_), ny(ny_), hx(hx_), hy(hy_), x0(x0_), y0(y0_) {
    if (nx < 4 || ny < 4) throw std::invalid_argument("Grid2D: need nx >= 4 and ny >= 4");
    if (!(hx > 0.0) || !(hy > 0.0)) throw std::invalid_argument("Grid2D: need hx, hy > 0");
}

Grid2D Grid2D::cover(double ax, double ay, double bx, double by, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("Grid2D::cover: need h > 0");
    if (!(bx > ax) || !(by > ay)) throw std::invalid_argument("Grid2D::cover: empty box");
    const int nx = std::max(4, static_cast<int>(std::lround((bx - ax) / h)));
    const int ny = std::max(4, static_cast<int>(std::lround((by - ay) / h)));
    return Grid2D(nx, ny, (bx - ax) / nx, (by - ay) / ny, ax, ay);
}

bool Polygon::contains(double x, double y) const {
    const int n = edge_count();
    for (int e = 0; e < n; ++e) {
        const auto& a = vertices[e];
        const auto& b = vertices[(e + 1) % n];
        const double cross = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
        if (cross <= 0.0) return false; // on or outside an edge (CCW orientation)
    }
    return true;
}

namespace {
double segment_distance2(double x, double y, const std::array<double, 2>& a,
                         const std::array<double, 2>& b) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((x - a[0]) * dx + (y - a[1]) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double px = a[0] + t * dx - x, py = a[1] + t * dy - y;
    return px * px + py * py;
}
} // namespace

int Polygon::nearest_edge(double x, double y) const {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int e = 0; e < edge_count(); ++e) {
        const double d = segment_distance2(x, y, vertices[e], vertices[(e + 1) % edge_count()]);
        if (d < best_d) {
            best_d = d;
            best = e;
        }
    }
    return best;
}

double Polygon::area() const {
    double a = 0.0;
    const int n = edge_count();
    for (int e = 0; e < n; ++e) {
        const auto& p = vertices[e];
        const auto& q = vertices[(e + 1) % n];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

Polygon Polygon::regular_hexagon(double side, double cx, double cy) {
    // Vertices at angles 30 + 60k degrees: vertical left/right edges, edge
    // midpoints on the axes at distance sqrt(3)/2 * side.
    Polygon p;
    const double pi = 3.14159265358979323846;
    for (int k = 0; k < 6; ++k) {
        const double th = pi / 6.0 + k * pi / 3.0;
        p.vertices.push_back({cx + side * std::cos(th), cy + side * std::sin(th)});
    }
    return p;
}

Domain::Domain(const Grid2D& grid) : grid_(grid) { build(); }

Domain::Domain(const Grid2D& grid, const Polygon& polygon) : grid_(grid), polygon_(polygon) {
    if (polygon_.edge_count() < 3) throw std::invalid_argument("Domain: polygon needs >= 3 vertices");
    if (polygon_.area() <= 0.0)
        throw std::invalid_argument("Domain: polygon must be counter-clockwise and non-degenerate");
    build();
}

void Domain::build() {
    const int n = grid_.size();
    inside_.assign(n, 1);
    if (has_mask()) {
        n_edges_ = polygon_.edge_count();
        for (int j = 0; j < grid_.ny; ++j)
            for (int i = 0; i < grid_.nx; ++i)
                inside_[grid_.idx(i, j)] = polygon_.contains(grid_.xc(i), grid_.yc(j)) ? 1 : 0;
    } else {
        n_edges_ = 4;
    }

    cells_.clear();
    face_edge_.assign(static_cast<std::size_t>(4) * n, -1);
    bfaces_.clear();
    n_interior_ = 0;

    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int j = 0; j < grid_.ny; ++j) {
        for (int i = 0; i < grid_.nx; ++i) {
            const int c = grid_.idx(i, j);
            if (!inside_[c]) continue;
            ++n_interior_;
            cells_.push_back(c);
            for (int d = 0; d < 4; ++d) {
                const int ni = i + di[d], nj = j + dj[d];
                const bool nb_interior = ni >= 0 && ni < grid_.nx && nj >= 0 && nj < grid_.ny &&
                                         inside_[grid_.idx(ni, nj)];
                if (nb_interior) continue;
                int edge;
                if (has_mask()) {
                    const auto fc = face_center(i, j, static_cast<Face>(d));
                    edge = polygon_.nearest_edge(fc[0], fc[1]);
                } else {
                    edge = d; // rectangle sides keep the XM,XP,YM,YP order
                }
                face_edge_[4 * c + d] = edge;
                bfaces_.push_back({i, j, static_cast<Face>(d), edge});
            }
        }
    }
    if (n_interior_ == 0) throw std::invalid_argument("Domain: mask excludes every cell");
}

std::array<double, 2> Domain::face_center(int i, int j, Face d) const {
    const double x = grid_.xc(i), y = grid_.yc(j);
    switch (d) {
        case Face::XM: return {x - 0.5 * grid_.hx, y};
        case Face::XP: return {x + 0.5 * grid_.hx, y};
        case Face::YM: return {x, y - 0.5 * grid_.hy};
        default: return {x, y + 0.5 * grid_.hy};
    }
}

std::shared_ptr<const Domain> Domain::rectangle(double ax, double ay, double bx, double by,
                                                double h) {
    return std::make_shared<Domain>(Grid2D::cover(ax, ay, bx, by, h));
}

std::shared_ptr<const Domain> Domain::hexagon(double side, double h) {
    const double w = std::sqrt(3.0) / 2.0 * side;
    const Grid2D g = Grid2D::cover(-w, -side, w, side, h);
    return std::make_shared<Domain>(g, Polygon::regular_hexagon(side));
}

void ScalarField::require_finite(const char* what) const {
    for (int c : dom_->cells())
        if (!std::isfinite(v_[c]))
            throw std::runtime_error(std::string(what) + ": non-finite field value");
}

double ScalarField::min_interior() const {
    double m = std::numeric_limits<double>::infinity();
    for (int c : dom_->cells()) m = std::min(m, v_[c]);
    return m;
}

double ScalarField::max_interior() const {
    double m = -std::numeric_limits<double>::infinity();
    for (int c : dom_->cells()) m = std::max(m, v_[c]);
    return m;
}

void require_same_domain(const ScalarField& a, const ScalarField& b, const char* what) {
    if (a.domain_ptr().get() != b.domain_ptr().get())
        throw std::invalid_argument(std::string(what) + ": fields live on different domains");
}

} // namespace tricap
