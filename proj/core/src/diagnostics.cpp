#include "tricap/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tricap {

namespace {
constexpr double kPi = 3.14159265358979323846;

struct Bilinear {
    // values at the four corners of a cell-center square
    double v00, v10, v01, v11;
    double at(double a, double b) const {
        return v00 * (1 - a) * (1 - b) + v10 * a * (1 - b) + v01 * (1 - a) * b + v11 * a * b;
    }
    double da(double a, double b) const {
        (void)a;
        return (v10 - v00) * (1 - b) + (v11 - v01) * b;
    }
    double db(double a, double b) const {
        (void)b;
        return (v01 - v00) * (1 - a) + (v11 - v10) * a;
    }
};

// Newton solve of f = g = 0 on the unit square of two bilinears; returns
// local coordinates when a root inside (with small slack) is found.
std::optional<std::array<double, 2>> bilinear_root(const Bilinear& f, const Bilinear& g) {
    double a = 0.5, b = 0.5;
    for (int it = 0; it < 50; ++it) {
        const double fv = f.at(a, b), gv = g.at(a, b);
        const double j00 = f.da(a, b), j01 = f.db(a, b);
        const double j10 = g.da(a, b), j11 = g.db(a, b);
        const double det = j00 * j11 - j01 * j10;
        if (det == 0.0) return std::nullopt;
        const double da = (fv * j11 - gv * j01) / det;
        const double db = (gv * j00 - fv * j10) / det;
        a -= da;
        b -= db;
        if (a < -0.75 || a > 1.75 || b < -0.75 || b > 1.75) return std::nullopt;
        if (std::fabs(da) + std::fabs(db) < 1e-13) break;
    }
    if (a < -0.02 || a > 1.02 || b < -0.02 || b > 1.02) return std::nullopt;
    if (std::fabs(f.at(a, b)) + std::fabs(g.at(a, b)) > 1e-9) return std::nullopt;
    return std::array<double, 2>{a, b};
}

bool sign_change(double a, double b, double c, double d) {
    const double mn = std::min({a, b, c, d});
    const double mx = std::max({a, b, c, d});
    return mn <= 0.0 && mx >= 0.0;
}

// Roots of phi_a = la, phi_b = lb over all cell-corner squares.
std::vector<Point> level_intersections(const CHState& state, int fa, double la, int fb, double lb) {
    const Domain& dom = state.domain();
    const Grid2D& g = dom.grid();
    std::vector<Point> roots;
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            if (!dom.interior(i, j) || !dom.interior(i + 1, j) || !dom.interior(i, j + 1) ||
                !dom.interior(i + 1, j + 1))
                continue;
            const auto& pa = state.phi[fa];
            const auto& pb = state.phi[fb];
            const Bilinear A{pa.at(i, j) - la, pa.at(i + 1, j) - la, pa.at(i, j + 1) - la,
                             pa.at(i + 1, j + 1) - la};
            const Bilinear B{pb.at(i, j) - lb, pb.at(i + 1, j) - lb, pb.at(i, j + 1) - lb,
                             pb.at(i + 1, j + 1) - lb};
            if (!sign_change(A.v00, A.v10, A.v01, A.v11)) continue;
            if (!sign_change(B.v00, B.v10, B.v01, B.v11)) continue;
            if (const auto r = bilinear_root(A, B)) {
                roots.push_back({g.xc(i) + (*r)[0] * g.hx, g.yc(j) + (*r)[1] * g.hy});
            }
        }
    }
    // merge duplicates found from adjacent squares
    std::vector<Point> merged;
    const double tol = 0.51 * std::max(g.hx, g.hy);
    for (const auto& p : roots) {
        bool dup = false;
        for (const auto& q : merged)
            if (std::hypot(p[0] - q[0], p[1] - q[1]) < tol) {
                dup = true;
                break;
            }
        if (!dup) merged.push_back(p);
    }
    return merged;
}

} // namespace

double bilinear_sample(const ScalarField& f, double x, double y) {
    const Domain& dom = f.domain();
    const Grid2D& g = dom.grid();
    const double ax = (x - g.x0) / g.hx - 0.5;
    const double ay = (y - g.y0) / g.hy - 0.5;
    const int i0 = std::clamp(static_cast<int>(std::floor(ax)), 0, g.nx - 2);
    const int j0 = std::clamp(static_cast<int>(std::floor(ay)), 0, g.ny - 2);
    const double a = std::clamp(ax - i0, 0.0, 1.0);
    const double b = std::clamp(ay - j0, 0.0, 1.0);
    const double w[4] = {(1 - a) * (1 - b), a * (1 - b), (1 - a) * b, a * b};
    const int ii[4] = {i0, i0 + 1, i0, i0 + 1};
    const int jj[4] = {j0, j0, j0 + 1, j0 + 1};
    double sum = 0.0, wsum = 0.0;
    for (int k = 0; k < 4; ++k) {
        if (!dom.interior(ii[k], jj[k])) continue;
        sum += w[k] * f.at(ii[k], jj[k]);
        wsum += w[k];
    }
    if (wsum <= 0.0)
        throw std::runtime_error("bilinear_sample: point outside the masked domain");
    return sum / wsum;
}

Point locate_triple_junction(const CHState& state, const Point* hint) {
    // phi_1 = phi_2 and phi_1 = phi_3 meeting inside a corner square where
    // all three phi_k - 1/3 change sign.
    std::vector<Point> roots = level_intersections(state, 0, 1.0 / 3.0, 1, 1.0 / 3.0);
    std::erase_if(roots, [&](const Point& p) {
        const double p3 = bilinear_sample(state.phi[2], p[0], p[1]);
        return std::fabs(p3 - 1.0 / 3.0) > 1e-6;
    });
    if (roots.empty()) throw std::runtime_error("locate_triple_junction: no junction found");
    if (hint) {
        return *std::min_element(roots.begin(), roots.end(), [&](const Point& a, const Point& b) {
            return std::hypot(a[0] - (*hint)[0], a[1] - (*hint)[1]) <
                   std::hypot(b[0] - (*hint)[0], b[1] - (*hint)[1]);
        });
    }
    if (roots.size() > 1)
        throw std::runtime_error("locate_triple_junction: multiple junctions, supply a hint");
    return roots.front();
}

std::vector<Point> eta_junctions(const CHState& state, int pair, const Point* junction, int count,
                                 int* misses) {
    if (pair < 0 || pair > 2) throw std::invalid_argument("eta_junctions: pair out of range");
    const int fi = kPairI[pair], fj = kPairJ[pair];
    Point jc{};
    if (junction)
        jc = *junction;
    else
        jc = locate_triple_junction(state);

    std::vector<Point> points;
    int missed = 0;
    for (int m = 1; m <= count; ++m) {
        const double eta = 0.45 + m * (0.05 / (count + 1));
        std::vector<Point> roots = level_intersections(state, fi, eta, fj, eta);
        if (roots.empty()) {
            ++missed;
            continue;
        }
        // nearest to the junction; the level pair can also intersect far away
        const Point best =
            *std::min_element(roots.begin(), roots.end(), [&](const Point& a, const Point& b) {
                return std::hypot(a[0] - jc[0], a[1] - jc[1]) <
                       std::hypot(b[0] - jc[0], b[1] - jc[1]);
            });
        points.push_back(best);
    }
    if (misses) *misses = missed;
    if (static_cast<int>(points.size()) < 5)
        throw std::runtime_error("eta_junctions: fewer than 5 eta-points found, regression "
                                 "ill-posed");
    return points;
}

namespace {

// Dominant eigenvector of the symmetric 2x2 matrix [[sxx, sxy], [sxy, syy]].
Point dominant_direction(double sxx, double sxy, double syy) {
    const double tr = sxx + syy;
    const double det = sxx * syy - sxy * sxy;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double lam = tr / 2.0 + disc;
    double vx = sxy, vy = lam - sxx;
    if (std::fabs(vx) + std::fabs(vy) < 1e-300) {
        vx = lam - syy;
        vy = sxy;
    }
    if (std::fabs(vx) + std::fabs(vy) < 1e-300) return {1.0, 0.0};
    const double n = std::hypot(vx, vy);
    return {vx / n, vy / n};
}

Point anchored_direction(const std::vector<Point>& pts, const Point& origin) {
    double sxx = 0, sxy = 0, syy = 0, mx = 0, my = 0;
    for (const auto& p : pts) {
        const double rx = p[0] - origin[0], ry = p[1] - origin[1];
        sxx += rx * rx;
        sxy += rx * ry;
        syy += ry * ry;
        mx += rx;
        my += ry;
    }
    Point d = dominant_direction(sxx, sxy, syy);
    if (d[0] * mx + d[1] * my < 0.0) {
        d[0] = -d[0];
        d[1] = -d[1];
    }
    return d;
}

Point unanchored_direction(const std::vector<Point>& pts, const Point& origin) {
    double cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += p[0];
        cy += p[1];
    }
    cx /= pts.size();
    cy /= pts.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : pts) {
        const double rx = p[0] - cx, ry = p[1] - cy;
        sxx += rx * rx;
        sxy += rx * ry;
        syy += ry * ry;
    }
    Point d = dominant_direction(sxx, sxy, syy);
    if (d[0] * (cx - origin[0]) + d[1] * (cy - origin[1]) < 0.0) {
        d[0] = -d[0];
        d[1] = -d[1];
    }
    return d;
}

// Sector angle of phase k between the rays of its two interfaces; the side
// containing the phase is identified by sampling phi_k along the bisector.
double sector_angle(const CHState& state, int k, const Point& junction, const Point& d1,
                    const Point& d2) {
    const double dot = std::clamp(d1[0] * d2[0] + d1[1] * d2[1], -1.0, 1.0);
    const double alpha = std::acos(dot);
    double bx = d1[0] + d2[0], by = d1[1] + d2[1];
    const double bn = std::hypot(bx, by);
    if (bn < 1e-9) return alpha; // opposite rays, both sectors are pi
    bx /= bn;
    by /= bn;
    const Grid2D& g = state.domain().grid();
    const double h = std::max(g.hx, g.hy);
    int votes = 0, samples = 0;
    for (double rho : {2.0 * h, 4.0 * h, 6.0 * h}) {
        const double x = junction[0] + rho * bx, y = junction[1] + rho * by;
        double v[3];
        try {
            for (int f = 0; f < 3; ++f) v[f] = bilinear_sample(state.phi[f], x, y);
        } catch (const std::runtime_error&) {
            continue;
        }
        ++samples;
        if (v[k] >= v[0] && v[k] >= v[1] && v[k] >= v[2]) ++votes;
    }
    if (samples == 0) return alpha;
    return 2 * votes > samples ? alpha : 2.0 * kPi - alpha;
}

} // namespace

AngleMeasurement measure_angles(const CHState& state, const Point* hint) {
    AngleMeasurement out;
    out.junction = locate_triple_junction(state, hint);

    std::array<Point, 3> dir_a, dir_u;
    for (int p = 0; p < 3; ++p) {
        out.eta_points[p] = eta_junctions(state, p, &out.junction, 20, &out.misses[p]);
        dir_a[p] = anchored_direction(out.eta_points[p], out.junction);
        dir_u[p] = unanchored_direction(out.eta_points[p], out.junction);
    }
    for (int k = 0; k < 3; ++k) {
        // the two pairs containing phase k
        int pk[2], n = 0;
        for (int p = 0; p < 3; ++p)
            if (kPairI[p] == k || kPairJ[p] == k) pk[n++] = p;
        out.psi_anchored[k] = sector_angle(state, k, out.junction, dir_a[pk[0]], dir_a[pk[1]]);
        out.psi_unanchored[k] = sector_angle(state, k, out.junction, dir_u[pk[0]], dir_u[pk[1]]);
    }
    return out;
}

SampleSeries sample_q_along_segments(const ScalarField& q, const std::vector<Point>& polyline,
                                     int n, double s_offset) {
    if (polyline.size() < 2)
        throw std::invalid_argument("sample_q_along_segments: need at least two vertices");
    if (n < 2) throw std::invalid_argument("sample_q_along_segments: need n >= 2");
    std::vector<double> arc(polyline.size(), 0.0);
    for (std::size_t k = 1; k < polyline.size(); ++k)
        arc[k] = arc[k - 1] + std::hypot(polyline[k][0] - polyline[k - 1][0],
                                         polyline[k][1] - polyline[k - 1][1]);
    const double total = arc.back();
    if (!(total > 0.0)) throw std::invalid_argument("sample_q_along_segments: degenerate polyline");

    SampleSeries out;
    out.s.resize(n);
    out.q.resize(n);
    std::size_t seg = 0;
    for (int m = 0; m < n; ++m) {
        const double s = m * total / (n - 1);
        while (seg + 2 < polyline.size() && arc[seg + 1] < s) ++seg;
        const double w = (s - arc[seg]) / (arc[seg + 1] - arc[seg]);
        const double x = polyline[seg][0] + w * (polyline[seg + 1][0] - polyline[seg][0]);
        const double y = polyline[seg][1] + w * (polyline[seg + 1][1] - polyline[seg][1]);
        out.s[m] = s_offset + s;
        out.q[m] = bilinear_sample(q, x, y);
    }
    return out;
}

std::pair<double, double> lp_errors(std::span<const double> y, std::span<const double> yref) {
    if (y.size() != yref.size()) throw std::invalid_argument("lp_errors: length mismatch");
    double linf = 0.0, l2 = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double d = y[k] - yref[k];
        linf = std::max(linf, std::fabs(d));
        l2 += d * d;
    }
    return {linf, std::sqrt(l2)};
}

std::vector<double> eoc(const std::vector<std::pair<double, double>>& errors) {
    if (errors.size() < 2) throw std::invalid_argument("eoc: need at least two (eps, error) pairs");
    std::vector<double> rates;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        const auto [e1, v1] = errors[k - 1];
        const auto [e2, v2] = errors[k];
        if (!(e1 > 0.0) || !(e2 > 0.0) || !(v1 > 0.0) || !(v2 > 0.0))
            throw std::invalid_argument("eoc: eps and errors must be positive");
        if (e1 == e2) throw std::invalid_argument("eoc: repeated eps");
        rates.push_back(std::log(v1 / v2) / std::log(e1 / e2));
    }
    return rates;
}

} // namespace tricap
