#include "tricap/operators.hpp"

#include "tricap/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace tricap {

namespace {

inline double harmonic(double a, double b) {
    const double s = a + b;
    return s > 0.0 ? 2.0 * a * b / s : 0.0;
}

void resolve_bc(const Domain& dom, const BoundarySpec& bc, std::vector<BcKind>& kinds) {
    bc.require_edges(dom.edge_count());
    kinds.resize(bc.edges.size());
    for (std::size_t e = 0; e < bc.edges.size(); ++e) kinds[e] = bc.edges[e].kind;
}

inline double dirichlet_value(const BoundaryValueFn& values, const Domain& dom, int i, int j,
                              Face d, int edge) {
    if (!values) throw std::invalid_argument("operators: Dirichlet edge without boundary values");
    const auto fc = dom.face_center(i, j, d);
    return values(edge, fc[0], fc[1]);
}

} // namespace

void laplacian_into(const ScalarField& f, const BoundarySpec& bc, const BoundaryValueFn& values,
                    ScalarField& out) {
    const Domain& dom = f.domain();
    const Grid2D& g = dom.grid();
    std::vector<BcKind> kinds;
    resolve_bc(dom, bc, kinds);

    const double ihx2 = 1.0 / (g.hx * g.hx);
    const double ihy2 = 1.0 / (g.hy * g.hy);
    const double* v = f.values().data();
    double* o = out.values().data();

    parallel_for(0, g.ny, [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int c = g.idx(i, j);
                if (!dom.interior_idx(c)) {
                    o[c] = 0.0;
                    continue;
                }
                const double fc = v[c];
                double acc = 0.0;
                // XM
                if (int e = dom.face_edge(c, Face::XM); e < 0) {
                    acc += (v[c - 1] - fc) * ihx2;
                } else if (kinds[e] == BcKind::Dirichlet) {
                    acc += 2.0 * (dirichlet_value(values, dom, i, j, Face::XM, e) - fc) * ihx2;
                }
                // XP
                if (int e = dom.face_edge(c, Face::XP); e < 0) {
                    acc += (v[c + 1] - fc) * ihx2;
                } else if (kinds[e] == BcKind::Dirichlet) {
                    acc += 2.0 * (dirichlet_value(values, dom, i, j, Face::XP, e) - fc) * ihx2;
                }
                // YM
                if (int e = dom.face_edge(c, Face::YM); e < 0) {
                    acc += (v[c - g.nx] - fc) * ihy2;
                } else if (kinds[e] == BcKind::Dirichlet) {
                    acc += 2.0 * (dirichlet_value(values, dom, i, j, Face::YM, e) - fc) * ihy2;
                }
                // YP
                if (int e = dom.face_edge(c, Face::YP); e < 0) {
                    acc += (v[c + g.nx] - fc) * ihy2;
                } else if (kinds[e] == BcKind::Dirichlet) {
                    acc += 2.0 * (dirichlet_value(values, dom, i, j, Face::YP, e) - fc) * ihy2;
                }
                o[c] = acc;
            }
        }
    });
}

ScalarField laplacian(const ScalarField& f, const BoundarySpec& bc, const BoundaryValueFn& values) {
    f.require_finite("laplacian");
    ScalarField out(f.domain_ptr());
    laplacian_into(f, bc, values, out);
    return out;
}

void gradient_into(const ScalarField& f, ScalarField& gx, ScalarField& gy) {
    const Domain& dom = f.domain();
    const Grid2D& g = dom.grid();
    const double* v = f.values().data();
    double* ox = gx.values().data();
    double* oy = gy.values().data();

    auto one_dir = [&](int c, int stride, Face minus, Face plus, double h) -> double {
        const bool has_m = dom.face_edge(c, minus) < 0;
        const bool has_p = dom.face_edge(c, plus) < 0;
        if (has_m && has_p) return (v[c + stride] - v[c - stride]) * 0.5 / h;
        if (has_p) {
            // one-sided forward; second order when two neighbours exist
            const int c2 = c + 2 * stride;
            if (dom.face_edge(c + stride, plus) < 0)
                return (-3.0 * v[c] + 4.0 * v[c + stride] - v[c2]) * 0.5 / h;
            return (v[c + stride] - v[c]) / h;
        }
        if (has_m) {
            const int c2 = c - 2 * stride;
            if (dom.face_edge(c - stride, minus) < 0)
                return (3.0 * v[c] - 4.0 * v[c - stride] + v[c2]) * 0.5 / h;
            return (v[c] - v[c - stride]) / h;
        }
        return 0.0;
    };

    parallel_for(0, g.ny, [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int c = g.idx(i, j);
                if (!dom.interior_idx(c)) {
                    ox[c] = oy[c] = 0.0;
                    continue;
                }
                ox[c] = one_dir(c, 1, Face::XM, Face::XP, g.hx);
                oy[c] = one_dir(c, g.nx, Face::YM, Face::YP, g.hy);
            }
        }
    });
}

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f) {
    f.require_finite("gradient");
    ScalarField gx(f.domain_ptr()), gy(f.domain_ptr());
    gradient_into(f, gx, gy);
    return {std::move(gx), std::move(gy)};
}

double integrate(const ScalarField& f) {
    double s = 0.0;
    for (int c : f.domain().cells()) s += f[c];
    return s * f.grid().cell_area();
}

double inner(const ScalarField& a, const ScalarField& b) {
    double s = 0.0;
    for (int c : a.domain().cells()) s += a[c] * b[c];
    return s;
}

double max_abs(const ScalarField& a) {
    double m = 0.0;
    for (int c : a.domain().cells()) m = std::max(m, std::fabs(a[c]));
    return m;
}

void div_mgrad_into(const ScalarField& u, const ScalarField& m, const BoundarySpec& bc,
                    const BoundaryValueFn& values, ScalarField& out) {
    const Domain& dom = u.domain();
    const Grid2D& g = dom.grid();
    std::vector<BcKind> kinds;
    resolve_bc(dom, bc, kinds);

    const double ihx2 = 1.0 / (g.hx * g.hx);
    const double ihy2 = 1.0 / (g.hy * g.hy);
    const double* v = u.values().data();
    const double* mv = m.values().data();
    double* o = out.values().data();

    parallel_for(0, g.ny, [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int c = g.idx(i, j);
                if (!dom.interior_idx(c)) {
                    o[c] = 0.0;
                    continue;
                }
                const double uc = v[c], mc = mv[c];
                double acc = 0.0;
                auto face = [&](int stride, Face d, double ih2) {
                    if (int e = dom.face_edge(c, d); e < 0) {
                        acc += harmonic(mc, mv[c + stride]) * (v[c + stride] - uc) * ih2;
                    } else if (kinds[e] == BcKind::Dirichlet) {
                        acc += mc * 2.0 * (dirichlet_value(values, dom, i, j, d, e) - uc) * ih2;
                    }
                };
                face(-1, Face::XM, ihx2);
                face(+1, Face::XP, ihx2);
                face(-g.nx, Face::YM, ihy2);
                face(+g.nx, Face::YP, ihy2);
                o[c] = acc;
            }
        }
    });
}

void div_mgrad_diagonal_into(const ScalarField& m, const BoundarySpec& bc, ScalarField& out) {
    const Domain& dom = m.domain();
    const Grid2D& g = dom.grid();
    std::vector<BcKind> kinds;
    resolve_bc(dom, bc, kinds);
    const double ihx2 = 1.0 / (g.hx * g.hx);
    const double ihy2 = 1.0 / (g.hy * g.hy);
    const double* mv = m.values().data();
    double* o = out.values().data();
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int c = g.idx(i, j);
            if (!dom.interior_idx(c)) {
                o[c] = 0.0;
                continue;
            }
            const double mc = mv[c];
            double acc = 0.0;
            auto face = [&](int stride, Face d, double ih2) {
                if (int e = dom.face_edge(c, d); e < 0)
                    acc += harmonic(mc, mv[c + stride]) * ih2;
                else if (kinds[e] == BcKind::Dirichlet)
                    acc += 2.0 * mc * ih2;
            };
            face(-1, Face::XM, ihx2);
            face(+1, Face::XP, ihx2);
            face(-g.nx, Face::YM, ihy2);
            face(+g.nx, Face::YP, ihy2);
            o[c] = acc;
        }
    }
}

ScalarField div_mgrad(const ScalarField& u, const ScalarField& m, const BoundarySpec& bc,
                      const BoundaryValueFn& values) {
    require_same_domain(u, m, "div_mgrad");
    u.require_finite("div_mgrad");
    m.require_finite("div_mgrad mobility");
    ScalarField out(u.domain_ptr());
    div_mgrad_into(u, m, bc, values, out);
    return out;
}

} // namespace tricap
