#include "tricap/linear.hpp"

#include <cmath>
#include <stdexcept>

namespace tricap {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

} // namespace

SolveReport conjugate_gradient(const LinOp& a, std::span<const double> b, std::span<double> x,
                               double rel_tol, int max_iter, std::span<const double> inv_diag) {
    const std::size_t n = b.size();
    const bool precond = !inv_diag.empty();
    std::vector<double> r(n), z(n), p(n), ap(n);

    a(x, ap);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - ap[k];
    const double bnorm = norm(b);
    const double stop = rel_tol * (bnorm > 0.0 ? bnorm : 1.0);

    SolveReport rep;
    double res = norm(r);
    if (res <= stop) {
        rep.converged = true;
        rep.residual = bnorm > 0.0 ? res / bnorm : 0.0;
        return rep;
    }
    if (precond)
        for (std::size_t k = 0; k < n; ++k) z[k] = r[k] * inv_diag[k];
    else
        z.assign(r.begin(), r.end());
    p = z;
    double rz = dot(r, z);

    for (int it = 1; it <= max_iter; ++it) {
        a(p, ap);
        const double pap = dot(p, ap);
        if (pap <= 0.0) break; // operator not SPD on this subspace
        const double alpha = rz / pap;
        for (std::size_t k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        res = norm(r);
        rep.iterations = it;
        if (res <= stop) {
            rep.converged = true;
            break;
        }
        if (precond)
            for (std::size_t k = 0; k < n; ++k) z[k] = r[k] * inv_diag[k];
        else
            z.assign(r.begin(), r.end());
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    rep.residual = bnorm > 0.0 ? res / bnorm : res;
    return rep;
}

SolveReport bicgstab(const LinOp& a, std::span<const double> b, std::span<double> x, double rel_tol,
                     int max_iter) {
    const std::size_t n = b.size();
    std::vector<double> r(n), r0(n), p(n), v(n), s(n), t(n);

    a(x, v);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - v[k];
    r0 = r;
    const double bnorm = norm(b);
    const double stop = rel_tol * (bnorm > 0.0 ? bnorm : 1.0);

    SolveReport rep;
    double res = norm(r);
    if (res <= stop) {
        rep.converged = true;
        rep.residual = bnorm > 0.0 ? res / bnorm : 0.0;
        return rep;
    }

    double rho = 1.0, alpha = 1.0, omega = 1.0;
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);

    for (int it = 1; it <= max_iter; ++it) {
        const double rho_new = dot(r0, r);
        if (rho_new == 0.0) break; // breakdown
        const double beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
        a(p, v);
        const double r0v = dot(r0, v);
        if (r0v == 0.0) break;
        alpha = rho / r0v;
        for (std::size_t k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];
        res = norm(s);
        rep.iterations = it;
        if (res <= stop) {
            for (std::size_t k = 0; k < n; ++k) x[k] += alpha * p[k];
            rep.converged = true;
            break;
        }
        a(s, t);
        const double tt = dot(t, t);
        if (tt == 0.0) break;
        omega = dot(t, s) / tt;
        for (std::size_t k = 0; k < n; ++k) {
            x[k] += alpha * p[k] + omega * s[k];
            r[k] = s[k] - omega * t[k];
        }
        res = norm(r);
        if (res <= stop) {
            rep.converged = true;
            break;
        }
        if (omega == 0.0) break;
    }
    rep.residual = bnorm > 0.0 ? res / bnorm : res;
    return rep;
}

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
    const std::size_t n = rhs.size();
    if (lower.size() != n || diag.size() != n || upper.size() != n)
        throw std::invalid_argument("solve_tridiagonal: size mismatch");
    std::vector<double> c(n);
    double piv = diag[0];
    if (piv == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
    c[0] = upper[0] / piv;
    rhs[0] /= piv;
    for (std::size_t k = 1; k < n; ++k) {
        piv = diag[k] - lower[k] * c[k - 1];
        if (piv == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
        c[k] = upper[k] / piv;
        rhs[k] = (rhs[k] - lower[k] * rhs[k - 1]) / piv;
    }
    for (std::size_t k = n - 1; k-- > 0;) rhs[k] -= c[k] * rhs[k + 1];
}

} // namespace tricap
