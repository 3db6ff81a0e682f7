#include "tricap/boundary.hpp"

#include <algorithm>
#include <stdexcept>

namespace tricap {

DirichletSchedule::DirichletSchedule(std::vector<double> times, std::vector<double> values)
    : t_(std::move(times)), v_(std::move(values)) {
    if (t_.size() != v_.size() || t_.empty())
        throw std::invalid_argument("DirichletSchedule: breakpoint size mismatch");
    if (!std::is_sorted(t_.begin(), t_.end()))
        throw std::invalid_argument("DirichletSchedule: breakpoints must be sorted in time");
}

DirichletSchedule DirichletSchedule::ramp(double t_on, double t_ramp, double value) {
    if (!(t_ramp > 0.0)) throw std::invalid_argument("DirichletSchedule::ramp: need t_ramp > 0");
    return DirichletSchedule({t_on, t_on + t_ramp}, {0.0, value});
}

DirichletSchedule DirichletSchedule::constant(double value) {
    return DirichletSchedule({0.0}, {value});
}

double DirichletSchedule::operator()(double t) const {
    if (t_.empty()) return 0.0;
    if (t <= t_.front()) return v_.front();
    if (t >= t_.back()) return v_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - t_.begin());
    const double w = (t - t_[k - 1]) / (t_[k] - t_[k - 1]);
    return (1.0 - w) * v_[k - 1] + w * v_[k];
}

BoundarySpec BoundarySpec::all_neumann(int n_edges) {
    BoundarySpec bc;
    bc.edges.assign(static_cast<std::size_t>(n_edges), BoundaryCondition{});
    return bc;
}

BoundarySpec BoundarySpec::dirichlet_on(int n_edges, int dirichlet_edge) {
    BoundarySpec bc = all_neumann(n_edges);
    if (dirichlet_edge < 0 || dirichlet_edge >= n_edges)
        throw std::invalid_argument("BoundarySpec: edge id out of range");
    bc.edges[dirichlet_edge] = {BcKind::Dirichlet, 0};
    return bc;
}

bool BoundarySpec::has_dirichlet() const {
    for (const auto& e : edges)
        if (e.kind == BcKind::Dirichlet) return true;
    return false;
}

void BoundarySpec::require_edges(int n_edges) const {
    if (static_cast<int>(edges.size()) != n_edges)
        throw std::invalid_argument("BoundarySpec: condition count does not cover the boundary");
}

BoundaryValueFn uniform_edge_values(std::vector<double> per_edge) {
    return [vals = std::move(per_edge)](int edge, double, double) {
        return vals.at(static_cast<std::size_t>(edge));
    };
}

} // namespace tricap
