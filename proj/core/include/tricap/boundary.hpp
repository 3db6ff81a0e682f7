#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tricap {

/// Piecewise-linear function of time: linear interpolation between
/// breakpoints, clamped to the first/last value outside their range.
class DirichletSchedule {
  public:
    DirichletSchedule() = default;
    DirichletSchedule(std::vector<double> times, std::vector<double> values);

    /// 0 for t <= t_on, linear up to `value` at t_on + t_ramp, constant after.
    static DirichletSchedule ramp(double t_on, double t_ramp, double value);
    static DirichletSchedule constant(double value);

    double operator()(double t) const;
    bool empty() const { return t_.empty(); }

  private:
    std::vector<double> t_;
    std::vector<double> v_;
};

enum class BcKind { NeumannZero, Dirichlet };

struct BoundaryCondition {
    BcKind kind = BcKind::NeumannZero;
    int schedule = -1; // index into a schedule table for Dirichlet edges
};

/// One condition per domain edge (polygon edge or rectangle side).
struct BoundarySpec {
    std::vector<BoundaryCondition> edges;

    static BoundarySpec all_neumann(int n_edges);
    /// Dirichlet (schedule id 0) on `dirichlet_edge`, Neumann elsewhere.
    static BoundarySpec dirichlet_on(int n_edges, int dirichlet_edge);

    bool has_dirichlet() const;
    void require_edges(int n_edges) const;
};

/// Dirichlet face values by position, resolved for one instant in time.
/// `edge` is the domain edge id the face belongs to.
using BoundaryValueFn = std::function<double(int edge, double x, double y)>;

/// Uniform value per edge (the common case: one schedule per edge).
BoundaryValueFn uniform_edge_values(std::vector<double> per_edge);

} // namespace tricap
