#include "tricap/mac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tricap {

MacVelocity::MacVelocity(std::shared_ptr<const Domain> d) : dom(std::move(d)) {
    if (dom->has_mask())
        throw std::invalid_argument("MacVelocity: flow fields require an unmasked rectangle");
    const Grid2D& g = dom->grid();
    u.assign(static_cast<std::size_t>(g.nx + 1) * g.ny, 0.0);
    v.assign(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0);
}

double MacVelocity::max_speed() const {
    double m = 0.0;
    for (double x : u) m = std::max(m, std::fabs(x));
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double MacVelocity::max_divergence() const {
    const Grid2D& g = grid();
    double m = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) m = std::max(m, std::fabs(divergence(i, j)));
    return m;
}

void MacVelocity::fill(double uval, double vval) {
    std::fill(u.begin(), u.end(), uval);
    std::fill(v.begin(), v.end(), vval);
}

} // namespace tricap
