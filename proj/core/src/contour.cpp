#include "tricap/contour.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace tricap {

namespace {

// Edge of the dual (cell-center) lattice: horizontal (between (i,j) and
// (i+1,j)) or vertical (between (i,j) and (i,j+1)).
std::int64_t edge_id(bool horizontal, int i, int j, int nx) {
    return (horizontal ? 0 : 1) * (static_cast<std::int64_t>(1) << 40) +
           static_cast<std::int64_t>(j) * (nx + 1) + i;
}

} // namespace

std::vector<Polyline> level_set_polylines(const ScalarField& f, double level) {
    const Domain& dom = f.domain();
    const Grid2D& g = dom.grid();

    std::unordered_map<std::int64_t, std::array<double, 2>> crossing;
    auto cross_point = [&](bool horizontal, int i, int j) -> std::int64_t {
        const std::int64_t id = edge_id(horizontal, i, j, g.nx);
        if (crossing.count(id)) return id;
        const double va = f.at(i, j) - level;
        const double vb = horizontal ? f.at(i + 1, j) - level : f.at(i, j + 1) - level;
        const double t = va / (va - vb);
        if (horizontal)
            crossing[id] = {g.xc(i) + t * g.hx, g.yc(j)};
        else
            crossing[id] = {g.xc(i), g.yc(j) + t * g.hy};
        return id;
    };

    std::vector<std::array<std::int64_t, 2>> segments;
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            if (!dom.interior(i, j) || !dom.interior(i + 1, j) || !dom.interior(i, j + 1) ||
                !dom.interior(i + 1, j + 1))
                continue;
            const double v0 = f.at(i, j) - level;     // bottom-left
            const double v1 = f.at(i + 1, j) - level; // bottom-right
            const double v2 = f.at(i + 1, j + 1) - level;
            const double v3 = f.at(i, j + 1) - level;
            const int c = (v0 > 0.0 ? 1 : 0) | (v1 > 0.0 ? 2 : 0) | (v2 > 0.0 ? 4 : 0) |
                          (v3 > 0.0 ? 8 : 0);
            if (c == 0 || c == 15) continue;

            const auto bottom = [&] { return cross_point(true, i, j); };
            const auto top = [&] { return cross_point(true, i, j + 1); };
            const auto left = [&] { return cross_point(false, i, j); };
            const auto right = [&] { return cross_point(false, i + 1, j); };

            switch (c) {
                case 1: case 14: segments.push_back({left(), bottom()}); break;
                case 2: case 13: segments.push_back({bottom(), right()}); break;
                case 3: case 12: segments.push_back({left(), right()}); break;
                case 4: case 11: segments.push_back({right(), top()}); break;
                case 6: case 9:  segments.push_back({bottom(), top()}); break;
                case 7: case 8:  segments.push_back({left(), top()}); break;
                case 5: { // bottom-left and top-right above: saddle
                    const double center = 0.25 * (v0 + v1 + v2 + v3);
                    if (center > 0.0) {
                        segments.push_back({left(), top()});
                        segments.push_back({bottom(), right()});
                    } else {
                        segments.push_back({left(), bottom()});
                        segments.push_back({right(), top()});
                    }
                    break;
                }
                case 10: {
                    const double center = 0.25 * (v0 + v1 + v2 + v3);
                    if (center > 0.0) {
                        segments.push_back({left(), bottom()});
                        segments.push_back({right(), top()});
                    } else {
                        segments.push_back({left(), top()});
                        segments.push_back({bottom(), right()});
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // chain segments into polylines
    std::unordered_map<std::int64_t, std::vector<std::size_t>> incident;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        incident[segments[s][0]].push_back(s);
        incident[segments[s][1]].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    std::vector<Polyline> lines;

    auto walk = [&](std::size_t start, std::int64_t from) {
        std::vector<std::int64_t> chain{from};
        std::size_t seg = start;
        std::int64_t node = from;
        while (true) {
            used[seg] = true;
            node = segments[seg][0] == node ? segments[seg][1] : segments[seg][0];
            chain.push_back(node);
            std::size_t next = segments.size();
            for (std::size_t cand : incident[node])
                if (!used[cand]) {
                    next = cand;
                    break;
                }
            if (next == segments.size()) break;
            seg = next;
        }
        Polyline line;
        line.reserve(chain.size());
        for (std::int64_t id : chain) line.push_back(crossing[id]);
        return line;
    };

    // open chains first (start at odd-degree nodes), then closed loops
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (used[s]) continue;
        std::int64_t start_node = segments[s][0];
        if (incident[segments[s][0]].size() == 2 && incident[segments[s][1]].size() != 2)
            start_node = segments[s][1];
        if (incident[segments[s][0]].size() % 2 == 1)
            start_node = segments[s][0];
        else if (incident[segments[s][1]].size() % 2 == 1)
            start_node = segments[s][1];
        lines.push_back(walk(s, start_node));
    }
    return lines;
}

double polyline_length(const Polyline& p) {
    double len = 0.0;
    for (std::size_t k = 1; k < p.size(); ++k)
        len += std::hypot(p[k][0] - p[k - 1][0], p[k][1] - p[k - 1][1]);
    return len;
}

} // namespace tricap
