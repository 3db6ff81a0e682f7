#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tricap/contour.hpp"
#include "tricap/diagnostics.hpp"
#include "tricap/experiments.hpp"
#include "tricap/sharp.hpp"

#include <cmath>
#include <random>

using namespace tricap;

namespace {
const double kPi = 3.14159265358979323846;

// Synthetic junction at (cx, cy): three sectors with tanh profiles.
CHState sector_state(std::shared_ptr<const Domain> dom, double eps, double cx, double cy,
                     double rot = 0.0) {
    CHState st = CHState::zeros(dom);
    const Grid2D& g = dom->grid();
    const double bounds[3][2] = {{kPi / 3.0, kPi}, {-kPi / 3.0, kPi / 3.0}, {kPi, 5.0 * kPi / 3.0}};
    for (int c : dom->cells()) {
        const double x = g.xc(c % g.nx) - cx, y = g.yc(c / g.nx) - cy;
        const double xr = std::cos(rot) * x + std::sin(rot) * y;
        const double yr = -std::sin(rot) * x + std::cos(rot) * y;
        double hat[3], sum = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double ta = bounds[k][0] , tb = bounds[k][1];
            const double da = -std::sin(ta) * xr + std::cos(ta) * yr;
            const double db = std::sin(tb) * xr - std::cos(tb) * yr;
            hat[k] = 0.5 * (1.0 + std::tanh(2.0 * std::min(da, db) / eps));
            sum += hat[k];
        }
        for (int k = 0; k < 3; ++k) st.phi[k][c] = hat[k] / sum;
    }
    return st;
}

CHState two_phase_state(std::shared_ptr<const Domain> dom, double eps) {
    CHState st = CHState::zeros(dom);
    const Grid2D& g = dom->grid();
    const TanhProfile chi{eps, 0.0};
    for (int c : dom->cells()) {
        const double p = chi(g.yc(c / g.nx));
        st.phi[0][c] = p;
        st.phi[1][c] = 1.0 - p;
    }
    return st;
}

} // namespace

TEST_CASE("bilinear sampling reproduces bilinear fields") {
    auto dom = Domain::rectangle(0, 0, 1, 1, 0.05);
    const Grid2D& g = dom->grid();
    ScalarField f(dom);
    for (int c : dom->cells()) f[c] = 2.0 + 3.0 * g.xc(c % g.nx) - g.yc(c / g.nx);
    CHECK(bilinear_sample(f, 0.4321, 0.6789) ==
          doctest::Approx(2.0 + 3.0 * 0.4321 - 0.6789).epsilon(1e-12));
}

TEST_CASE("locate_triple_junction: centered, translated, and missing junctions") {
    const double eps = 0.1;
    auto dom = Domain::rectangle(-1, -1, 1, 1, 0.04);
    const Point center = locate_triple_junction(sector_state(dom, eps, 0.0, 0.0));
    CHECK(std::fabs(center[0]) < 0.04);
    CHECK(std::fabs(center[1]) < 0.04);

    const Point moved = locate_triple_junction(sector_state(dom, eps, 0.23, -0.17));
    CHECK(moved[0] == doctest::Approx(0.23).epsilon(0.2));
    CHECK(std::fabs(moved[0] - 0.23) < 0.04);
    CHECK(std::fabs(moved[1] + 0.17) < 0.04);

    CHECK_THROWS_WITH_AS(locate_triple_junction(two_phase_state(dom, eps)),
                         doctest::Contains("no junction"), std::runtime_error);
}

TEST_CASE("eta_junctions: symmetry, ordering, and the two-phase error") {
    const double eps = 0.1;
    auto dom = Domain::rectangle(-1, -1, 1, 1, 0.025);
    const CHState st = sector_state(dom, eps, 0.0, 0.0);
    const Point junction = locate_triple_junction(st);

    // the (1,2) interface leaves the junction along direction 60 deg: its
    // eta-points must sit on that ray
    int misses = 0;
    const std::vector<Point> pts = eta_junctions(st, 0, &junction, 20, &misses);
    CHECK(pts.size() + misses == 20);
    CHECK(pts.size() >= 15);
    const double dir[2] = {std::cos(kPi / 3.0), std::sin(kPi / 3.0)};
    double prev_r = -1e300;
    for (const Point& p : pts) {
        const double rx = p[0] - junction[0], ry = p[1] - junction[1];
        const double along = rx * dir[0] + ry * dir[1];
        const double across = -rx * dir[1] + ry * dir[0];
        CHECK(along > 0.0);
        CHECK(std::fabs(across) < 0.025);
        // eta increases toward 1/2, so the points march away from the junction
        CHECK(along > prev_r - 1e-9);
        prev_r = along;
    }
    // ordering check: last eta (closest to 1/2) lies farthest
    const Point& first = pts.front();
    const Point& last = pts.back();
    CHECK(std::hypot(last[0] - junction[0], last[1] - junction[1]) >
          std::hypot(first[0] - junction[0], first[1] - junction[1]));

    CHECK_THROWS(eta_junctions(two_phase_state(dom, eps), 0));
}

TEST_CASE("measure_angles on synthetic junctions") {
    const double eps = 0.1;
    auto dom = Domain::rectangle(-1, -1, 1, 1, 0.025);

    SUBCASE("symmetric 120-degree junction") {
        const AngleMeasurement am = measure_angles(sector_state(dom, eps, 0.0, 0.0));
        for (int k = 0; k < 3; ++k) {
            CHECK(am.psi_anchored[k] == doctest::Approx(2.0 * kPi / 3.0).epsilon(0.025));
            CHECK(am.psi_unanchored[k] == doctest::Approx(2.0 * kPi / 3.0).epsilon(0.025));
            // anchored and unanchored agree on straight interfaces
            CHECK(std::fabs(am.psi_anchored[k] - am.psi_unanchored[k]) < 0.05);
        }
        const double sum = am.psi_anchored[0] + am.psi_anchored[1] + am.psi_anchored[2];
        CHECK(std::fabs(sum - 2.0 * kPi) < 0.2);
    }

    SUBCASE("rotation equivariance under a grid-exact quarter turn") {
        // rotating the junction by 90 degrees permutes nothing between the
        // phases, so each psi_k must be preserved within grid tolerance
        const AngleMeasurement base = measure_angles(sector_state(dom, eps, 0.0, 0.0));
        const AngleMeasurement rot = measure_angles(sector_state(dom, eps, 0.0, 0.0, kPi / 2.0));
        for (int k = 0; k < 3; ++k)
            CHECK(rot.psi_anchored[k] == doctest::Approx(base.psi_anchored[k]).epsilon(0.03));
    }
}

TEST_CASE("sample_q_along_segments") {
    auto dom = Domain::rectangle(0, 0, 1, 1, 0.02);
    const Grid2D& g = dom->grid();
    SUBCASE("constant field gives a constant series") {
        ScalarField q(dom, 3.25);
        const SampleSeries s =
            sample_q_along_segments(q, {{0.1, 0.1}, {0.5, 0.4}, {0.9, 0.9}}, 37, -0.5);
        CHECK(s.s.size() == 37);
        CHECK(s.s.front() == doctest::Approx(-0.5));
        for (double v : s.q) CHECK(v == doctest::Approx(3.25));
        for (std::size_t k = 1; k < s.s.size(); ++k) CHECK(s.s[k] > s.s[k - 1]);
    }
    SUBCASE("q = x along the x axis is the identity") {
        ScalarField q(dom);
        for (int c : dom->cells()) q[c] = g.xc(c % g.nx);
        const SampleSeries s = sample_q_along_segments(q, {{0.1, 0.5}, {0.9, 0.5}}, 33, 0.1);
        for (std::size_t k = 0; k < s.s.size(); ++k)
            CHECK(s.q[k] == doctest::Approx(s.s[k]).epsilon(1e-10));
    }
    SUBCASE("points outside the mask raise an error") {
        auto hex = Domain::hexagon(1.0, 0.05);
        ScalarField q(hex, 1.0);
        CHECK_THROWS(sample_q_along_segments(q, {{0.0, 0.0}, {5.0, 5.0}}, 10));
    }
}

TEST_CASE("lp_errors") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    CHECK(lp_errors(a, a) == std::pair<double, double>{0.0, 0.0});
    const std::vector<double> y{3.0, 4.0}, r{0.0, 0.0};
    const auto [linf, l2] = lp_errors(y, r);
    CHECK(linf == doctest::Approx(4.0));
    CHECK(l2 == doctest::Approx(5.0));
    const std::vector<double> ones{1.0, 1.0, 1.0, 1.0}, zeros(4, 0.0);
    const auto [linf2, l22] = lp_errors(ones, zeros);
    CHECK(linf2 == doctest::Approx(1.0));
    CHECK(l22 == doctest::Approx(2.0));
    CHECK_THROWS(lp_errors(a, y));

    // triangle inequality on random triples
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> x(10), yv(10), z(10);
        for (int k = 0; k < 10; ++k) {
            x[k] = dist(rng);
            yv[k] = dist(rng);
            z[k] = dist(rng);
        }
        const auto [ixz, nxz] = lp_errors(x, z);
        const auto [ixy, nxy] = lp_errors(x, yv);
        const auto [iyz, nyz] = lp_errors(yv, z);
        CHECK(ixz <= ixy + iyz + 1e-14);
        CHECK(nxz <= nxy + nyz + 1e-14);
    }
}

TEST_CASE("eoc recovers exponents and matches the published pair") {
    CHECK(eoc({{0.08, 0.005887}, {0.04, 0.003132}})[0] ==
          doctest::Approx(0.910448).epsilon(1e-5 / 0.91));
    // exact power laws
    const std::vector<std::pair<double, double>> lin{{0.2, 0.2}, {0.1, 0.1}, {0.05, 0.05}};
    for (double r : eoc(lin)) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<std::pair<double, double>> quad{{0.2, 0.04}, {0.1, 0.01}};
    CHECK(eoc(quad)[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS(eoc({{0.1, 0.0}, {0.05, 0.1}}));
    CHECK_THROWS(eoc({{0.1, 1.0}}));
}

TEST_CASE("level_set_polylines") {
    SUBCASE("vertical line of a linear field") {
        auto dom = Domain::rectangle(0, 0, 1, 1, 0.05);
        const Grid2D& g = dom->grid();
        ScalarField f(dom);
        for (int c : dom->cells()) f[c] = g.xc(c % g.nx) - 0.5;
        const auto lines = level_set_polylines(f, 0.0);
        REQUIRE(lines.size() == 1);
        for (const auto& p : lines.front()) CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("circle length converges to 2 pi r") {
        const double r = 0.3;
        double prev = 0.0;
        for (int level = 0; level < 2; ++level) {
            auto dom = Domain::rectangle(-1, -1, 1, 1, 0.05 / (1 << level));
            const Grid2D& g = dom->grid();
            ScalarField f(dom);
            for (int c : dom->cells()) {
                const double x = g.xc(c % g.nx), y = g.yc(c / g.nx);
                f[c] = x * x + y * y - r * r;
            }
            const auto lines = level_set_polylines(f, 0.0);
            REQUIRE(lines.size() == 1);
            double len = polyline_length(lines.front());
            // closed loop: close it if the chain walker left it open
            const auto& pl = lines.front();
            len += std::hypot(pl.front()[0] - pl.back()[0], pl.front()[1] - pl.back()[1]);
            const double err = std::fabs(len - 2.0 * kPi * r);
            if (level > 0) CHECK(err < prev);
            CHECK(err < 0.02 * (1 << (1 - level)));
            prev = err;
        }
    }
    SUBCASE("constant field yields nothing") {
        auto dom = Domain::rectangle(0, 0, 1, 1, 0.1);
        CHECK(level_set_polylines(ScalarField(dom, 2.0), 0.0).empty());
    }
}
