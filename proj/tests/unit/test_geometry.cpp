#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hullknn/geometry.hpp"
#include "oracles/polygon_oracle.hpp"

using namespace hullknn;

TEST_CASE("bounding interval") {
    CHECK(bounding_interval(std::vector<double>{1, 5}, 2.0) == Interval{-1, 7});
    CHECK(bounding_interval(std::vector<double>{3, 3, 3}, 0.0) == Interval{3, 3});
    CHECK(bounding_interval(std::vector<double>{30, 64, 1}, 1.75) == Interval{-0.75, 65.75});
    CHECK_THROWS_AS(bounding_interval(std::vector<double>{1, NAN}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bounding_interval(std::vector<double>{1, 2}, -1.0), std::invalid_argument);
}

TEST_CASE("interval grows with threshold") {
    Mt19937 rng(1);
    for (int t = 0; t < 200; ++t) {
        const auto x = sample_box(rng, -50, 50, 4, 1);
        const double t1 = uniform(rng, 0, 10);
        const double t2 = t1 + uniform(rng, 1e-3, 10);
        const auto a = bounding_interval(x, t1);
        const auto b = bounding_interval(x, t2);
        REQUIRE(b.lo < a.lo);
        REQUIRE(b.hi > a.hi);
    }
}

TEST_CASE("hyperstructure sizes follow 4n - 1") {
    Mt19937 rng(2);
    const auto h2 = build_hyperstructure(std::vector<double>{0.0, 1.0}, 1.0, rng);
    CHECK(h2.point_count() == 7);
    const std::vector<double> seeds_row{15.26, 14.84, 0.871, 5.763, 3.312, 2.221, 5.22};
    const auto h7 = build_hyperstructure(seeds_row, 35.0, rng);
    CHECK(h7.point_count() == 27);
    CHECK(default_point_count(3) == 11);
    HyperstructureOptions opts;
    opts.point_count = 12;
    CHECK(build_hyperstructure(std::vector<double>{0.0, 1.0}, 1.0, rng, opts).point_count() == 12);
    opts.point_count = 2;
    CHECK_THROWS_AS(build_hyperstructure(std::vector<double>{0.0, 1.0}, 1.0, rng, opts), std::invalid_argument);
}

TEST_CASE("hyperstructure points lie in the box and record their seed") {
    const std::vector<double> x{30, 64, 1};
    Mt19937 rng(child_seed(5489, 3));
    const auto h = build_hyperstructure(x, 1.75, rng);
    CHECK(h.child_seed == child_seed(5489, 3));
    CHECK(h.box_lo == std::vector<double>(3, -0.75));
    CHECK(h.box_hi == std::vector<double>(3, 65.75));
    for (double v : h.coords) {
        CHECK(v >= -0.75);
        CHECK(v < 65.75);
    }
    Mt19937 again(child_seed(5489, 3));
    CHECK(build_hyperstructure(x, 1.75, again) == h);
}

TEST_CASE("zero-volume box is an error") {
    Mt19937 rng(3);
    CHECK_THROWS_WITH_AS(build_hyperstructure(std::vector<double>{3, 3, 3}, 0.0, rng),
                         doctest::Contains("zero-volume box"), GeometryError);
    // A non-constant point still has volume at threshold 0.
    CHECK_NOTHROW(build_hyperstructure(std::vector<double>{1, 2}, 0.0, rng));
}

TEST_CASE("ensure-enclosure resamples until the instance is inside") {
    Mt19937 rng(4);
    HyperstructureOptions opts;
    opts.ensure_enclosure = true;
    for (int t = 0; t < 50; ++t) {
        const auto x = sample_box(rng, 0, 10, 3, 1);
        Mt19937 child(child_seed(4, t));
        const auto h = build_hyperstructure(x, 5.0, child, opts);
        REQUIRE(contains(h, x));
    }
    // An instance at the far corner of its own box can never be enclosed.
    Mt19937 child(9);
    CHECK_THROWS_AS(build_hyperstructure(std::vector<double>{0.0, 100.0}, 1e-9, child, opts), GeometryError);
}

TEST_CASE("per-dimension box variant") {
    Mt19937 rng(5);
    HyperstructureOptions opts;
    opts.per_dimension_box = true;
    const std::vector<double> x{0.0, 100.0};
    const auto h = build_hyperstructure(x, 1.0, rng, opts);
    CHECK(h.box_lo == std::vector<double>{-1.0, 99.0});
    CHECK(h.box_hi == std::vector<double>{1.0, 101.0});
    for (std::size_t i = 0; i < h.point_count(); ++i) {
        CHECK(h.points()[i][1] >= 99.0);
        CHECK(h.points()[i][1] < 101.0);
    }
}

TEST_CASE("contains") {
    Mt19937 rng(6);
    const auto h = build_hyperstructure(std::vector<double>{1.0, 2.0, 3.0}, 2.0, rng);
    std::vector<double> c(3, 0.0);
    for (std::size_t i = 0; i < h.point_count(); ++i)
        for (std::size_t d = 0; d < 3; ++d) c[d] += h.points()[i][d] / static_cast<double>(h.point_count());
    CHECK(contains(h, c));
    std::vector<double> far = c;
    far[1] = h.box_hi[1] + 0.5;
    CHECK_FALSE(contains(h, far));
    CHECK_THROWS_AS(contains(h, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("contains agrees with the 2D polygon oracle") {
    Mt19937 rng(7);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto x = sample_box(rng, -5, 5, 2, 1);
        Mt19937 child(child_seed(7, t));
        const auto h = build_hyperstructure(x, 1.5, child);
        std::vector<oracle::P2> poly;
        for (std::size_t i = 0; i < h.point_count(); ++i) poly.push_back({h.points()[i][0], h.points()[i][1]});
        const auto hull = oracle::convex_hull(poly);
        REQUIRE(hull.size() >= 3);
        const std::vector<double> q = sample_box(rng, h.box_lo[0] - 1, h.box_hi[0] + 1, 2, 1);
        const auto v = oracle::point_in_hull(hull, {q[0], q[1]});
        if (v.boundary_distance < 1e-7) continue;
        REQUIRE(contains(h, q) == v.inside);
        ++checked;
    }
    CHECK(checked > 990);
}

TEST_CASE("hull stays inside the box") {
    Mt19937 rng(8);
    for (int t = 0; t < 200; ++t) {
        const auto x = sample_box(rng, 0, 3, 3, 1);
        const auto h = build_hyperstructure(x, 0.5, rng);
        const auto q = sample_box(rng, -1, 4, 3, 1);
        if (contains(h, q)) {
            for (double v : q) {
                REQUIRE(v >= h.box_lo[0] - 1e-9);
                REQUIRE(v <= h.box_hi[0] + 1e-9);
            }
        }
    }
}

TEST_CASE("hypercube corners enclose the cube") {
    const auto corners = hypercube_corners(3, -1, 1);
    CHECK(corners.size() == 8 * 3);
    const auto h = fixed_hyperstructure(corners, 3, std::vector<double>{0, 0, 0});
    CHECK(contains(h, std::vector<double>{0.99, -0.99, 0.5}));
    CHECK_FALSE(contains(h, std::vector<double>{1.01, 0.0, 0.0}));
}

TEST_CASE("collinearity examples") {
    CHECK(collinear3({0, 0}, {1, 1}, {2, 2}));
    CHECK_FALSE(collinear3({0, 0}, {1, 0}, {0, 1}));
    CHECK(collinear3({0, 0}, {1, 1}, {2, 2}, 0.0));
    CHECK(collinearity_determinant({0, 0}, {1, 0}, {0, 1}) == 1.0);
    CHECK(collinearity_slope_residual({0, 0}, {1, 0}, {0, 1}) == 1.0);
}

TEST_CASE("determinant and slope forms agree exactly on dyadic grids") {
    Mt19937 rng(9);
    auto coord = [&] { return static_cast<double>(static_cast<std::int64_t>(rng.next_below(1u << 21)) - (1 << 20)) / 1024.0; };
    for (int t = 0; t < 100000; ++t) {
        const Point2 A{coord(), coord()}, B{coord(), coord()}, C{coord(), coord()};
        REQUIRE(collinearity_determinant(A, B, C) == collinearity_slope_residual(A, B, C));
    }
}

TEST_CASE("forms agree to rounding on arbitrary reals") {
    Mt19937 rng(10);
    for (int t = 0; t < 100000; ++t) {
        const Point2 A{uniform(rng, -100, 100), uniform(rng, -100, 100)};
        const Point2 B{uniform(rng, -100, 100), uniform(rng, -100, 100)};
        const Point2 C{uniform(rng, -100, 100), uniform(rng, -100, 100)};
        const double det = collinearity_determinant(A, B, C);
        const double slope = collinearity_slope_residual(A, B, C);
        REQUIRE(std::abs(det - slope) <= 1e-10 * 100 * 100);
    }
}

TEST_CASE("collinear3 is symmetric under permutation") {
    Mt19937 rng(11);
    auto coord = [&] { return static_cast<double>(rng.next_below(64)) - 32.0; };
    for (int t = 0; t < 5000; ++t) {
        std::array<Point2, 3> p{Point2{coord(), coord()}, Point2{coord(), coord()}, Point2{coord(), coord()}};
        const bool base = collinear3(p[0], p[1], p[2], 0.0);
        std::array<int, 3> idx{0, 1, 2};
        do {
            REQUIRE(collinear3(p[idx[0]], p[idx[1]], p[idx[2]], 0.0) == base);
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
}

TEST_CASE("constructed collinear triples are collinear") {
    Mt19937 rng(12);
    for (int t = 0; t < 1000; ++t) {
        const Point2 A{uniform(rng, -10, 10), uniform(rng, -10, 10)};
        const Point2 dir{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const double s = uniform(rng, -5, 5), u = uniform(rng, -5, 5);
        const Point2 B{A[0] + s * dir[0], A[1] + s * dir[1]};
        const Point2 C{A[0] + u * dir[0], A[1] + u * dir[1]};
        REQUIRE(collinear3(A, B, C));
    }
}

TEST_CASE("sampled quadruples have no exactly collinear triple") {
    Mt19937 rng(13);
    for (int t = 0; t < 10000; ++t) {
        std::array<Point2, 4> q;
        for (auto& p : q) p = {uniform(rng, 0, 1), uniform(rng, 0, 1)};
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                for (int c = b + 1; c < 4; ++c) REQUIRE_FALSE(collinear3(q[a], q[b], q[c], 0.0));
    }
}
