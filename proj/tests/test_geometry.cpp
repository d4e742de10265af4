#include <doctest.h>

#include <random>

#include "ask/geometry.hpp"
#include "test_util.hpp"

using namespace ask;

TEST_CASE("point to segment distance") {
    Segment s{{-1.0, 0.0}, {1.0, 0.0}};
    CHECK(euclid_point_segment(Point{0.0, 1.0}, s) == doctest::Approx(1.0));
    CHECK(euclid_point_segment(Point{2.0, 0.0}, s) == doctest::Approx(1.0));

    Segment degenerate{{0.0, 0.0}, {0.0, 0.0}};
    CHECK(euclid_point_segment(Point{3.0, 4.0}, degenerate) == doctest::Approx(5.0));

    CHECK_THROWS_AS(euclid_point_segment(Point{0.0, 0.0, 0.0}, s),
                    std::invalid_argument);
}

TEST_CASE("projection parameter") {
    Segment axis{{0.0, 0.0}, {2.0, 0.0}};
    CHECK(projection_parameter(Point{1.0, 5.0}, axis) == doctest::Approx(0.5));
    CHECK(projection_parameter(Point{0.0, 0.0}, axis) == doctest::Approx(0.0));
    CHECK(projection_parameter(Point{2.0, 0.0}, axis) == doctest::Approx(1.0));
    CHECK(projection_parameter(Point{-1.0, 0.0}, axis) == doctest::Approx(-0.5));

    Segment zero{{1.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(projection_parameter(Point{0.0, 0.0}, zero), std::invalid_argument);
}

TEST_CASE("slab distance") {
    Segment axis{{0.0, 0.0}, {2.0, 0.0}};
    Segment seg{{0.0, 0.0}, {2.0, 0.0}};
    CHECK(slab_distance(Point{1.0, 1.0}, seg, axis) == doctest::Approx(1.0));

    // Hyperplane at x = 1 meets the diagonal chord exactly at the point.
    Segment diag{{0.0, 0.0}, {3.0, 3.0}};
    Segment diag_axis{{0.0, 0.0}, {3.0, 0.0}};
    CHECK(slab_distance(Point{1.0, 1.0}, diag, diag_axis) == doctest::Approx(0.0));

    // Segment endpoints with coinciding axis parameters fall back to the
    // nearer endpoint.
    Segment vertical{{1.0, -1.0}, {1.0, 1.0}};
    CHECK(slab_distance(Point{1.0, 0.25}, vertical, axis) == doctest::Approx(0.75));
}

TEST_CASE("slab distance matches the perpendicular foot for axis-parallel chords") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        double y = testutil::runif(rng, -5.0, 5.0);
        Segment seg{{testutil::runif(rng, -10.0, -1.0), y},
                    {testutil::runif(rng, 1.0, 10.0), y}};
        Segment axis{{seg.a.coords[0], 0.0}, {seg.b.coords[0], 0.0}};
        double x = testutil::runif(rng, seg.a.coords[0] + 0.01, seg.b.coords[0] - 0.01);
        Point p{x, testutil::runif(rng, -5.0, 5.0)};
        CHECK(slab_distance(p, seg, axis) ==
              doctest::Approx(euclid_point_segment(p, seg)).epsilon(1e-9));
    }
}

namespace {

MonotoneRun tiny_run() {
    MonotoneRun run;
    run.dim = 2;
    run.push_back(std::vector<double>{0.0, 0.0}, 0);
    run.push_back(std::vector<double>{1.0, 1.0}, 1);
    run.push_back(std::vector<double>{2.0, 0.0}, 2);
    run.axis.a = {0.0, 0.0};
    run.axis.b = {2.0, 0.0};
    run.recompute_axis_params();
    return run;
}

}  // namespace

TEST_CASE("chord distance over a run") {
    MonotoneRun run = tiny_run();
    CHECK(segment_cloud_distance(run, 0, 2) == doctest::Approx(1.0));
    CHECK(segment_cloud_distance(run, 0, 1) == 0.0);
    CHECK_THROWS_AS(segment_cloud_distance(run, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(segment_cloud_distance(run, 2, 1), std::invalid_argument);

    MonotoneRun line;
    line.dim = 2;
    for (int i = 0; i < 5; ++i) line.push_back(std::vector<double>{1.0 * i, 0.0}, i);
    line.axis.a = {0.0, 0.0};
    line.axis.b = {4.0, 0.0};
    line.recompute_axis_params();
    CHECK(segment_cloud_distance(line, 0, 4) == 0.0);
}

TEST_CASE("sub-chord distance at most doubles") {
    // Exhaustive over all nested index pairs on random monotone runs.
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 4 + static_cast<int>(uniform_unit(rng) * 9);  // up to 12
        ask::MonotoneRun run = testutil::monotone_run(rng, n, 3, 8.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double outer = segment_cloud_distance(run, i, j);
                for (int k = i; k < j; ++k)
                    for (int l = k + 1; l <= j; ++l) {
                        double inner = segment_cloud_distance(run, k, l);
                        CHECK(inner <= 2.0 * outer + 1e-9);
                    }
            }
    }
}

TEST_CASE("chord distance is rigid-motion invariant") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 5 + static_cast<int>(uniform_unit(rng) * 20);
        MonotoneRun run = testutil::monotone_run(rng, n, 3, 10.0);
        auto rot = testutil::random_rotation(rng, 3);
        std::vector<double> shift{testutil::runif(rng, -50.0, 50.0),
                                  testutil::runif(rng, -50.0, 50.0),
                                  testutil::runif(rng, -50.0, 50.0)};
        MonotoneRun moved = testutil::transform_run(run, rot, shift);
        int i = static_cast<int>(uniform_unit(rng) * (n - 2));
        int j = i + 2 + static_cast<int>(uniform_unit(rng) * (n - i - 2));
        j = std::min(j, n - 1);
        CHECK(segment_cloud_distance(moved, i, j) ==
              doctest::Approx(segment_cloud_distance(run, i, j)).epsilon(1e-9));
    }
}
