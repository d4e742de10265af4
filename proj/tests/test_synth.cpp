#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ask/metrics.hpp"
#include "ask/synth.hpp"

using namespace ask;

TEST_CASE("star generation") {
    SUBCASE("two arms") {
        auto [star, spec] = generate_star(2, 1);
        CHECK(star.vertex_count() == 3);
        CHECK(star.edges.size() == 2);
        double dot = 0.0;
        for (int k = 0; k < 3; ++k)
            dot += spec.directions[0][k] * spec.directions[1][k];
        CHECK(std::acos(dot) >= std::numbers::pi / 4.0 - 1e-12);
    }

    SUBCASE("eight arms satisfy all pairwise angles") {
        auto [star, spec] = generate_star(8, 7);
        CHECK(star.edges.size() == 8);
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j) {
                double dot = 0.0;
                for (int k = 0; k < 3; ++k)
                    dot += spec.directions[i][k] * spec.directions[j][k];
                CHECK(dot <= std::cos(std::numbers::pi / 4.0) + 1e-12);
            }
        for (const GraphEdge& e : star.edges)
            CHECK(e.length == doctest::Approx(100.0));
    }

    SUBCASE("same seed reproduces the star") {
        auto [a, sa] = generate_star(5, 123);
        auto [b, sb] = generate_star(5, 123);
        CHECK(a.vcoords == b.vcoords);
        CHECK(sa.directions == sb.directions);
    }

    SUBCASE("one arm is rejected") {
        CHECK_THROWS_AS(generate_star(1, 0), std::invalid_argument);
    }
}

TEST_CASE("cloud sampling") {
    auto [star, spec] = generate_star(4, 99);
    PointCloud cloud = sample_cloud(star, spec);

    SUBCASE("exactly 500 points per arm") {
        CHECK(cloud.size() == 2000);
    }

    SUBCASE("every point lies within the noise bound") {
        for (int i = 0; i < cloud.size(); ++i) {
            double best = 1e300;
            for (const GraphEdge& e : star.edges)
                best = std::min(best, euclid_point_segment(cloud.point(i),
                                                           star.vertex(e.u),
                                                           star.vertex(e.v)));
            CHECK(best <= spec.noise_radius + 1e-12);
        }
        CHECK(max_cloud_distance(cloud, star) <= spec.noise_radius + 1e-12);
    }

    SUBCASE("deterministic per seed, distinct across seeds") {
        PointCloud again = sample_cloud(star, spec);
        CHECK(cloud.coords == again.coords);

        auto [star2, spec2] = generate_star(4, 100);
        PointCloud other = sample_cloud(star2, spec2);
        CHECK(cloud.coords != other.coords);
    }
}

TEST_CASE("arm coverage is dense") {
    // Each tenth of every arm should attract at least one sample within the
    // noise radius on practically every cloud.
    int good_clouds = 0;
    const int clouds = 30;
    for (int c = 0; c < clouds; ++c) {
        auto [star, spec] = generate_star(3 + c % 6, 5000 + c);
        PointCloud cloud = sample_cloud(star, spec);
        bool all_covered = true;
        for (const GraphEdge& e : star.edges) {
            auto a = star.vertex(e.u);
            auto b = star.vertex(e.v);
            for (int decile = 0; decile < 10 && all_covered; ++decile) {
                std::vector<double> lo(3), hi(3);
                for (int k = 0; k < 3; ++k) {
                    lo[k] = a[k] + (b[k] - a[k]) * (decile / 10.0);
                    hi[k] = a[k] + (b[k] - a[k]) * ((decile + 1) / 10.0);
                }
                bool hit = false;
                for (int i = 0; i < cloud.size() && !hit; ++i)
                    if (euclid_point_segment(cloud.point(i), lo, hi) <=
                        spec.noise_radius)
                        hit = true;
                all_covered = all_covered && hit;
            }
            if (!all_covered) break;
        }
        if (all_covered) ++good_clouds;
    }
    CHECK(good_clouds >= static_cast<int>(clouds * 0.99));
}
