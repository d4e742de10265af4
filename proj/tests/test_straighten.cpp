#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ask/straighten.hpp"
#include "test_util.hpp"

using namespace ask;

namespace {

MonotoneRun zigzag_run() {
    MonotoneRun run;
    run.dim = 2;
    run.push_back(std::vector<double>{0.0, 0.0}, 0);
    run.push_back(std::vector<double>{1.0, 1.0}, 1);
    run.push_back(std::vector<double>{2.0, 0.0}, 2);
    run.push_back(std::vector<double>{3.0, 1.0}, 3);
    run.push_back(std::vector<double>{4.0, 0.0}, 4);
    run.axis.a = {0.0, 0.0};
    run.axis.b = {4.0, 0.0};
    run.recompute_axis_params();
    return run;
}

MonotoneRun collinear_run(int n) {
    MonotoneRun run;
    run.dim = 2;
    for (int i = 0; i < n; ++i) run.push_back(std::vector<double>{1.0 * i, 0.0}, i);
    run.axis.a = {0.0, 0.0};
    run.axis.b = {static_cast<double>(n - 1), 0.0};
    run.recompute_axis_params();
    return run;
}

// Index selection straight from the definition: each next index is the one
// just before the first chord prefix that exceeds the budget.
std::vector<int> greedy_by_scan(const MonotoneRun& run, double eps) {
    std::vector<int> idx{0};
    int prev = 0;
    int last = run.size() - 1;
    while (prev != last) {
        int next = last;
        for (int k = prev + 1; k <= last; ++k) {
            if (segment_cloud_distance(run, prev, k) > eps) {
                next = k - 1;
                break;
            }
        }
        idx.push_back(next);
        prev = next;
    }
    return idx;
}

void check_conditions(const MonotoneRun& run, const std::vector<int>& idx,
                      double eps) {
    REQUIRE(idx.front() == 0);
    REQUIRE(idx.back() == run.size() - 1);
    for (std::size_t s = 1; s < idx.size(); ++s) {
        int prev = idx[s - 1];
        // (a) every chord prefix up to the chosen index stays within budget.
        for (int k = prev + 1; k <= idx[s]; ++k)
            CHECK(segment_cloud_distance(run, prev, k) <= eps);
        // (b) the next point would break the budget, except for the last index.
        if (s + 1 < idx.size())
            CHECK(segment_cloud_distance(run, prev, idx[s] + 1) > eps);
    }
}

}  // namespace

TEST_CASE("collinear runs keep only their endpoints") {
    MonotoneRun run = collinear_run(30);
    for (double eps : {1e-9, 0.5, 10.0}) {
        std::vector<int> idx = approximate_run(run, eps);
        CHECK(idx == std::vector<int>{0, 29});
    }
}

TEST_CASE("zero budget keeps every point of a zigzag") {
    MonotoneRun run = zigzag_run();
    std::vector<int> idx = approximate_run(run, 0.0);
    CHECK(idx == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("zigzag at half budget matches the definitional scan") {
    MonotoneRun run = zigzag_run();
    std::vector<int> idx = approximate_run(run, 0.5);
    CHECK(idx == greedy_by_scan(run, 0.5));
    check_conditions(run, idx, 0.5);
}

TEST_CASE("greedy matches the definitional scan on random runs") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + static_cast<int>(uniform_unit(rng) * 120);
        MonotoneRun run = testutil::monotone_run(rng, n, 3, 6.0);
        double full = segment_cloud_distance(run, 0, n - 1);
        double eps = full * testutil::runif(rng, 0.05, 1.1);
        std::vector<int> idx = approximate_run(run, eps);
        CHECK(idx == greedy_by_scan(run, eps));
        check_conditions(run, idx, eps);
    }
}

TEST_CASE("distance evaluation count stays near linearithmic") {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 8 + static_cast<int>(uniform_unit(rng) * 400);
        MonotoneRun run = testutil::monotone_run(rng, n, 2, 5.0);
        double full = segment_cloud_distance(run, 0, n - 1);
        EvalStats stats;
        approximate_run(run, full * testutil::runif(rng, 0.05, 0.8), &stats);
        double bound = 2.0 * n * std::log2(static_cast<double>(n)) + 4.0 * n + 8.0;
        CHECK(static_cast<double>(stats.segment_evals) <= bound);
    }
}

TEST_CASE("oracle on small runs") {
    CHECK(optimal_run_oracle(collinear_run(20), 0.1) == 2);

    MonotoneRun run = zigzag_run();
    int k = optimal_run_oracle(run, 0.5);
    std::vector<int> greedy = approximate_run(run, 0.5);
    CHECK(k <= static_cast<int>(greedy.size()));

    MonotoneRun big = collinear_run(501);
    CHECK_THROWS_AS(optimal_run_oracle(big, 1.0), std::invalid_argument);
}

TEST_CASE("doubled budget never needs more vertices than the optimum") {
    std::mt19937_64 rng(616);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 3 + static_cast<int>(uniform_unit(rng) * 80);
        MonotoneRun run = testutil::monotone_run(rng, n, 3, 7.0);
        double full = segment_cloud_distance(run, 0, n - 1);
        double eps = full * testutil::runif(rng, 0.1, 0.9);
        int optimal = optimal_run_oracle(run, eps);
        std::vector<int> greedy = approximate_run(run, 2.0 * eps);
        CHECK(static_cast<int>(greedy.size()) <= optimal);
    }
}

namespace {

ApproximatedRun approx(MonotoneRun run, double eps) {
    ApproximatedRun ar;
    ar.indices = approximate_run(run, eps);
    ar.run = std::move(run);
    return ar;
}

}  // namespace

TEST_CASE("assembling a single run gives its polyline") {
    ApproxParams params;
    params.beta = 1.0;
    MonotoneRun run = zigzag_run();
    Skeleton skel = assemble_skeleton({approx(run, 0.0)}, params, 0.1, 0.0, true);
    CHECK(skel.graph.vertex_count() == 5);
    CHECK(skel.graph.edges.size() == 4);
    for (int p : skel.vertex_provenance) CHECK(p >= 0);
}

TEST_CASE("collapse merges short edge components to centroids") {
    // Two long spokes joined by a short middle edge; the middle pair merges.
    MonotoneRun run;
    run.dim = 2;
    run.push_back(std::vector<double>{0.0, 0.0}, 0);
    run.push_back(std::vector<double>{10.0, 0.1}, 1);
    run.push_back(std::vector<double>{11.0, -0.1}, 2);
    run.push_back(std::vector<double>{21.0, 0.0}, 3);
    run.axis.a = {0.0, 0.0};
    run.axis.b = {21.0, 0.0};
    run.recompute_axis_params();

    ApproxParams params;
    params.beta = 2.0;  // threshold 2 * l_avg
    AssembleInfo info;
    Skeleton skel = assemble_skeleton({approx(run, 0.0)}, params, 1.0, 0.0, true, &info);
    REQUIRE(skel.graph.vertex_count() == 3);
    CHECK(skel.graph.edges.size() == 2);
    CHECK(info.collapsed_components == 1);
    CHECK(info.max_component_radius == doctest::Approx(std::sqrt(0.26)));
    int centroids = 0;
    for (int v = 0; v < 3; ++v)
        if (skel.vertex_provenance[v] < 0) {
            ++centroids;
            CHECK(skel.graph.vertex(v)[0] == doctest::Approx(10.5));
        }
    CHECK(centroids == 1);
}

TEST_CASE("full pipeline on tiny inputs") {
    ApproxParams params;

    SUBCASE("two point cloud gives the single segment") {
        PointCloud cloud;
        cloud.dim = 2;
        cloud.push_back(std::vector<double>{0.0, 0.0}, 0);
        cloud.push_back(std::vector<double>{5.0, 1.0}, 1);
        BuildResult res = build_ask(cloud, params);
        CHECK(res.skeleton.graph.vertex_count() == 2);
        CHECK(res.skeleton.graph.edges.size() == 1);
        CHECK(res.report.endpoint_count == 2);
    }

    SUBCASE("input validation") {
        PointCloud one;
        one.dim = 2;
        one.push_back(std::vector<double>{0.0, 0.0}, 0);
        CHECK_THROWS_AS(build_ask(one, params), std::invalid_argument);

        PointCloud two = one;
        two.push_back(std::vector<double>{1.0, 0.0}, 1);
        ApproxParams bad = params;
        bad.gamma = 0.5;
        CHECK_THROWS_AS(build_ask(two, bad), std::invalid_argument);
    }
}

TEST_CASE("pipeline works in any dimension") {
    std::mt19937_64 rng(27);
    for (int dim : {2, 4}) {
        // A noisy straight strip reconstructs tightly in any R^m.
        PointCloud strip;
        strip.dim = dim;
        for (int i = 0; i < 200; ++i) {
            std::vector<double> p(dim, 0.0);
            p[0] = i * 0.5;
            for (int k = 1; k < dim; ++k) p[k] = testutil::runif(rng, -0.4, 0.4);
            strip.push_back(p, i);
        }
        ApproxParams params;
        BuildResult res = build_ask(strip, params);
        validate_graph(res.skeleton.graph);
        CHECK(is_tree(res.skeleton.graph));
        CHECK(res.report.endpoint_count == 2);
        CHECK(res.report.max_distance < 2.0);
    }
}

TEST_CASE("degenerate clouds stay total") {
    ApproxParams params;

    SUBCASE("coincident pair") {
        PointCloud c;
        c.dim = 2;
        c.push_back(std::vector<double>{1.0, 1.0}, 0);
        c.push_back(std::vector<double>{1.0, 1.0}, 1);
        BuildResult r = build_ask(c, params);
        CHECK(r.skeleton.graph.vertex_count() == 2);
        CHECK(is_tree(r.skeleton.graph));
    }

    SUBCASE("duplicated ladder") {
        PointCloud c;
        c.dim = 2;
        for (int i = 0; i < 20; ++i)
            c.push_back(std::vector<double>{static_cast<double>(i / 4), 0.25 * (i % 2)},
                        i);
        BuildResult r = build_ask(c, params);
        CHECK(is_tree(r.skeleton.graph));
        CHECK(r.report.max_distance <= 0.5 + 2.0 * r.report.epsilon);
    }
}

TEST_CASE("a sharp corner stays within the offset guarantee") {
    // The corner is monotone with respect to its own anchor, so the budget
    // derives from the chord deviation and the corner may flatten; the
    // reconstruction must still cover the cloud within noise plus twice the
    // budget.
    std::mt19937_64 rng(28);
    PointCloud cloud;
    cloud.dim = 2;
    int id = 0;
    for (int i = 0; i < 150; ++i)
        cloud.push_back(std::vector<double>{i * 0.5, testutil::runif(rng, -0.4, 0.4)},
                        id++);
    for (int i = 1; i < 150; ++i)
        cloud.push_back(std::vector<double>{testutil::runif(rng, -0.4, 0.4), i * 0.5},
                        id++);
    ApproxParams params;
    BuildResult res = build_ask(cloud, params);
    CHECK(is_tree(res.skeleton.graph));
    CHECK(res.report.max_distance <= 0.5 + 2.0 * res.report.epsilon);
}

TEST_CASE("pipeline is deterministic") {
    std::mt19937_64 rng(2);
    PointCloud cloud = testutil::random_cloud(rng, 200, 3, 100.0);
    ApproxParams params;
    BuildResult a = build_ask(cloud, params);
    BuildResult b = build_ask(cloud, params);
    CHECK(a.skeleton.graph.vcoords == b.skeleton.graph.vcoords);
    CHECK(a.skeleton.vertex_provenance == b.skeleton.vertex_provenance);
    CHECK(a.report.signature == b.report.signature);
    CHECK(a.report.max_distance == b.report.max_distance);
}
