#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ask/core_tree.hpp"
#include "ask/depth.hpp"
#include "ask/monotone.hpp"
#include "ask/mst.hpp"
#include "ask/reference.hpp"
#include "ask/synth.hpp"
#include "test_util.hpp"

using namespace ask;

namespace {

std::vector<int> ranks_of(const std::vector<double>& params) {
    std::vector<int> order(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return params[a] < params[b]; });
    std::vector<int> ranks(params.size());
    for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<int>(r);
    return ranks;
}

}  // namespace

TEST_CASE("reversal boundaries are the interior local extrema") {
    std::mt19937_64 rng(456);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 2 + static_cast<int>(uniform_unit(rng) * 30);
        std::vector<double> params(n);
        for (double& p : params) p = uniform_unit(rng) * 100.0;
        std::vector<int> ranks = ranks_of(params);

        std::vector<std::size_t> bounds = reversal_boundaries(ranks);

        // Linear scan oracle: position p is a boundary iff the walk direction
        // flips there.
        std::set<std::size_t> expected{0, static_cast<std::size_t>(n - 1)};
        for (int p = 1; p + 1 < n; ++p) {
            bool up_before = ranks[p] > ranks[p - 1];
            bool up_after = ranks[p + 1] > ranks[p];
            if (up_before != up_after) expected.insert(static_cast<std::size_t>(p));
        }
        CHECK(std::set<std::size_t>(bounds.begin(), bounds.end()) == expected);
    }
}

TEST_CASE("worked split of a five point walk") {
    // Walk parameters 0, 1, 2, 1.5, 3: one reversal survives, the two point
    // middle range folds into its successor.
    std::vector<int> ranks = ranks_of({0.0, 1.0, 2.0, 1.5, 3.0});
    auto ranges = monotone_ranges(ranks);
    REQUIRE(ranges.size() == 2);
    CHECK(ranges[0] == std::pair<std::size_t, std::size_t>{0, 2});
    CHECK(ranges[1] == std::pair<std::size_t, std::size_t>{2, 4});
}

TEST_CASE("strictly monotone walks stay in one range") {
    std::vector<int> ranks = ranks_of({0.0, 0.5, 1.5, 2.0, 7.0});
    auto ranges = monotone_ranges(ranks);
    REQUIRE(ranges.size() == 1);
    CHECK(ranges[0] == std::pair<std::size_t, std::size_t>{0, 4});
}

TEST_CASE("trailing two point range joins its predecessor") {
    std::vector<int> ranks = ranks_of({0.0, 1.0, 2.0, 1.5});
    auto ranges = monotone_ranges(ranks);
    REQUIRE(ranges.size() == 1);
    CHECK(ranges[0] == std::pair<std::size_t, std::size_t>{0, 3});
}

TEST_CASE("every range owns at least one non-boundary point") {
    std::mt19937_64 rng(789);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(uniform_unit(rng) * 40);
        std::vector<double> params(n);
        for (double& p : params) p = uniform_unit(rng) * 10.0;
        auto ranges = monotone_ranges(ranks_of(params));
        REQUIRE(!ranges.empty());
        CHECK(ranges.front().first == 0);
        CHECK(ranges.back().second == static_cast<std::size_t>(n - 1));
        for (std::size_t r = 0; r < ranges.size(); ++r) {
            if (ranges.size() > 1) CHECK(ranges[r].second - ranges[r].first >= 2);
            if (r > 0) CHECK(ranges[r].first == ranges[r - 1].second);
        }
    }
}

namespace {

struct PipelineFixture {
    PointCloud cloud;
    MstResult mst;
    CoreTree core;
    std::vector<int> assign;
};

PipelineFixture star_fixture(int arms, std::uint64_t seed, double beta = 30.0) {
    PipelineFixture f;
    auto [star, spec] = generate_star(arms, seed);
    f.cloud = sample_cloud(star, spec);
    f.mst = build_mst(f.cloud);
    DepthTable depths = compute_depths(f.mst.tree);
    std::vector<int> deep = deep_vertices(depths, beta, f.mst.avg_edge_length);
    f.core = extract_core(f.mst, deep, beta);
    f.assign = edge_clouds(f.cloud, f.core);
    return f;
}

}  // namespace

TEST_CASE("edge assignment matches the brute force recomputation") {
    PipelineFixture f = star_fixture(4, 321);
    std::vector<int> brute = reference::nearest_edge_brute(f.cloud, f.core.tree);
    CHECK(f.assign == brute);
}

TEST_CASE("points sitting on core vertices take an incident edge") {
    PipelineFixture f = star_fixture(3, 654);
    for (const GraphEdge& e : f.core.tree.edges) {
        // The endpoints are cloud points; their nearest edge has distance 0,
        // so whatever edge wins must touch them.
        for (int v : {e.u, e.v}) {
            int chosen = f.assign[v];
            const GraphEdge& ce = f.core.tree.edges[chosen];
            double d = euclid_point_segment(f.cloud.point(v),
                                            f.core.tree.vertex(ce.u),
                                            f.core.tree.vertex(ce.v));
            CHECK(d == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("equidistant points pick the lower edge id") {
    // A two edge corner; the probe sits on the bisector of both edges.
    EmbeddedGraph g;
    g.dim = 2;
    g.add_vertex(std::vector<double>{-1.0, 0.0});
    g.add_vertex(std::vector<double>{0.0, 0.0});
    g.add_vertex(std::vector<double>{0.0, -1.0});
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    CoreTree core;
    core.tree = g;

    PointCloud cloud;
    cloud.dim = 2;
    cloud.push_back(std::vector<double>{-0.5, -0.5}, 0);
    std::vector<int> assign = edge_clouds(cloud, core);
    CHECK(assign[0] == 0);
}

TEST_CASE("runs partition the path cloud and share boundaries") {
    PipelineFixture f = star_fixture(5, 987);
    MonotoneStats stats;
    std::vector<MonotoneRun> runs = runs_for_core(f.cloud, f.core, f.assign, &stats);
    CHECK(stats.runs == static_cast<int>(runs.size()));

    for (int p = 0; p < static_cast<int>(f.core.paths.size()); ++p) {
        const std::vector<int>& path = f.core.paths[p];
        // Expected member set: points assigned to the path's edges plus the
        // path endpoints.
        std::set<int> expected{path.front(), path.back()};
        std::set<int> path_edges;
        for (std::size_t k = 0; k + 1 < path.size(); ++k)
            path_edges.insert(f.core.edge_index(path[k], path[k + 1]));
        for (int i = 0; i < f.cloud.size(); ++i)
            if (path_edges.count(f.assign[i])) expected.insert(i);

        std::vector<const MonotoneRun*> mine;
        for (const MonotoneRun& r : runs)
            if (r.source_path == p) mine.push_back(&r);
        REQUIRE(!mine.empty());

        // Interior points appear once, run boundaries twice.
        std::map<int, int> seen;
        for (const MonotoneRun* r : mine)
            for (int id : r->ids) ++seen[id];
        std::set<int> got;
        for (auto [id, count] : seen) got.insert(id);
        CHECK(got == expected);
        int doubled = 0;
        for (auto [id, count] : seen) {
            CHECK(count <= 2);
            if (count == 2) ++doubled;
        }
        CHECK(doubled == static_cast<int>(mine.size()) - 1);

        // Consecutive runs chain: last point of one is first of the next.
        for (std::size_t r = 1; r < mine.size(); ++r)
            CHECK(mine[r]->ids.front() == mine[r - 1]->ids.back());
        CHECK(mine.front()->ids.front() == path.front());
        CHECK(mine.back()->ids.back() == path.back());
    }
}

TEST_CASE("run points are ordered along their own anchor") {
    PipelineFixture f = star_fixture(6, 111);
    MonotoneStats stats;
    std::vector<MonotoneRun> runs = runs_for_core(f.cloud, f.core, f.assign, &stats);
    int ordered_runs = 0;
    for (const MonotoneRun& r : runs) {
        bool ordered = true;
        for (int i = 0; i + 1 < r.size(); ++i)
            if (r.axis_params[i] > r.axis_params[i + 1] + 1e-12) ordered = false;
        if (ordered) ++ordered_runs;
    }
    // Pinned boundary points are the only allowed violations.
    CHECK(ordered_runs >= static_cast<int>(runs.size()) - stats.mismatches);
}

TEST_CASE("short paths are rejected") {
    PipelineFixture f = star_fixture(3, 222);
    CHECK_THROWS_AS(split_monotone({5}, f.assign, f.cloud, f.core, 0),
                    std::invalid_argument);
}
