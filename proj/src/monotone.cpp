#include "ask/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ask/kdtree.hpp"
#include "ask/parallel.hpp"

namespace ask {

std::vector<int> edge_clouds(const PointCloud& cloud, const CoreTree& core) {
    const EmbeddedGraph& g = core.tree;
    if (g.edges.empty()) throw std::invalid_argument("core has no edges");

    // Vertices that carry core edges, packed for the kd-tree.
    std::vector<int> used;
    for (const GraphEdge& e : g.edges) {
        used.push_back(e.u);
        used.push_back(e.v);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    std::vector<double> packed;
    packed.reserve(used.size() * g.dim);
    for (int v : used) {
        auto p = g.vertex(v);
        packed.insert(packed.end(), p.begin(), p.end());
    }
    KdTree tree(packed, g.dim);

    std::vector<std::vector<int>> incident(used.size());
    auto slot_of = [&](int v) {
        return static_cast<int>(
            std::lower_bound(used.begin(), used.end(), v) - used.begin());
    };
    double max_len = 0.0;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        incident[slot_of(g.edges[e].u)].push_back(e);
        incident[slot_of(g.edges[e].v)].push_back(e);
        max_len = std::max(max_len, g.edges[e].length);
    }

    std::vector<int> assign(cloud.size(), -1);
    const int workers = worker_count();

#pragma omp parallel num_threads(workers)
    {
        std::vector<int> hits;
        std::vector<int> cand;
#pragma omp for schedule(static)
        for (int i = 0; i < cloud.size(); ++i) {
            auto p = cloud.point(i);
            KdTree::Hit nn = tree.nearest(p);
            double d0 = std::sqrt(nn.d2);

            // Every edge at distance <= d0 has an endpoint within d0 + max_len.
            double r = d0 + max_len + kGeomTol;
            tree.radius_search(p, r * r, hits);
            cand.clear();
            for (int slot : hits)
                cand.insert(cand.end(), incident[slot].begin(), incident[slot].end());
            std::sort(cand.begin(), cand.end());
            cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

            double best = std::numeric_limits<double>::infinity();
            int best_e = -1;
            for (int e : cand) {
                double d = euclid_point_segment(p, g.vertex(g.edges[e].u),
                                                g.vertex(g.edges[e].v));
                if (d < best) {
                    best = d;
                    best_e = e;
                }
            }
            assign[i] = best_e;
        }
    }
    return assign;
}

std::vector<std::size_t> reversal_boundaries(std::span<const int> ranks) {
    std::vector<std::size_t> bounds{0};
    int dir = 0;
    for (std::size_t p = 0; p + 1 < ranks.size(); ++p) {
        int step = ranks[p + 1] > ranks[p] ? 1 : -1;
        if (dir != 0 && step != dir) bounds.push_back(p);
        dir = step;
    }
    if (ranks.size() > 1) bounds.push_back(ranks.size() - 1);
    return bounds;
}

std::vector<std::pair<std::size_t, std::size_t>> monotone_ranges(
    std::span<const int> ranks) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (ranks.empty()) return out;
    if (ranks.size() == 1) {
        out.emplace_back(0, 0);
        return out;
    }
    std::vector<std::size_t> bounds = reversal_boundaries(ranks);
    std::size_t start = bounds[0];
    for (std::size_t b = 1; b < bounds.size(); ++b) {
        std::size_t end = bounds[b];
        bool last = b + 1 == bounds.size();
        if (end - start == 1 && !last) continue;  // fold into the next range
        if (end - start == 1 && last && !out.empty()) {
            out.back().second = end;  // trailing two-point range joins its predecessor
        } else {
            out.emplace_back(start, end);
        }
        start = end;
    }
    return out;
}

std::vector<MonotoneRun> split_monotone(const std::vector<int>& path,
                                        const std::vector<int>& assign,
                                        const PointCloud& cloud, const CoreTree& core,
                                        int path_index, MonotoneStats* stats) {
    if (path.size() < 2) throw std::invalid_argument("path needs at least 2 vertices");
    const int dim = cloud.dim;
    const int v_first = path.front();
    const int v_last = path.back();

    std::vector<char> on_path(core.tree.edges.size(), 0);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        int e = core.edge_index(path[k], path[k + 1]);
        if (e < 0) throw std::invalid_argument("path edge missing from core");
        on_path[e] = 1;
    }

    // The path's subcloud, ordered by projection onto the line through the
    // path endpoints (ties on the original id), walked from the v_first end.
    // The path endpoints are pinned as the walk boundaries so consecutive run
    // polylines chain through the fixed vertices.
    std::vector<int> middle;
    for (int i = 0; i < cloud.size(); ++i) {
        int e = assign[i];
        if (e < 0 || !on_path[e]) continue;
        if (i == v_first || i == v_last) continue;
        middle.push_back(i);
    }

    std::vector<double> mparams(middle.size(), 0.0);
    const bool line_ok = squared_distance(cloud.point(v_first), cloud.point(v_last)) >
                         kGeomTol * kGeomTol;
    if (line_ok)
        for (std::size_t k = 0; k < middle.size(); ++k)
            mparams[k] = projection_parameter(cloud.point(middle[k]),
                                              cloud.point(v_first), cloud.point(v_last));
    std::vector<std::size_t> order(middle.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (mparams[a] != mparams[b]) return mparams[a] < mparams[b];
        return cloud.ids[middle[a]] < cloud.ids[middle[b]];
    });

    std::vector<int> walk;
    std::vector<double> params;
    walk.reserve(middle.size() + 2);
    walk.push_back(v_first);
    params.push_back(0.0);
    for (std::size_t k : order) {
        walk.push_back(middle[k]);
        params.push_back(mparams[k]);
    }
    walk.push_back(v_last);
    params.push_back(line_ok ? 1.0 : 0.0);
    const std::size_t m = walk.size();

    // Strict ranks of the walked parameters; a reversal can only come from
    // points projecting beyond the pinned endpoints.
    std::vector<std::size_t> by_param(m);
    std::iota(by_param.begin(), by_param.end(), 0);
    std::stable_sort(by_param.begin(), by_param.end(),
                     [&](std::size_t a, std::size_t b) {
                         if (params[a] != params[b]) return params[a] < params[b];
                         return cloud.ids[walk[a]] < cloud.ids[walk[b]];
                     });
    std::vector<int> ranks(m);
    for (std::size_t r = 0; r < m; ++r) ranks[by_param[r]] = static_cast<int>(r);

    std::vector<MonotoneRun> runs;
    for (auto [lo, hi] : monotone_ranges(ranks)) {
        MonotoneRun run;
        run.dim = dim;
        run.source_path = path_index;
        int first = walk[lo];
        int last = walk[hi];
        run.axis.a.coords.assign(cloud.point(first).begin(), cloud.point(first).end());
        run.axis.b.coords.assign(cloud.point(last).begin(), cloud.point(last).end());

        std::vector<int> members(walk.begin() + lo, walk.begin() + hi + 1);
        bool axis_ok = squared_distance(run.axis.a.view(), run.axis.b.view()) >
                       kGeomTol * kGeomTol;
        if (axis_ok) {
            std::vector<double> t(members.size());
            for (std::size_t k = 0; k < members.size(); ++k)
                t[k] = projection_parameter(cloud.point(members[k]), run.axis.a.view(),
                                            run.axis.b.view());
            std::vector<std::size_t> order(members.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) {
                                 if (t[a] != t[b]) return t[a] < t[b];
                                 return cloud.ids[members[a]] < cloud.ids[members[b]];
                             });
            std::vector<int> sorted(members.size());
            for (std::size_t k = 0; k < members.size(); ++k)
                sorted[k] = members[order[k]];
            // The walk boundaries must stay terminal so consecutive run
            // polylines chain; pin them and count the violation.
            if (sorted.front() != first || sorted.back() != last) {
                if (stats) ++stats->mismatches;
                sorted.erase(std::remove(sorted.begin(), sorted.end(), first),
                             sorted.end());
                sorted.erase(std::remove(sorted.begin(), sorted.end(), last),
                             sorted.end());
                sorted.insert(sorted.begin(), first);
                sorted.push_back(last);
            }
            members = std::move(sorted);
        }

        for (int idx : members) run.push_back(cloud.point(idx), cloud.ids[idx]);
        run.recompute_axis_params();
        runs.push_back(std::move(run));
        if (stats) ++stats->runs;
    }
    return runs;
}

std::vector<MonotoneRun> runs_for_core(const PointCloud& cloud, const CoreTree& core,
                                       const std::vector<int>& assign,
                                       MonotoneStats* stats) {
    std::vector<MonotoneRun> runs;
    for (int p = 0; p < static_cast<int>(core.paths.size()); ++p) {
        std::vector<MonotoneRun> part =
            split_monotone(core.paths[p], assign, cloud, core, p, stats);
        for (MonotoneRun& r : part) runs.push_back(std::move(r));
    }
    return runs;
}

}  // namespace ask
