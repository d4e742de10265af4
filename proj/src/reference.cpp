#include "ask/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ask::reference {

MstResult prim_mst_dense(const PointCloud& cloud) {
    int n = cloud.size();
    if (n < 1) throw std::invalid_argument("cloud is empty");

    MstResult result;
    result.tree.dim = cloud.dim;
    result.tree.vcoords = cloud.coords;
    if (n == 1) return result;

    std::vector<char> in_tree(n, 0);
    std::vector<double> best_d2(n, std::numeric_limits<double>::infinity());
    std::vector<int> best_from(n, -1);
    in_tree[0] = 1;
    for (int v = 1; v < n; ++v) {
        best_d2[v] = squared_distance(cloud.point(0), cloud.point(v));
        best_from[v] = 0;
    }

    std::vector<GraphEdge> edges;
    edges.reserve(n - 1);
    for (int step = 1; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (pick < 0) {
                pick = v;
                continue;
            }
            // (distance, min id, max id) order, matching build_mst.
            if (best_d2[v] < best_d2[pick]) {
                pick = v;
            } else if (best_d2[v] == best_d2[pick]) {
                auto a = std::minmax(best_from[v], v);
                auto b = std::minmax(best_from[pick], pick);
                if (a < b) pick = v;
            }
        }
        in_tree[pick] = 1;
        edges.push_back({std::min(best_from[pick], pick),
                         std::max(best_from[pick], pick), std::sqrt(best_d2[pick])});
        for (int v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            double d2 = squared_distance(cloud.point(pick), cloud.point(v));
            if (d2 < best_d2[v]) {
                best_d2[v] = d2;
                best_from[v] = pick;
            } else if (d2 == best_d2[v]) {
                auto a = std::minmax(pick, v);
                auto b = std::minmax(best_from[v], v);
                if (a < b) best_from[v] = pick;
            }
        }
    }

    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    result.tree.edges = std::move(edges);
    double total = 0.0;
    for (const GraphEdge& e : result.tree.edges) total += e.length;
    result.avg_edge_length = total / (n - 1);
    return result;
}

DepthTable depth_by_removal(const EmbeddedGraph& tree) {
    require_tree(tree);
    int n = tree.vertex_count();
    Adjacency adj = adjacency(tree);

    DepthTable table;
    table.depth.assign(n, 0.0);
    table.branch_lengths.assign(n, {});

    std::vector<double> dist(n);
    std::vector<int> stack;
    for (int v = 0; v < n; ++v) {
        std::vector<double>& branches = table.branch_lengths[v];
        for (auto [u0, len0] : adj[v]) {
            // Farthest point from v inside the component of tree \ {v}
            // entered through u0.
            std::fill(dist.begin(), dist.end(), -1.0);
            dist[v] = 0.0;
            dist[u0] = len0;
            stack.assign(1, u0);
            double far = len0;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (auto [y, len] : adj[x]) {
                    if (dist[y] >= 0.0) continue;
                    dist[y] = dist[x] + len;
                    far = std::max(far, dist[y]);
                    stack.push_back(y);
                }
            }
            branches.push_back(far);
        }
        std::sort(branches.begin(), branches.end(), std::greater<>());
        table.depth[v] = branches.size() >= 3 ? branches[2] : 0.0;
    }
    return table;
}

std::vector<int> nearest_edge_brute(const PointCloud& cloud, const EmbeddedGraph& g) {
    if (g.edges.empty()) throw std::invalid_argument("graph has no edges");
    std::vector<int> assign(cloud.size(), -1);
    for (int i = 0; i < cloud.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_e = -1;
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            double d = euclid_point_segment(cloud.point(i), g.vertex(g.edges[e].u),
                                            g.vertex(g.edges[e].v));
            if (d < best) {
                best = d;
                best_e = e;
            }
        }
        assign[i] = best_e;
    }
    return assign;
}

double max_cloud_distance(const PointCloud& cloud, const EmbeddedGraph& g) {
    if (g.vertex_count() == 0) throw std::invalid_argument("graph is empty");
    std::vector<int> deg = vertex_degrees(g);
    double worst = 0.0;
    for (int i = 0; i < cloud.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const GraphEdge& e : g.edges)
            best = std::min(best, euclid_point_segment(cloud.point(i), g.vertex(e.u),
                                                       g.vertex(e.v)));
        for (int v = 0; v < g.vertex_count(); ++v)
            if (deg[v] == 0)
                best = std::min(best, distance(cloud.point(i), g.vertex(v)));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace ask::reference
