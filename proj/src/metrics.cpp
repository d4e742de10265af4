#include "ask/metrics.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "ask/parallel.hpp"

namespace ask {

namespace {

// Rooted AHU encoding: children encodings sorted and concatenated.
std::string encode_rooted(const std::vector<std::vector<int>>& adj, int root) {
    int n = static_cast<int>(adj.size());
    std::vector<int> parent(n, -1), order;
    order.reserve(n);
    order.push_back(root);
    parent[root] = root;
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        int v = order[qi];
        for (int u : adj[v])
            if (parent[u] < 0) {
                parent[u] = v;
                order.push_back(u);
            }
    }
    std::vector<std::string> enc(n);
    for (int qi = n - 1; qi >= 0; --qi) {
        int v = order[qi];
        std::vector<std::string> parts;
        for (int u : adj[v])
            if (parent[u] == v) parts.push_back(enc[u]);
        std::sort(parts.begin(), parts.end());
        std::string s = "(";
        for (const std::string& p : parts) s += p;
        s += ")";
        enc[v] = std::move(s);
    }
    return enc[root];
}

}  // namespace

HomeoSignature homeo_signature(const EmbeddedGraph& tree) {
    if (tree.vertex_count() == 0)
        throw std::invalid_argument("signature of an empty graph");
    require_tree(tree);
    if (tree.vertex_count() == 1) return "()";

    // Suppress degree-2 vertices: walk chains between non-trivial vertices.
    std::vector<int> deg = vertex_degrees(tree);
    Adjacency adj = adjacency(tree);
    int n = tree.vertex_count();

    std::vector<int> keep;  // vertices of the suppressed tree
    std::vector<int> slot(n, -1);
    for (int v = 0; v < n; ++v)
        if (deg[v] != 2) {
            slot[v] = static_cast<int>(keep.size());
            keep.push_back(v);
        }

    std::vector<std::vector<int>> sadj(keep.size());
    std::set<std::pair<int, int>> added;
    for (int v : keep) {
        for (auto [u0, len0] : adj[v]) {
            (void)len0;
            int prev = v, cur = u0;
            while (deg[cur] == 2) {
                int next = -1;
                for (auto [w, len] : adj[cur]) {
                    (void)len;
                    if (w != prev) next = w;
                }
                prev = cur;
                cur = next;
            }
            auto key = std::minmax(slot[v], slot[cur]);
            if (added.insert(key).second) {
                sadj[key.first].push_back(key.second);
                sadj[key.second].push_back(key.first);
            }
        }
    }

    // Topological centers by repeated leaf removal.
    int m = static_cast<int>(keep.size());
    std::vector<int> sdeg(m);
    for (int v = 0; v < m; ++v) sdeg[v] = static_cast<int>(sadj[v].size());
    std::vector<int> layer;
    std::vector<char> removed(m, 0);
    for (int v = 0; v < m; ++v)
        if (sdeg[v] <= 1) layer.push_back(v);
    int remaining = m;
    while (remaining > 2) {
        std::vector<int> next_layer;
        for (int v : layer) {
            removed[v] = 1;
            --remaining;
            for (int u : sadj[v])
                if (!removed[u] && --sdeg[u] == 1) next_layer.push_back(u);
        }
        layer = std::move(next_layer);
    }
    std::vector<int> centers;
    for (int v = 0; v < m; ++v)
        if (!removed[v]) centers.push_back(v);

    std::string best;
    for (int c : centers) {
        std::string e = encode_rooted(sadj, c);
        if (best.empty() || e < best) best = std::move(e);
    }
    return best;
}

double max_cloud_distance(const PointCloud& cloud, const EmbeddedGraph& graph) {
    if (graph.vertex_count() == 0) throw std::invalid_argument("graph is empty");
    std::vector<int> deg = vertex_degrees(graph);
    std::vector<int> isolated;
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (deg[v] == 0) isolated.push_back(v);

    const int workers = worker_count();
    double worst = 0.0;
#pragma omp parallel for schedule(static) num_threads(workers) reduction(max : worst)
    for (int i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        double best = std::numeric_limits<double>::infinity();
        for (const GraphEdge& e : graph.edges)
            best = std::min(best,
                            euclid_point_segment(p, graph.vertex(e.u), graph.vertex(e.v)));
        for (int v : isolated) best = std::min(best, distance(p, graph.vertex(v)));
        worst = std::max(worst, best);
    }
    return worst;
}

void evaluate(RunReport& report, const EmbeddedGraph& skeleton_graph,
              const EmbeddedGraph* ground_truth) {
    if (!ground_truth) return;
    std::vector<int> tdeg = vertex_degrees(*ground_truth);
    int truth_endpoints = static_cast<int>(std::count(tdeg.begin(), tdeg.end(), 1));
    report.endpoint_success = report.endpoint_count == truth_endpoints;
    HomeoSignature truth_sig = homeo_signature(*ground_truth);
    (void)skeleton_graph;
    report.homeo_success = report.signature == truth_sig;
}

}  // namespace ask
