#include "ask/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ask {

Adjacency adjacency(const EmbeddedGraph& g) {
    Adjacency adj(g.vertex_count());
    for (const GraphEdge& e : g.edges) {
        adj[e.u].emplace_back(e.v, e.length);
        adj[e.v].emplace_back(e.u, e.length);
    }
    return adj;
}

std::vector<int> vertex_degrees(const EmbeddedGraph& g) {
    std::vector<int> deg(g.vertex_count(), 0);
    for (const GraphEdge& e : g.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

void validate_graph(const EmbeddedGraph& g) {
    int n = g.vertex_count();
    std::set<std::pair<int, int>> seen;
    for (const GraphEdge& e : g.edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("edge index out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loop edge");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw std::invalid_argument("duplicate edge");
        double d = distance(g.vertex(e.u), g.vertex(e.v));
        if (std::abs(d - e.length) > 1e-9)
            throw std::invalid_argument("cached edge length does not match coordinates");
    }
}

namespace {

// BFS reachability from vertex 0 over the edge list.
int reachable_count(const EmbeddedGraph& g) {
    int n = g.vertex_count();
    if (n == 0) return 0;
    Adjacency adj = adjacency(g);
    std::vector<char> vis(n, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [u, len] : adj[v]) {
            (void)len;
            if (!vis[u]) {
                vis[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count;
}

}  // namespace

bool is_connected(const EmbeddedGraph& g) {
    return reachable_count(g) == g.vertex_count();
}

bool is_tree(const EmbeddedGraph& g) {
    int n = g.vertex_count();
    if (n == 0) return false;
    if (static_cast<int>(g.edges.size()) != n - 1) return false;
    return is_connected(g);
}

void require_tree(const EmbeddedGraph& g) {
    if (!is_tree(g)) throw std::invalid_argument("input graph is not a tree");
}

std::vector<int> tree_path(const Adjacency& adj, int from, int to) {
    std::vector<int> parent(adj.size(), -1);
    std::vector<int> stack{from};
    parent[from] = from;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == to) break;
        for (auto [u, len] : adj[v]) {
            (void)len;
            if (parent[u] < 0) {
                parent[u] = v;
                stack.push_back(u);
            }
        }
    }
    if (parent[to] < 0) throw std::invalid_argument("vertices lie in different components");
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

// Farthest vertex from src by summed edge lengths; smallest id wins ties.
std::pair<int, std::vector<int>> farthest_from(const Adjacency& adj, int src) {
    std::vector<double> dist(adj.size(), -1.0);
    std::vector<int> parent(adj.size(), -1);
    std::vector<int> stack{src};
    dist[src] = 0.0;
    parent[src] = src;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [u, len] : adj[v]) {
            if (dist[u] < 0.0) {
                dist[u] = dist[v] + len;
                parent[u] = v;
                stack.push_back(u);
            }
        }
    }
    // Prefer a vertex other than src so coincident points still yield a
    // two-vertex path; ties keep the smallest id.
    int best = -1;
    for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
        if (v == src) continue;
        if (best < 0 || dist[v] > dist[best]) best = v;
    }
    if (best < 0) best = src;
    return {best, parent};
}

}  // namespace

std::vector<int> diameter_path(const EmbeddedGraph& tree) {
    require_tree(tree);
    if (tree.vertex_count() == 1) return {0};
    Adjacency adj = adjacency(tree);
    auto [a, parent_a] = farthest_from(adj, 0);
    auto [b, parent_b] = farthest_from(adj, a);
    std::vector<int> path{b};
    while (path.back() != a) path.push_back(parent_b[path.back()]);
    std::reverse(path.begin(), path.end());
    // Canonical orientation, smaller endpoint first.
    if (path.front() > path.back()) std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace ask
