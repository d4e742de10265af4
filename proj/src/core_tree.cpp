#include "ask/core_tree.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ask {

int CoreTree::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    GraphEdge probe{u, v, 0.0};
    auto it = std::lower_bound(tree.edges.begin(), tree.edges.end(), probe,
                               [](const GraphEdge& a, const GraphEdge& b) {
                                   return std::pair(a.u, a.v) < std::pair(b.u, b.v);
                               });
    if (it == tree.edges.end() || it->u != u || it->v != v) return -1;
    return static_cast<int>(it - tree.edges.begin());
}

namespace {

// Path-length sweep from src restricted to a vertex filter, with parents for
// path recovery. far maximizes the summed path length; ties pick the
// smallest id.
struct Sweep {
    std::vector<double> dist;
    std::vector<int> parent;
    int far = -1;
};

Sweep restricted_sweep(const Adjacency& adj, int src,
                       const std::vector<char>& allowed) {
    Sweep s;
    s.dist.assign(adj.size(), -1.0);
    s.parent.assign(adj.size(), -1);
    s.dist[src] = 0.0;
    s.parent[src] = src;
    std::vector<int> stack{src};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [u, len] : adj[v]) {
            if (!allowed[u] || s.dist[u] >= 0.0) continue;
            s.dist[u] = s.dist[v] + len;
            s.parent[u] = v;
            stack.push_back(u);
        }
    }
    s.far = src;
    for (int v = 0; v < static_cast<int>(adj.size()); ++v)
        if (s.dist[v] > s.dist[s.far]) s.far = v;
    return s;
}

// Vertex of a swept component that lies farthest from the anchor point in
// straight-line distance. In a noisy tube the summed-length maximum lands on
// heavily winding side threads, while the branch end the reconstruction
// needs is the one farthest out; the dangling-path length filter still uses
// the summed path length.
int extent_far_vertex(const EmbeddedGraph& g, const Sweep& s, int src) {
    int best = src;
    double best_ext = -1.0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (s.dist[v] < 0.0 || v == src) continue;
        double ext = distance(g.vertex(v), g.vertex(src));
        if (ext > best_ext) {
            best_ext = ext;
            best = v;
        }
    }
    return best;
}

std::vector<int> trace_path(const Sweep& s, int from, int to) {
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(s.parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

CoreTree extract_core(const MstResult& mst, const std::vector<int>& deep, double beta) {
    const EmbeddedGraph& g = mst.tree;
    int n = g.vertex_count();
    Adjacency adj = adjacency(g);
    double threshold = beta * mst.avg_edge_length;

    CoreTree core;
    core.tree.dim = g.dim;
    core.tree.vcoords = g.vcoords;

    std::set<std::pair<int, int>> edge_set;
    std::set<int> fixed;
    auto add_path_edges = [&](const std::vector<int>& path) {
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            edge_set.insert(std::minmax(path[i], path[i + 1]));
    };
    auto take_diameter = [&]() {
        std::vector<int> diam = diameter_path(g);
        add_path_edges(diam);
        fixed.insert(diam.front());
        fixed.insert(diam.back());
    };

    if (deep.empty()) {
        if (n == 1) {
            core.fixed_vertices = {0};
            return core;
        }
        take_diameter();
    } else {
        std::vector<char> is_deep(n, 0);
        for (int v : deep) is_deep[v] = 1;
        fixed.insert(deep.begin(), deep.end());

        // Edges joining two junction vertices survive as direct paths.
        for (const GraphEdge& e : g.edges)
            if (is_deep[e.u] && is_deep[e.v]) edge_set.insert(std::minmax(e.u, e.v));

        // Components of the tree minus the junction vertices.
        std::vector<int> comp(n, -1);
        int ncomp = 0;
        for (int s = 0; s < n; ++s) {
            if (is_deep[s] || comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = ncomp;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [u, len] : adj[v]) {
                    (void)len;
                    if (is_deep[u] || comp[u] >= 0) continue;
                    comp[u] = ncomp;
                    stack.push_back(u);
                }
            }
            ++ncomp;
        }

        // Junction vertices adjacent to each component (its closure).
        std::vector<std::set<int>> closure(ncomp);
        for (const GraphEdge& e : g.edges) {
            if (is_deep[e.u] != is_deep[e.v]) {
                int d = is_deep[e.u] ? e.u : e.v;
                int s = is_deep[e.u] ? e.v : e.u;
                closure[comp[s]].insert(d);
            }
        }

        std::vector<char> allowed(n, 0);
        for (int c = 0; c < ncomp; ++c) {
            std::vector<int> around(closure[c].begin(), closure[c].end());
            if (around.empty()) continue;

            std::fill(allowed.begin(), allowed.end(), 0);
            for (int v = 0; v < n; ++v) allowed[v] = comp[v] == c;

            if (around.size() == 1) {
                // Dangling subtree: keep the path to its farthest-out vertex
                // when the path is long enough.
                int d0 = around[0];
                allowed[d0] = 1;
                Sweep sweep = restricted_sweep(adj, d0, allowed);
                int far = extent_far_vertex(g, sweep, d0);
                if (far != d0 && sweep.dist[far] > threshold) {
                    add_path_edges(trace_path(sweep, d0, far));
                    fixed.insert(far);
                }
            } else {
                // Two junction vertices leave a unique connecting path. Three
                // or more cannot occur for exact depths; a star of paths from
                // the smallest keeps the output connected if it ever does.
                int d0 = around[0];
                for (int v : around) allowed[v] = 1;
                Sweep sweep = restricted_sweep(adj, d0, allowed);
                for (std::size_t k = 1; k < around.size(); ++k)
                    add_path_edges(trace_path(sweep, d0, around[k]));
            }
        }
    }

    // A junction whose dangling paths all fall under the length filter can
    // leave nothing; the diameter path is the usable minimum then.
    if (edge_set.empty() && n >= 2) {
        fixed.clear();
        take_diameter();
    }

    for (auto [u, v] : edge_set) core.tree.add_edge(u, v);

    // Maximal chains between non-trivial vertices. Fixed vertices break
    // chains even when their core degree is 2.
    std::vector<int> deg = vertex_degrees(core.tree);
    std::vector<char> breakpoint(n, 0);
    for (int v = 0; v < n; ++v)
        if (deg[v] > 0 && deg[v] != 2) breakpoint[v] = 1;
    for (int v : fixed)
        if (deg[v] > 0) breakpoint[v] = 1;

    Adjacency cadj = adjacency(core.tree);
    std::set<std::pair<int, int>> walked;
    for (int v = 0; v < n; ++v) {
        if (!breakpoint[v]) continue;
        std::vector<int> nbrs;
        for (auto [u, len] : cadj[v]) {
            (void)len;
            nbrs.push_back(u);
        }
        std::sort(nbrs.begin(), nbrs.end());
        for (int u : nbrs) {
            if (walked.count(std::minmax(v, u))) continue;
            std::vector<int> path{v, u};
            walked.insert(std::minmax(v, u));
            while (!breakpoint[path.back()]) {
                int cur = path.back();
                int prev = path[path.size() - 2];
                int next = -1;
                for (auto [w, len] : cadj[cur]) {
                    (void)len;
                    if (w != prev) next = w;
                }
                walked.insert(std::minmax(cur, next));
                path.push_back(next);
            }
            if (path.front() > path.back())
                std::reverse(path.begin(), path.end());
            core.paths.push_back(std::move(path));
        }
    }
    std::sort(core.paths.begin(), core.paths.end());
    core.paths.erase(std::unique(core.paths.begin(), core.paths.end()),
                     core.paths.end());

    core.fixed_vertices.assign(fixed.begin(), fixed.end());
    return core;
}

double initial_error(const CoreTree& core, const std::vector<MonotoneRun>& runs) {
    (void)core;
    double worst = 0.0;
    for (const MonotoneRun& run : runs)
        if (run.size() >= 2)
            worst = std::max(worst, segment_cloud_distance(run, 0, run.size() - 1));
    return worst;
}

}  // namespace ask
