#include "ask/depth.hpp"

#include <algorithm>
#include <stdexcept>

namespace ask {

DepthTable compute_depths(const EmbeddedGraph& tree) {
    require_tree(tree);
    int n = tree.vertex_count();
    DepthTable table;
    table.depth.assign(n, 0.0);
    table.branch_lengths.assign(n, {});
    if (n == 1) return table;

    Adjacency adj = adjacency(tree);

    // BFS order from root 0; children are processed before parents by walking
    // the order backwards.
    std::vector<int> parent(n, -1), order;
    std::vector<double> parent_len(n, 0.0);
    order.reserve(n);
    order.push_back(0);
    parent[0] = 0;
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        int v = order[qi];
        for (auto [u, len] : adj[v]) {
            if (parent[u] < 0) {
                parent[u] = v;
                parent_len[u] = len;
                order.push_back(u);
            }
        }
    }

    // down[v]: longest path from v that stays inside v's rooted subtree.
    std::vector<double> down(n, 0.0);
    for (int qi = n - 1; qi >= 0; --qi) {
        int v = order[qi];
        for (auto [u, len] : adj[v])
            if (parent[u] == v) down[v] = std::max(down[v], len + down[u]);
    }

    // up[v]: longest path from v through its parent edge.
    std::vector<double> up(n, 0.0);
    for (int qi = 0; qi < n; ++qi) {
        int v = order[qi];
        // Largest and second largest among the parent branch of v and the
        // child branches of v, so each child can exclude its own entry.
        double best1 = -1.0, best2 = -1.0;
        auto feed = [&](double val) {
            if (val > best1) {
                best2 = best1;
                best1 = val;
            } else if (val > best2) {
                best2 = val;
            }
        };
        if (v != 0) feed(up[v]);
        for (auto [u, len] : adj[v])
            if (parent[u] == v) feed(len + down[u]);
        for (auto [u, len] : adj[v]) {
            if (parent[u] != v) continue;
            double own = len + down[u];
            double other = (own == best1) ? best2 : best1;
            if (other < 0.0) other = 0.0;
            up[u] = len + other;
        }
    }

    for (int v = 0; v < n; ++v) {
        std::vector<double>& branches = table.branch_lengths[v];
        branches.reserve(adj[v].size());
        for (auto [u, len] : adj[v])
            branches.push_back(parent[u] == v ? len + down[u] : up[v]);
        std::sort(branches.begin(), branches.end(), std::greater<>());
        table.depth[v] = branches.size() >= 3 ? branches[2] : 0.0;
    }
    return table;
}

std::vector<int> deep_vertices(const DepthTable& depths, double beta, double l_avg) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(depths.depth.size()); ++v) {
        if (depths.branch_lengths[v].size() < 3) continue;
        if (depths.depth[v] > beta * l_avg) out.push_back(v);
    }
    return out;
}

std::vector<int> filter_deep_by_reach(const EmbeddedGraph& tree,
                                      const std::vector<int>& candidates,
                                      double reach) {
    Adjacency adj = adjacency(tree);
    int n = tree.vertex_count();
    std::vector<int> branch_of(n, -1);
    std::vector<int> out;
    for (int v : candidates) {
        std::fill(branch_of.begin(), branch_of.end(), -1);
        branch_of[v] = -2;
        int far_branches = 0;
        int branch = 0;
        std::vector<int> stack;
        for (auto [u0, len0] : adj[v]) {
            (void)len0;
            bool far = false;
            branch_of[u0] = branch;
            stack.assign(1, u0);
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                if (!far && distance(tree.vertex(x), tree.vertex(v)) > reach)
                    far = true;
                for (auto [y, len] : adj[x]) {
                    (void)len;
                    if (branch_of[y] == -1) {
                        branch_of[y] = branch;
                        stack.push_back(y);
                    }
                }
            }
            if (far) ++far_branches;
            ++branch;
        }
        if (far_branches >= 3) out.push_back(v);
    }
    return out;
}

}  // namespace ask
