#include "ask/mst.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ask/kdtree.hpp"

namespace ask {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep the smaller id as root
        parent[b] = a;
        return true;
    }
};

struct Candidate {
    double d2 = std::numeric_limits<double>::infinity();
    int u = -1, v = -1;
};

// Total order on candidate edges: (d2, min id, max id).
bool edge_less(const Candidate& a, const Candidate& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    auto pa = std::minmax(a.u, a.v);
    auto pb = std::minmax(b.u, b.v);
    return pa < pb;
}

}  // namespace

MstResult build_mst(const PointCloud& cloud) {
    int n = cloud.size();
    if (n < 1) throw std::invalid_argument("cloud is empty");

    MstResult result;
    result.tree.dim = cloud.dim;
    result.tree.vcoords = cloud.coords;
    if (n == 1) return result;

    // Boruvka rounds over a kd-tree. Each round every component finds its
    // minimum outgoing edge; the strict edge order rules out cycles. Cached
    // nearest neighbours stay valid while their target lies outside the
    // querying point's component, and a stale cached distance is still a
    // lower bound on the refreshed one (the outside set only shrinks), so a
    // point is re-queried only when that bound could beat the current best
    // edge of its component.
    KdTree tree(cloud.coords, cloud.dim);
    UnionFind uf(n);
    std::vector<int> comp(n);
    std::vector<int> target(n, -1);
    std::vector<double> target_d2(n, 0.0);
    std::vector<int> order(n);
    int components = n;

    std::vector<GraphEdge> edges;
    edges.reserve(n - 1);

    while (components > 1) {
        for (int i = 0; i < n; ++i) comp[i] = uf.find(i);
        tree.set_components(comp);

        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (comp[a] != comp[b]) return comp[a] < comp[b];
            if (target_d2[a] != target_d2[b]) return target_d2[a] < target_d2[b];
            return a < b;
        });

        std::vector<Candidate> best(n);  // indexed by component root
        for (int i : order) {
            Candidate& cur = best[comp[i]];
            if (target[i] < 0) {
                // no prior candidate, must query
            } else if (cur.u >= 0 && target_d2[i] > cur.d2) {
                continue;  // lower bound already beaten
            }
            if (target[i] < 0 || comp[target[i]] == comp[i]) {
                KdTree::Hit hit =
                    tree.nearest_excluding(cloud.point(i), i, comp[i], comp);
                target[i] = hit.index;
                target_d2[i] = hit.d2;
            }
            if (target[i] < 0) continue;
            Candidate c{target_d2[i], i, target[i]};
            if (cur.u < 0 || edge_less(c, cur)) cur = c;
        }

        bool merged = false;
        for (int r = 0; r < n; ++r) {
            const Candidate& c = best[r];
            if (c.u < 0) continue;
            if (uf.unite(c.u, c.v)) {
                edges.push_back({std::min(c.u, c.v), std::max(c.u, c.v),
                                 std::sqrt(c.d2)});
                --components;
                merged = true;
            }
        }
        if (!merged)
            throw std::logic_error("minimum spanning tree construction stalled");
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

std::vector<PointCloud> split_clusters(const MstResult& mst, const PointCloud& cloud,
                                       double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    int n = cloud.size();
    if (!std::isfinite(kappa)) return {cloud};

    double threshold = kappa * mst.avg_edge_length;
    UnionFind uf(n);
    for (const GraphEdge& e : mst.tree.edges)
        if (e.length <= threshold) uf.unite(e.u, e.v);

    std::vector<std::vector<int>> members(n);
    for (int i = 0; i < n; ++i) members[uf.find(i)].push_back(i);

    std::vector<PointCloud> out;
    for (int r = 0; r < n; ++r) {
        if (members[r].empty()) continue;
        PointCloud part;
        part.dim = cloud.dim;
        for (int i : members[r]) part.push_back(cloud.point(i), cloud.ids[i]);
        out.push_back(std::move(part));
    }
    return out;
}

}  // namespace ask
