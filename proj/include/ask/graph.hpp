#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ask/geometry.hpp"

namespace ask {

struct GraphEdge {
    int u = 0;
    int v = 0;
    double length = 0.0;
};

// Straight-line graph: vertex coordinates plus an undirected edge list with
// cached Euclidean lengths. MST, core and skeleton are all instances.
struct EmbeddedGraph {
    int dim = 0;
    std::vector<double> vcoords;
    std::vector<GraphEdge> edges;

    int vertex_count() const {
        return dim == 0 ? 0 : static_cast<int>(vcoords.size()) / dim;
    }

    std::span<const double> vertex(int i) const {
        return {vcoords.data() + static_cast<std::size_t>(i) * dim,
                static_cast<std::size_t>(dim)};
    }

    void add_vertex(std::span<const double> p) {
        vcoords.insert(vcoords.end(), p.begin(), p.end());
    }

    void add_edge(int u, int v) {
        edges.push_back({u, v, distance(vertex(u), vertex(v))});
    }
};

using Adjacency = std::vector<std::vector<std::pair<int, double>>>;

Adjacency adjacency(const EmbeddedGraph& g);
std::vector<int> vertex_degrees(const EmbeddedGraph& g);

// Structural invariants: indices in range, no self-loops, no duplicate edges,
// cached lengths match the coordinates to 1e-9. Throws std::invalid_argument.
void validate_graph(const EmbeddedGraph& g);

bool is_connected(const EmbeddedGraph& g);
bool is_tree(const EmbeddedGraph& g);
void require_tree(const EmbeddedGraph& g);

// Unique path between two vertices of a tree, endpoints included.
std::vector<int> tree_path(const Adjacency& adj, int from, int to);

// Endpoints and vertex sequence of a longest (edge-length weighted) path.
// Ties resolve to the smallest vertex ids.
std::vector<int> diameter_path(const EmbeddedGraph& tree);

}  // namespace ask
