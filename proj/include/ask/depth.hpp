#pragma once

#include <vector>

#include "ask/graph.hpp"

namespace ask {

// Per-vertex junction depth of a tree. branch_lengths[v] lists, longest
// first, the longest-path length from v into each incident branch; depth[v]
// is the third entry for vertices of degree >= 3 and 0 otherwise.
struct DepthTable {
    std::vector<double> depth;
    std::vector<std::vector<double>> branch_lengths;
};

// Two-pass dynamic program over the tree (downward longest paths, then a
// reroot sweep for the branch through the parent). O(n). Throws
// std::invalid_argument for non-tree input.
DepthTable compute_depths(const EmbeddedGraph& tree);

// Vertices with depth strictly above beta * l_avg; degree <= 2 vertices are
// never included. Returned sorted ascending.
std::vector<int> deep_vertices(const DepthTable& depths, double beta, double l_avg);

// Keeps the candidates where at least three incident branches reach farther
// than the given straight-line distance. Noise threads in dense clouds carry
// large summed lengths at almost no reach and would otherwise register as
// junctions.
std::vector<int> filter_deep_by_reach(const EmbeddedGraph& tree,
                                      const std::vector<int>& candidates,
                                      double reach);

}  // namespace ask
