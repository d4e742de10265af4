#pragma once

#include <vector>

#include "ask/depth.hpp"
#include "ask/geometry.hpp"
#include "ask/graph.hpp"
#include "ask/mst.hpp"

namespace ask::reference {

// Serial reference implementations. They stay deliberately independent of the
// production paths (no kd-tree, no OpenMP) and double as the oracles used by
// the test and acceptance suites and as the baselines in the kernel benchmark.

// O(n^2) Prim with the same (length, min id, max id) edge order as build_mst.
MstResult prim_mst_dense(const PointCloud& cloud);

// Per-vertex branch lengths obtained by deleting the vertex and running a
// single-source farthest search into each incident component. O(n^2).
DepthTable depth_by_removal(const EmbeddedGraph& tree);

// Nearest graph edge per cloud point by scanning all (point, edge) pairs;
// equal distances resolve to the lower edge id.
std::vector<int> nearest_edge_brute(const PointCloud& cloud, const EmbeddedGraph& g);

// Serial max over cloud points of the distance to the nearest graph edge,
// isolated vertices treated as zero-length segments.
double max_cloud_distance(const PointCloud& cloud, const EmbeddedGraph& g);

}  // namespace ask::reference
