#pragma once

#include <vector>

#include "ask/geometry.hpp"
#include "ask/graph.hpp"

namespace ask {

struct MstResult {
    EmbeddedGraph tree;           // spans the cloud's points, same indexing
    double avg_edge_length = 0.0; // total length / (n-1), 0 for n == 1
};

// Exact Euclidean minimum spanning tree. Ties between equal-length candidate
// edges break lexicographically on (min id, max id), which makes the result
// unique and deterministic. Single-threaded per cloud.
MstResult build_mst(const PointCloud& cloud);

// Removes every tree edge longer than kappa * avg_edge_length and returns the
// connected components as sub-clouds with their original ids. A non-finite
// kappa disables clustering and returns the whole cloud.
std::vector<PointCloud> split_clusters(const MstResult& mst, const PointCloud& cloud,
                                       double kappa);

}  // namespace ask
