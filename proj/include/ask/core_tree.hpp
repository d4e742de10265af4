#pragma once

#include <vector>

#include "ask/geometry.hpp"
#include "ask/graph.hpp"
#include "ask/mst.hpp"

namespace ask {

// Subtree of the MST retained as the junction structure of the cloud. The
// tree keeps the full vertex array of the MST (unused vertices stay
// isolated); edges is sorted by (u, v) so edge ids are deterministic. paths
// holds maximal vertex-id chains between fixed vertices whose interior
// vertices all have degree 2.
struct CoreTree {
    EmbeddedGraph tree;
    std::vector<int> fixed_vertices;         // sorted ascending
    std::vector<std::vector<int>> paths;

    // Edge id for the (u, v) pair, -1 if absent.
    int edge_index(int u, int v) const;
};

// Removes the given junction vertices from the MST, joins them by the unique
// paths through the remaining subtrees, and keeps a dangling longest path per
// single-junction subtree when it is longer than beta * avg edge length.
// With no junction vertices the diameter path of the MST is returned.
CoreTree extract_core(const MstResult& mst, const std::vector<int>& deep, double beta);

// max over all monotone runs of the chord distance over the run's full
// anchor; 0 when there are no runs.
double initial_error(const CoreTree& core, const std::vector<MonotoneRun>& runs);

}  // namespace ask
