#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ask/core_tree.hpp"
#include "ask/geometry.hpp"
#include "ask/graph.hpp"
#include "ask/metrics.hpp"
#include "ask/monotone.hpp"
#include "ask/mst.hpp"

namespace ask {

struct ApproxParams {
    double beta = 30.0;   // branching factor
    double gamma = 1.3;   // error factor, > 1 and at most 10
    double kappa = std::numeric_limits<double>::infinity();  // clustering off
};

// Straight-line tree over the cloud. vertex_provenance holds the original
// cloud id of each vertex, or -1 for a centroid created by the junction
// collapse.
struct Skeleton {
    EmbeddedGraph graph;
    std::vector<int> vertex_provenance;
};

// Greedy chord selection over one run: indices 0 = i_1 < ... < i_k = n-1 such
// that every chord prefix stays within epsilon and the point one past each
// chosen index breaks the budget. Exponential doubling plus binary search,
// followed by a verification scan that repairs the rare non-monotone case.
std::vector<int> approximate_run(const MonotoneRun& run, double epsilon,
                                 EvalStats* stats = nullptr);

// Minimum number of chord indices covering the run within epsilon; quadratic
// dynamic program capped at 500 points.
int optimal_run_oracle(const MonotoneRun& run, double epsilon);

struct ApproximatedRun {
    MonotoneRun run;
    std::vector<int> indices;
};

struct AssembleInfo {
    // Largest distance from any vertex of a collapsed component to its
    // centroid; bounds how far the collapse can move the skeleton.
    double max_component_radius = 0.0;
    int collapsed_components = 0;
    int pre_collapse_vertices = 0;
};

// Chains the per-run polylines into one tree; with collapse_junctions set it
// then contracts components of short edges to their centroids, reconnects
// them along the removed edges, and prunes leaves that lie within epsilon of
// the remaining skeleton (their coverage is redundant). The pipeline enables
// the collapse only when junction vertices exist, since its purpose is
// merging junction clusters and a junction-free path skeleton would
// otherwise contract entirely whenever its span falls below the threshold.
// Throws std::logic_error if the chained polylines do not form a tree.
Skeleton assemble_skeleton(const std::vector<ApproximatedRun>& runs,
                           const ApproxParams& params, double l_avg,
                           double epsilon, bool collapse_junctions = true,
                           AssembleInfo* info = nullptr);

struct BuildResult {
    Skeleton skeleton;
    RunReport report;
    // Diagnostics for verification suites.
    std::vector<ApproximatedRun> approx_runs;
    double epsilon = 0.0;
    AssembleInfo assemble_info;
};

// Full pipeline: minimum spanning tree, junction depths, core extraction,
// edge clouds, monotone runs, greedy straightening, assembly and metrics.
// Per-stage wall-clock timings land in the report.
BuildResult build_ask(const PointCloud& cloud, const ApproxParams& params);

}  // namespace ask
