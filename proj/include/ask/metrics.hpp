#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ask/geometry.hpp"
#include "ask/graph.hpp"

namespace ask {

// Canonical string of the degree-2-suppressed tree; equal strings mean
// homeomorphic trees. Invariant under relabeling and rigid motion.
using HomeoSignature = std::string;

// Throws std::invalid_argument for cyclic or disconnected input.
HomeoSignature homeo_signature(const EmbeddedGraph& tree);

// max over cloud points of the distance to the nearest graph edge; isolated
// vertices count as zero-length segments. Parallel over points.
double max_cloud_distance(const PointCloud& cloud, const EmbeddedGraph& graph);

// Per-cloud reconstruction record.
struct RunReport {
    int n_points = 0;
    int endpoint_count = 0;
    HomeoSignature signature;
    double max_distance = 0.0;
    double initial_error = 0.0;
    double epsilon = 0.0;
    double avg_edge_length = 0.0;
    int deep_vertex_count = 0;
    int monotone_mismatches = 0;
    // Reported only: the collapse may move vertices by up to the collapsed
    // component radius beyond the straightening budget.
    double post_collapse_offset_bound = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
    std::map<std::string, double> stage_ms;
    std::optional<bool> endpoint_success;
    std::optional<bool> homeo_success;
};

// Fills the success flags against a ground-truth tree: endpoint success
// compares degree-1 counts, homeomorphism success compares signatures. Both
// stay unset without ground truth.
void evaluate(RunReport& report, const EmbeddedGraph& skeleton_graph,
              const EmbeddedGraph* ground_truth);

}  // namespace ask
