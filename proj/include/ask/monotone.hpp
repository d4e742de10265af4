#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ask/core_tree.hpp"
#include "ask/geometry.hpp"

namespace ask {

struct MonotoneStats {
    int runs = 0;
    // Runs whose boundary points did not realize the extreme projection
    // parameters along their own axis and had to be pinned in place.
    int mismatches = 0;
};

// Assigns every cloud point to its exactly nearest core edge (ties go to the
// lower edge id). Production kernel: kd-tree candidate pruning, parallel over
// points; matches reference::nearest_edge_brute result for result.
std::vector<int> edge_clouds(const PointCloud& cloud, const CoreTree& core);

// Positions where the walk direction of a strictly ordered rank sequence
// reverses (interior local extrema), plus both ends.
std::vector<std::size_t> reversal_boundaries(std::span<const int> ranks);

// Maximal alternating monotone ranges of the rank sequence. A range
// contributing only its two boundary points is merged into its successor
// (into its predecessor when it is last), so every emitted range carries at
// least one point of its own. Ranges are inclusive and share boundaries.
std::vector<std::pair<std::size_t, std::size_t>> monotone_ranges(
    std::span<const int> ranks);

// Splits one core path's point set into monotone runs. Points are walked in
// path-chainage order (assigned edge position, then parameter along that
// edge, then id) with the path endpoints pinned as the first and last walk
// points; the monitored value is the projection rank onto the line through
// the path endpoints. Each run is re-ordered by projection onto its own
// anchor; boundary pinning failures are counted in stats.
std::vector<MonotoneRun> split_monotone(const std::vector<int>& path,
                                        const std::vector<int>& assign,
                                        const PointCloud& cloud, const CoreTree& core,
                                        int path_index, MonotoneStats* stats = nullptr);

// All runs of all core paths, in path order.
std::vector<MonotoneRun> runs_for_core(const PointCloud& cloud, const CoreTree& core,
                                       const std::vector<int>& assign,
                                       MonotoneStats* stats = nullptr);

}  // namespace ask
