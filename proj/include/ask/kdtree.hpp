#pragma once

#include <limits>
#include <span>
#include <vector>

namespace ask {

// Static kd-tree over a flat coordinate array. Supports plain nearest
// neighbour, nearest neighbour excluding one component label, and closed-ball
// radius collection. Exact: pruning uses strict bounding-box tests only.
class KdTree {
  public:
    KdTree() = default;
    KdTree(std::span<const double> coords, int dim);

    int size() const { return static_cast<int>(count_); }

    // Refreshes per-node single-component labels used as a pruning shortcut
    // by nearest_excluding. comp.size() must equal size().
    void set_components(const std::vector<int>& comp);

    struct Hit {
        int index = -1;
        double d2 = std::numeric_limits<double>::infinity();
    };

    Hit nearest(std::span<const double> q) const;

    // Nearest point whose component differs from exclude_comp. Equal squared
    // distances break lexicographically on the candidate pair (query_id, index)
    // so results do not depend on traversal order.
    Hit nearest_excluding(std::span<const double> q, int query_id, int exclude_comp,
                          const std::vector<int>& comp) const;

    // All indices with squared distance <= r2 (closed ball).
    void radius_search(std::span<const double> q, double r2,
                       std::vector<int>& out) const;

  private:
    struct Node {
        int begin = 0, end = 0;
        int left = -1, right = -1;
        int comp = -1;  // common component of the subtree, -1 if mixed
        std::vector<double> bmin, bmax;
    };

    int dim_ = 0;
    std::size_t count_ = 0;
    std::vector<double> pts_;    // reordered copies, pts_[slot]
    std::vector<int> idx_;       // slot -> original index
    std::vector<Node> nodes_;

    int build(int begin, int end);
    double box_dist2(const Node& nd, std::span<const double> q) const;

    std::span<const double> slot(int s) const {
        return {pts_.data() + static_cast<std::size_t>(s) * dim_,
                static_cast<std::size_t>(dim_)};
    }
};

}  // namespace ask
