#include "ask/kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace ask {

namespace {
constexpr int kLeafSize = 16;
// DFS pushes at most two children per level; trees here stay far below this.
constexpr int kMaxDepth = 128;
}

KdTree::KdTree(std::span<const double> coords, int dim) : dim_(dim) {
    count_ = dim == 0 ? 0 : coords.size() / dim;
    idx_.resize(count_);
    std::iota(idx_.begin(), idx_.end(), 0);
    pts_.assign(coords.begin(), coords.end());
    if (count_ > 0) build(0, static_cast<int>(count_));
}

int KdTree::build(int begin, int end) {
    Node nd;
    nd.begin = begin;
    nd.end = end;
    nd.bmin.assign(dim_, std::numeric_limits<double>::infinity());
    nd.bmax.assign(dim_, -std::numeric_limits<double>::infinity());
    for (int s = begin; s < end; ++s) {
        auto p = slot(s);
        for (int k = 0; k < dim_; ++k) {
            nd.bmin[k] = std::min(nd.bmin[k], p[k]);
            nd.bmax[k] = std::max(nd.bmax[k], p[k]);
        }
    }
    int me = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(nd));
    if (end - begin <= kLeafSize) return me;

    // Split along the widest box dimension at the median slot.
    int split_dim = 0;
    double width = -1.0;
    for (int k = 0; k < dim_; ++k) {
        double w = nodes_[me].bmax[k] - nodes_[me].bmin[k];
        if (w > width) {
            width = w;
            split_dim = k;
        }
    }
    if (width <= 0.0) return me;  // all points coincide, keep as leaf

    int mid = (begin + end) / 2;
    // Reorder both the coordinate slots and the index map together.
    std::vector<int> order(end - begin);
    std::iota(order.begin(), order.end(), begin);
    std::nth_element(order.begin(), order.begin() + (mid - begin), order.end(),
                     [&](int a, int b) {
                         double ca = pts_[static_cast<std::size_t>(a) * dim_ + split_dim];
                         double cb = pts_[static_cast<std::size_t>(b) * dim_ + split_dim];
                         if (ca != cb) return ca < cb;
                         return idx_[a] < idx_[b];
                     });
    std::vector<double> tmp_pts(static_cast<std::size_t>(end - begin) * dim_);
    std::vector<int> tmp_idx(end - begin);
    for (int t = 0; t < end - begin; ++t) {
        int src = order[t];
        tmp_idx[t] = idx_[src];
        for (int k = 0; k < dim_; ++k)
            tmp_pts[static_cast<std::size_t>(t) * dim_ + k] =
                pts_[static_cast<std::size_t>(src) * dim_ + k];
    }
    std::copy(tmp_idx.begin(), tmp_idx.end(), idx_.begin() + begin);
    std::copy(tmp_pts.begin(), tmp_pts.end(),
              pts_.begin() + static_cast<std::size_t>(begin) * dim_);

    int left = build(begin, mid);
    int right = build(mid, end);
    nodes_[me].left = left;
    nodes_[me].right = right;
    return me;
}

double KdTree::box_dist2(const Node& nd, std::span<const double> q) const {
    double s = 0.0;
    for (int k = 0; k < dim_; ++k) {
        double d = 0.0;
        if (q[k] < nd.bmin[k])
            d = nd.bmin[k] - q[k];
        else if (q[k] > nd.bmax[k])
            d = q[k] - nd.bmax[k];
        s += d * d;
    }
    return s;
}

void KdTree::set_components(const std::vector<int>& comp) {
    // Post-order refresh; children were pushed after their parent, so a
    // reverse index walk sees children before parents.
    for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
        Node& nd = nodes_[i];
        if (nd.left < 0) {
            int c = comp[idx_[nd.begin]];
            for (int s = nd.begin + 1; s < nd.end && c >= 0; ++s)
                if (comp[idx_[s]] != c) c = -1;
            nd.comp = c;
        } else {
            int cl = nodes_[nd.left].comp;
            int cr = nodes_[nd.right].comp;
            nd.comp = (cl >= 0 && cl == cr) ? cl : -1;
        }
    }
}

KdTree::Hit KdTree::nearest(std::span<const double> q) const {
    Hit best;
    if (count_ == 0) return best;
    int stack[kMaxDepth];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        int ni = stack[--top];
        const Node& nd = nodes_[ni];
        if (box_dist2(nd, q) > best.d2) continue;
        if (nd.left < 0) {
            for (int s = nd.begin; s < nd.end; ++s) {
                double d2 = 0.0;
                auto p = slot(s);
                for (int k = 0; k < dim_; ++k) {
                    double d = p[k] - q[k];
                    d2 += d * d;
                }
                if (d2 < best.d2 || (d2 == best.d2 && idx_[s] < best.index)) {
                    best.d2 = d2;
                    best.index = idx_[s];
                }
            }
        } else {
            double dl = box_dist2(nodes_[nd.left], q);
            double dr = box_dist2(nodes_[nd.right], q);
            // Visit the nearer child first.
            if (dl <= dr) {
                stack[top++] = nd.right;
                stack[top++] = nd.left;
            } else {
                stack[top++] = nd.left;
                stack[top++] = nd.right;
            }
        }
    }
    return best;
}

KdTree::Hit KdTree::nearest_excluding(std::span<const double> q, int query_id,
                                      int exclude_comp,
                                      const std::vector<int>& comp) const {
    Hit best;
    if (count_ == 0) return best;

    // Candidate edges (query_id, index) ordered by (d2, min id, max id).
    auto better = [&](double d2, int index) {
        if (d2 != best.d2) return d2 < best.d2;
        if (best.index < 0) return true;
        auto a = std::minmax(query_id, index);
        auto b = std::minmax(query_id, best.index);
        return a < b;
    };

    int stack[kMaxDepth];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        int ni = stack[--top];
        const Node& nd = nodes_[ni];
        if (nd.comp == exclude_comp) continue;
        if (box_dist2(nd, q) > best.d2) continue;
        if (nd.left < 0) {
            for (int s = nd.begin; s < nd.end; ++s) {
                int id = idx_[s];
                if (comp[id] == exclude_comp) continue;
                double d2 = 0.0;
                auto p = slot(s);
                for (int k = 0; k < dim_; ++k) {
                    double d = p[k] - q[k];
                    d2 += d * d;
                }
                if (better(d2, id)) {
                    best.d2 = d2;
                    best.index = id;
                }
            }
        } else {
            double dl = box_dist2(nodes_[nd.left], q);
            double dr = box_dist2(nodes_[nd.right], q);
            if (dl <= dr) {
                stack[top++] = nd.right;
                stack[top++] = nd.left;
            } else {
                stack[top++] = nd.left;
                stack[top++] = nd.right;
            }
        }
    }
    return best;
}

void KdTree::radius_search(std::span<const double> q, double r2,
                           std::vector<int>& out) const {
    out.clear();
    if (count_ == 0) return;
    int stack[kMaxDepth];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        int ni = stack[--top];
        const Node& nd = nodes_[ni];
        if (box_dist2(nd, q) > r2) continue;
        if (nd.left < 0) {
            for (int s = nd.begin; s < nd.end; ++s) {
                double d2 = 0.0;
                auto p = slot(s);
                for (int k = 0; k < dim_; ++k) {
                    double d = p[k] - q[k];
                    d2 += d * d;
                }
                if (d2 <= r2) out.push_back(idx_[s]);
            }
        } else {
            stack[top++] = nd.left;
            stack[top++] = nd.right;
        }
    }
}

}  // namespace ask
