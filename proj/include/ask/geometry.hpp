#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace ask {

// Degeneracy tolerance for all geometric predicates (double precision at
// coordinate scale ~100).
inline constexpr double kGeomTol = 1e-9;

struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c) : coords(c) {}

    int dim() const { return static_cast<int>(coords.size()); }
    std::span<const double> view() const { return coords; }
};

struct Segment {
    Point a;
    Point b;
};

// Ordered list of points in R^m with provenance indices that stay stable
// when sub-clouds are carved out.
struct PointCloud {
    int dim = 0;
    std::vector<double> coords;  // flat, size() == dim * size()
    std::vector<int> ids;

    int size() const { return static_cast<int>(ids.size()); }
    bool empty() const { return ids.empty(); }

    std::span<const double> point(int i) const {
        return {coords.data() + static_cast<std::size_t>(i) * dim,
                static_cast<std::size_t>(dim)};
    }

    void push_back(std::span<const double> p, int id) {
        coords.insert(coords.end(), p.begin(), p.end());
        ids.push_back(id);
    }
};

// Projection-ordered subcloud of one core path, together with its anchor
// segment. axis runs from the first stored point to the last one; axis_params
// caches the projection parameter of every stored point onto axis.
struct MonotoneRun {
    int dim = 0;
    std::vector<double> coords;
    std::vector<int> ids;  // original cloud ids
    Segment axis;
    std::vector<double> axis_params;
    int source_path = -1;

    int size() const { return static_cast<int>(ids.size()); }

    std::span<const double> point(int i) const {
        return {coords.data() + static_cast<std::size_t>(i) * dim,
                static_cast<std::size_t>(dim)};
    }

    void push_back(std::span<const double> p, int id) {
        coords.insert(coords.end(), p.begin(), p.end());
        ids.push_back(id);
    }

    // Fills axis_params; a degenerate axis yields all-zero parameters so the
    // distance routines can take their endpoint fallback.
    void recompute_axis_params();
};

// Counts distance evaluations inside the straightening search.
struct EvalStats {
    long long segment_evals = 0;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

// Minimum Euclidean distance from p to the segment [a,b]; a zero-length
// segment degrades to plain point distance.
double euclid_point_segment(std::span<const double> p, std::span<const double> a,
                            std::span<const double> b);
double euclid_point_segment(const Point& p, const Segment& s);

// Parameter t with proj(p) = a + t*(b-a); t may fall outside [0,1].
// Throws std::invalid_argument for a zero-length axis.
double projection_parameter(std::span<const double> p, std::span<const double> a,
                            std::span<const double> b);
double projection_parameter(const Point& p, const Segment& axis);

// Distance from p to the segment measured inside the hyperplane through p
// orthogonal to the axis. When the segment endpoints project onto (nearly)
// the same axis parameter the hyperplane intersection is ill-defined and the
// minimum endpoint distance is returned instead.
double slab_distance(std::span<const double> p, std::span<const double> seg_a,
                     std::span<const double> seg_b, std::span<const double> axis_a,
                     std::span<const double> axis_b);
double slab_distance(const Point& p, const Segment& seg, const Segment& axis);

// max over interior points s, i < s < j, of the slab distance from run point
// s to the chord [p_i, p_j]; 0 when the chord has no interior points.
double segment_cloud_distance(const MonotoneRun& run, int i, int j,
                              EvalStats* stats = nullptr);

}  // namespace ask
