#include "ask/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ask {

namespace {

void require_same_dim(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dimension mismatch between points");
}

}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

double euclid_point_segment(std::span<const double> p, std::span<const double> a,
                            std::span<const double> b) {
    require_same_dim(p, a);
    require_same_dim(a, b);
    double l2 = squared_distance(a, b);
    if (l2 <= kGeomTol * kGeomTol) return distance(p, a);
    double t = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) t += (p[k] - a[k]) * (b[k] - a[k]);
    t /= l2;
    // Clamped feet are the endpoints themselves; measuring to them directly
    // keeps vertex queries exact.
    if (t <= 0.0) return distance(p, a);
    if (t >= 1.0) return distance(p, b);
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        double d = p[k] - (a[k] + t * (b[k] - a[k]));
        s += d * d;
    }
    return std::sqrt(s);
}

double euclid_point_segment(const Point& p, const Segment& s) {
    return euclid_point_segment(p.view(), s.a.view(), s.b.view());
}

double projection_parameter(std::span<const double> p, std::span<const double> a,
                            std::span<const double> b) {
    require_same_dim(p, a);
    require_same_dim(a, b);
    double l2 = squared_distance(a, b);
    if (l2 <= kGeomTol * kGeomTol)
        throw std::invalid_argument("projection axis has zero length");
    double t = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) t += (p[k] - a[k]) * (b[k] - a[k]);
    return t / l2;
}

double projection_parameter(const Point& p, const Segment& axis) {
    return projection_parameter(p.view(), axis.a.view(), axis.b.view());
}

double slab_distance(std::span<const double> p, std::span<const double> seg_a,
                     std::span<const double> seg_b, std::span<const double> axis_a,
                     std::span<const double> axis_b) {
    double ta = projection_parameter(seg_a, axis_a, axis_b);
    double tb = projection_parameter(seg_b, axis_a, axis_b);
    double ts = projection_parameter(p, axis_a, axis_b);
    if (std::abs(tb - ta) < kGeomTol)
        return std::min(distance(p, seg_a), distance(p, seg_b));
    double u = std::clamp((ts - ta) / (tb - ta), 0.0, 1.0);
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        double d = p[k] - (seg_a[k] + u * (seg_b[k] - seg_a[k]));
        s += d * d;
    }
    return std::sqrt(s);
}

double slab_distance(const Point& p, const Segment& seg, const Segment& axis) {
    return slab_distance(p.view(), seg.a.view(), seg.b.view(), axis.a.view(),
                         axis.b.view());
}

void MonotoneRun::recompute_axis_params() {
    axis_params.assign(ids.size(), 0.0);
    if (squared_distance(axis.a.view(), axis.b.view()) <= kGeomTol * kGeomTol)
        return;
    for (int i = 0; i < size(); ++i)
        axis_params[i] = projection_parameter(point(i), axis.a.view(), axis.b.view());
}

double segment_cloud_distance(const MonotoneRun& run, int i, int j, EvalStats* stats) {
    if (stats) ++stats->segment_evals;
    int n = run.size();
    if (i < 0 || j >= n || i >= j)
        throw std::invalid_argument("segment indices out of range");
    if (j == i + 1) return 0.0;

    const bool cached = static_cast<int>(run.axis_params.size()) == n;
    auto param = [&](int k) {
        return cached ? run.axis_params[k]
                      : projection_parameter(run.point(k), run.axis.a.view(),
                                             run.axis.b.view());
    };

    std::span<const double> pa = run.point(i);
    std::span<const double> pb = run.point(j);
    double ta, tb;
    bool degenerate =
        squared_distance(run.axis.a.view(), run.axis.b.view()) <= kGeomTol * kGeomTol;
    if (!degenerate) {
        ta = param(i);
        tb = param(j);
        degenerate = std::abs(tb - ta) < kGeomTol;
    }

    double worst = 0.0;
    for (int s = i + 1; s < j; ++s) {
        std::span<const double> ps = run.point(s);
        double d;
        if (degenerate) {
            d = std::min(distance(ps, pa), distance(ps, pb));
        } else {
            double u = std::clamp((param(s) - ta) / (tb - ta), 0.0, 1.0);
            double acc = 0.0;
            for (int k = 0; k < run.dim; ++k) {
                double dd = ps[k] - (pa[k] + u * (pb[k] - pa[k]));
                acc += dd * dd;
            }
            d = std::sqrt(acc);
        }
        worst = std::max(worst, d);
    }
    return worst;
}

}  // namespace ask
