#include "ask/synth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ask {

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

namespace {

std::vector<double> unit_direction(std::mt19937_64& rng) {
    // Uniform in the ball by rejection, then normalized; the inner cutoff
    // avoids amplifying rounding noise.
    for (;;) {
        double x = uniform_range(rng, -1.0, 1.0);
        double y = uniform_range(rng, -1.0, 1.0);
        double z = uniform_range(rng, -1.0, 1.0);
        double r2 = x * x + y * y + z * z;
        if (r2 > 1.0 || r2 < 1e-4) continue;
        double r = std::sqrt(r2);
        return {x / r, y / r, z / r};
    }
}

// Separate stream for the noise samples so the direction draws stay stable.
std::uint64_t sample_stream_seed(std::uint64_t seed) {
    return seed * 6364136223846793005ULL + 1442695040888963407ULL;
}

}  // namespace

std::pair<EmbeddedGraph, StarSpec> generate_star(int n_arms, std::uint64_t seed) {
    if (n_arms < 2) throw std::invalid_argument("a star needs at least 2 arms");

    const double max_dot = std::cos(std::numbers::pi / 4.0);
    std::mt19937_64 rng(seed);

    StarSpec spec;
    spec.arms = n_arms;
    spec.points = 500 * n_arms;
    spec.seed = seed;

    constexpr int kBudget = 200000;
    int tries = 0;
    while (static_cast<int>(spec.directions.size()) < n_arms) {
        if (++tries > kBudget)
            throw std::runtime_error("direction rejection budget exceeded");
        std::vector<double> d = unit_direction(rng);
        bool ok = true;
        for (const std::vector<double>& prev : spec.directions) {
            double dot = d[0] * prev[0] + d[1] * prev[1] + d[2] * prev[2];
            if (dot > max_dot) {
                ok = false;
                break;
            }
        }
        if (ok) spec.directions.push_back(std::move(d));
    }

    EmbeddedGraph star;
    star.dim = 3;
    star.add_vertex(spec.center);
    for (int i = 0; i < n_arms; ++i) {
        std::vector<double> tip(3);
        for (int k = 0; k < 3; ++k)
            tip[k] = spec.center[k] + spec.edge_length * spec.directions[i][k];
        star.add_vertex(tip);
        star.add_edge(0, i + 1);
    }
    return {std::move(star), std::move(spec)};
}

PointCloud sample_cloud(const EmbeddedGraph& star, const StarSpec& spec) {
    std::mt19937_64 rng(sample_stream_seed(spec.seed));

    std::vector<double> lo(3, std::numeric_limits<double>::infinity());
    std::vector<double> hi(3, -std::numeric_limits<double>::infinity());
    for (int v = 0; v < star.vertex_count(); ++v) {
        auto p = star.vertex(v);
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    for (int k = 0; k < 3; ++k) {
        lo[k] -= spec.noise_radius;
        hi[k] += spec.noise_radius;
    }

    PointCloud cloud;
    cloud.dim = 3;
    std::vector<double> p(3);
    int id = 0;
    while (cloud.size() < spec.points) {
        for (int k = 0; k < 3; ++k) p[k] = uniform_range(rng, lo[k], hi[k]);
        double best = std::numeric_limits<double>::infinity();
        for (const GraphEdge& e : star.edges) {
            best = std::min(best,
                            euclid_point_segment(p, star.vertex(e.u), star.vertex(e.v)));
            if (best <= spec.noise_radius) break;
        }
        if (best <= spec.noise_radius) cloud.push_back(p, id++);
    }
    return cloud;
}

}  // namespace ask
