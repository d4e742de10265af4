#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ask/geometry.hpp"
#include "ask/graph.hpp"

namespace ask {

// Synthetic ground truth: a star in R^3 with one central vertex and N
// straight arms of length 100 whose directions are pairwise at least pi/4
// apart. Noisy samples stay within noise_radius of the star.
struct StarSpec {
    int arms = 0;
    std::vector<double> center{0.0, 0.0, 0.0};
    std::vector<std::vector<double>> directions;  // unit vectors
    double edge_length = 100.0;
    double noise_radius = 10.0;
    int points = 0;  // 500 per arm
    std::uint64_t seed = 0;
};

// Raw generator draws mapped to [0,1) through the top 53 bits, so streams are
// identical across standard library implementations.
double uniform_unit(std::mt19937_64& rng);
double uniform_range(std::mt19937_64& rng, double lo, double hi);

// Rejection-samples N unit directions with all pairwise angles >= pi/4 and
// builds the star. Deterministic per seed; throws std::runtime_error when the
// rejection budget runs out.
std::pair<EmbeddedGraph, StarSpec> generate_star(int n_arms, std::uint64_t seed);

// Uniform rejection sampling in the star's bounding box enlarged by the noise
// radius, keeping points within noise_radius of the star, until spec.points
// samples are collected. Deterministic per spec.seed.
PointCloud sample_cloud(const EmbeddedGraph& star, const StarSpec& spec);

}  // namespace ask
