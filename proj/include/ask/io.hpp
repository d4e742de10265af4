#pragma once

#include <string>

#include "ask/geometry.hpp"
#include "ask/graph.hpp"
#include "ask/metrics.hpp"
#include "ask/straighten.hpp"
#include "ask/synth.hpp"

namespace ask::io {

// Cloud files: JSON {"dim", "points", optional "ids"} or CSV with one point
// per row and an optional header. Parse errors raise std::invalid_argument
// with a message naming the violation.
PointCloud read_cloud_json(const std::string& path);
PointCloud read_cloud_csv(const std::string& path);
PointCloud read_cloud(const std::string& path, const std::string& format = "");

void write_cloud_json(const std::string& path, const PointCloud& cloud);
void write_cloud_csv(const std::string& path, const PointCloud& cloud);

// Ground-truth star file: vertices, edges and the generator metadata.
void write_star_json(const std::string& path, const EmbeddedGraph& star,
                     const StarSpec& spec);
EmbeddedGraph read_star_json(const std::string& path);

// Skeleton file: vertices, edges, provenance, parameter echo and the report.
void write_skeleton_json(const std::string& path, const Skeleton& skeleton,
                         const ApproxParams& params, const RunReport& report);

std::string report_json(const RunReport& report);
std::string report_csv_header();
std::string report_csv_row(const RunReport& report);

}  // namespace ask::io
