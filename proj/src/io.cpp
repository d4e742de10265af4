#include "ask/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ask::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
    if (!out) throw std::invalid_argument("write failed: " + path);
}

void check_cloud(const PointCloud& cloud, const std::string& path) {
    if (cloud.size() == 0) throw std::invalid_argument(path + ": cloud is empty");
    if (cloud.dim < 2)
        throw std::invalid_argument(path + ": dimension must be at least 2");
    for (double c : cloud.coords)
        if (!std::isfinite(c))
            throw std::invalid_argument(path + ": non-finite coordinate");
}

ordered_json points_json(const PointCloud& cloud) {
    ordered_json pts = ordered_json::array();
    for (int i = 0; i < cloud.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (double c : cloud.point(i)) row.push_back(c);
        pts.push_back(std::move(row));
    }
    return pts;
}

}  // namespace

PointCloud read_cloud_json(const std::string& path) {
    ordered_json j = load_json(path);
    if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
        throw std::invalid_argument(path + ": expected object with dim and points");
    PointCloud cloud;
    cloud.dim = j["dim"].get<int>();
    const auto& pts = j["points"];
    if (!pts.is_array() || pts.empty())
        throw std::invalid_argument(path + ": points must be a non-empty array");
    int id = 0;
    for (const auto& row : pts) {
        if (!row.is_array() || static_cast<int>(row.size()) != cloud.dim)
            throw std::invalid_argument(path + ": point with wrong dimension");
        for (const auto& c : row) cloud.coords.push_back(c.get<double>());
        cloud.ids.push_back(id++);
    }
    if (j.contains("ids")) {
        const auto& ids = j["ids"];
        if (static_cast<int>(ids.size()) != cloud.size())
            throw std::invalid_argument(path + ": ids length mismatch");
        for (int i = 0; i < cloud.size(); ++i) cloud.ids[i] = ids[i].get<int>();
    }
    check_cloud(cloud, path);
    return cloud;
}

PointCloud read_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    PointCloud cloud;
    std::string line;
    int id = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                double v = std::stod(cell, &used);
                while (used < cell.size() &&
                       std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (...) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (lineno == 1 && cloud.size() == 0) continue;  // header row
            throw std::invalid_argument(path + ": non-numeric cell on line " +
                                        std::to_string(lineno));
        }
        if (cloud.dim == 0) cloud.dim = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != cloud.dim)
            throw std::invalid_argument(path + ": inconsistent column count on line " +
                                        std::to_string(lineno));
        cloud.coords.insert(cloud.coords.end(), row.begin(), row.end());
        cloud.ids.push_back(id++);
    }
    check_cloud(cloud, path);
    return cloud;
}

PointCloud read_cloud(const std::string& path, const std::string& format) {
    std::string fmt = format;
    if (fmt.empty()) {
        auto dot = path.rfind('.');
        fmt = dot == std::string::npos ? "json" : path.substr(dot + 1);
    }
    if (fmt == "csv") return read_cloud_csv(path);
    if (fmt == "json") return read_cloud_json(path);
    throw std::invalid_argument("unknown cloud format: " + fmt);
}

void write_cloud_json(const std::string& path, const PointCloud& cloud) {
    ordered_json j;
    j["dim"] = cloud.dim;
    j["points"] = points_json(cloud);
    j["ids"] = cloud.ids;
    save_text(path, j.dump(2) + "\n");
}

void write_cloud_csv(const std::string& path, const PointCloud& cloud) {
    std::string out;
    for (int i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (int k = 0; k < cloud.dim; ++k) {
            if (k) out += ',';
            out += fmt17(p[k]);
        }
        out += '\n';
    }
    save_text(path, out);
}

void write_star_json(const std::string& path, const EmbeddedGraph& star,
                     const StarSpec& spec) {
    ordered_json j;
    j["dim"] = star.dim;
    ordered_json verts = ordered_json::array();
    for (int v = 0; v < star.vertex_count(); ++v) {
        ordered_json row = ordered_json::array();
        for (double c : star.vertex(v)) row.push_back(c);
        verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
    ordered_json edges = ordered_json::array();
    for (const GraphEdge& e : star.edges) edges.push_back({e.u, e.v});
    j["edges"] = std::move(edges);
    j["meta"] = {{"arms", spec.arms},
                 {"edge_length", spec.edge_length},
                 {"noise_radius", spec.noise_radius},
                 {"points", spec.points},
                 {"seed", spec.seed},
                 {"rng", "std::mt19937_64, top-53-bit uniforms; "
                         "samples use an lcg-advanced sub-seed"}};
    j["directions"] = spec.directions;
    save_text(path, j.dump(2) + "\n");
}

EmbeddedGraph read_star_json(const std::string& path) {
    ordered_json j = load_json(path);
    if (!j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument(path + ": expected vertices and edges");
    EmbeddedGraph g;
    g.dim = j["dim"].get<int>();
    for (const auto& row : j["vertices"]) {
        std::vector<double> p = row.get<std::vector<double>>();
        if (static_cast<int>(p.size()) != g.dim)
            throw std::invalid_argument(path + ": vertex with wrong dimension");
        g.add_vertex(p);
    }
    for (const auto& row : j["edges"]) {
        int u = row[0].get<int>();
        int v = row[1].get<int>();
        if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
            throw std::invalid_argument(path + ": edge index out of range");
        g.add_edge(u, v);
    }
    return g;
}

namespace {

ordered_json report_to_json(const RunReport& r) {
    ordered_json j;
    j["n_points"] = r.n_points;
    j["endpoint_count"] = r.endpoint_count;
    j["signature"] = r.signature;
    j["max_distance"] = r.max_distance;
    j["initial_error"] = r.initial_error;
    j["epsilon"] = r.epsilon;
    j["avg_edge_length"] = r.avg_edge_length;
    j["deep_vertex_count"] = r.deep_vertex_count;
    j["monotone_mismatches"] = r.monotone_mismatches;
    j["post_collapse_offset_bound"] = r.post_collapse_offset_bound;
    j["params"] = {{"beta", r.beta}, {"gamma", r.gamma}, {"kappa", r.kappa}};
    ordered_json stages;
    for (const auto& [k, v] : r.stage_ms) stages[k] = v;
    j["stage_ms"] = std::move(stages);
    if (r.endpoint_success) j["endpoint_success"] = *r.endpoint_success;
    if (r.homeo_success) j["homeo_success"] = *r.homeo_success;
    return j;
}

}  // namespace

void write_skeleton_json(const std::string& path, const Skeleton& skeleton,
                         const ApproxParams& params, const RunReport& report) {
    ordered_json j;
    j["dim"] = skeleton.graph.dim;
    ordered_json verts = ordered_json::array();
    for (int v = 0; v < skeleton.graph.vertex_count(); ++v) {
        ordered_json row = ordered_json::array();
        for (double c : skeleton.graph.vertex(v)) row.push_back(c);
        verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
    ordered_json edges = ordered_json::array();
    for (const GraphEdge& e : skeleton.graph.edges) edges.push_back({e.u, e.v});
    j["edges"] = std::move(edges);
    j["provenance"] = skeleton.vertex_provenance;
    j["params"] = {{"beta", params.beta}, {"gamma", params.gamma},
                   {"kappa", params.kappa}};
    j["report"] = report_to_json(report);
    save_text(path, j.dump(2) + "\n");
}

std::string report_json(const RunReport& report) {
    return report_to_json(report).dump(2);
}

std::string report_csv_header() {
    return "n_points,endpoint_count,signature,max_distance,initial_error,epsilon,"
           "avg_edge_length,deep_vertex_count,monotone_mismatches,"
           "post_collapse_offset_bound,beta,gamma,kappa,mst_ms,depth_ms,core_ms,"
           "edge_clouds_ms,monotone_ms,straighten_ms,assemble_ms,metrics_ms,total_ms";
}

std::string report_csv_row(const RunReport& r) {
    auto stage = [&](const char* key) {
        auto it = r.stage_ms.find(key);
        return fmt17(it == r.stage_ms.end() ? 0.0 : it->second);
    };
    std::string out;
    out += std::to_string(r.n_points) + ",";
    out += std::to_string(r.endpoint_count) + ",";
    out += r.signature + ",";
    out += fmt17(r.max_distance) + ",";
    out += fmt17(r.initial_error) + ",";
    out += fmt17(r.epsilon) + ",";
    out += fmt17(r.avg_edge_length) + ",";
    out += std::to_string(r.deep_vertex_count) + ",";
    out += std::to_string(r.monotone_mismatches) + ",";
    out += fmt17(r.post_collapse_offset_bound) + ",";
    out += fmt17(r.beta) + "," + fmt17(r.gamma) + "," + fmt17(r.kappa) + ",";
    out += stage("mst") + "," + stage("depth") + "," + stage("core") + ",";
    out += stage("edge_clouds") + "," + stage("monotone") + "," +
           stage("straighten") + "," + stage("assemble") + "," + stage("metrics") +
           "," + stage("total");
    return out;
}

}  // namespace ask::io
